"""Integer-matrix K-theory: Smith normal form, cokernels, λ_∘ and the K-groups of H_{M,N}."""
import logging
from dataclasses import dataclass

import numpy as np
from django.conf import settings
from faker import Faker
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from .ck import ck_matrix
from .exceptions import AssumptionsViolated, DimensionMismatch
from .fock import build_fock
from .relations import make_generators
from .reports import ValidationReport, window_check

logger = logging.getLogger(__name__)


def integer_matrix(rows, cols=None):
    """Object array of Python ints, so entries never overflow."""

    rows = [[int(entry) for entry in row] for row in rows]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    matrix = np.zeros((len(rows), cols), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != cols:
            raise DimensionMismatch('rows have different lengths')
        matrix[i, :] = row
    return matrix


def identity_matrix(n):
    return np.eye(n, dtype=int).astype(object)


@dataclass(frozen=True)
class SmithForm:
    """U·M·V = D with U, V unimodular and D diagonal, d₁ | d₂ | … and zeros last."""

    u: np.ndarray
    d: np.ndarray
    v: np.ndarray

    @property
    def diagonal(self):
        return [self.d[k, k] for k in range(min(self.d.shape))]

    @property
    def rank(self):
        return sum(1 for entry in self.diagonal if entry)

    @property
    def invariant_factors(self):
        return [entry for entry in self.diagonal if entry]


class _SmithReduction:
    """Elementary row and column operations tracked on the left and right transforms."""

    def __init__(self, matrix):
        self.a = np.array(matrix, dtype=object).copy()
        self.left = identity_matrix(self.a.shape[0])
        self.right = identity_matrix(self.a.shape[1])

    @property
    def num_rows(self):
        return self.a.shape[0]

    @property
    def num_cols(self):
        return self.a.shape[1]

    def reduce(self):
        s = 0
        while s < min(self.a.shape):
            row, col = _nonzero_min_abs(self.a, s)
            if row is None:
                break
            self._swap_rows(s, row)
            self._swap_cols(s, col)
            pivot = self.a[s, s]
            for i in range(s + 1, self.num_rows):
                if self.a[i, s]:
                    self._add_row(i, s, -(self.a[i, s] // pivot))
            for j in range(s + 1, self.num_cols):
                if self.a[s, j]:
                    self._add_col(j, s, -(self.a[s, j] // pivot))
            if any(self.a[s, s + 1:]) or any(self.a[s + 1:, s]):
                continue
            non_divisible = self._non_divisible_row(s)
            if non_divisible is not None:
                # bring the offending row in so the next pivot is smaller
                self._add_row(s, non_divisible, 1)
                continue
            if self.a[s, s] < 0:
                self._negate_row(s)
            s += 1
        return SmithForm(self.left, self.a, self.right)

    def _non_divisible_row(self, s):
        pivot = self.a[s, s]
        for i in range(s + 1, self.num_rows):
            for j in range(s + 1, self.num_cols):
                if self.a[i, j] % pivot:
                    return i
        return None

    def _swap_rows(self, i, j):
        self.left[[i, j]] = self.left[[j, i]]
        self.a[[i, j]] = self.a[[j, i]]

    def _swap_cols(self, i, j):
        self.right[:, [i, j]] = self.right[:, [j, i]]
        self.a[:, [i, j]] = self.a[:, [j, i]]

    def _negate_row(self, i):
        self.left[i] = -self.left[i]
        self.a[i] = -self.a[i]

    def _add_row(self, target, source, k):
        """row[target] += k·row[source]"""
        self.left[target] = self.left[target] + self.left[source] * k
        self.a[target] = self.a[target] + self.a[source] * k

    def _add_col(self, target, source, k):
        self.right[:, target] = self.right[:, target] + self.right[:, source] * k
        self.a[:, target] = self.a[:, target] + self.a[:, source] * k


def _nonzero_min_abs(a, s):
    """Position of the smallest nonzero |a[i, j]| with i, j ≥ s, first in row-major order."""

    position = (None, None)
    smallest = None
    for i in range(s, a.shape[0]):
        for j in range(s, a.shape[1]):
            if a[i, j] == 0:
                continue
            if smallest is None or abs(a[i, j]) < smallest:
                position = (i, j)
                smallest = abs(a[i, j])
    return position


def smith_normal_form(matrix):
    return _SmithReduction(matrix).reduce()


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k with d₁ | d₂ | … and every d_i > 1."""

    free_rank: int
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'factors', tuple(int(d) for d in self.factors))

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.factors

    @property
    def order(self):
        """Number of elements, or None for an infinite group."""

        if self.free_rank:
            return None
        order = 1
        for d in self.factors:
            order *= d
        return order

    def to_json(self):
        return {'freeRank': self.free_rank, 'factors': list(self.factors)}

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append('Z')
        elif self.free_rank > 1:
            parts.append(f'Z^{self.free_rank}')
        parts.extend(f'Z/{d}' for d in self.factors)
        return ' ⊕ '.join(parts) if parts else '0'


def cokernel(matrix):
    """Z^rows / matrix·Z^cols read off the Smith form."""

    matrix = np.array(matrix, dtype=object)
    form = smith_normal_form(matrix)
    factors = [abs(d) for d in form.invariant_factors if abs(d) > 1]
    return FGAbelianGroup(matrix.shape[0] - form.rank, tuple(factors))


def kernel_rank(matrix):
    matrix = np.array(matrix, dtype=object)
    return matrix.shape[1] - smith_normal_form(matrix).rank


def k_groups_from_matrix(lambda_matrix):
    """(coker(I − λ), ker(I − λ)) for an endomorphism matrix of Z^n."""

    lambda_matrix = np.array(lambda_matrix, dtype=object)
    shifted = identity_matrix(lambda_matrix.shape[0]) - lambda_matrix
    return cokernel(shifted), FGAbelianGroup(kernel_rank(shifted))


def k_groups(m, n):
    """K₀ = coker(A+B−I) and K₁ = ker(A+B−I) for the Cuntz–Krieger matrix of H_{M,N}."""

    bundle = ck_matrix(m, n)
    shifted = bundle.a + bundle.b - identity_matrix(m * n)
    k0 = cokernel(shifted)
    k1 = FGAbelianGroup(kernel_rank(shifted))
    logger.info('K-groups of H_(%d,%d): K0 = %s, K1 = %s', m, n, k0, k1)
    return k0, k1


@dataclass
class LambdaCirc:
    """The integer matrix of λ_∘ on K₀(B_∘), columns indexed by minimal idempotents."""

    matrix: np.ndarray
    labels: list
    reports: list

    @property
    def passed(self):
        return all(report.passed for report in self.reports)


def lambda_circ(spec, depth, fock=None):
    """λ_∘ = Σ λ_{1,i*} + Σ λ_{2,k*} with λ_{1,i}(x) = S_i*xS_i, λ_{2,k}(x) = T_k*xT_k."""

    fock = fock or build_fock(spec, depth)
    gen = make_generators(fock)
    windows = gen.windows
    bcirc = gen.bcirc
    elements = [(p, gen.bcirc_operator(p.matrix)) for p in bcirc.idempotents]

    def partial_isometry_defects():
        for i in (1, 2):
            for index, op in enumerate(gen.family(i)):
                yield {'family': i, 'index': index}, op @ gen.star(i, index) @ op - op

    def commutation_defects():
        for i in (1, 2):
            for index, op in enumerate(gen.family(i)):
                projection = op @ gen.star(i, index)
                for p, x in elements:
                    yield {'family': i, 'index': index, 'idempotent': p.label}, projection @ x - x @ projection

    assumptions = [
        window_check('generators_partial_isometries', 'S_i and T_k are partial isometries', windows.exact,
                     partial_isometry_defects()),
        window_check('range_projections_commute', 'S_iS_i* and T_kT_k* commute with B_∘', windows.compact,
                     commutation_defects()),
    ]
    for report in assumptions:
        if not report.passed:
            raise AssumptionsViolated(f'{report.identity} fails for {spec.label}', report.witness)

    columns = []
    compressions = []
    for p, x in elements:
        column = [0] * bcirc.dim
        for i in (1, 2):
            for index, basis_vector in enumerate(spec.basis(i)):
                coefficient = spec.inner(f'B{i}', basis_vector, p.matrix @ basis_vector)
                image = spec.left(i, coefficient)
                for k, entry in enumerate(bcirc.support(image)):
                    column[k] += entry
                compressions.append(({'family': i, 'index': index, 'idempotent': p.label},
                                     gen.star(i, index) @ x @ gen.family(i)[index] - gen.phi(i, coefficient)))
        columns.append(column)
    matrix = integer_matrix([[columns[c][r] for c in range(bcirc.dim)] for r in range(bcirc.dim)],
                            cols=bcirc.dim)
    reports = assumptions + [
        window_check('lambda_circ_compressions', 'S_i* x S_i = ⟨u_i|φ_∘(x)u_i⟩_B1 and T_k* x T_k = ⟨v_k|φ_∘(x)v_k⟩_B2',
                     windows.exact, compressions),
    ]
    logger.info('lambda_circ of %s is %dx%d', spec.label, bcirc.dim, bcirc.dim)
    return LambdaCirc(matrix, bcirc.labels, reports)


def lambda_circ_matrix(spec, depth):
    return lambda_circ(spec, depth).matrix


def _random_matrix(fake, max_dim, bound):
    rows = fake.random_int(1, max_dim)
    cols = fake.random_int(1, max_dim)
    return integer_matrix([[fake.random_int(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols=cols)


def _check_smith_form(matrix, form):
    """First violated property of a Smith form, or None."""

    if not np.array_equal(form.u.dot(matrix).dot(form.v), form.d):
        return 'U·M·V != D'
    for name, transform in (('U', form.u), ('V', form.v)):
        if abs(Matrix(transform.tolist()).det()) != 1:
            return f'{name} is not unimodular'
    rows, cols = form.d.shape
    if any(form.d[i, j] for i in range(rows) for j in range(cols) if i != j):
        return 'D is not diagonal'
    diagonal = form.diagonal
    if any(d < 0 for d in diagonal):
        return 'negative diagonal entry'
    nonzero = form.invariant_factors
    if nonzero != diagonal[:len(nonzero)]:
        return 'zeros are not trailing'
    if any(b % a for a, b in zip(nonzero, nonzero[1:])):
        return 'divisibility chain broken'
    expected = sorted(abs(int(f)) for f in invariant_factors(Matrix(matrix.tolist()), domain=ZZ) if f != 0)
    if expected != sorted(nonzero):
        return f'invariant factors {nonzero} differ from {expected}'
    if rows == cols:
        determinant = Matrix(matrix.tolist()).det()
        if determinant and cokernel(matrix).order != abs(determinant):
            return f'|coker| differs from |det| = {abs(determinant)}'
    return None


def snf_property_suite(seed=None, count=None, max_dim=None, entry_bound=None):
    """Seeded random matrices checked against the Smith form properties and a sympy oracle."""

    seed = settings.QUADMOD_DEFAULT_SEED if seed is None else seed
    count = count or settings.QUADMOD_SNF_SAMPLES
    max_dim = max_dim or settings.QUADMOD_SNF_MAX_DIM
    entry_bound = entry_bound or settings.QUADMOD_SNF_ENTRY_BOUND
    fake = Faker()
    fake.seed_instance(seed)
    report = ValidationReport(f'Smith normal form property suite (seed {seed})')
    witness = None
    nonsingular = 0
    for sample in range(count):
        matrix = _random_matrix(fake, max_dim, entry_bound)
        form = smith_normal_form(matrix)
        problem = _check_smith_form(matrix, form)
        if matrix.shape[0] == matrix.shape[1] and form.rank == matrix.shape[0]:
            nonsingular += 1
        if problem:
            witness = {'sample': sample, 'problem': problem, 'matrix': matrix.tolist()}
            break
    report.add('snf_properties', 'U·M·V = D, |det U| = |det V| = 1, d_i | d_(i+1), |coker M| = |det M|',
               witness is None, witness, note=f'{count} samples, {nonsingular} square nonsingular')
    return report
