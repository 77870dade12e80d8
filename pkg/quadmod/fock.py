"""Relative tensor products, the truncated Fock module and operators on it.

The Fock module is kept as a list of mutually orthogonal sectors: the B₁ and
B₂ summands of level 0, H at level 1, and one relative tensor space per word
at each higher level. Operators are stored as their nonzero blocks between
sectors, so Gram inverses are only ever taken sector by sector.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from django.conf import settings

from .exact import I, ExactMatrix, GaussianRational, GramForm, combine, gram_adjoint
from .exceptions import DegenerateQuotient, DepthTooSmall, InvalidParameter, TooLarge
from .quad_module import INNER_KINDS
from .reports import IdentityWindowReport, ValidationReport, matrix_witness, window_check
from .validation import derive_lambda, level_zero_gram

logger = logging.getLogger(__name__)

MIXED = 'mixed'

# Non-real coefficients for the linearity checks.
LINEAR_COEFFICIENTS = (GaussianRational(1, 1), GaussianRational(Fraction(1, 2), -2))


@dataclass(frozen=True)
class RelTensorSpace:
    """A Hilbert quad module given on an explicit basis, possibly a balanced quotient.

    ``embed`` picks the kept ambient basis vectors and ``project`` sends an
    ambient vector to the coordinates of its class.
    """

    label: str
    dim: int
    ambient_dim: int
    quotient_basis: tuple
    embed: ExactMatrix
    project: ExactMatrix
    gram: GramForm
    inner_a: tuple
    inner_b1: tuple
    inner_b2: tuple
    phi1: tuple
    phi2: tuple
    varphi1: tuple
    varphi2: tuple
    right_a: tuple
    factors: tuple = ()

    @classmethod
    def from_spec(cls, spec):
        identity = ExactMatrix.identity(spec.dim_h)
        return cls(
            label='H',
            dim=spec.dim_h,
            ambient_dim=spec.dim_h,
            quotient_basis=tuple(range(spec.dim_h)),
            embed=identity,
            project=identity,
            gram=spec.scalar_gram(),
            inner_a=spec.inner_a,
            inner_b1=spec.inner_b1,
            inner_b2=spec.inner_b2,
            phi1=spec.phi1,
            phi2=spec.phi2,
            varphi1=spec.varphi1,
            varphi2=spec.varphi2,
            right_a=spec.right_a,
        )

    def inner_tensor(self, kind):
        return {'A': self.inner_a, 'B1': self.inner_b1, 'B2': self.inner_b2}[kind]

    def left_tensor(self, i):
        return self.phi1 if i == 1 else self.phi2

    def right_tensor(self, i):
        return self.varphi1 if i == 1 else self.varphi2

    def induced(self, ambient_operator):
        """The operator induced on the quotient by an ambient operator preserving the null space."""

        return self.project @ ambient_operator @ self.embed


def relative_tensor(left, i, right, allow_degenerate=True):
    """Balanced tensor product left ⊗_{B_i} right, quotiented by the null space of its Gram.

    The inner products follow ⟨x⊗y|x′⊗y′⟩ = ⟨y|φ_i(⟨x|x′⟩_{B_i})y′⟩ and the
    ambient index of x⊗y is x·dim(right) + y.
    """
    dx, dy = left.dim, right.dim
    ambient_dim = dx * dy
    inner_x = left.inner_tensor(f'B{i}')
    phi_y = right.left_tensor(i)
    ambient = {}
    for kind in INNER_KINDS:
        ambient[kind] = tuple(
            combine([inner_x[b].kron(g @ phi_y[b]) for b in range(len(inner_x))], [1] * len(inner_x),
                    shape=(ambient_dim, ambient_dim))
            for g in right.inner_tensor(kind))
    scalar = combine(ambient['A'], [1] * len(ambient['A']), shape=(ambient_dim, ambient_dim))
    kept = scalar.pivot_columns()
    label = f'({left.label} ⊗{i} {right.label})'
    if not kept:
        if not allow_degenerate:
            raise DegenerateQuotient(f'{label} is the zero space')
        logger.warning('%s is the zero space', label)
    everything = range(ambient_dim)
    gram_kept = scalar.submatrix(kept, kept)
    project = gram_kept.inverse() @ scalar.submatrix(kept, everything)
    embed = ExactMatrix.hstack([ExactMatrix.unit(ambient_dim, k) for k in kept], rows=ambient_dim)

    def induced(ambient_operators):
        return tuple(project @ operator @ embed for operator in ambient_operators)

    identity_x = ExactMatrix.identity(dx)
    identity_y = ExactMatrix.identity(dy)
    space = RelTensorSpace(
        label=label,
        dim=len(kept),
        ambient_dim=ambient_dim,
        quotient_basis=tuple(kept),
        embed=embed,
        project=project,
        gram=GramForm(gram_kept),
        inner_a=tuple(g.submatrix(kept, kept) for g in ambient['A']),
        inner_b1=tuple(g.submatrix(kept, kept) for g in ambient['B1']),
        inner_b2=tuple(g.submatrix(kept, kept) for g in ambient['B2']),
        phi1=induced(x.kron(identity_y) for x in left.phi1),
        phi2=induced(x.kron(identity_y) for x in left.phi2),
        varphi1=induced(identity_x.kron(y) for y in right.varphi1),
        varphi2=induced(identity_x.kron(y) for y in right.varphi2),
        right_a=induced(identity_x.kron(y) for y in right.right_a),
        factors=(left, i, right),
    )
    logger.debug('%s: ambient %d, quotient %d', label, ambient_dim, space.dim)
    return space


def balancing_witness(space):
    """First failure of class(ξϕ_i(b)⊗η) = class(ξ⊗φ_i(b)η), or None."""

    left, i, right = space.factors
    identity_x = ExactMatrix.identity(left.dim)
    identity_y = ExactMatrix.identity(right.dim)
    for b, (x, y) in enumerate(zip(left.right_tensor(i), right.left_tensor(i))):
        defect = space.project @ (x.kron(identity_y) - identity_x.kron(y))
        if not defect.is_zero():
            return matrix_witness(defect, space=space.label, idempotent=b)
    return None


def associativity_report(h_space, report):
    """Compare the two bracketings of H ⊗₁ H ⊗₂ H on the ambient H⊗H⊗H."""

    inner_left = relative_tensor(h_space, 1, h_space)
    left_bracket = relative_tensor(inner_left, 2, h_space)
    inner_right = relative_tensor(h_space, 2, h_space)
    right_bracket = relative_tensor(h_space, 1, inner_right)
    d = h_space.dim
    to_left = left_bracket.project @ inner_left.project.kron(ExactMatrix.identity(d))
    to_right = right_bracket.project @ ExactMatrix.identity(d).kron(inner_right.project)
    pulled_left = to_left.H @ left_bracket.gram.matrix @ to_left
    pulled_right = to_right.H @ right_bracket.gram.matrix @ to_right
    same_dim = left_bracket.dim == right_bracket.dim
    witness = None if same_dim else {'dims': [left_bracket.dim, right_bracket.dim]}
    if witness is None and pulled_left != pulled_right:
        witness = matrix_witness(pulled_left - pulled_right, ambient='H⊗H⊗H')
    report.add('associativity', '(H ⊗₁ H) ⊗₂ H ≅ H ⊗₁ (H ⊗₂ H) isometrically', witness is None, witness,
               note=f'dimension {left_bracket.dim}')


@dataclass(frozen=True)
class Sector:
    """One orthogonal summand: a B_i summand of level 0, or the space of a word."""

    index: int
    level: int
    word: tuple
    dim: int
    offset: int
    gram: GramForm
    space: RelTensorSpace = None

    @property
    def label(self):
        if self.level == 0:
            return f'F0[B{self.word[0]}]'
        if self.level == 1:
            return 'F1[H]'
        return f"F{self.level}[{','.join(str(letter) for letter in self.word)}]"

    @property
    def key(self):
        return self.level, self.word


@dataclass
class TruncatedFock:
    """Levels F₀..F_K of the Fock module of a quad module."""

    spec: object
    depth: int
    lambdas: object
    h_space: RelTensorSpace
    sectors: list
    checks: ValidationReport = field(default=None)

    def __post_init__(self):
        self.sector_at = {sector.key: sector for sector in self.sectors}

    @property
    def total_dim(self):
        return sum(sector.dim for sector in self.sectors)

    @property
    def level_dims(self):
        return [sum(s.dim for s in self.level(n)) for n in range(self.depth + 1)]

    def level(self, n):
        return [sector for sector in self.sectors if sector.level == n]

    def sector(self, level, word):
        return self.sector_at[(level, tuple(word))]

    def gram(self):
        """Gram form of the whole truncation (block diagonal)."""

        blocks = {(s.index, s.index): s.gram.matrix for s in self.sectors}
        return GramForm(FockOperator(self, blocks, degree=0).to_dense())

    def identity(self):
        return FockOperator(self, {(s.index, s.index): ExactMatrix.identity(s.dim) for s in self.sectors},
                            degree=0)

    def zero(self, degree=None):
        return FockOperator(self, {}, degree=degree)

    def diagonal(self, factor):
        """Degree-0 operator acting on each sector by factor(sector) (a matrix or None)."""

        blocks = {}
        for sector in self.sectors:
            block = factor(sector)
            if block is not None:
                blocks[(sector.index, sector.index)] = block
        return FockOperator(self, blocks, degree=0)

    def describe(self):
        return {
            'depth': self.depth,
            'level_dims': self.level_dims,
            'total_dim': self.total_dim,
            'sectors': [{'label': s.label, 'dim': s.dim} for s in self.sectors],
        }


def build_fock(spec, depth, lambdas=None):
    """Build F₀..F_K, one relative tensor space per word, prepending H at each level."""

    if depth < 2:
        raise DepthTooSmall(f'the Fock module needs depth K >= 2, got {depth}')
    max_dim = getattr(settings, 'QUADMOD_MAX_DIM', 20000)
    lambdas = lambdas or derive_lambda(spec)
    h_space = RelTensorSpace.from_spec(spec)
    sectors = []
    offset = 0

    def add(level, word, gram, space=None):
        nonlocal offset
        sector = Sector(len(sectors), level, tuple(word), gram.dim, offset, gram, space)
        sectors.append(sector)
        offset += sector.dim
        if offset > max_dim:
            raise TooLarge(f'Fock dimension exceeds QUADMOD_MAX_DIM={max_dim} at level {level}')
        return sector

    for i in (1, 2):
        add(0, (i,), level_zero_gram(spec, lambdas, i))
    add(1, (), h_space.gram, h_space)
    for level in range(2, depth + 1):
        previous = [s for s in sectors if s.level == level - 1]
        for i in (1, 2):
            for source in previous:
                space = relative_tensor(h_space, i, source.space)
                add(level, (i,) + source.word, space.gram, space)
        logger.debug('level %d built with %d sectors', level, 2 ** (level - 1))

    checks = ValidationReport(f'Fock module of {spec.label} at depth {depth}')
    witness = None
    for sector in sectors:
        if sector.level >= 2:
            witness = balancing_witness(sector.space)
            if witness:
                break
    checks.add('balancing', 'class(ξϕ_i(b)⊗η) = class(ξ⊗φ_i(b)η) in every relative tensor product',
               witness is None, witness)
    associativity_report(h_space, checks)
    fock = TruncatedFock(spec, depth, lambdas, h_space, sectors, checks)
    logger.info('built Fock module of %s at depth %d: level dims %s (total %d)',
                spec.label, depth, fock.level_dims, fock.total_dim)
    return fock


class FockOperator:
    """An operator on a TruncatedFock, kept as its nonzero blocks between sectors.

    Keys of ``blocks`` are (target sector index, source sector index).
    """

    def __init__(self, fock, blocks, degree=None):
        self.fock = fock
        self.blocks = {key: block for key, block in blocks.items() if not block.is_zero()}
        self.declared_degree = degree

    def _level(self, index):
        return self.fock.sectors[index].level

    @property
    def degree(self):
        if self.declared_degree is not None:
            return self.declared_degree
        shifts = {self._level(t) - self._level(s) for t, s in self.blocks}
        if not shifts:
            return 0
        return shifts.pop() if len(shifts) == 1 else MIXED

    def degree_consistent(self):
        """True when every nonzero block shifts the level by the declared degree."""

        if self.declared_degree in (None, MIXED):
            return True
        return all(self._level(t) - self._level(s) == self.declared_degree for t, s in self.blocks)

    def block(self, target, source):
        t = self.fock.sector(*target).index
        s = self.fock.sector(*source).index
        key = (t, s)
        if key in self.blocks:
            return self.blocks[key]
        return ExactMatrix.zeros(self.fock.sectors[t].dim, self.fock.sectors[s].dim)

    def apply(self, source, vector):
        """Images of a vector of the source sector, keyed by target sector key."""

        s = self.fock.sector(*source).index
        return {self.fock.sectors[t].key: block @ vector for (t, src), block in self.blocks.items() if src == s}

    # Algebra

    def _combine_degree(self, other):
        if self.declared_degree is not None and self.declared_degree == other.declared_degree:
            return self.declared_degree
        return None

    def __add__(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        blocks = dict(self.blocks)
        for key, block in other.blocks.items():
            blocks[key] = blocks[key] + block if key in blocks else block
        return FockOperator(self.fock, blocks, self._combine_degree(other))

    def __neg__(self):
        return FockOperator(self.fock, {key: -block for key, block in self.blocks.items()},
                            self.declared_degree)

    def __sub__(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar):
        return FockOperator(self.fock, {key: block.scale(scalar) for key, block in self.blocks.items()},
                            self.declared_degree)

    def __mul__(self, scalar):
        return self.scale(scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        by_target = {}
        for (middle, source), block in other.blocks.items():
            by_target.setdefault(middle, []).append((source, block))
        blocks = {}
        for (target, middle), left in self.blocks.items():
            for source, right in by_target.get(middle, ()):
                product = left @ right
                key = (target, source)
                blocks[key] = blocks[key] + product if key in blocks else product
        degree = None
        if isinstance(self.declared_degree, int) and isinstance(other.declared_degree, int):
            degree = self.declared_degree + other.declared_degree
        return FockOperator(self.fock, blocks, degree)

    def adjoint(self):
        """Adjoint with respect to the scalarized Gram of every sector."""

        sectors = self.fock.sectors
        blocks = {
            (source, target): gram_adjoint(block, sectors[source].gram, sectors[target].gram)
            for (target, source), block in self.blocks.items()
        }
        degree = -self.declared_degree if isinstance(self.declared_degree, int) else None
        return FockOperator(self.fock, blocks, degree)

    @property
    def star(self):
        return self.adjoint()

    def degree_zero_part(self):
        return FockOperator(
            self.fock,
            {(t, s): block for (t, s), block in self.blocks.items() if self._level(t) == self._level(s)},
            degree=0,
        )

    def restrict(self, window):
        """Keep the blocks whose source level lies in the window."""

        lo, hi = window
        return FockOperator(
            self.fock,
            {(t, s): block for (t, s), block in self.blocks.items() if lo <= self._level(s) <= hi},
            self.declared_degree,
        )

    def witness_on(self, window):
        """First nonzero entry of a block whose source level lies in the window, or None."""

        lo, hi = window
        sectors = self.fock.sectors
        for t, s in sorted(self.blocks, key=lambda key: (key[1], key[0])):
            if lo <= sectors[s].level <= hi:
                return matrix_witness(self.blocks[(t, s)], source=sectors[s].label, target=sectors[t].label)
        return None

    def is_zero(self):
        return not self.blocks

    def equals_on(self, other, window):
        return (self - other).witness_on(window) is None

    def to_dense(self):
        n = self.fock.total_dim
        sectors = self.fock.sectors
        rows = []
        for target in sectors:
            row = []
            for source in sectors:
                key = (target.index, source.index)
                row.append(self.blocks.get(key, ExactMatrix.zeros(target.dim, source.dim)))
            rows.append(ExactMatrix.hstack(row, rows=target.dim))
        return ExactMatrix.vstack(rows, cols=n)

    def __eq__(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        return self.fock is other.fock and (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f'FockOperator(degree={self.degree}, blocks={len(self.blocks)})'


def creation(fock, kind, xi):
    """s_ξ (kind 's') or t_ξ (kind 't'): prepend ξ through ⊗₁ or ⊗₂; level K goes to 0."""

    if kind not in ('s', 't'):
        raise InvalidParameter(f"creation kind must be 's' or 't', got {kind!r}")
    i = 1 if kind == 's' else 2
    spec = fock.spec
    if xi.shape != (spec.dim_h, 1):
        raise InvalidParameter(f'ξ must be a vector of length {spec.dim_h}')
    blocks = {}
    source = fock.sector(0, (i,))
    h_sector = fock.sector(1, ())
    blocks[(h_sector.index, source.index)] = ExactMatrix.hstack(
        [varphi @ xi for varphi in spec.right_tensor(i)], rows=spec.dim_h)
    for sector in fock.sectors:
        if 1 <= sector.level < fock.depth:
            target = fock.sector(sector.level + 1, (i,) + sector.word)
            blocks[(target.index, sector.index)] = target.space.project @ xi.kron(ExactMatrix.identity(sector.dim))
    return FockOperator(fock, blocks, degree=1)


def left_action(fock, i, b):
    """φ̄_i(b): b·b_i on the B_i summand of level 0, 0 on the other, φ_i(b) above."""

    blocks = {}
    for sector in fock.sectors:
        if sector.level == 0:
            if sector.word == (i,):
                blocks[(sector.index, sector.index)] = ExactMatrix.diag(b.vector())
        else:
            blocks[(sector.index, sector.index)] = combine(
                sector.space.left_tensor(i), b.vector(), shape=(sector.dim, sector.dim))
    return FockOperator(fock, blocks, degree=0)


def right_action(fock, a):
    """Right multiplication by a ∈ A on every level (by ψ_i(a) on the level-0 summands)."""

    spec = fock.spec
    blocks = {}
    for sector in fock.sectors:
        if sector.level == 0:
            i = sector.word[0]
            block = ExactMatrix.diag(spec.psi(i)(a).vector())
        else:
            block = combine(sector.space.right_a, a.vector(), shape=(sector.dim, sector.dim))
        blocks[(sector.index, sector.index)] = block
    return FockOperator(fock, blocks, degree=0)


def commutes_with_right_actions(spec, operator):
    return all(operator @ x == x @ operator for x in spec.varphi1 + spec.varphi2)


def lift(fock, operator):
    """L̄ = 0 ⊕ L ⊕ (L⊗1) ⊕ … for an operator L on H commuting with both right actions."""

    spec = fock.spec
    if operator.shape != (spec.dim_h, spec.dim_h):
        raise InvalidParameter('L must act on H')
    if not commutes_with_right_actions(spec, operator):
        raise InvalidParameter('L must commute with the right B₁ and B₂ actions to lift to the Fock module')
    blocks = {}
    for sector in fock.sectors:
        if sector.level == 1:
            blocks[(sector.index, sector.index)] = operator
        elif sector.level >= 2:
            right = sector.space.factors[2]
            blocks[(sector.index, sector.index)] = sector.space.induced(
                operator.kron(ExactMatrix.identity(right.dim)))
    return FockOperator(fock, blocks, degree=0)


@dataclass(frozen=True)
class Projections:
    levels: list
    s: FockOperator
    t: FockOperator


def projections(fock):
    """P_n onto each level, and P_s, P_t onto the sectors of level ≥ 2 led by ⊗₁, ⊗₂."""

    def onto(predicate):
        return fock.diagonal(lambda sector: ExactMatrix.identity(sector.dim) if predicate(sector) else None)

    levels = [onto(lambda sector, n=n: sector.level == n) for n in range(fock.depth + 1)]
    p_s = onto(lambda sector: sector.level >= 2 and sector.word[0] == 1)
    p_t = onto(lambda sector: sector.level >= 2 and sector.word[0] == 2)
    return Projections(levels, p_s, p_t)


def projection_report(fock, projs=None):
    """Idempotence, self-adjointness and orthogonality of the level projections."""

    projs = projs or projections(fock)
    report = ValidationReport('projections')
    everything = (0, fock.depth)
    named = [(f'P{n}', p) for n, p in enumerate(projs.levels)] + [('Ps', projs.s), ('Pt', projs.t)]
    witness = None
    for name, p in named:
        witness = (p @ p - p).witness_on(everything) or (p.adjoint() - p).witness_on(everything)
        if witness:
            witness['projection'] = name
            break
    report.add('projections_selfadjoint_idempotent', 'P² = P = P*', witness is None, witness)
    witness = None
    for n, p in enumerate(projs.levels):
        for m, q in enumerate(projs.levels):
            if n != m:
                witness = (p @ q).witness_on(everything)
                if witness:
                    witness['levels'] = [n, m]
                    break
        if witness:
            break
    report.add('projections_orthogonal', 'P_n P_m = 0 for n ≠ m', witness is None, witness)
    total = projs.s + projs.t + projs.levels[0] + projs.levels[1]
    witness = (total - fock.identity()).witness_on(everything)
    report.add('projections_partition', 'P_s + P_t + P₀ + P₁ = 1', witness is None, witness)
    return report


def gauge_operator(fock, power=1):
    """u_{1/4}^power: multiplication by i^(n·power) on level n."""

    def phase(sector):
        return ExactMatrix.identity(sector.dim).scale(I ** (sector.level * power % 4))

    return fock.diagonal(phase)


def default_gauge_family(fock):
    spec = fock.spec
    family = []
    for j, u in enumerate(spec.basis_u):
        family.append((f's_u{j + 1}', creation(fock, 's', u)))
    for k, v in enumerate(spec.basis_v):
        family.append((f't_v{k + 1}', creation(fock, 't', v)))
    for b, z in enumerate(spec.algebra_b1.idempotents()):
        family.append((f'phi1(f{b + 1})', left_action(fock, 1, z)))
    for c, w in enumerate(spec.algebra_b2.idempotents()):
        family.append((f'phi2(g{c + 1})', left_action(fock, 2, w)))
    return family


def gauge_check(fock, ops_family=None):
    """u·X·u* = i^deg(X)·X for u = u_{1/4}, together with u⁴ = 1 and unitarity."""

    ops_family = ops_family if ops_family is not None else default_gauge_family(fock)
    report = ValidationReport('gauge action at r = 1/4')
    u = gauge_operator(fock)
    u_star = u.adjoint()
    everything = (0, fock.depth)
    report.add('gauge_unitary', 'u u* = 1', *_window_outcome(u @ u_star - fock.identity(), everything))
    fourth = u @ u @ u @ u
    report.add('gauge_period', 'u⁴ = 1', *_window_outcome(fourth - fock.identity(), everything))
    for name, op in ops_family:
        degree = op.degree
        if degree == MIXED:
            report.add(f'gauge_{name}', f'{name} is homogeneous', False, {'degree': MIXED})
            continue
        expected = op.scale(I ** (degree % 4))
        report.add(f'gauge_{name}', f'u {name} u* = i^{degree} {name}',
                   *_window_outcome(u @ op @ u_star - expected, everything))
    return report


def grading_report(fock, ops_family=None):
    """E = degree-zero part: E(X) = X for degree 0, E(X) = 0 otherwise, and E∘E = E."""

    ops_family = ops_family if ops_family is not None else default_gauge_family(fock)
    report = ValidationReport('degree-zero part')
    everything = (0, fock.depth)
    mixture = fock.zero()
    for name, op in ops_family:
        expected = op if op.degree == 0 else fock.zero(degree=0)
        report.add(f'degree_zero_{name}', f'E({name}) = {name} when deg {name} = 0, else 0',
                   *_window_outcome(degree_zero_part(op) - expected, everything))
        mixture = mixture + op
    once = degree_zero_part(mixture)
    report.add('degree_zero_idempotent', 'E(E(X)) = E(X)', *_window_outcome(degree_zero_part(once) - once, everything))
    return report


def _window_outcome(defect, window):
    witness = defect.witness_on(window)
    return witness is None, witness


def degree_zero_part(op):
    return op.degree_zero_part()


def _creation_cache(fock):
    spec = fock.spec
    cache = {}

    def get(kind, x, adjoint=False):
        if (kind, x, adjoint) not in cache:
            if adjoint:
                cache[(kind, x, adjoint)] = get(kind, x).adjoint()
            else:
                cache[(kind, x, adjoint)] = creation(fock, kind, ExactMatrix.unit(spec.dim_h, x))
        return cache[(kind, x, adjoint)]

    return get


def _annihilation_expected(fock, kind, xi):
    """The adjoint of s_ξ (or t_ξ) written out level by level."""

    i = 1 if kind == 's' else 2
    spec = fock.spec
    blocks = {}
    target = fock.sector(0, (i,))
    h_sector = fock.sector(1, ())
    blocks[(target.index, h_sector.index)] = ExactMatrix.from_rows(
        [[(xi.H @ g)[0, x] for x in range(spec.dim_h)] for g in spec.inner_tensor(f'B{i}')],
        cols=spec.dim_h)
    for sector in fock.sectors:
        if sector.level >= 2 and sector.word[0] == i:
            right = sector.space.factors[2]
            below = fock.sector(sector.level - 1, sector.word[1:])
            pieces = [
                combine(right.left_tensor(i), spec.inner(f'B{i}', xi, e).vector(), shape=(right.dim, right.dim))
                for e in spec.h_basis()
            ]
            blocks[(below.index, sector.index)] = ExactMatrix.hstack(pieces, rows=right.dim) @ sector.space.embed
    return FockOperator(fock, blocks, degree=-1)


def _module_map_defects(fock, get, kind):
    rights = [right_action(fock, a) for a in fock.spec.algebra_a.idempotents()]
    for x in range(fock.spec.dim_h):
        for a, right in enumerate(rights):
            yield {'basis': x, 'a': a}, get(kind, x) @ right - right @ get(kind, x)


def _adjoint_defects(fock, get, kind):
    for x in range(fock.spec.dim_h):
        e = ExactMatrix.unit(fock.spec.dim_h, x)
        yield {'basis': x}, get(kind, x, adjoint=True) - _annihilation_expected(fock, kind, e)


def _homomorphism_defects(fock, i):
    idempotents = fock.spec.algebra(f'B{i}').idempotents()
    images = [left_action(fock, i, z) for z in idempotents]
    for b, image in enumerate(images):
        for c, other in enumerate(images):
            expected = image if b == c else fock.zero()
            yield {'idempotents': [b, c]}, image @ other - expected


def _linearity_defects(fock, get, kind):
    c1, c2 = LINEAR_COEFFICIENTS
    dim_h = fock.spec.dim_h
    for x in range(dim_h):
        for y in range(dim_h):
            vector = ExactMatrix.unit(dim_h, x).scale(c1) + ExactMatrix.unit(dim_h, y).scale(c2)
            yield {'basis': [x, y]}, creation(fock, kind, vector) - get(kind, x).scale(c1) - get(kind, y).scale(c2)


def _intertwining_defects(fock, get, kind, outer_operators):
    """s_(Lξϕ_i(z)) against outer(L)·s_ξ·φ̄_i(z) for every listed L."""

    spec = fock.spec
    i = 1 if kind == 's' else 2
    acting = [left_action(fock, i, z) for z in spec.algebra(f'B{i}').idempotents()]
    for name, matrix, outer in outer_operators:
        for x in range(spec.dim_h):
            for z, inner in enumerate(acting):
                moved = matrix @ spec.right_tensor(i)[z] @ ExactMatrix.unit(spec.dim_h, x)
                yield ({'operator': name, 'basis': x, 'z': z},
                       creation(fock, kind, moved) - outer @ get(kind, x) @ inner)


def _compression_defects(fock, get, kind, lifted):
    spec = fock.spec
    i = 1 if kind == 's' else 2
    for name, matrix, outer in lifted:
        for x in range(spec.dim_h):
            for y in range(spec.dim_h):
                coefficient = spec.inner(f'B{i}', ExactMatrix.unit(spec.dim_h, y),
                                         matrix @ ExactMatrix.unit(spec.dim_h, x))
                lhs = get(kind, y, adjoint=True) @ outer @ get(kind, x)
                yield {'operator': name, 'pair': [y, x]}, lhs - left_action(fock, i, coefficient)


def fock_identities(fock):
    """Module-map, adjoint, homomorphism and creation-operator identities on the truncation."""

    spec = fock.spec
    depth = fock.depth
    exact = (0, depth - 1)
    everything = (0, depth)
    get = _creation_cache(fock)
    operators = ([(f'phi1[{b}]', spec.phi1[b], 1, b) for b in range(spec.algebra_b1.dim)]
                 + [(f'phi2[{c}]', spec.phi2[c], 2, c) for c in range(spec.algebra_b2.dim)])
    lifted = [(name, matrix, lift(fock, matrix)) for name, matrix, _, _ in operators]
    covariant = [(name, matrix, left_action(fock, j, spec.algebra(f'B{j}').idempotent(b)))
                 for name, matrix, j, b in operators]
    reports = []
    for kind, i in (('s', 1), ('t', 2)):
        reports.append(window_check(
            f'{kind}_module_map', f'{kind}_ξ(η·a) = ({kind}_ξ η)·a', everything,
            _module_map_defects(fock, get, kind)))
        reports.append(window_check(
            f'{kind}_adjoint_formula',
            f'{kind}_ξ*(ξ₁⊗η) = φ_{i}(⟨ξ|ξ₁⟩_B{i})η on the ⊗{i}-led words and 0 on the others',
            (1, depth), _adjoint_defects(fock, get, kind)))
        inconsistent = [x for x in range(spec.dim_h) if not get(kind, x).degree_consistent()]
        reports.append(IdentityWindowReport(
            f'{kind}_degree', f'{kind}_ξ raises the level by one', everything, not inconsistent,
            {'basis': inconsistent[0]} if inconsistent else None))
        reports.append(window_check(
            f'{kind}_linearity', f'{kind}_(cξ+dζ) = c {kind}_ξ + d {kind}_ζ', everything,
            _linearity_defects(fock, get, kind)))
        reports.append(window_check(
            f'{kind}_lift_intertwining', f'{kind}_(Lξϕ_{i}(z)) = L̄ {kind}_ξ φ̄_{i}(z)', everything,
            _intertwining_defects(fock, get, kind, lifted)))
        reports.append(window_check(
            f'{kind}_covariance', f'{kind}_(φ(b′)ξϕ_{i}(z)) = φ̄(b′) {kind}_ξ φ̄_{i}(z)', everything,
            _intertwining_defects(fock, get, kind, covariant)))
        reports.append(window_check(
            f'{kind}_compression', f'{kind}_ζ* L̄ {kind}_ξ = φ̄_{i}(⟨ζ|Lξ⟩_B{i})', exact,
            _compression_defects(fock, get, kind, lifted)))
    for i in (1, 2):
        zero = [b for b, z in enumerate(spec.algebra(f'B{i}').idempotents()) if left_action(fock, i, z).is_zero()]
        report = window_check(
            f'phi{i}_bar_homomorphism', f'φ̄_{i} is a faithful *-homomorphism', everything,
            _homomorphism_defects(fock, i))
        if zero and report.passed:
            report = IdentityWindowReport(report.identity, report.citation, everything, False,
                                          {'idempotent': zero[0], 'issue': 'zero operator'})
        reports.append(report)
    logger.info('checked %d Fock identities on %s', len(reports), spec.label)
    return reports


def truncation_monotonicity(spec, depth, deeper, lambdas=None):
    """Operators built at depth K and K′ > K agree on the levels both model exactly."""

    lambdas = lambdas or derive_lambda(spec)
    small = build_fock(spec, depth, lambdas)
    large = build_fock(spec, deeper, lambdas)
    report = ValidationReport(f'truncation {depth} against {deeper}')

    def blocks_by_key(op, max_source_level):
        sectors = op.fock.sectors
        return {(sectors[t].key, sectors[s].key): block for (t, s), block in op.blocks.items()
                if sectors[s].level <= max_source_level}

    pairs = []
    for kind in ('s', 't'):
        for x in range(spec.dim_h):
            e = ExactMatrix.unit(spec.dim_h, x)
            pairs.append((f'{kind}_e{x}', creation(small, kind, e), creation(large, kind, e), depth - 1))
    for i in (1, 2):
        for b, z in enumerate(spec.algebra(f'B{i}').idempotents()):
            pairs.append((f'phi{i}_f{b}', left_action(small, i, z), left_action(large, i, z), depth))
    witness = None
    for name, op_small, op_large, top in pairs:
        if blocks_by_key(op_small, top) != blocks_by_key(op_large, top):
            witness = {'operator': name}
            break
    report.add('truncation_monotonicity', 'operators agree below the shallower truncation',
               witness is None, witness)
    return report
