"""Axiom, finite-type and strongly-finite-type checks for a QuadModuleSpec.

Every check runs on basis tuples only, which is exact by multilinearity.
Failures become report entries carrying the first offending basis tuple.
"""
import logging
from dataclasses import dataclass

from .algebras import AlgebraHom
from .exact import ExactMatrix, GramForm, PsdClass, combine, gram_adjoint, psd_check
from .exceptions import LambdaNotFaithful, NotHermitian, NotInSubalgebra
from .quad_module import INNER_KINDS
from .reports import ValidationReport, matrix_witness

logger = logging.getLogger(__name__)


def _first_mismatch(cases):
    """Witness of the first (context, lhs, rhs) case with lhs != rhs, else None."""

    for context, lhs, rhs in cases:
        if lhs != rhs:
            return matrix_witness(lhs - rhs, **context)
    return None


def _right_actions(spec, kind):
    return {'A': spec.right_a, 'B1': spec.varphi1, 'B2': spec.varphi2}[kind]


def _check_inner_product(spec, kind, report):
    tensors = spec.inner_tensor(kind)
    actions = _right_actions(spec, kind)
    zero = ExactMatrix.zeros(spec.dim_h, spec.dim_h)
    report.add(
        f'inner_{kind}_right_linear', f'⟨ξ|η·b⟩_{kind} = ⟨ξ|η⟩_{kind}·b',
        *_outcome(_first_mismatch(
            ({'coordinate': c, 'idempotent': b}, g @ actions[b], g if b == c else zero)
            for c, g in enumerate(tensors) for b in range(len(actions)))))
    report.add(
        f'inner_{kind}_hermitian', f'⟨ξ|η⟩_{kind}* = ⟨η|ξ⟩_{kind}',
        *_outcome(_first_mismatch(({'coordinate': c}, g, g.H) for c, g in enumerate(tensors))))
    witness = None
    for c, g in enumerate(tensors):
        try:
            classification = psd_check(g)
        except NotHermitian:
            witness = {'coordinate': c, 'class': 'not hermitian'}
            break
        if classification is PsdClass.INDEFINITE:
            witness = {'coordinate': c, 'class': classification.value}
            break
    if witness is None:
        total = combine(tensors, [1] * len(tensors), shape=(spec.dim_h, spec.dim_h))
        try:
            classification = psd_check(total)
        except NotHermitian:
            classification = PsdClass.INDEFINITE
        if classification is not PsdClass.POSITIVE_DEFINITE:
            witness = {'coordinate': 'sum', 'class': classification.value}
    report.add(f'inner_{kind}_positive', f'⟨ξ|ξ⟩_{kind} ≥ 0 and ⟨ξ|ξ⟩_{kind} = 0 only for ξ = 0',
               witness is None, witness)


def _outcome(witness):
    return witness is None, witness


def _check_homomorphic_action(spec, name, tensors, report):
    identity = ExactMatrix.identity(spec.dim_h)
    zero = ExactMatrix.zeros(spec.dim_h, spec.dim_h)
    witness = _first_mismatch(
        ({'idempotents': [b, c]}, tensors[b] @ tensors[c], tensors[b] if b == c else zero)
        for b in range(len(tensors)) for c in range(len(tensors)))
    if witness is None:
        total = combine(tensors, [1] * len(tensors), shape=identity.shape)
        witness = matrix_witness(total - identity, idempotents='sum')
    report.add(f'{name}_homomorphism', f'{name} is a unital *-homomorphism on idempotents',
               witness is None, witness)


def validate_axioms(spec):
    """Check the quad-module axioms of spec exactly on basis elements."""

    report = ValidationReport(f'axioms of {spec.label}')
    spec.embed1.verify(unital=True, report=report)
    spec.embed2.verify(unital=True, report=report)
    spec.psi1.verify(unital=False, report=report)
    spec.psi2.verify(unital=False, report=report)
    for kind in INNER_KINDS:
        _check_inner_product(spec, kind, report)
    for name in ('phi1', 'phi2', 'varphi1', 'varphi2', 'right_a'):
        _check_homomorphic_action(spec, name, getattr(spec, name), report)

    commuting_pairs = [
        ('phi1', 'varphi2'), ('phi2', 'varphi1'), ('phi1', 'varphi1'), ('phi2', 'varphi2'),
        ('phi1', 'right_a'), ('phi2', 'right_a'),
    ]
    report.add(
        'bimodule_commutation', '[φ_i(b)ξ]·c = φ_i(b)[ξ·c] for the left and right actions',
        *_outcome(_first_mismatch(
            ({'left': left, 'right': right, 'indices': [b, c]}, x @ y, y @ x)
            for left, right in commuting_pairs
            for b, x in enumerate(getattr(spec, left))
            for c, y in enumerate(getattr(spec, right)))))

    for i in (1, 2):
        psi = spec.psi(i)
        varphi = spec.right_tensor(i)
        inner = spec.inner_tensor(f'B{i}')
        report.add(
            f'psi{i}_compatibility', f'ξϕ_{i}(zψ_{i}(a)) = (ξϕ_{i}(z))a',
            *_outcome(_first_mismatch(
                ({'a': a, 'z': b}, spec.right_a[a] @ varphi[b], varphi[b].scale(psi.matrix[b, a]))
                for a in range(spec.algebra_a.dim) for b in range(len(varphi)))))
        report.add(
            f'inner_psi{i}_compatibility', f'⟨ξ|ηa⟩_B{i} = ⟨ξ|η⟩_B{i}ψ_{i}(a)',
            *_outcome(_first_mismatch(
                ({'a': a, 'coordinate': c}, g @ spec.right_a[a], g.scale(psi.matrix[c, a]))
                for a in range(spec.algebra_a.dim) for c, g in enumerate(inner))))

    report.add(
        'left_action_agreement', 'φ₁(a) = φ₂(a) for a in A',
        *_outcome(_first_mismatch(
            ({'a': a}, spec.left(1, spec.embed1.image_of(a)), spec.left(2, spec.embed2.image_of(a)))
            for a in range(spec.algebra_a.dim))))

    try:
        gram = spec.scalar_gram()
        gram_invertible = psd_check(gram) is PsdClass.POSITIVE_DEFINITE
    except NotHermitian:
        gram, gram_invertible = None, False
    for i in (1, 2):
        left = spec.left_tensor(i)
        zero_index = next((b for b, x in enumerate(left) if x.is_zero()), None)
        report.add(f'phi{i}_faithful', f'φ_{i} is injective',
                   zero_index is None, None if zero_index is None else {'idempotent': zero_index})
        cases = [({'idempotent': b, 'inner': kind, 'coordinate': c}, g @ x, x.H @ g)
                 for b, x in enumerate(left)
                 for kind in INNER_KINDS
                 for c, g in enumerate(spec.inner_tensor(kind))]
        if gram_invertible:
            cases.extend(({'idempotent': b, 'inner': 'scalar'}, gram_adjoint(x, gram, gram), x)
                         for b, x in enumerate(left))
        report.add(f'phi{i}_adjointable', f'φ_{i}(b)* = φ_{i}(b*) for all three inner products',
                   *_outcome(_first_mismatch(cases)))

    for kind in INNER_KINDS:
        tensors = spec.inner_tensor(kind)
        values = ExactMatrix.from_rows(
            [[g[x, y] for x in range(spec.dim_h) for y in range(spec.dim_h)] for g in tensors])
        rank = values.rank()
        report.add(f'fullness_{kind}', f'span of ⟨ξ|η⟩_{kind} is all of {kind}',
                   rank == len(tensors), {'rank': rank, 'dim': len(tensors)})
    logger.info('validated axioms of %s: %d/%d checks passed', spec.label,
                sum(check.passed for check in report), len(report))
    return report


def expansion_matrix(spec, i):
    """Matrix of ξ ↦ Σ_g g·ϕ_i(⟨g|ξ⟩_{B_i}) over the basis of the i-th family."""

    columns = []
    for xi in spec.h_basis():
        total = ExactMatrix.zeros(spec.dim_h, 1)
        for g in spec.basis(i):
            total = total + spec.right(i, spec.inner(f'B{i}', g, xi)) @ g
        columns.append(total)
    return ExactMatrix.hstack(columns, rows=spec.dim_h)


def _in_image(hom, element):
    return hom.solve_preimage(element) is not None


def verify_finite_type(spec):
    """Reconstruction, membership and trace identities of the finite bases."""

    report = ValidationReport(f'finite type of {spec.label}')
    identity = ExactMatrix.identity(spec.dim_h)
    for i, name in ((1, 'u'), (2, 'v')):
        expansion = expansion_matrix(spec, i)
        report.add(f'reconstruction_{name}', f'ξ = Σ {name}_j ϕ_{i}(⟨{name}_j|ξ⟩_B{i})',
                   *_outcome(_first_mismatch([({'basis': 'H'}, expansion, identity)])))
        report.add(f'reconstruction_{name}_idempotent', f'the {name}-expansion applied twice equals once',
                   *_outcome(_first_mismatch([({}, expansion @ expansion, expansion)])))

    for i, other, name in ((1, 2, 'u'), (2, 1, 'v')):
        basis = spec.basis(i)
        embed = spec.embed(i)
        witness = None
        for j, g in enumerate(basis):
            for h, g2 in enumerate(basis):
                for w in range(spec.algebra(f'B{other}').dim):
                    action = spec.left_tensor(other)[w]
                    value = spec.inner(f'B{i}', g, action @ g2)
                    if not _in_image(embed, value):
                        witness = {'pair': [j, h], 'idempotent': w, 'value': [str(v) for v in value.vector()]}
                        break
                if witness:
                    break
            if witness:
                break
        report.add(f'membership_{name}', f'⟨{name}_j|φ_{other}(b){name}_h⟩_B{i} lies in A',
                   witness is None, witness)

        witness = None
        for x, xi in enumerate(spec.h_basis()):
            for y, eta in enumerate(spec.h_basis()):
                coefficient = spec.inner(f'B{other}', xi, eta)
                operator = spec.left(other, coefficient)
                total = spec.algebra(f'B{i}').zero()
                for g in basis:
                    total = total + spec.inner(f'B{i}', g, operator @ g)
                expected = embed(spec.inner('A', xi, eta))
                if total != expected:
                    witness = matrix_witness(total - expected, pair=[x, y])
                    break
            if witness:
                break
        report.add(f'trace_{name}', f'Σ ⟨{name}_j|φ_{other}(⟨ξ|η⟩_B{other}){name}_j⟩_B{i} = ⟨ξ|η⟩_A',
                   witness is None, witness)
    logger.info('finite type of %s: %s', spec.label, 'pass' if report.passed else 'FAIL')
    return report


@dataclass(frozen=True)
class LambdaMaps:
    """The faithful positive maps λ₁: B₁ → A and λ₂: B₂ → A with their post-checks."""

    lambda1: AlgebraHom
    lambda2: AlgebraHom
    report: ValidationReport

    def get(self, i):
        return self.lambda1 if i == 1 else self.lambda2


def _lambda_map(spec, i):
    other = 2 if i == 1 else 1
    algebra = spec.algebra(f'B{i}')
    columns = []
    for b in range(algebra.dim):
        total = spec.algebra(f'B{other}').zero()
        for g in spec.basis(other):
            total = total + spec.inner(f'B{other}', g, spec.left_tensor(i)[b] @ g)
        preimage = spec.embed(other).solve_preimage(total)
        if preimage is None:
            raise NotInSubalgebra(f'λ_{i} of idempotent {b} does not lie in A')
        columns.append(preimage)
    return AlgebraHom(algebra, spec.algebra_a, ExactMatrix.hstack(columns, rows=spec.algebra_a.dim),
                      f'lambda{i}')


def derive_lambda(spec):
    """λ₁(z) = Σ_k ⟨v_k|φ₁(z)v_k⟩_B₂ and λ₂(w) = Σ_i ⟨u_i|φ₂(w)u_i⟩_B₁, read in A."""

    report = ValidationReport(f'lambda maps of {spec.label}')
    maps = {i: _lambda_map(spec, i) for i in (1, 2)}
    algebra_a = spec.algebra_a
    scalar = spec.scalar_gram().matrix
    for i, lam in maps.items():
        algebra = spec.algebra(f'B{i}')
        psi = spec.psi(i)
        report.add(
            f'lambda{i}_psi_linear', f'λ_{i}(zψ_{i}(a)) = λ_{i}(z)a',
            *_outcome(_first_mismatch(
                ({'z': b, 'a': a},
                 lam(algebra.multiply(algebra.idempotent(b), psi.image_of(a))),
                 algebra_a.multiply(lam.image_of(b), algebra_a.idempotent(a)))
                for b in range(algebra.dim) for a in range(algebra_a.dim))))
        report.add(
            f'lambda{i}_inner', f'λ_{i}(⟨ξ|η⟩_B{i}) = ⟨ξ|η⟩_A',
            *_outcome(_first_mismatch(
                ({'pair': [x, y]}, lam(spec.inner(f'B{i}', xi, eta)), spec.inner('A', xi, eta))
                for x, xi in enumerate(spec.h_basis()) for y, eta in enumerate(spec.h_basis()))))
        report.add(
            f'lambda{i}_additive_in_a', f'Σ_a λ_{i}(ι_{i}(e_a)z) = λ_{i}(z)',
            *_outcome(_first_mismatch(
                ({'z': b},
                 combine([lam(algebra.multiply(spec.embed(i).image_of(a), algebra.idempotent(b)))
                          for a in range(algebra_a.dim)], [1] * algebra_a.dim),
                 lam.image_of(b))
                for b in range(algebra.dim))))
        weights = [algebra_a.trace(lam.image_of(b)) for b in range(algebra.dim)]
        scalarized = combine(spec.inner_tensor(f'B{i}'), weights, shape=scalar.shape)
        report.add(f'scalar_grams_agree_{i}', f'τ_A∘λ_{i}∘⟨·|·⟩_B{i} = τ_A∘⟨·|·⟩_A',
                   *_outcome(_first_mismatch([({}, scalarized, scalar)])))
        zero_index = next((b for b in range(algebra.dim) if lam.image_of(b).is_zero()), None)
        report.add(f'lambda{i}_faithful', f'λ_{i} sends no minimal idempotent to 0',
                   zero_index is None, None if zero_index is None else {'idempotent': zero_index})
        if zero_index is not None:
            raise LambdaNotFaithful(f'λ_{i} sends idempotent {zero_index} of B{i} to 0')
    logger.info('derived λ maps of %s', spec.label)
    return LambdaMaps(maps[1], maps[2], report)


def _strong_witness(spec, lam, i, family):
    """First z among 1 and the minimal idempotents with z != Σ e ψ_i(λ_i(e* z)), else None."""

    algebra = spec.algebra(f'B{i}')
    psi = spec.psi(i)
    for label, z in [('unit', algebra.unit())] + list(enumerate(algebra.idempotents())):
        total = algebra.zero()
        for e in family:
            total = total + algebra.multiply(e, psi(lam(algebra.multiply(algebra.star(e), z))))
        if total != z:
            return matrix_witness(total - z, z=label)
    return None


def verify_strongly_finite_type(spec, e_basis, f_basis, lambdas=None):
    """Check z = Σ e_j ψ₁(λ₁(e_j* z)) on B₁ and the B₂ analogue with f_basis."""

    lambdas = lambdas or derive_lambda(spec)
    report = ValidationReport(f'strongly finite type of {spec.label}')
    for i, family in ((1, e_basis), (2, f_basis)):
        witness = _strong_witness(spec, lambdas.get(i), i, family)
        report.add(f'strong_reconstruction_{i}', f'z = Σ e_j ψ_{i}(λ_{i}(e_j* z)) in B{i}',
                   witness is None, witness)
    return report


def default_strong_bases(spec, lambdas):
    """Minimal idempotents when they work, else {1}; the idempotents again if neither does."""

    bases = []
    for i in (1, 2):
        algebra = spec.algebra(f'B{i}')
        candidates = [algebra.idempotents(), [algebra.unit()]]
        chosen = next((family for family in candidates
                       if _strong_witness(spec, lambdas.get(i), i, family) is None), candidates[0])
        bases.append(chosen)
    return tuple(bases)


@dataclass(frozen=True)
class RightABasis:
    """The vectors u_iϕ₁(e_j) and v_kϕ₂(f_l) with the reconstruction check."""

    from_u: tuple
    from_v: tuple
    report: ValidationReport

    @property
    def vectors(self):
        return self.from_u + self.from_v


def derive_right_a_basis(spec, e_basis, f_basis):
    """Vectors g·ϕ(e) spanning H as a right A-module, with ξ = Σ w·⟨w|ξ⟩_A checked."""

    report = ValidationReport(f'right A-basis of {spec.label}')
    families = {}
    for i, family, name in ((1, e_basis, 'u'), (2, f_basis, 'v')):
        vectors = tuple(spec.right(i, e) @ g for g in spec.basis(i) for e in family)
        families[i] = vectors
        witness = None
        for x, xi in enumerate(spec.h_basis()):
            total = ExactMatrix.zeros(spec.dim_h, 1)
            for w in vectors:
                total = total + spec.right_action_a(spec.inner('A', w, xi)) @ w
            if total != xi:
                witness = matrix_witness(total - xi, basis=x)
                break
        report.add(f'right_a_reconstruction_{name}', f'ξ = Σ w·⟨w|ξ⟩_A over w = {name}ϕ_{i}(e)',
                   witness is None, witness)
    return RightABasis(families[1], families[2], report)


def scalar_level_zero_weights(spec, lambdas, i):
    """τ_A(λ_i(f_b)) for each minimal idempotent f_b of B_i."""

    lam = lambdas.get(i)
    return [spec.algebra_a.trace(lam.image_of(b)) for b in range(spec.algebra(f'B{i}').dim)]


def level_zero_gram(spec, lambdas, i):
    return GramForm.diag(scalar_level_zero_weights(spec, lambdas, i))
