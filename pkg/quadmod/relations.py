"""Operator relations of the generators S_i = s_{u_i}, T_k = t_{v_k} on the truncated Fock module.

Identities that hold in the quotient by compacts are checked on level windows
away from levels 0 and 1; see ``Windows``.
"""
import logging
from dataclasses import dataclass, field
from itertools import product

from .bcirc import BCircModel
from .exact import ExactMatrix, gram_adjoint
from .exceptions import DepthTooSmall, InvalidParameter
from .fock import creation, left_action, projections
from .reports import IdentityWindowReport, window_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Windows:
    """Level windows of a depth-K truncation.

    exact: 0..K−1, below the truncation boundary.
    compact: 2..K, away from the finite-level corrections.
    orthogonal: 1..K, where S_j*T_l vanishes.
    isometry: 1..K−1, where S_j*S_h and T_l*T_k close up below the boundary.
    inner: 2..K−1, both at once.
    """

    depth: int

    @property
    def exact(self):
        return 0, self.depth - 1

    @property
    def compact(self):
        return 2, self.depth

    @property
    def orthogonal(self):
        return 1, self.depth

    @property
    def isometry(self):
        return 1, self.depth - 1

    @property
    def inner(self):
        return 2, self.depth - 1

    @property
    def everything(self):
        return 0, self.depth


@dataclass
class GeneratorFamily:
    """S_1..S_M, T_1..T_N and the coefficient actions Φ₁, Φ₂ on one Fock module."""

    fock: object
    s: list
    t: list
    window: tuple
    bcirc: BCircModel
    reports: list = field(default_factory=list)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def spec(self):
        return self.fock.spec

    @property
    def depth(self):
        return self.fock.depth

    @property
    def windows(self):
        return Windows(self.depth)

    def family(self, i):
        return self.s if i == 1 else self.t

    def star(self, i, index):
        key = ('star', i, index)
        if key not in self._cache:
            self._cache[key] = self.family(i)[index].adjoint()
        return self._cache[key]

    def phi(self, i, b):
        """Φ_i(b) = φ̄_i(b) for an element b of B_i."""

        return left_action(self.fock, i, b)

    def phi_idempotent(self, i, index):
        key = ('phi', i, index)
        if key not in self._cache:
            self._cache[key] = self.phi(i, self.spec.algebra(f'B{i}').idempotent(index))
        return self._cache[key]

    def letters(self):
        """Σ₁ ∪ Σ₂ in order: (1, i) for S_i, then (2, k) for T_k."""

        return [((1, i), op) for i, op in enumerate(self.s)] + [((2, k), op) for k, op in enumerate(self.t)]

    def range_sum(self, i):
        key = ('range', i)
        if key not in self._cache:
            total = self.fock.zero(degree=0)
            for index, op in enumerate(self.family(i)):
                total = total + op @ self.star(i, index)
            self._cache[key] = total
        return self._cache[key]

    def bcirc_operator(self, x):
        """x ∈ B_∘ acting on the Fock module as Σ λ_p Φ₂(g_c)Φ₁(f_b); zero on level 0."""

        total = self.fock.zero(degree=0)
        for value, p in zip(self.bcirc.coordinates(x), self.bcirc.idempotents):
            if value:
                term = self.phi_idempotent(2, p.b2_index) @ self.phi_idempotent(1, p.b1_index)
                total = total + term.scale(value)
        return total


def _coefficient(spec, i, x, y):
    """⟨x|y⟩_{B_i}."""

    return spec.inner(f'B{i}', x, y)


def make_generators(fock, window=None):
    """S_i = s_{u_i}, T_k = t_{v_k}, checked against s_ξ = Σ S_i φ̄₁(⟨u_i|ξ⟩_{B₁})."""

    if fock.depth < 3:
        raise DepthTooSmall(f'the generator relations need depth K >= 3, got {fock.depth}')
    spec = fock.spec
    window = tuple(window) if window else (2, fock.depth - 1)
    if not 0 <= window[0] <= window[1] <= fock.depth:
        raise InvalidParameter(f'window {window} is not inside levels 0..{fock.depth}')
    s = [creation(fock, 's', u) for u in spec.basis_u]
    t = [creation(fock, 't', v) for v in spec.basis_v]
    gen = GeneratorFamily(fock, s, t, window, BCircModel(spec))
    windows = gen.windows

    def expansion_defects(kind, i):
        for x, e in enumerate(spec.h_basis()):
            expanded = fock.zero(degree=1)
            for index, basis_vector in enumerate(spec.basis(i)):
                expanded = expanded + gen.family(i)[index] @ gen.phi(i, _coefficient(spec, i, basis_vector, e))
            yield {'basis': x}, creation(fock, kind, e) - expanded

    gen.reports = [
        window_check('s_basis_expansion', 's_ξ = Σ_i S_i φ̄₁(⟨u_i|ξ⟩_B1)', windows.exact,
                     expansion_defects('s', 1)),
        window_check('t_basis_expansion', 't_ξ = Σ_k T_k φ̄₂(⟨v_k|ξ⟩_B2)', windows.exact,
                     expansion_defects('t', 2)),
    ]
    logger.info('generators of %s: M=%d, N=%d, window %s..%s', spec.label, len(s), len(t), *window)
    return gen


# Defect families shared by the verification passes.

def _unit_defects(gen):
    yield {}, gen.range_sum(1) + gen.range_sum(2) - gen.fock.identity()


def _orthogonality_defects(gen):
    for j in range(len(gen.s)):
        for l in range(len(gen.t)):
            yield {'s': j, 't': l}, gen.star(1, j) @ gen.t[l]
            yield {'t': l, 's': j}, gen.star(2, l) @ gen.s[j]


def _inner_defects(gen, i):
    spec = gen.spec
    basis = spec.basis(i)
    for a, x in enumerate(basis):
        for b, y in enumerate(basis):
            expected = gen.phi(i, _coefficient(spec, i, x, y))
            yield {'pair': [a, b]}, gen.star(i, a) @ gen.family(i)[b] - expected


def _intertwining_defects(gen, acting, i):
    """Φ_acting(z)X_j = Σ_h X_h Φ_i(⟨x_h|φ_acting(z)x_j⟩_{B_i}) for the family X of letter i."""

    spec = gen.spec
    basis = spec.basis(i)
    for c in range(spec.algebra(f'B{acting}').dim):
        action = spec.left_tensor(acting)[c]
        for j, x in enumerate(basis):
            rhs = gen.fock.zero(degree=1)
            for h, y in enumerate(basis):
                rhs = rhs + gen.family(i)[h] @ gen.phi(i, _coefficient(spec, i, y, action @ x))
            yield {'idempotent': c, 'j': j}, gen.phi_idempotent(acting, c) @ gen.family(i)[j] - rhs


def _compression_defects(gen, acting, i):
    """X_h* Φ_acting(z) X_j = Φ_i(⟨x_h|φ_acting(z)x_j⟩_{B_i})."""

    spec = gen.spec
    basis = spec.basis(i)
    for c in range(spec.algebra(f'B{acting}').dim):
        action = spec.left_tensor(acting)[c]
        for h, y in enumerate(basis):
            for j, x in enumerate(basis):
                lhs = gen.star(i, h) @ gen.phi_idempotent(acting, c) @ gen.family(i)[j]
                yield {'idempotent': c, 'pair': [h, j]}, lhs - gen.phi(i, _coefficient(spec, i, y, action @ x))


def _intertwining_reports(gen, prefix):
    reports = []
    for acting, letter in ((1, 'z'), (2, 'w')):
        for i, name, x in ((1, 'S', 'u'), (2, 'T', 'v')):
            reports.append(window_check(
                f'{prefix}_{letter}_{name.lower()}',
                f'{letter}{name}_j = Σ {name}_h ⟨{x}_h|φ{acting}({letter}){x}_j⟩_B{i}',
                gen.windows.exact, _intertwining_defects(gen, acting, i)))
    return reports


def verify_generator_relations(gen):
    """Orthogonality, range sums, inner products and intertwinings of the generators."""

    windows = gen.windows
    projs = projections(gen.fock)
    p0, p1 = projs.levels[0], projs.levels[1]
    identity = gen.fock.identity()
    reports = [
        window_check('st_orthogonality', 'S_j*T_l = 0 and T_l*S_j = 0', windows.orthogonal,
                     _orthogonality_defects(gen)),
        window_check('s_range_sum', 'Σ_i S_i S_i* = P₁ + P_s', windows.exact,
                     [({}, gen.range_sum(1) - p1 - projs.s)]),
        window_check('t_range_sum', 'Σ_k T_k T_k* = P₁ + P_t', windows.exact,
                     [({}, gen.range_sum(2) - p1 - projs.t)]),
        window_check('fock_unit_decomposition', 'Σ S_i S_i* + Σ T_k T_k* + P₀ = 1 + P₁', windows.exact,
                     [({}, gen.range_sum(1) + gen.range_sum(2) + p0 - identity - p1)]),
        window_check('unit_decomposition', 'Σ S_i S_i* + Σ T_k T_k* = 1 modulo finite levels', windows.compact,
                     _unit_defects(gen)),
        window_check('s_inner_products', 'S_i*S_j = Φ₁(⟨u_i|u_j⟩_B1)', windows.exact, _inner_defects(gen, 1)),
        window_check('t_inner_products', 'T_k*T_l = Φ₂(⟨v_k|v_l⟩_B2)', windows.exact, _inner_defects(gen, 2)),
    ]
    reports.extend(_intertwining_reports(gen, 'intertwining'))
    return reports


def verify_universal_relations(gen):
    """The relations (H), their compressions, and the projections Σ S_iS_i*, Σ T_kT_k*."""

    windows = gen.windows
    reports = [
        window_check('relation_unit', 'Σ S_i S_i* + Σ T_k T_k* = 1', windows.compact, _unit_defects(gen)),
        window_check('relation_orthogonality', 'S_j*T_l = 0', windows.orthogonal, _orthogonality_defects(gen)),
        window_check('relation_s_inner', 'S_i*S_j = ⟨u_i|u_j⟩_B1', windows.exact, _inner_defects(gen, 1)),
        window_check('relation_t_inner', 'T_k*T_l = ⟨v_k|v_l⟩_B2', windows.exact, _inner_defects(gen, 2)),
    ]
    reports.extend(_intertwining_reports(gen, 'relation'))

    def projection_defects():
        for i in (1, 2):
            p = gen.range_sum(i)
            yield {'family': i, 'law': 'idempotent'}, p @ p - p
            yield {'family': i, 'law': 'selfadjoint'}, p.adjoint() - p

    reports.append(window_check('range_sums_are_projections', 'Σ S_iS_i* and Σ T_kT_k* are projections',
                                windows.everything, projection_defects()))
    for acting, letter in ((1, 'z'), (2, 'w')):
        reports.append(window_check(
            f'compression_s_{letter}', f'S_i* {letter} S_j = ⟨u_i|φ{acting}({letter})u_j⟩_B1', windows.exact,
            _compression_defects(gen, acting, 1)))
        reports.append(window_check(
            f'compression_t_{letter}', f'T_k* {letter} T_l = ⟨v_k|φ{acting}({letter})v_l⟩_B2', windows.exact,
            _compression_defects(gen, acting, 2)))

    def mixed_defects():
        for p in gen.bcirc.idempotents:
            x = gen.bcirc_operator(p.matrix)
            for j in range(len(gen.s)):
                for l in range(len(gen.t)):
                    yield {'idempotent': p.label, 's': j, 't': l}, gen.star(1, j) @ x @ gen.t[l]
                    yield {'idempotent': p.label, 't': l, 's': j}, gen.star(2, l) @ x @ gen.s[j]

    reports.append(window_check('mixed_compressions_vanish', 'S_i* b T_l = 0 and T_k* b S_j = 0 for b ∈ B_∘',
                                windows.orthogonal, mixed_defects()))
    return reports


def pi_formula(gen, operator):
    """Σ S_i Φ₁(⟨u_i|Lu_j⟩_B1) S_j* + Σ T_k Φ₂(⟨v_k|Lv_l⟩_B2) T_l*."""

    spec = gen.spec
    total = gen.fock.zero(degree=0)
    for i in (1, 2):
        basis = spec.basis(i)
        for a, x in enumerate(basis):
            for b, y in enumerate(basis):
                coefficient = _coefficient(spec, i, x, operator @ y)
                if coefficient.is_zero():
                    continue
                total = total + gen.family(i)[a] @ gen.phi(i, coefficient) @ gen.star(i, b)
    return total


@dataclass
class PiResult:
    """π(L) on the Fock module, the coordinates of L in B_∘ and the checks made on it."""

    operator: object
    coordinates: list
    reports: list


def compute_pi(gen, operator):
    """π(L) for L in the algebra generated by φ₁(B₁) and φ₂(B₂); NotInBCirc otherwise."""

    spec = gen.spec
    windows = gen.windows
    coordinates = gen.bcirc.coordinates(operator)
    image = pi_formula(gen, operator)

    def compression_defects(i):
        basis = spec.basis(i)
        for h, x in enumerate(basis):
            for k, y in enumerate(basis):
                lhs = gen.star(i, h) @ image @ gen.family(i)[k]
                yield {'pair': [h, k]}, lhs - gen.phi(i, _coefficient(spec, i, x, operator @ y))

    vanishes = image.witness_on(windows.compact) is None
    injective = not vanishes or operator.is_zero()
    reports = [
        window_check('pi_compression_s', 'S_h* π(L) S_h′ = ⟨u_h|Lu_h′⟩_B1', windows.isometry, compression_defects(1)),
        window_check('pi_compression_t', 'T_k* π(L) T_k′ = ⟨v_k|Lv_k′⟩_B2', windows.isometry, compression_defects(2)),
        window_check('pi_matches_bcirc', 'π(L) acts as L on the Fock module', windows.compact,
                     [({}, image - gen.bcirc_operator(operator))]),
        IdentityWindowReport('pi_injective', 'π(L) = 0 forces L = 0', windows.compact, injective,
                             None if injective else {'issue': 'π(L) vanishes on the window but L is nonzero'}),
    ]
    return PiResult(image, coordinates, reports)


def pi_multiplicativity(gen):
    """π(L)π(L′) = π(LL′) for L, L′ running over the minimal idempotents of B_∘."""

    basis = gen.bcirc.idempotents
    images = [pi_formula(gen, p.matrix) for p in basis]

    def defects():
        for a, p in enumerate(basis):
            for b, q in enumerate(basis):
                yield {'pair': [p.label, q.label]}, images[a] @ images[b] - pi_formula(gen, p.matrix @ q.matrix)

    return window_check('pi_multiplicative', 'π(L)π(L′) = π(LL′)', gen.windows.compact, defects())


def verify_core_relations(gen):
    """Membership and trace formulas, the expansions of z, w, z*, w*, zw, wz and of x ∈ B_∘."""

    spec = gen.spec
    windows = gen.windows
    reports = []
    for i, other, name in ((1, 2, 's'), (2, 1, 't')):
        embed = spec.embed(i)
        witness = None
        for c in range(spec.algebra(f'B{other}').dim):
            action = spec.left_tensor(other)[c]
            for j, x in enumerate(spec.basis(i)):
                coefficient = _coefficient(spec, i, x, action @ x)
                preimage = embed.solve_preimage(coefficient)
                if preimage is None:
                    witness = {'idempotent': c, 'j': j, 'issue': f'not in the image of A in B{i}'}
                    break
                lhs = gen.star(i, j) @ gen.phi_idempotent(other, c) @ gen.family(i)[j]
                witness = (lhs - gen.phi(i, embed(preimage))).witness_on(windows.exact)
                if witness:
                    witness.update({'idempotent': c, 'j': j})
                    break
            if witness:
                break
        letter = 'w' if other == 2 else 'z'
        reports.append(IdentityWindowReport(
            f'compression_in_a_{name}', f'{name.upper()}_j* {letter} {name.upper()}_j belongs to A',
            windows.exact, witness is None, witness))

        def trace_defects(i=i, other=other):
            for a, x in enumerate(spec.h_basis()):
                for b, y in enumerate(spec.h_basis()):
                    middle = gen.phi(other, _coefficient(spec, other, x, y))
                    total = gen.fock.zero(degree=0)
                    for j in range(len(gen.family(i))):
                        total = total + gen.star(i, j) @ middle @ gen.family(i)[j]
                    expected = gen.phi(i, spec.embed(i)(spec.inner('A', x, y)))
                    yield {'pair': [a, b]}, total - expected

        reports.append(window_check(
            f'trace_formula_{name}',
            f'Σ_j {name.upper()}_j* ⟨ξ|η⟩_B{other} {name.upper()}_j = ⟨ξ|η⟩_A', windows.exact, trace_defects()))

    gram = spec.scalar_gram()

    def expansion_defects(i, star=False):
        algebra = spec.algebra(f'B{i}')
        elements = [algebra.generic_element()] if star else algebra.idempotents()
        for index, z in enumerate(elements):
            matrix = spec.left(i, z)
            if star:
                matrix, z = gram_adjoint(matrix, gram, gram), algebra.star(z)
            yield {'element': index}, gen.phi(i, z) - pi_formula(gen, matrix)

    reports.append(window_check('expansion_z', 'z = Σ S_i⟨u_i|φ₁(z)u_j⟩S_j* + Σ T_k⟨v_k|φ₁(z)v_l⟩T_l*',
                                windows.compact, expansion_defects(1)))
    reports.append(window_check('expansion_w', 'w = Σ S_i⟨u_i|φ₂(w)u_j⟩S_j* + Σ T_k⟨v_k|φ₂(w)v_l⟩T_l*',
                                windows.compact, expansion_defects(2)))
    reports.append(window_check('expansion_z_star', 'z* = Σ S_i⟨u_i|φ₁(z)*u_j⟩S_j* + Σ T_k⟨v_k|φ₁(z)*v_l⟩T_l*',
                                windows.compact, expansion_defects(1, star=True)))
    reports.append(window_check('expansion_w_star', 'w* = Σ S_i⟨u_i|φ₂(w)*u_j⟩S_j* + Σ T_k⟨v_k|φ₂(w)*v_l⟩T_l*',
                                windows.compact, expansion_defects(2, star=True)))

    def product_defects(first, second):
        for b in range(spec.algebra(f'B{first}').dim):
            for c in range(spec.algebra(f'B{second}').dim):
                lhs = gen.phi_idempotent(first, b) @ gen.phi_idempotent(second, c)
                matrix = spec.left_tensor(first)[b] @ spec.left_tensor(second)[c]
                yield {'idempotents': [b, c]}, lhs - pi_formula(gen, matrix)

    reports.append(window_check('expansion_zw', 'zw = Σ S_i⟨u_i|φ₁(z)φ₂(w)u_j⟩S_j* + Σ T_k⟨v_k|φ₁(z)φ₂(w)v_l⟩T_l*',
                                windows.compact, product_defects(1, 2)))
    reports.append(window_check('expansion_wz', 'wz = Σ S_i⟨u_i|φ₂(w)φ₁(z)u_j⟩S_j* + Σ T_k⟨v_k|φ₂(w)φ₁(z)v_l⟩T_l*',
                                windows.compact, product_defects(2, 1)))

    def reconstruction_defects():
        for p in gen.bcirc.idempotents:
            yield {'idempotent': p.label}, gen.bcirc_operator(p.matrix) - pi_formula(gen, p.matrix)

    reports.append(window_check(
        'bcirc_reconstruction', 'x = Σ S_i⟨u_i|φ_∘(x)u_j⟩S_j* + Σ T_k⟨v_k|φ_∘(x)v_l⟩T_l* for x ∈ B_∘',
        windows.compact, reconstruction_defects()))
    reports.append(pi_multiplicativity(gen))
    return reports


# Core filtration

def _compose(fock, operators):
    result = fock.identity()
    for op in operators:
        result = result @ op
    return result


def _span_rank(operators, window):
    """Dimension of the span of the operators restricted to the window."""

    restricted = [op.restrict(window) for op in operators]
    columns = sorted({(key, position) for op in restricted for key, block in op.blocks.items()
                      for position in block.nonzero_positions()})
    if not columns:
        return 0
    rows = []
    for op in restricted:
        row = []
        for key, (r, c) in columns:
            block = op.blocks.get(key)
            row.append(block[r, c] if block is not None else 0)
        rows.append(row)
    return ExactMatrix.from_rows(rows, cols=len(columns)).rank()


def _filtration_words(gen, m):
    """S_μ b S_ν* for |μ| = |ν| = m over Σ₁ ∪ Σ₂ and b a minimal idempotent of B_∘."""

    letters = [op for _, op in gen.letters()]
    middles = [gen.bcirc_operator(p.matrix) for p in gen.bcirc.idempotents]
    prefixes = [_compose(gen.fock, word) for word in product(letters, repeat=m)]
    suffixes = [prefix.adjoint() for prefix in prefixes]
    return [prefix @ b @ suffix for prefix in prefixes for b in middles for suffix in suffixes]


def filtration_window(gen, n):
    """Levels n+2..K, where every word of F^m, m < n, expands into F^(m+1)."""

    if n < 0 or n > gen.depth - 2:
        raise DepthTooSmall(f'the filtration up to n={n} needs depth K >= {n + 2}, got {gen.depth}')
    return n + 2, gen.depth


def core_filtration_dims(gen, n):
    """dim F^m for m = 0..n, each restricted to levels n+1..K."""

    if n < 0 or n > gen.depth - 1:
        raise InvalidParameter(f'the core filtration is tracked for 0 <= n <= K-1 = {gen.depth - 1}, got n={n}')
    window = n + 1, gen.depth
    dims = [_span_rank(_filtration_words(gen, m), window) for m in range(n + 1)]
    logger.info('core filtration of %s on levels %s..%s: %s', gen.spec.label, *window, dims)
    return dims


def filtration_report(gen, n):
    """Nesting F^m ⊂ F^(m+1) on the filtration window, as ranks of joint spans.

    When the depth leaves no level above n+1 the dims are still returned and the
    nesting check is reported as skipped.
    """

    if n > gen.depth - 2:
        dims = core_filtration_dims(gen, n)
        window = n + 1, gen.depth
        return dims, IdentityWindowReport('filtration_nested', 'F^m embeds in F^(m+1)', window, True, None,
                                          informational=True,
                                          note=f'skipped: nesting needs depth K >= {n + 2}; dims {dims}')
    window = filtration_window(gen, n)
    spans = [_filtration_words(gen, m) for m in range(n + 1)]
    dims = [_span_rank(words, window) for words in spans]
    witness = None
    for m in range(n):
        joint = _span_rank(spans[m] + spans[m + 1], window)
        if joint != dims[m + 1]:
            witness = {'m': m, 'dims': [dims[m], dims[m + 1]], 'joint': joint}
            break
    return dims, IdentityWindowReport('filtration_nested', 'F^m embeds in F^(m+1)', window, witness is None,
                                      witness, note=f'dims {dims}')


def fixed_point_check(gen):
    """Degree-0 parts of short mixed words lie in the span of F⁰ and F¹ on levels 2..K−1."""

    if gen.depth < 3:
        raise DepthTooSmall(f'the fixed-point check needs depth K >= 3, got {gen.depth}')
    window = gen.windows.inner
    span = _filtration_words(gen, 0) + _filtration_words(gen, 1)
    letters = [op for _, op in gen.letters()]
    middles = [gen.bcirc_operator(p.matrix) for p in gen.bcirc.idempotents]
    words = []
    for x in letters:
        for b in middles:
            words.append((x @ b).degree_zero_part())
            for y in letters:
                words.append((x.adjoint() @ b @ y).degree_zero_part())
                words.append((x @ b @ y.adjoint()).degree_zero_part())
    base = _span_rank(span, window)
    joint = _span_rank(span + words, window)
    passed = base == joint
    return IdentityWindowReport(
        'fixed_point_algebra', 'the degree-0 part of a word lies in the core F', window, passed,
        None if passed else {'core_rank': base, 'with_words': joint})
