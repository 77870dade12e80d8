"""Structure-tensor description of a finite-dimensional Hilbert C*-quad module.

All actions are stored as dim H × dim H matrices acting on column vectors, one
per minimal idempotent of the acting algebra. Inner products are stored one
Hermitian matrix per coordinate: ⟨ξ|η⟩_c = ξ^H·G_c·η.
"""
import logging
from dataclasses import dataclass, replace

from .algebras import (
    AlgebraHom,
    FinDimCommAlgebra,
    check_permutation,
    permutation_matrix,
)
from .exact import ExactMatrix, GramForm, combine
from .exceptions import DimensionMismatch, InvalidParameter

logger = logging.getLogger(__name__)

INNER_KINDS = ('A', 'B1', 'B2')


@dataclass(frozen=True)
class QuadModuleSpec:
    """H over (A; B₁, B₂) with its finite bases {u_i} over B₁ and {v_k} over B₂."""

    algebra_a: FinDimCommAlgebra
    algebra_b1: FinDimCommAlgebra
    algebra_b2: FinDimCommAlgebra
    embed1: AlgebraHom
    embed2: AlgebraHom
    psi1: AlgebraHom
    psi2: AlgebraHom
    dim_h: int
    right_a: tuple
    varphi1: tuple
    varphi2: tuple
    phi1: tuple
    phi2: tuple
    inner_a: tuple
    inner_b1: tuple
    inner_b2: tuple
    basis_u: tuple
    basis_v: tuple
    label: str = 'H'

    def __post_init__(self):
        if self.dim_h < 1:
            raise InvalidParameter('dim H must be positive')
        if not self.basis_u or not self.basis_v:
            raise InvalidParameter('basisU and basisV must be nonempty')
        for name in ('right_a', 'varphi1', 'varphi2', 'phi1', 'phi2', 'inner_a', 'inner_b1', 'inner_b2',
                     'basis_u', 'basis_v'):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        self._check_dimensions()

    def _check_dimensions(self):
        square = (self.dim_h, self.dim_h)
        expected = {
            'right_a': self.algebra_a.dim,
            'varphi1': self.algebra_b1.dim,
            'varphi2': self.algebra_b2.dim,
            'phi1': self.algebra_b1.dim,
            'phi2': self.algebra_b2.dim,
            'inner_a': self.algebra_a.dim,
            'inner_b1': self.algebra_b1.dim,
            'inner_b2': self.algebra_b2.dim,
        }
        for name, count in expected.items():
            tensors = getattr(self, name)
            if len(tensors) != count:
                raise DimensionMismatch(f'{name} needs {count} matrices, got {len(tensors)}')
            for index, matrix in enumerate(tensors):
                if matrix.shape != square:
                    raise DimensionMismatch(f'{name}[{index}] must be {square}, got {matrix.shape}')
        for name in ('basis_u', 'basis_v'):
            for index, vector in enumerate(getattr(self, name)):
                if vector.shape != (self.dim_h, 1):
                    raise DimensionMismatch(f'{name}[{index}] must be a vector of length {self.dim_h}')
        for name, algebra in (('embed1', self.algebra_b1), ('embed2', self.algebra_b2),
                              ('psi1', self.algebra_b1), ('psi2', self.algebra_b2)):
            hom = getattr(self, name)
            if hom.source != self.algebra_a or hom.target != algebra:
                raise DimensionMismatch(f'{name} must map {self.algebra_a.label} into {algebra.label}')

    @property
    def m(self):
        return len(self.basis_u)

    @property
    def n(self):
        return len(self.basis_v)

    def algebra(self, kind):
        return {'A': self.algebra_a, 'B1': self.algebra_b1, 'B2': self.algebra_b2}[kind]

    def inner_tensor(self, kind):
        return {'A': self.inner_a, 'B1': self.inner_b1, 'B2': self.inner_b2}[kind]

    def left_tensor(self, i):
        return self.phi1 if i == 1 else self.phi2

    def right_tensor(self, i):
        return self.varphi1 if i == 1 else self.varphi2

    def embed(self, i):
        return self.embed1 if i == 1 else self.embed2

    def psi(self, i):
        return self.psi1 if i == 1 else self.psi2

    def basis(self, i):
        return self.basis_u if i == 1 else self.basis_v

    def inner(self, kind, x, y):
        """⟨x|y⟩ as an element of A, B₁ or B₂."""

        values = [(x.H @ g @ y)[0, 0] for g in self.inner_tensor(kind)]
        return self.algebra(kind).element(values)

    def left(self, i, b):
        """φ_i(b) as a matrix on H."""

        return combine(self.left_tensor(i), b.vector(), shape=(self.dim_h, self.dim_h))

    def right(self, i, b):
        """ϕ_i(b): ξ ↦ ξϕ_i(b) as a matrix on H."""

        return combine(self.right_tensor(i), b.vector(), shape=(self.dim_h, self.dim_h))

    def right_action_a(self, a):
        return combine(self.right_a, a.vector(), shape=(self.dim_h, self.dim_h))

    def scalar_gram(self):
        """The scalarized form τ_A∘⟨·|·⟩_A."""

        return GramForm(combine(self.inner_a, [1] * self.algebra_a.dim, shape=(self.dim_h, self.dim_h)))

    def h_basis(self):
        return [ExactMatrix.unit(self.dim_h, x) for x in range(self.dim_h)]

    def with_changes(self, **changes):
        return replace(self, **changes)


def _matrix_unit(n, k):
    return ExactMatrix.matrix_unit(n, n, k, k)


def build_example_mn(m, n):
    """H_{M,N} = ℂ^M ⊗ ℂ^N over (ℂ; ℂ^N, ℂ^M), index (i, k) ↦ i·N + k."""

    if m < 2 or n < 2:
        raise InvalidParameter(f'H_(M,N) needs M, N >= 2, got M={m}, N={n}')
    a = FinDimCommAlgebra(1, 'A')
    b1 = FinDimCommAlgebra(n, 'B1')
    b2 = FinDimCommAlgebra(m, 'B2')
    ones_n = ExactMatrix.from_rows([[1]] * n, cols=1)
    ones_m = ExactMatrix.from_rows([[1]] * m, cols=1)
    identity_m = ExactMatrix.identity(m)
    identity_n = ExactMatrix.identity(n)
    act_on_n = tuple(identity_m.kron(_matrix_unit(n, k)) for k in range(n))
    act_on_m = tuple(_matrix_unit(m, i).kron(identity_n) for i in range(m))
    basis_u = tuple(ExactMatrix.unit(m, i).kron(ones_n) for i in range(m))
    basis_v = tuple(ones_m.kron(ExactMatrix.unit(n, k)) for k in range(n))
    logger.debug('built H_(%d,%d) of dimension %d', m, n, m * n)
    return QuadModuleSpec(
        algebra_a=a,
        algebra_b1=b1,
        algebra_b2=b2,
        embed1=AlgebraHom(a, b1, ones_n, 'iota1'),
        embed2=AlgebraHom(a, b2, ones_m, 'iota2'),
        psi1=AlgebraHom(a, b1, ones_n, 'psi1'),
        psi2=AlgebraHom(a, b2, ones_m, 'psi2'),
        dim_h=m * n,
        right_a=(ExactMatrix.identity(m * n),),
        varphi1=act_on_n,
        varphi2=act_on_m,
        phi1=act_on_n,
        phi2=act_on_m,
        inner_a=(ExactMatrix.identity(m * n),),
        inner_b1=act_on_n,
        inner_b2=act_on_m,
        basis_u=basis_u,
        basis_v=basis_v,
        label=f'H_({m},{n})',
    )


def build_example_alpha_beta(d, sigma, tau):
    """H = ℂ^d over (ℂ^d; ℂ^d, ℂ^d) twisted by the permutation automorphisms α = σ, β = τ.

    sigma and tau are 0-based image tuples: α(e_j) = e_{σ(j)}. The right
    A-actions on B₁ and B₂ are ψ₁ = α⁻¹ and ψ₂ = β⁻¹.
    """
    if d < 1:
        raise InvalidParameter('d must be positive')
    sigma = check_permutation(sigma, d)
    tau = check_permutation(tau, d)
    a = FinDimCommAlgebra(d, 'A')
    b1 = FinDimCommAlgebra(d, 'B1')
    b2 = FinDimCommAlgebra(d, 'B2')
    identity = ExactMatrix.identity(d)
    alpha = permutation_matrix(sigma)
    beta = permutation_matrix(tau)
    units = [_matrix_unit(d, j) for j in range(d)]
    return QuadModuleSpec(
        algebra_a=a,
        algebra_b1=b1,
        algebra_b2=b2,
        embed1=AlgebraHom(a, b1, identity, 'iota1'),
        embed2=AlgebraHom(a, b2, identity, 'iota2'),
        psi1=AlgebraHom(a, b1, alpha.T, 'psi1'),
        psi2=AlgebraHom(a, b2, beta.T, 'psi2'),
        dim_h=d,
        right_a=tuple(units),
        varphi1=tuple(units[sigma[b]] for b in range(d)),
        varphi2=tuple(units[tau[b]] for b in range(d)),
        phi1=tuple(units[tau[sigma[b]]] for b in range(d)),
        phi2=tuple(units[sigma[tau[b]]] for b in range(d)),
        inner_a=tuple(units),
        inner_b1=tuple(units[sigma[c]] for c in range(d)),
        inner_b2=tuple(units[tau[c]] for c in range(d)),
        basis_u=(ExactMatrix.from_rows([[1]] * d, cols=1),),
        basis_v=(ExactMatrix.from_rows([[1]] * d, cols=1),),
        label=f'H_alpha_beta(d={d})',
    )


def automorphism_matrix(spec, which):
    """Coordinate matrix of α ('alpha') or β ('beta') for a twisted example.

    Recovered from the stored ψ maps, which are the inverses.
    """
    psi = spec.psi1 if which == 'alpha' else spec.psi2
    return psi.matrix.T
