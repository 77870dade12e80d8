"""Concrete model of B_∘: the algebra generated by φ₁(B₁) and φ₂(B₂) on H."""
import logging
from dataclasses import dataclass

from .exact import ExactMatrix, GaussianRational, combine
from .exceptions import AssumptionsViolated, NotInBCirc
from .reports import matrix_witness

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinimalIdempotent:
    """φ₂(g_c)·φ₁(f_b) for a nonzero product of minimal idempotents."""

    b2_index: int
    b1_index: int
    matrix: ExactMatrix

    @property
    def label(self):
        return f'({self.b2_index + 1},{self.b1_index + 1})'


class BCircModel:
    """The commutative algebra B_∘ on H with its basis of minimal idempotents.

    The idempotents are ordered with the B₂ index major, so for H_{M,N} the
    idempotent e_(i,k) sits at position i·N + k like the basis vector e_i ⊗ f_k.
    """

    def __init__(self, spec):
        self.spec = spec
        for b, f in enumerate(spec.phi1):
            for c, g in enumerate(spec.phi2):
                if f @ g != g @ f:
                    raise AssumptionsViolated(
                        'the left actions of B1 and B2 do not commute',
                        matrix_witness(f @ g - g @ f, b1=b, b2=c))
        self.idempotents = []
        for c, g in enumerate(spec.phi2):
            for b, f in enumerate(spec.phi1):
                product = g @ f
                if not product.is_zero():
                    self.idempotents.append(MinimalIdempotent(c, b, product))
        logger.debug('B_circ of %s has dimension %d', spec.label, self.dim)

    @property
    def dim(self):
        return len(self.idempotents)

    @property
    def labels(self):
        return [p.label for p in self.idempotents]

    def basis(self):
        return [p.matrix for p in self.idempotents]

    def element(self, values):
        values = list(values)
        size = (self.spec.dim_h, self.spec.dim_h)
        return combine(self.basis(), values, shape=size)

    def unit(self):
        return self.element([1] * self.dim)

    def coordinates(self, x):
        """Coordinates of x in the minimal idempotent basis; NotInBCirc when x is outside B_∘."""

        if x.shape != (self.spec.dim_h, self.spec.dim_h):
            raise NotInBCirc(f'{x.shape} is not an operator on H')
        values = []
        for p in self.idempotents:
            weight = p.matrix.trace()
            values.append((x @ p.matrix).trace() / weight)
        if self.element(values) != x:
            raise NotInBCirc('operator is not in the algebra generated by phi1(B1) and phi2(B2)')
        return values

    def contains(self, x):
        try:
            self.coordinates(x)
        except NotInBCirc:
            return False
        return True

    def support(self, x):
        """0/1 support vector of a projection of B_∘: its K₀ class."""

        values = self.coordinates(x)
        classes = []
        for value in values:
            if value == GaussianRational(0):
                classes.append(0)
            elif value == GaussianRational(1):
                classes.append(1)
            else:
                raise NotInBCirc(f'coefficient {value} is not 0 or 1, so x is not a projection')
        return classes

    def __repr__(self):
        return f'BCircModel({self.spec.label}, dim={self.dim})'
