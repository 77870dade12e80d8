"""Finite-dimensional commutative C*-algebras ℂ^d and homomorphisms between them.

Elements are columns of coordinates in the basis of minimal idempotents, so the
product is coordinatewise and the involution is coordinatewise conjugation.
"""
from dataclasses import dataclass

from .exact import ExactMatrix, GaussianRational
from .exceptions import DimensionMismatch, InvalidParameter
from .reports import ValidationReport, matrix_witness


@dataclass(frozen=True)
class FinDimCommAlgebra:
    """The diagonal algebra ℂ^dim."""

    dim: int
    label: str

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidParameter(f'algebra {self.label} must have positive dimension')

    def element(self, values):
        values = list(values)
        if len(values) != self.dim:
            raise DimensionMismatch(f'{self.label} elements have {self.dim} coordinates, got {len(values)}')
        return ExactMatrix.column(values)

    def unit(self):
        return self.element([1] * self.dim)

    def zero(self):
        return ExactMatrix.zeros(self.dim, 1)

    def idempotent(self, k):
        return ExactMatrix.unit(self.dim, k)

    def idempotents(self):
        return [self.idempotent(k) for k in range(self.dim)]

    def as_diagonal(self, x):
        return ExactMatrix.diag(x.vector())

    def multiply(self, x, y):
        return self.as_diagonal(x) @ y

    def star(self, x):
        return ExactMatrix(x.re, -x.im, x.den)

    def trace(self, x):
        """τ: the coordinate sum."""

        return sum(x.vector(), GaussianRational(0))

    def generic_element(self):
        """A fixed element with distinct, non-real coordinates."""

        return self.element([GaussianRational(k + 1, 1) for k in range(self.dim)])

    def __str__(self):
        return f'{self.label} = C^{self.dim}'


@dataclass(frozen=True)
class AlgebraHom:
    """A linear map between diagonal algebras, given by its coordinate matrix."""

    source: FinDimCommAlgebra
    target: FinDimCommAlgebra
    matrix: ExactMatrix
    label: str = ''

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f'map {self.label} needs shape {(self.target.dim, self.source.dim)}, got {self.matrix.shape}')

    def __call__(self, x):
        return self.matrix @ x

    def image_of(self, k):
        return self.matrix.col(k)

    def solve_preimage(self, y):
        """Return x with hom(x) = y, or None when y is not in the image."""

        return self.matrix.solve(y)

    def verify(self, unital=True, report=None):
        """Check multiplicativity on minimal idempotents and, if asked, unitality."""

        if report is None:
            report = ValidationReport(f'homomorphism {self.label}')
        witness = None
        for a in range(self.source.dim):
            for b in range(self.source.dim):
                product = self.target.multiply(self.image_of(a), self.image_of(b))
                expected = self.image_of(a) if a == b else self.target.zero()
                if product != expected:
                    witness = matrix_witness(product - expected, idempotents=[a, b])
                    break
            if witness:
                break
        report.add(f'{self.label}_multiplicative', f'{self.label}(ab) = {self.label}(a){self.label}(b)',
                   witness is None, witness)
        if unital:
            image = self(self.source.unit())
            report.add(f'{self.label}_unital', f'{self.label}(1) = 1', image == self.target.unit(),
                       matrix_witness(image - self.target.unit()))
        return report


def permutation_matrix(permutation):
    """Matrix of the automorphism e_j ↦ e_{σ(j)} for a 0-based image tuple σ."""

    d = len(permutation)
    rows = [[1 if permutation[j] == i else 0 for j in range(d)] for i in range(d)]
    return ExactMatrix.from_rows(rows, cols=d)


def check_permutation(permutation, d):
    permutation = tuple(permutation)
    if len(permutation) != d or sorted(permutation) != list(range(d)):
        raise InvalidParameter(f'{permutation} is not a permutation of {d} points')
    return permutation


def parse_cycles(text, d):
    """Parse 1-based cycle notation such as '(123)', '(13)(2)' or '(1,10)' into image tuples."""

    images = list(range(d))
    text = text.strip()
    if text in ('', '()', 'id', 'e'):
        return tuple(images)
    if not (text.startswith('(') and text.endswith(')')):
        raise InvalidParameter(f'cannot read permutation {text!r}')
    seen = set()
    for chunk in text[1:-1].split(')('):
        points = chunk.split(',') if ',' in chunk else list(chunk)
        try:
            cycle = [int(point) - 1 for point in points if point.strip()]
        except ValueError as error:
            raise InvalidParameter(f'cannot read permutation {text!r}') from error
        if any(p < 0 or p >= d or p in seen for p in cycle):
            raise InvalidParameter(f'{text!r} is not a permutation of {d} points')
        seen.update(cycle)
        for position, point in enumerate(cycle):
            images[point] = cycle[(position + 1) % len(cycle)]
    return tuple(images)
