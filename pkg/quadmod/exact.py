"""Exact arithmetic over the Gaussian rationals ℚ[i].

Matrices keep their real and imaginary parts as numpy object arrays of Python
integers over one shared positive denominator, so every product and row
operation runs on big integers and nothing is ever rounded.
"""
import enum
import logging
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd

import numpy as np

from .exceptions import DimensionMismatch, NotHermitian, SingularGram, SingularMatrix

logger = logging.getLogger(__name__)


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f'cannot use {type(value).__name__} as an exact rational')


def _lcm(a, b):
    return a * b // gcd(a, b)


class GaussianRational:
    """A scalar re + i·im with arbitrary precision rational parts."""

    __slots__ = ('re', 'im')

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + _as_fraction(im)
        object.__setattr__(self, 're', _as_fraction(re))
        object.__setattr__(self, 'im', _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError('GaussianRational is immutable')

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        return NotImplemented

    @classmethod
    def from_quad(cls, quad):
        """Build from [reNum, reDen, imNum, imDen]."""

        re_num, re_den, im_num, im_den = quad
        return cls(Fraction(re_num, re_den), Fraction(im_num, im_den))

    def to_quad(self):
        return [self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator]

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """Return |z|² as a Fraction."""

        return self.re * self.re + self.im * self.im

    @property
    def is_real(self):
        return self.im == 0

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        norm = other.norm()
        if norm == 0:
            raise ZeroDivisionError('division by a zero Gaussian rational')
        numerator = self * other.conjugate()
        return GaussianRational(numerator.re / norm, numerator.im / norm)

    def __rtruediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else ONE / self
        result = ONE
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f'GaussianRational({self.re}, {self.im})'

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        imaginary = 'i' if abs(self.im) == 1 else f'{abs(self.im)}i'
        if self.re == 0:
            return imaginary if self.im > 0 else f'-{imaginary}'
        sign = '+' if self.im > 0 else '-'
        return f'{self.re} {sign} {imaginary}'


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def _object_array(values, shape):
    array = np.empty(shape, dtype=object)
    if array.size:
        array[...] = values
    return array


def _normalize(re, im, den):
    if den == 0:
        raise ZeroDivisionError('matrix denominator is zero')
    if den < 0:
        re, im, den = -re, -im, -den
    common = reduce(gcd, im.flat, reduce(gcd, re.flat, den))
    if common > 1:
        re, im, den = re // common, im // common, den // common
    return re, im, den


def _row_reduce(re, im):
    """Fraction-free Gauss-Jordan elimination over the Gaussian integers.

    Returns the reduced integer rows and the pivot columns. Pivot rows keep
    their own (nonzero) pivot value; every other entry of a pivot column is 0.
    """
    re = re.copy()
    im = im.copy()
    rows, cols = re.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        candidate = next((k for k in range(r, rows) if re[k, c] or im[k, c]), None)
        if candidate is None:
            continue
        if candidate != r:
            re[[r, candidate]] = re[[candidate, r]]
            im[[r, candidate]] = im[[candidate, r]]
        common = reduce(gcd, im[r], reduce(gcd, re[r], 0))
        if common > 1:
            re[r] = re[r] // common
            im[r] = im[r] // common
        pr, pi = re[r, c], im[r, c]
        for k in range(rows):
            if k == r:
                continue
            ar, ai = re[k, c], im[k, c]
            if not (ar or ai):
                continue
            new_re = pr * re[k] - pi * im[k] - (ar * re[r] - ai * im[r])
            new_im = pr * im[k] + pi * re[k] - (ar * im[r] + ai * re[r])
            common = reduce(gcd, new_im, reduce(gcd, new_re, 0))
            if common > 1:
                new_re = new_re // common
                new_im = new_im // common
            re[k] = new_re
            im[k] = new_im
        pivots.append(c)
        r += 1
    return re, im, pivots


def _divide_by_pivots(re, im, pivots):
    """Scale pivot row r by 1/(its pivot) and return the rows over one denominator."""

    norms = []
    for r, c in enumerate(pivots):
        pr, pi = re[r, c], im[r, c]
        norms.append(pr * pr + pi * pi)
    den = reduce(_lcm, norms, 1)
    out_re = np.zeros(re.shape, dtype=object)
    out_im = np.zeros(re.shape, dtype=object)
    for r, c in enumerate(pivots):
        pr, pi = re[r, c], im[r, c]
        factor = den // norms[r]
        out_re[r] = (re[r] * pr + im[r] * pi) * factor
        out_im[r] = (im[r] * pr - re[r] * pi) * factor
    return out_re, out_im, den


class ExactMatrix:
    """Immutable dense matrix of Gaussian rationals."""

    __slots__ = ('re', 'im', 'den')

    def __init__(self, re, im=None, den=1):
        re = np.array(re, dtype=object)
        if re.ndim != 2:
            raise DimensionMismatch(f'expected a 2-D array, got {re.ndim}-D')
        im = np.zeros(re.shape, dtype=object) if im is None else np.array(im, dtype=object)
        if im.shape != re.shape:
            raise DimensionMismatch('real and imaginary parts differ in shape')
        re, im, den = _normalize(re, im, int(den))
        re.flags.writeable = False
        im.flags.writeable = False
        object.__setattr__(self, 're', re)
        object.__setattr__(self, 'im', im)
        object.__setattr__(self, 'den', den)

    def __setattr__(self, name, value):
        raise AttributeError('ExactMatrix is immutable')

    # Construction

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [[GaussianRational(0) + entry for entry in row] for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise DimensionMismatch('rows have different lengths')
        shape = (len(rows), cols)
        den = 1
        for row in rows:
            for entry in row:
                den = _lcm(den, _lcm(entry.re.denominator, entry.im.denominator))
        re = _object_array(
            [[entry.re.numerator * (den // entry.re.denominator) for entry in row] for row in rows], shape)
        im = _object_array(
            [[entry.im.numerator * (den // entry.im.denominator) for entry in row] for row in rows], shape)
        return cls(re, im, den)

    @classmethod
    def column(cls, values):
        return cls.from_rows([[value] for value in values], cols=1)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(np.zeros((rows, cols), dtype=object))

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n, dtype=object))

    @classmethod
    def diag(cls, values):
        values = list(values)
        rows = [[values[k] if k == j else 0 for j in range(len(values))] for k in range(len(values))]
        return cls.from_rows(rows, cols=len(values))

    @classmethod
    def unit(cls, n, k):
        """The k-th standard basis column of length n."""

        re = np.zeros((n, 1), dtype=object)
        re[k, 0] = 1
        return cls(re)

    @classmethod
    def matrix_unit(cls, rows, cols, i, j):
        re = np.zeros((rows, cols), dtype=object)
        re[i, j] = 1
        return cls(re)

    @classmethod
    def from_quads(cls, nested):
        return cls.from_rows([[GaussianRational.from_quad(quad) for quad in row] for row in nested])

    @classmethod
    def hstack(cls, matrices, rows=None):
        matrices = list(matrices)
        if not matrices:
            return cls.zeros(rows or 0, 0)
        den = reduce(_lcm, (m.den for m in matrices), 1)
        re = np.hstack([m.re * (den // m.den) for m in matrices])
        im = np.hstack([m.im * (den // m.den) for m in matrices])
        return cls(re, im, den)

    @classmethod
    def vstack(cls, matrices, cols=None):
        matrices = list(matrices)
        if not matrices:
            return cls.zeros(0, cols or 0)
        den = reduce(_lcm, (m.den for m in matrices), 1)
        re = np.vstack([m.re * (den // m.den) for m in matrices])
        im = np.vstack([m.im * (den // m.den) for m in matrices])
        return cls(re, im, den)

    # Shape and access

    @property
    def shape(self):
        return self.re.shape

    @property
    def rows(self):
        return self.re.shape[0]

    @property
    def cols(self):
        return self.re.shape[1]

    def __getitem__(self, key):
        i, j = key
        return GaussianRational(Fraction(self.re[i, j], self.den), Fraction(self.im[i, j], self.den))

    def entries(self):
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def to_quads(self):
        return [[entry.to_quad() for entry in row] for row in self.entries()]

    def vector(self):
        """Entries of a single column as a list."""

        if self.cols != 1:
            raise DimensionMismatch(f'expected a column, got shape {self.shape}')
        return [self[i, 0] for i in range(self.rows)]

    def submatrix(self, rows, cols):
        index = np.ix_(list(rows), list(cols))
        return ExactMatrix(self.re[index], self.im[index], self.den)

    def col(self, j):
        return self.submatrix(range(self.rows), [j])

    @property
    def is_real(self):
        return not any(self.im.flat)

    def is_zero(self):
        return not any(self.re.flat) and not any(self.im.flat)

    def nonzero_positions(self):
        mask = (self.re != 0) | (self.im != 0)
        return [tuple(int(k) for k in position) for position in np.argwhere(mask)]

    def first_nonzero(self):
        """Position and value of the first nonzero entry in row-major order, or None."""

        positions = self.nonzero_positions()
        if not positions:
            return None
        i, j = positions[0]
        return (i, j), self[i, j]

    # Arithmetic

    def _common(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f'shapes {self.shape} and {other.shape} differ')
        den = _lcm(self.den, other.den)
        a, b = den // self.den, den // other.den
        return self.re * a, self.im * a, other.re * b, other.im * b, den

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        re1, im1, re2, im2, den = self._common(other)
        return ExactMatrix(re1 + re2, im1 + im2, den)

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        re1, im1, re2, im2, den = self._common(other)
        return ExactMatrix(re1 - re2, im1 - im2, den)

    def __neg__(self):
        return ExactMatrix(-self.re, -self.im, self.den)

    def scale(self, scalar):
        scalar = GaussianRational(0) + scalar
        den = self.den * scalar.re.denominator * scalar.im.denominator
        a = scalar.re.numerator * scalar.im.denominator
        b = scalar.im.numerator * scalar.re.denominator
        return ExactMatrix(self.re * a - self.im * b, self.re * b + self.im * a, den)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction, GaussianRational)):
            return self.scale(scalar)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f'cannot multiply {self.shape} by {other.shape}')
        if self.cols == 0:
            return ExactMatrix.zeros(self.rows, other.cols)
        re = self.re @ other.re
        if self.is_real and other.is_real:
            return ExactMatrix(re, None, self.den * other.den)
        re = re - self.im @ other.im
        im = self.re @ other.im + self.im @ other.re
        return ExactMatrix(re, im, self.den * other.den)

    def kron(self, other):
        re = np.kron(self.re, other.re) - np.kron(self.im, other.im)
        im = np.kron(self.re, other.im) + np.kron(self.im, other.re)
        shape = (self.rows * other.rows, self.cols * other.cols)
        return ExactMatrix(re.reshape(shape), im.reshape(shape), self.den * other.den)

    @property
    def T(self):
        return ExactMatrix(self.re.T, self.im.T, self.den)

    @property
    def H(self):
        return ExactMatrix(self.re.T, -self.im.T, self.den)

    def trace(self):
        return sum((self[k, k] for k in range(min(self.shape))), ZERO)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.den == other.den
            and np.array_equal(self.re, other.re)
            and np.array_equal(self.im, other.im)
        )

    __hash__ = None

    def __repr__(self):
        return f'ExactMatrix({self.rows}x{self.cols}, {self.entries()})'

    # Elimination

    def rank(self):
        return len(_row_reduce(self.re, self.im)[2])

    def rref(self):
        """Reduced row echelon form and pivot columns (leftmost pivot rule)."""

        re, im, pivots = _row_reduce(self.re, self.im)
        out_re, out_im, den = _divide_by_pivots(re, im, pivots)
        return ExactMatrix(out_re, out_im, den), pivots

    def pivot_columns(self):
        return _row_reduce(self.re, self.im)[2]

    def solve(self, rhs):
        """Return X with self @ X = rhs (free variables set to 0), or None if inconsistent."""

        if rhs.rows != self.rows:
            raise DimensionMismatch(f'cannot solve {self.shape} against {rhs.shape}')
        augmented = ExactMatrix.hstack([self, rhs])
        re, im, pivots = _row_reduce(augmented.re, augmented.im)
        if any(c >= self.cols for c in pivots):
            return None
        out_re, out_im, den = _divide_by_pivots(re, im, pivots)
        solution_re = np.zeros((self.cols, rhs.cols), dtype=object)
        solution_im = np.zeros((self.cols, rhs.cols), dtype=object)
        for r, c in enumerate(pivots):
            solution_re[c] = out_re[r, self.cols:]
            solution_im[c] = out_im[r, self.cols:]
        return ExactMatrix(solution_re, solution_im, den)

    def inverse(self):
        if self.rows != self.cols:
            raise DimensionMismatch(f'cannot invert a {self.rows}x{self.cols} matrix')
        if self.rows and self.rank() < self.rows:
            raise SingularMatrix(f'{self.rows}x{self.cols} matrix is singular')
        return self.solve(ExactMatrix.identity(self.rows))


def combine(matrices, coefficients, shape=None):
    """Return Σ c_k · M_k."""

    total = None
    for matrix, coefficient in zip(matrices, coefficients):
        if not coefficient:
            continue
        term = matrix.scale(coefficient)
        total = term if total is None else total + term
    if total is None:
        if shape is None:
            shape = matrices[0].shape
        return ExactMatrix.zeros(*shape)
    return total


def conj_transpose(m):
    return m.H


def kernel_basis(m):
    """Exact basis of the right null space, one free column at a time."""

    re, im, pivots = _row_reduce(m.re, m.im)
    reduced = ExactMatrix(*_divide_by_pivots(re, im, pivots))
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        values = [ZERO] * m.cols
        values[f] = ONE
        for r, c in enumerate(pivots):
            values[c] = -reduced[r, f]
        basis.append(ExactMatrix.column(values))
    return basis


class PsdClass(enum.Enum):
    POSITIVE_DEFINITE = 'positive_definite'
    POSITIVE_SEMIDEFINITE_WITH_KERNEL = 'positive_semidefinite_with_kernel'
    INDEFINITE = 'indefinite'


class GramForm:
    """Hermitian form ⟨x|y⟩ = x^H·G·y."""

    def __init__(self, matrix):
        if matrix.rows != matrix.cols:
            raise DimensionMismatch(f'Gram form must be square, got {matrix.shape}')
        if matrix != matrix.H:
            raise NotHermitian('Gram matrix is not Hermitian')
        self.matrix = matrix

    @classmethod
    def identity(cls, n):
        return cls(ExactMatrix.identity(n))

    @classmethod
    def diag(cls, values):
        return cls(ExactMatrix.diag(values))

    @property
    def dim(self):
        return self.matrix.rows

    @cached_property
    def inverse(self):
        try:
            return self.matrix.inverse()
        except SingularMatrix as error:
            raise SingularGram(str(error)) from error

    def pair(self, x, y):
        return (x.H @ self.matrix @ y)[0, 0]

    def classify(self):
        return psd_check(self)

    def __eq__(self, other):
        if not isinstance(other, GramForm):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None

    def __repr__(self):
        return f'GramForm(dim={self.dim})'


def gram_adjoint(t, g_dom, g_cod):
    """Adjoint T* characterised by ⟨Tx|y⟩_cod = ⟨x|T*y⟩_dom."""

    if t.cols != g_dom.dim or t.rows != g_cod.dim:
        raise DimensionMismatch(
            f'operator of shape {t.shape} does not map a {g_dom.dim}-space to a {g_cod.dim}-space')
    return g_dom.inverse @ t.H @ g_cod.matrix


def psd_check(g):
    """Classify a Hermitian form by exact LDL^H elimination with symmetric pivoting."""

    matrix = g.matrix if isinstance(g, GramForm) else g
    if matrix.rows != matrix.cols or matrix != matrix.H:
        raise NotHermitian('psd_check needs a Hermitian matrix')
    re, im = matrix.re.copy(), matrix.im.copy()
    while re.shape[0]:
        diagonal = [re[k, k] for k in range(re.shape[0])]
        if any(d < 0 for d in diagonal):
            return PsdClass.INDEFINITE
        k = next((k for k, d in enumerate(diagonal) if d > 0), None)
        if k is None:
            if any(re.flat) or any(im.flat):
                return PsdClass.INDEFINITE
            return PsdClass.POSITIVE_SEMIDEFINITE_WITH_KERNEL
        d = diagonal[k]
        others = [j for j in range(re.shape[0]) if j != k]
        g_re, g_im = re[others, k], im[others, k]
        index = np.ix_(others, others)
        schur_re = d * re[index] - (np.outer(g_re, g_re) + np.outer(g_im, g_im))
        schur_im = d * im[index] - (np.outer(g_im, g_re) - np.outer(g_re, g_im))
        common = reduce(gcd, schur_im.flat, reduce(gcd, schur_re.flat, 0))
        if common > 1:
            schur_re, schur_im = schur_re // common, schur_im // common
        re, im = schur_re, schur_im
    return PsdClass.POSITIVE_DEFINITE
