"""Unit tests of exact matrices over the Gaussian rationals."""
from fractions import Fraction

from django.test import TestCase

from quadmod.exact import I, ExactMatrix, GaussianRational, combine, kernel_basis
from quadmod.exceptions import DimensionMismatch, SingularMatrix


class ExactMatrixTestCase(TestCase):
    """Unit tests of ExactMatrix."""

    def setUp(self):
        self.matrix = ExactMatrix.from_rows([[1, 2], [3, 4]])

    def test_inverse(self):
        expected = ExactMatrix.from_rows([[-2, 1], [Fraction(3, 2), Fraction(-1, 2)]])
        self.assertEqual(self.matrix.inverse(), expected)
        self.assertEqual(self.matrix @ self.matrix.inverse(), ExactMatrix.identity(2))

    def test_singular_matrix_has_no_inverse(self):
        with self.assertRaises(SingularMatrix):
            ExactMatrix.from_rows([[1, 2], [2, 4]]).inverse()

    def test_non_square_matrix_has_no_inverse(self):
        with self.assertRaises(DimensionMismatch):
            ExactMatrix.zeros(2, 3).inverse()

    def test_equal_values_compare_equal_whatever_the_denominator(self):
        halved = ExactMatrix.from_rows([[2, 4]]).scale(Fraction(1, 2))
        self.assertEqual(halved, ExactMatrix.from_rows([[1, 2]]))
        self.assertEqual(halved.den, 1)

    def test_entries_come_back_as_gaussian_rationals(self):
        matrix = ExactMatrix.from_rows([[GaussianRational(Fraction(1, 3), 2)]])
        self.assertEqual(matrix[0, 0], GaussianRational(Fraction(1, 3), 2))
        self.assertEqual(matrix.to_quads(), [[[1, 3, 2, 1]]])

    def test_conjugate_transpose(self):
        matrix = ExactMatrix.from_rows([[1, I], [0, 2]])
        self.assertEqual(matrix.H, ExactMatrix.from_rows([[1, 0], [-I, 2]]))
        self.assertEqual(matrix.T, ExactMatrix.from_rows([[1, 0], [I, 2]]))

    def test_complex_product(self):
        a = ExactMatrix.from_rows([[I, 1]])
        b = ExactMatrix.from_rows([[I], [1]])
        self.assertEqual(a @ b, ExactMatrix.from_rows([[0]]))
        self.assertEqual(a @ a.H, ExactMatrix.from_rows([[2]]))

    def test_product_of_mismatched_shapes_raises(self):
        with self.assertRaises(DimensionMismatch):
            self.matrix @ ExactMatrix.zeros(3, 1)

    def test_sum_of_mismatched_shapes_raises(self):
        with self.assertRaises(DimensionMismatch):
            self.matrix + ExactMatrix.zeros(3, 3)

    def test_rank_over_gaussian_rationals(self):
        matrix = ExactMatrix.from_rows([[1, I], [I, -1]])
        self.assertEqual(matrix.rank(), 1)
        self.assertEqual(ExactMatrix.identity(3).rank(), 3)

    def test_rref_uses_leftmost_pivots(self):
        reduced, pivots = ExactMatrix.from_rows([[0, 2, 4], [0, 1, 3]]).rref()
        self.assertEqual(pivots, [1, 2])
        self.assertEqual(reduced, ExactMatrix.from_rows([[0, 1, 0], [0, 0, 1]]))

    def test_solve(self):
        rhs = ExactMatrix.column([5, 11])
        self.assertEqual(self.matrix.solve(rhs), ExactMatrix.column([1, 2]))

    def test_solve_inconsistent_system_returns_none(self):
        matrix = ExactMatrix.from_rows([[1, 1], [1, 1]])
        self.assertIsNone(matrix.solve(ExactMatrix.column([1, 2])))

    def test_kernel_basis_spans_the_null_space(self):
        matrix = ExactMatrix.from_rows([[1, 2, 3]])
        basis = kernel_basis(matrix)
        self.assertEqual(len(basis), 2)
        for vector in basis:
            self.assertTrue((matrix @ vector).is_zero())

    def test_kron(self):
        product = ExactMatrix.identity(2).kron(ExactMatrix.from_rows([[0, 1], [1, 0]]))
        self.assertEqual(product.shape, (4, 4))
        self.assertEqual(product[0, 1], GaussianRational(1))
        self.assertEqual(product[0, 3], GaussianRational(0))

    def test_first_nonzero_is_row_major(self):
        matrix = ExactMatrix.from_rows([[0, 0], [0, 5], [7, 0]])
        self.assertEqual(matrix.first_nonzero(), ((1, 1), GaussianRational(5)))
        self.assertIsNone(ExactMatrix.zeros(2, 2).first_nonzero())

    def test_combine(self):
        total = combine([ExactMatrix.identity(2), self.matrix], [2, I])
        self.assertEqual(total, ExactMatrix.from_rows([[2 + I, 2 * I], [3 * I, 2 + 4 * I]]))

    def test_combine_of_zero_coefficients_is_zero(self):
        self.assertTrue(combine([self.matrix], [0]).is_zero())

    def test_is_immutable(self):
        with self.assertRaises(AttributeError):
            self.matrix.den = 2
        with self.assertRaises(ValueError):
            self.matrix.re[0, 0] = 9

    def test_ragged_rows_are_rejected(self):
        with self.assertRaises(DimensionMismatch):
            ExactMatrix.from_rows([[1, 2], [3]])
