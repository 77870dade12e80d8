"""Unit tests of the Cuntz-Krieger matrix, aperiodicity and column amalgamation."""
import numpy as np
from django.test import TestCase

from quadmod.ck import ck_matrix, column_amalgamation, is_aperiodic
from quadmod.exceptions import InvalidParameter
from quadmod.ktheory import cokernel, identity_matrix


class CKMatrixTestCase(TestCase):
    """Unit tests of ck_matrix."""

    def setUp(self):
        self.bundle = ck_matrix(2, 2)

    def test_a_plus_b_for_h22(self):
        expected = [[2, 1, 1, 0], [1, 2, 0, 1], [1, 0, 2, 1], [0, 1, 1, 2]]
        self.assertEqual((self.bundle.a + self.bundle.b).tolist(), expected)

    def test_h_is_made_of_a_and_b_blocks(self):
        h = self.bundle.h
        self.assertEqual(h.shape, (8, 8))
        self.assertTrue(np.array_equal(h[:4, :4], self.bundle.a))
        self.assertTrue(np.array_equal(h[:4, 4:], self.bundle.a))
        self.assertTrue(np.array_equal(h[4:, :4], self.bundle.b))
        self.assertTrue(np.array_equal(h[4:, 4:], self.bundle.b))

    def test_entries_are_zero_or_one(self):
        for m, n in ((2, 3), (3, 2), (3, 4)):
            self.assertTrue(set(ck_matrix(m, n).h.flat) <= {0, 1})

    def test_to_json(self):
        data = self.bundle.to_json()
        self.assertEqual(set(data), {'A', 'B', 'H'})
        self.assertEqual(data['A'][0], [1, 0, 1, 0])

    def test_needs_two_states_each(self):
        with self.assertRaises(InvalidParameter):
            ck_matrix(2, 1)


class AperiodicityTestCase(TestCase):
    """Unit tests of is_aperiodic."""

    def test_golden_mean_matrix(self):
        self.assertEqual(is_aperiodic([[0, 1], [1, 1]]), (True, 2))

    def test_positive_matrix(self):
        self.assertEqual(is_aperiodic([[1, 1], [1, 1]]), (True, 1))

    def test_identity_is_not_aperiodic(self):
        self.assertEqual(is_aperiodic([[1, 0], [0, 1]]), (False, None))

    def test_cycle_is_not_aperiodic(self):
        self.assertEqual(is_aperiodic([[0, 1, 0], [0, 0, 1], [1, 0, 0]]), (False, None))

    def test_h_matrices_are_aperiodic(self):
        for m in (2, 3, 4):
            for n in (2, 3, 4):
                aperiodic, exponent = is_aperiodic(ck_matrix(m, n).h)
                self.assertTrue(aperiodic)
                self.assertLessEqual(exponent, (2 * m * n - 1) ** 2 + 1)
                self.assertEqual(exponent, 2)

    def test_rejects_bad_input(self):
        with self.assertRaises(InvalidParameter):
            is_aperiodic([[1, 1]])
        with self.assertRaises(InvalidParameter):
            is_aperiodic([[1, -1], [1, 1]])


class ColumnAmalgamationTestCase(TestCase):
    """Unit tests of column_amalgamation."""

    def test_amalgamation_of_h_is_a_plus_b(self):
        for m in (2, 3, 4):
            for n in (2, 3, 4):
                bundle = ck_matrix(m, n)
                merged = column_amalgamation(bundle.h)
                self.assertTrue(np.array_equal(merged, bundle.a + bundle.b))

    def test_amalgamation_preserves_the_cokernel(self):
        for m in (2, 3, 4):
            for n in (2, 3, 4):
                bundle = ck_matrix(m, n)
                size = m * n
                self.assertEqual(cokernel(bundle.h - identity_matrix(2 * size)),
                                 cokernel(bundle.a + bundle.b - identity_matrix(size)))

    def test_distinct_columns_are_left_alone(self):
        matrix = [[1, 2], [3, 4]]
        self.assertEqual(column_amalgamation(matrix).tolist(), matrix)

    def test_equal_columns_are_merged_with_their_rows_summed(self):
        merged = column_amalgamation([[1, 1, 0], [1, 1, 0], [0, 0, 1]])
        self.assertEqual(merged.tolist(), [[2, 0], [0, 1]])
