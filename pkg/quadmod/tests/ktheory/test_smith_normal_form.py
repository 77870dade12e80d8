"""Unit tests of the Smith normal form and the groups read off it."""
import numpy as np
from django.test import TestCase, override_settings

from quadmod.exceptions import DimensionMismatch
from quadmod.ktheory import (FGAbelianGroup, cokernel, identity_matrix, integer_matrix, kernel_rank,
                             smith_normal_form, snf_property_suite)
from quadmod.tests.helpers import ReportTesterMixin


class SmithNormalFormTestCase(TestCase):
    """Unit tests of smith_normal_form."""

    def _assert_is_smith_form(self, matrix):
        form = smith_normal_form(matrix)
        self.assertTrue(np.array_equal(form.u.dot(matrix).dot(form.v), form.d))
        return form

    def test_coprime_diagonal(self):
        form = self._assert_is_smith_form(integer_matrix([[2, 0], [0, 3]]))
        self.assertEqual(form.diagonal, [1, 6])

    def test_divisibility_chain(self):
        form = self._assert_is_smith_form(integer_matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
        self.assertEqual(form.diagonal, [2, 6, 12])

    def test_rectangular_matrix(self):
        form = self._assert_is_smith_form(integer_matrix([[1, 2, 3], [4, 5, 6]]))
        self.assertEqual(form.diagonal, [1, 3])
        self.assertEqual(form.d.shape, (2, 3))

    def test_zeros_come_last(self):
        form = self._assert_is_smith_form(integer_matrix([[0, 0], [0, 5]]))
        self.assertEqual(form.diagonal, [5, 0])
        self.assertEqual(form.rank, 1)
        self.assertEqual(form.invariant_factors, [5])

    def test_zero_matrix(self):
        form = self._assert_is_smith_form(integer_matrix([[0, 0], [0, 0]]))
        self.assertEqual(form.rank, 0)

    def test_a_plus_b_minus_identity_for_h22(self):
        matrix = integer_matrix([[1, 1, 1, 0], [1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1]])
        form = self._assert_is_smith_form(matrix)
        self.assertEqual(form.diagonal, [1, 1, 1, 3])

    def test_large_entries_do_not_overflow(self):
        big = 10 ** 30
        form = self._assert_is_smith_form(integer_matrix([[big, 0], [0, big + 1]]))
        self.assertEqual(form.diagonal, [1, big * (big + 1)])

    def test_ragged_rows_are_rejected(self):
        with self.assertRaises(DimensionMismatch):
            integer_matrix([[1, 2], [3]])


class FGAbelianGroupTestCase(TestCase):
    """Unit tests of FGAbelianGroup and cokernel."""

    def test_string_forms(self):
        self.assertEqual(str(FGAbelianGroup(0)), '0')
        self.assertEqual(str(FGAbelianGroup(1)), 'Z')
        self.assertEqual(str(FGAbelianGroup(2, (2, 4))), 'Z^2 ⊕ Z/2 ⊕ Z/4')

    def test_order(self):
        self.assertEqual(FGAbelianGroup(0, (3, 6)).order, 18)
        self.assertEqual(FGAbelianGroup(0).order, 1)
        self.assertIsNone(FGAbelianGroup(1, (2,)).order)

    def test_trivial(self):
        self.assertTrue(FGAbelianGroup(0).is_trivial)
        self.assertFalse(FGAbelianGroup(0, (2,)).is_trivial)

    def test_to_json(self):
        self.assertEqual(FGAbelianGroup(1, (3,)).to_json(), {'freeRank': 1, 'factors': [3]})

    def test_cokernel_of_a_diagonal_matrix(self):
        self.assertEqual(cokernel(integer_matrix([[2, 0], [0, 3]])), FGAbelianGroup(0, (6,)))

    def test_cokernel_counts_free_rank_from_the_rows(self):
        self.assertEqual(cokernel(integer_matrix([[2], [0], [0]])), FGAbelianGroup(2, (2,)))
        self.assertEqual(cokernel(integer_matrix([[0, 0]])), FGAbelianGroup(1))

    def test_cokernel_of_the_identity_is_trivial(self):
        self.assertTrue(cokernel(identity_matrix(3)).is_trivial)

    def test_kernel_rank(self):
        self.assertEqual(kernel_rank(integer_matrix([[1, 2, 3], [2, 4, 6]])), 2)
        self.assertEqual(kernel_rank(identity_matrix(3)), 0)


class SNFPropertySuiteTestCase(TestCase, ReportTesterMixin):
    """The seeded property suite against the sympy oracle."""

    def test_default_suite_passes(self):
        report = snf_property_suite(seed=0)
        self.assert_report_passes(report)
        self.assertIn('500 samples', report.checks[0].note)

    def test_other_seeds_pass(self):
        for seed in (1, 2, 3):
            self.assert_report_passes(snf_property_suite(seed=seed, count=50))

    @override_settings(QUADMOD_SNF_SAMPLES=20, QUADMOD_SNF_MAX_DIM=3)
    def test_settings_drive_the_defaults(self):
        report = snf_property_suite(seed=4)
        self.assertIn('20 samples', report.checks[0].note)

    def test_same_seed_same_matrices(self):
        first = snf_property_suite(seed=11, count=30)
        second = snf_property_suite(seed=11, count=30)
        self.assertEqual(first.checks[0].note, second.checks[0].note)
