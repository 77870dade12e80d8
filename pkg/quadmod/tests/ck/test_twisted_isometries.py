"""Unit tests of the isometries U = S_1, V = T_1 of the twisted example."""
from django.test import TestCase

from quadmod.ck import verify_twisted_isometries
from quadmod.exceptions import InvalidParameter
from quadmod.tests.helpers import ReportTesterMixin


class TwistedIsometriesTestCase(TestCase, ReportTesterMixin):
    """Commuting 3-cycles σ = (123), τ = (132) at depth 3."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.reports = verify_twisted_isometries(3, (1, 2, 0), (2, 0, 1), 3)

    def test_relations_hold(self):
        self.assert_all_pass(self.reports)

    def test_isometries_are_checked_from_level_one(self):
        self.assertEqual(self.find(self.reports, 'u_isometry').window, (1, 2))
        self.assertEqual(self.find(self.reports, 'v_isometry').window, (1, 2))

    def test_conjugation_readings_are_informational(self):
        for name in ('u', 'v'):
            for which in ('alpha', 'beta'):
                self.assertTrue(self.find(self.reports, f'{name}_conjugation_{which}').informational)

    def test_u_conjugation_implements_beta(self):
        self.assertTrue(self.find(self.reports, 'u_conjugation_beta').passed)
        self.assertFalse(self.find(self.reports, 'u_conjugation_alpha').passed)
        self.assertEqual(self.find(self.reports, 'u_conjugation_is_automorphism').note, 'holds for beta')

    def test_v_conjugation_implements_alpha(self):
        self.assertTrue(self.find(self.reports, 'v_conjugation_alpha').passed)
        self.assertFalse(self.find(self.reports, 'v_conjugation_beta').passed)


class TwistedIsometriesInputTestCase(TestCase):
    """Input checks of verify_twisted_isometries."""

    def test_non_commuting_permutations_are_rejected(self):
        with self.assertRaises(InvalidParameter):
            verify_twisted_isometries(3, (1, 0, 2), (0, 2, 1), 3)

    def test_equal_automorphisms_satisfy_both_readings(self):
        reports = verify_twisted_isometries(3, (1, 2, 0), (1, 2, 0), 3)
        automorphism = next(r for r in reports if r.identity == 'u_conjugation_is_automorphism')
        self.assertTrue(automorphism.passed)
        self.assertEqual(automorphism.note, 'holds for alpha, beta')
