"""Unit tests of the Gaussian rational scalars."""
from fractions import Fraction

from django.test import TestCase

from quadmod.exact import I, ONE, ZERO, GaussianRational


class GaussianRationalTestCase(TestCase):
    """Unit tests of GaussianRational."""

    def setUp(self):
        self.z = GaussianRational(1, 2)
        self.w = GaussianRational(3, -1)

    def test_product(self):
        self.assertEqual(self.z * self.w, GaussianRational(5, 5))

    def test_quotient_is_exact(self):
        self.assertEqual(ONE / GaussianRational(1, 1), GaussianRational(Fraction(1, 2), Fraction(-1, 2)))

    def test_division_by_zero_raises(self):
        with self.assertRaises(ZeroDivisionError):
            self.z / ZERO

    def test_integers_mix_with_gaussian_rationals(self):
        self.assertEqual(2 + self.z, GaussianRational(3, 2))
        self.assertEqual(1 - I, GaussianRational(1, -1))
        self.assertEqual(self.z * 2, GaussianRational(2, 4))

    def test_powers_of_i_cycle(self):
        self.assertEqual(I ** 2, -ONE)
        self.assertEqual(I ** 4, ONE)
        self.assertEqual(I ** -1, -I)

    def test_conjugate_and_norm(self):
        self.assertEqual(self.z.conjugate(), GaussianRational(1, -2))
        self.assertEqual(self.z.norm(), 5)

    def test_quad_encoding(self):
        value = GaussianRational.from_quad([1, 2, 3, 4])
        self.assertEqual(value, GaussianRational(Fraction(1, 2), Fraction(3, 4)))
        self.assertEqual(value.to_quad(), [1, 2, 3, 4])

    def test_quad_encoding_is_reduced(self):
        self.assertEqual(GaussianRational.from_quad([2, 4, 0, 7]).to_quad(), [1, 2, 0, 1])

    def test_string_forms(self):
        self.assertEqual(str(GaussianRational(3)), '3')
        self.assertEqual(str(GaussianRational(0, -1)), '-i')
        self.assertEqual(str(GaussianRational(1, -2)), '1 - 2i')
        self.assertEqual(str(GaussianRational(Fraction(1, 2), 1)), '1/2 + i')

    def test_is_immutable(self):
        with self.assertRaises(AttributeError):
            self.z.re = Fraction(0)

    def test_real_values_hash_like_fractions(self):
        self.assertEqual(hash(GaussianRational(Fraction(1, 3))), hash(Fraction(1, 3)))

    def test_floats_are_rejected(self):
        with self.assertRaises(TypeError):
            GaussianRational(0.5)
