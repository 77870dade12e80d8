"""Unit tests of the quad-module description and its builtin examples."""
from django.test import TestCase

from quadmod.exact import ExactMatrix
from quadmod.exceptions import DimensionMismatch, InvalidParameter
from quadmod.quad_module import automorphism_matrix, build_example_alpha_beta, build_example_mn
from quadmod.algebras import permutation_matrix
from quadmod.tests.helpers import column


class BuildExampleMNTestCase(TestCase):
    """Unit tests of build_example_mn."""

    def setUp(self):
        self.spec = build_example_mn(2, 3)

    def test_dimensions(self):
        self.assertEqual(self.spec.dim_h, 6)
        self.assertEqual(self.spec.m, 2)
        self.assertEqual(self.spec.n, 3)
        self.assertEqual(self.spec.algebra_a.dim, 1)
        self.assertEqual(self.spec.algebra_b1.dim, 3)
        self.assertEqual(self.spec.algebra_b2.dim, 2)
        self.assertEqual(self.spec.label, 'H_(2,3)')

    def test_basis_vectors_use_index_i_times_n_plus_k(self):
        self.assertEqual(self.spec.basis_u[1], column(0, 0, 0, 1, 1, 1))
        self.assertEqual(self.spec.basis_v[2], column(0, 0, 1, 0, 0, 1))

    def test_left_action_of_b1_acts_on_the_second_factor(self):
        f = self.spec.algebra_b1.idempotent(1)
        self.assertEqual(self.spec.left(1, f) @ ExactMatrix.unit(6, 4), ExactMatrix.unit(6, 4))
        self.assertTrue((self.spec.left(1, f) @ ExactMatrix.unit(6, 3)).is_zero())

    def test_inner_products(self):
        e = ExactMatrix.unit(6, 4)
        self.assertEqual(self.spec.inner('A', e, e), column(1))
        self.assertEqual(self.spec.inner('B1', e, e), column(0, 1, 0))
        self.assertEqual(self.spec.inner('B2', e, e), column(0, 1))

    def test_needs_two_states_each(self):
        with self.assertRaises(InvalidParameter):
            build_example_mn(1, 2)

    def test_wrong_number_of_tensors_is_rejected(self):
        with self.assertRaises(DimensionMismatch):
            self.spec.with_changes(phi1=self.spec.phi1[:1])

    def test_wrong_tensor_shape_is_rejected(self):
        with self.assertRaises(DimensionMismatch):
            self.spec.with_changes(right_a=(ExactMatrix.identity(5),))


class BuildExampleAlphaBetaTestCase(TestCase):
    """Unit tests of build_example_alpha_beta."""

    def setUp(self):
        self.sigma = (1, 2, 0)
        self.tau = (2, 0, 1)
        self.spec = build_example_alpha_beta(3, self.sigma, self.tau)

    def test_dimensions(self):
        self.assertEqual(self.spec.dim_h, 3)
        self.assertEqual(self.spec.m, 1)
        self.assertEqual(self.spec.n, 1)

    def test_automorphisms_are_recovered_from_psi(self):
        self.assertEqual(automorphism_matrix(self.spec, 'alpha'), permutation_matrix(self.sigma))
        self.assertEqual(automorphism_matrix(self.spec, 'beta'), permutation_matrix(self.tau))

    def test_psi_is_the_inverse_automorphism(self):
        alpha = permutation_matrix(self.sigma)
        self.assertEqual(self.spec.psi1.matrix @ alpha, ExactMatrix.identity(3))

    def test_non_permutations_are_rejected(self):
        with self.assertRaises(InvalidParameter):
            build_example_alpha_beta(3, (0, 0, 1), self.tau)
