"""Unit tests of the relations of S_i = s_(u_i) and T_k = t_(v_k)."""
from django.test import TestCase

from quadmod.ck import ck_matrix
from quadmod.exact import ExactMatrix, GaussianRational
from quadmod.exceptions import DepthTooSmall, InvalidParameter, NotInBCirc
from quadmod.fock import build_fock
from quadmod.ktheory import k_groups
from quadmod.quad_module import build_example_alpha_beta, build_example_mn
from quadmod.relations import (Windows, compute_pi, core_filtration_dims, filtration_report, filtration_window,
                               fixed_point_check, make_generators, verify_core_relations,
                               verify_generator_relations, verify_universal_relations)
from quadmod.tests.helpers import ReportTesterMixin, remixed_basis


class WindowsTestCase(TestCase):
    """Unit tests of the level windows."""

    def test_windows_at_depth_four(self):
        windows = Windows(4)
        self.assertEqual(windows.exact, (0, 3))
        self.assertEqual(windows.compact, (2, 4))
        self.assertEqual(windows.orthogonal, (1, 4))
        self.assertEqual(windows.isometry, (1, 3))
        self.assertEqual(windows.inner, (2, 3))
        self.assertEqual(windows.everything, (0, 4))


class GeneratorRelationsTestCase(TestCase, ReportTesterMixin):
    """Relations of the generators of H_(2,2) at depth 3."""

    depth = 3

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.spec = build_example_mn(2, 2)
        cls.gen = make_generators(build_fock(cls.spec, cls.depth))

    def test_generators(self):
        self.assertEqual(len(self.gen.s), 2)
        self.assertEqual(len(self.gen.t), 2)
        self.assertEqual(self.gen.window, (2, self.depth - 1))
        self.assert_all_pass(self.gen.reports)

    def test_generator_relations(self):
        self.assert_all_pass(verify_generator_relations(self.gen))

    def test_universal_relations(self):
        reports = verify_universal_relations(self.gen)
        self.assert_all_pass(reports)
        self.assertEqual(self.find(reports, 'relation_unit').window, (2, self.depth))
        self.assertEqual(self.find(reports, 'relation_orthogonality').window, (1, self.depth))

    def test_unit_relation_fails_on_level_one(self):
        defect = self.gen.range_sum(1) + self.gen.range_sum(2) - self.gen.fock.identity()
        self.assertIsNotNone(defect.witness_on((0, 1)))

    def test_core_relations(self):
        self.assert_all_pass(verify_core_relations(self.gen))

    def test_pi_of_minimal_idempotents(self):
        for p in self.gen.bcirc.idempotents:
            result = compute_pi(self.gen, p.matrix)
            self.assert_all_pass(result.reports)
            self.assertEqual(self.find(result.reports, 'pi_compression_s').window, (1, self.depth - 1))
            self.assertEqual(self.find(result.reports, 'pi_compression_t').window, (1, self.depth - 1))

    def test_pi_compression_from_level_one(self):
        p = self.gen.bcirc.idempotents[0]
        image = compute_pi(self.gen, p.matrix).operator
        spec = self.spec
        coefficient = spec.inner('B1', spec.basis_u[0], p.matrix @ spec.basis_u[0])
        defect = self.gen.star(1, 0) @ image @ self.gen.s[0] - self.gen.phi(1, coefficient)
        self.assertIsNone(defect.witness_on((1, self.depth - 1)))

    def test_pi_of_the_unit(self):
        result = compute_pi(self.gen, ExactMatrix.identity(4))
        self.assertEqual(result.coordinates, [GaussianRational(1)] * 4)

    def test_pi_needs_an_element_of_bcirc(self):
        with self.assertRaises(NotInBCirc):
            compute_pi(self.gen, ExactMatrix.matrix_unit(4, 4, 0, 1))

    def test_core_filtration(self):
        self.assertEqual(core_filtration_dims(self.gen, 0), [4])
        dims, nested = filtration_report(self.gen, 1)
        self.assertEqual(len(dims), 2)
        self.assertTrue(nested.passed)
        self.assertFalse(nested.informational)
        self.assertEqual(nested.window, (3, self.depth))

    def test_filtration_window_needs_depth(self):
        self.assertEqual(filtration_window(self.gen, 0), (2, self.depth))
        with self.assertRaises(DepthTooSmall):
            filtration_window(self.gen, self.depth - 1)

    def test_fixed_point_algebra(self):
        check = fixed_point_check(self.gen)
        self.assertTrue(check.passed, check.witness)
        self.assertEqual(check.window, (2, self.depth - 1))


class GeneratorRelationsDepthFourTestCase(GeneratorRelationsTestCase):
    """Relations of the generators of H_(2,2) at depth 4."""

    depth = 4


class CoreFiltrationTestCase(TestCase):
    """The core filtration up to the last level of a depth-3 truncation."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.gen = make_generators(build_fock(build_example_mn(2, 2), 3))

    def test_dims_up_to_the_last_level(self):
        dims = core_filtration_dims(self.gen, 2)
        self.assertEqual(len(dims), 3)
        self.assertEqual(dims[0], 4)

    def test_nesting_is_skipped_past_the_window(self):
        dims, nested = filtration_report(self.gen, 2)
        self.assertEqual(len(dims), 3)
        self.assertTrue(nested.informational)
        self.assertTrue(nested.note.startswith('skipped'))

    def test_filtration_index_outside_the_truncation(self):
        with self.assertRaises(InvalidParameter):
            core_filtration_dims(self.gen, 3)
        with self.assertRaises(InvalidParameter):
            core_filtration_dims(self.gen, -1)


class TwistedExampleRelationsTestCase(TestCase, ReportTesterMixin):
    """Relations of the generators of the twisted example with σ = τ = (123) at depth 4."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.spec = build_example_alpha_beta(3, (1, 2, 0), (1, 2, 0))
        cls.gen = make_generators(build_fock(cls.spec, 4))

    def test_generators(self):
        self.assert_all_pass(self.gen.reports)

    def test_universal_relations(self):
        self.assert_all_pass(verify_universal_relations(self.gen))

    def test_generator_relations(self):
        self.assert_all_pass(verify_generator_relations(self.gen))

    def test_core_relations(self):
        self.assert_all_pass(verify_core_relations(self.gen))

    def test_pi_of_minimal_idempotents(self):
        for p in self.gen.bcirc.idempotents:
            self.assert_all_pass(compute_pi(self.gen, p.matrix).reports)

    def test_core_filtration(self):
        _, nested = filtration_report(self.gen, 1)
        self.assertTrue(nested.passed)
        self.assertTrue(fixed_point_check(self.gen).passed)


class GeneratorLimitsTestCase(TestCase):
    """Depth and window limits of make_generators."""

    def setUp(self):
        self.spec = build_example_mn(2, 2)

    def test_depth_two_is_too_small(self):
        with self.assertRaises(DepthTooSmall):
            make_generators(build_fock(self.spec, 2))

    def test_window_must_lie_inside_the_truncation(self):
        with self.assertRaises(InvalidParameter):
            make_generators(build_fock(self.spec, 3), window=(1, 5))


class RemixedBasisRelationsTestCase(TestCase, ReportTesterMixin):
    """A unitarily re-mixed basis of H_(2,2) satisfies the same relations."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        spec = build_example_mn(2, 2)
        cls.spec = spec.with_changes(basis_u=remixed_basis(spec.basis_u))
        cls.gen = make_generators(build_fock(cls.spec, 3))

    def test_expansion_in_the_new_basis(self):
        self.assert_all_pass(self.gen.reports)

    def test_universal_relations(self):
        self.assert_all_pass(verify_universal_relations(self.gen))

    def test_generator_relations(self):
        self.assert_all_pass(verify_generator_relations(self.gen))

    def test_k_theory_is_unchanged(self):
        original = build_example_mn(2, 2)
        self.assertEqual((self.spec.m, self.spec.n), (original.m, original.n))
        self.assertEqual(k_groups(self.spec.m, self.spec.n), k_groups(original.m, original.n))
        self.assertEqual(ck_matrix(self.spec.m, self.spec.n).h.tolist(), ck_matrix(original.m, original.n).h.tolist())
        self.assertEqual(self.gen.bcirc.dim, 4)
