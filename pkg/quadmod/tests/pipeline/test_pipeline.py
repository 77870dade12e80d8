"""Tests of the stages behind the quadmod command."""
import json

from django.test import TestCase, override_settings

from quadmod.pipeline import RunConfig, auto_depth, dimension_bound, run
from quadmod.quad_module import build_example_mn
from quadmod.tests.helpers import ReportTesterMixin


class DepthTestCase(TestCase):
    """Unit tests of the automatic truncation depth."""

    def test_dimension_bound(self):
        self.assertEqual(dimension_bound(build_example_mn(2, 2), 3), 84)

    def test_small_examples_use_the_default_depth(self):
        self.assertEqual(auto_depth(build_example_mn(2, 2)), 3)
        self.assertEqual(auto_depth(build_example_mn(3, 3)), 3)

    def test_larger_examples_fit_the_budget(self):
        self.assertEqual(auto_depth(build_example_mn(4, 4)), 3)
        self.assertEqual(auto_depth(build_example_mn(6, 6)), 2)

    @override_settings(QUADMOD_DIM_BUDGET=100000)
    def test_budget_from_settings(self):
        self.assertEqual(auto_depth(build_example_mn(4, 4)), 5)


class RunTestCase(TestCase, ReportTesterMixin):
    """Tests of run on builtin examples."""

    def test_ktheory_needs_no_fock_module(self):
        result = run(RunConfig('ktheory', 'mn:2,2'))
        self.assertIsNone(result.depth)
        self.assertEqual(result.summary['K0'], 'Z/3')
        self.assertEqual(result.summary['K1'], '0')
        self.assertEqual(result.exit_code, 0)

    def test_validate(self):
        result = run(RunConfig('validate', 'mn:2,3'))
        self.assertTrue(result.passed)
        for section in result.sections:
            self.assert_report_passes(section)

    def test_fock_reports_level_dimensions(self):
        stages = []
        result = run(RunConfig('fock', 'mn:2,2'), progress=lambda stage, position, count: stages.append(stage))
        self.assertEqual(stages, ['validate', 'fock'])
        self.assertEqual(result.depth, 3)
        self.assertEqual(result.summary['level_dims'], [4, 4, 16, 64])
        self.assertEqual(result.summary['total_dim'], 88)
        self.assertTrue(result.passed)

    def test_explicit_depth(self):
        result = run(RunConfig('fock', 'mn:2,2', depth=2))
        self.assertEqual(result.summary['level_dims'], [4, 4, 16])

    def test_ck_on_a_permutation_example(self):
        result = run(RunConfig('ck', 'perm:3,(123),(132)'))
        self.assertEqual(len(result.sections), 1)
        self.assertTrue(result.passed)

    def test_ck_skips_non_commuting_permutations(self):
        result = run(RunConfig('ck', 'perm:3,(12),(23)'))
        self.assertEqual(result.sections, [])
        self.assertIn('do not commute', result.summary['ck'])

    def test_full_run(self):
        result = run(RunConfig('full', 'mn:2,2'))
        self.assertTrue(result.passed, [check.identity for section in result.sections for check in section.failures()])
        self.assertEqual(result.summary['K0'], 'Z/3')
        self.assertEqual(result.summary['lambda_circ'], [[2, 1, 1, 0], [1, 2, 0, 1], [1, 0, 2, 1], [0, 1, 1, 2]])
        text = result.render()
        self.assertIn('== summary ==', text)
        self.assertIn('K0 = Z/3, K1 = 0', text.splitlines())
        self.assertTrue(text.endswith('PASS'))

    def test_full_run_at_depth_four(self):
        result = run(RunConfig('full', 'mn:2,2', depth=4))
        self.assertEqual(result.depth, 4)
        self.assertTrue(result.passed, [check.identity for section in result.sections for check in section.failures()])
        self.assertEqual(result.exit_code, 0)

    def test_full_run_of_the_twisted_example_at_depth_four(self):
        result = run(RunConfig('full', 'perm:3,(123),(123)', depth=4))
        self.assertTrue(result.passed, [check.identity for section in result.sections for check in section.failures()])
        self.assertEqual(result.exit_code, 0)
        self.assertIn('K0', result.summary)

    def test_render_json(self):
        result = run(RunConfig('ktheory', 'mn:2,5', output_format='json'))
        document = json.loads(result.render('json'))
        self.assertEqual(document['command'], 'ktheory')
        self.assertEqual(document['summary'], {'K0': 'Z/24', 'K1': '0'})
        self.assertTrue(document['pass'])
