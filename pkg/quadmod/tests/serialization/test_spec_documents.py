"""Unit tests of quadmod-spec-v1 loading, dumping and source parsing."""
import json

from django.test import TestCase

from quadmod.exceptions import ParseError, SchemaVersionMismatch
from quadmod.quad_module import build_example_mn
from quadmod.serialization import dump_spec, dumps_spec, is_builtin, load_spec, parse_spec_source
from quadmod.tests.helpers import FIXTURES, fixture_path


class LoadSpecTestCase(TestCase):
    """Unit tests of load_spec."""

    def setUp(self):
        self.trivial_text = (FIXTURES / 'trivial_spec.json').read_text(encoding='utf-8')

    def test_trivial_document(self):
        spec = load_spec(self.trivial_text)
        self.assertEqual(spec.label, 'trivial')
        self.assertEqual(spec.dim_h, 1)
        self.assertEqual(len(spec.basis_u), 1)
        self.assertEqual(len(spec.basis_v), 1)

    def test_dump_then_load_keeps_every_tensor(self):
        spec = build_example_mn(2, 2)
        self.assertEqual(dump_spec(load_spec(dumps_spec(spec))), dump_spec(spec))

    def test_schema_version_mismatch(self):
        text = (FIXTURES / 'wrong_schema.json').read_text(encoding='utf-8')
        with self.assertRaises(SchemaVersionMismatch) as raised:
            load_spec(text)
        self.assertEqual(raised.exception.field, 'schema')

    def test_zero_denominator(self):
        text = (FIXTURES / 'zero_denominator.json').read_text(encoding='utf-8')
        with self.assertRaises(ParseError) as raised:
            load_spec(text)
        self.assertEqual(raised.exception.field, 'embed1[0][0]')
        self.assertIn('zero denominator', str(raised.exception))

    def test_json_syntax_error_names_the_line(self):
        with self.assertRaises(ParseError) as raised:
            load_spec('{\n  "schema": \n}')
        self.assertEqual(raised.exception.line, 3)

    def test_missing_field(self):
        document = json.loads(self.trivial_text)
        del document['basisV']
        with self.assertRaises(ParseError) as raised:
            load_spec(json.dumps(document))
        self.assertEqual(raised.exception.field, 'basisV')

    def test_quads_must_be_integers(self):
        document = json.loads(self.trivial_text)
        document['embed2'] = [[[1.5, 1, 0, 1]]]
        with self.assertRaises(ParseError) as raised:
            load_spec(json.dumps(document))
        self.assertEqual(raised.exception.field, 'embed2[0][0]')

    def test_wrong_shape(self):
        document = json.loads(self.trivial_text)
        document['dimH'] = 2
        with self.assertRaises(ParseError):
            load_spec(json.dumps(document))

    def test_top_level_must_be_an_object(self):
        with self.assertRaises(ParseError):
            load_spec('[1, 2]')


class SpecSourceTestCase(TestCase):
    """Unit tests of builtin descriptors and spec paths."""

    def test_is_builtin(self):
        self.assertTrue(is_builtin('mn:2,3'))
        self.assertTrue(is_builtin(' perm:3,(123),(132) '))
        self.assertTrue(is_builtin('perm:2,id,(12)'))
        self.assertFalse(is_builtin('mn:2'))
        self.assertFalse(is_builtin('spec.json'))

    def test_builtin_mn(self):
        spec = parse_spec_source('mn:2,3')
        self.assertEqual(spec.label, 'H_(2,3)')
        self.assertEqual(spec.dim_h, 6)

    def test_builtin_perm(self):
        spec = parse_spec_source('perm:3,(123),(132)')
        self.assertEqual(spec.dim_h, 3)

    def test_malformed_builtin(self):
        with self.assertRaises(ParseError) as raised:
            parse_spec_source('mn:2')
        self.assertEqual(raised.exception.field, 'builtin')

    def test_spec_path(self):
        self.assertEqual(parse_spec_source(fixture_path('trivial_spec.json')).label, 'trivial')

    def test_missing_file(self):
        with self.assertRaises(ParseError) as raised:
            parse_spec_source(fixture_path('no_such_spec.json'))
        self.assertEqual(raised.exception.field, 'input')
