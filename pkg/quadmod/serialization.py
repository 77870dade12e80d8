"""Reading and writing quad-module specs: quadmod-spec-v1 JSON documents and builtin descriptors."""
import json
import logging
import re
from fractions import Fraction
from pathlib import Path

from .algebras import AlgebraHom, FinDimCommAlgebra, parse_cycles
from .exact import ExactMatrix, GaussianRational
from .exceptions import InvalidParameter, ParseError, SchemaVersionMismatch
from .quad_module import QuadModuleSpec, build_example_alpha_beta, build_example_mn

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 'quadmod-spec-v1'

CYCLES = r'(?:id|(?:\([^()]*\))+)'
MN_BUILTIN = re.compile(r'^mn:(\d+),(\d+)$')
PERM_BUILTIN = re.compile(rf'^perm:(\d+),({CYCLES}),({CYCLES})$')
BUILTIN = re.compile(rf'^(?:mn:\d+,\d+|perm:\d+,{CYCLES},{CYCLES})$')

ALGEBRA_KEYS = ('A', 'B1', 'B2')
HOM_FIELDS = ('embed1', 'embed2', 'psi1', 'psi2')
ACTION_FIELDS = {
    'rightA': ('right_a', 'A'),
    'varphi1': ('varphi1', 'B1'),
    'varphi2': ('varphi2', 'B2'),
    'phi1': ('phi1', 'B1'),
    'phi2': ('phi2', 'B2'),
}
INNER_FIELDS = {'innerA': ('inner_a', 'A'), 'innerB1': ('inner_b1', 'B1'), 'innerB2': ('inner_b2', 'B2')}


def is_builtin(source):
    return bool(BUILTIN.match(source.strip()))


def parse_builtin(descriptor):
    """Build the spec named by 'mn:M,N' or 'perm:d,σ,τ' (1-based cycle notation)."""

    descriptor = descriptor.strip()
    match = MN_BUILTIN.match(descriptor)
    if match:
        return build_example_mn(int(match.group(1)), int(match.group(2)))
    match = PERM_BUILTIN.match(descriptor)
    if match:
        d = int(match.group(1))
        return build_example_alpha_beta(d, parse_cycles(match.group(2), d), parse_cycles(match.group(3), d))
    raise ParseError(f'unknown builtin {descriptor!r}', field='builtin')


def parse_spec_source(source):
    """A builtin descriptor, or else the path of a quadmod-spec-v1 document."""

    if is_builtin(source):
        return parse_builtin(source)
    if ':' in source and source.split(':', 1)[0] in ('mn', 'perm'):
        raise ParseError(f'malformed builtin {source!r}', field='builtin')
    path = Path(source)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as error:
        raise ParseError(f'cannot read {source}: {error.strerror}', field='input') from error
    spec = load_spec(text)
    logger.info('loaded %s from %s', spec.label, path)
    return spec


def _quad(value, field):
    if not isinstance(value, list) or len(value) != 4 or \
            any(isinstance(part, bool) or not isinstance(part, int) for part in value):
        raise ParseError(f'expected [reNum, reDen, imNum, imDen], got {value!r}', field=field)
    re_num, re_den, im_num, im_den = value
    try:
        return GaussianRational(Fraction(re_num, re_den), Fraction(im_num, im_den))
    except ZeroDivisionError as error:
        raise ParseError('zero denominator', field=field) from error


def _matrix(value, field, rows, cols):
    if not isinstance(value, list) or len(value) != rows:
        raise ParseError(f'expected {rows} rows', field=field)
    entries = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f'expected {cols} columns', field=f'{field}[{i}]')
        entries.append([_quad(quad, f'{field}[{i}][{j}]') for j, quad in enumerate(row)])
    return ExactMatrix.from_rows(entries, cols=cols)


def _vector(value, field, size):
    if not isinstance(value, list) or len(value) != size:
        raise ParseError(f'expected a vector of length {size}', field=field)
    return ExactMatrix.column([_quad(quad, f'{field}[{k}]') for k, quad in enumerate(value)])


def _positive_int(value, field):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ParseError(f'expected a positive integer, got {value!r}', field=field)
    return value


def _require(document, key):
    if key not in document:
        raise ParseError('missing field', field=key)
    return document[key]


def _inner_tensor(value, field, dim_h, dim):
    """dimH × dimH array of algebra vectors, split into one matrix per algebra coordinate."""

    if not isinstance(value, list) or len(value) != dim_h:
        raise ParseError(f'expected {dim_h} rows', field=field)
    per_coordinate = [[[None] * dim_h for _ in range(dim_h)] for _ in range(dim)]
    for x, row in enumerate(value):
        if not isinstance(row, list) or len(row) != dim_h:
            raise ParseError(f'expected {dim_h} columns', field=f'{field}[{x}]')
        for y, entry in enumerate(row):
            if not isinstance(entry, list) or len(entry) != dim:
                raise ParseError(f'expected an element with {dim} coordinates', field=f'{field}[{x}][{y}]')
            for b, quad in enumerate(entry):
                per_coordinate[b][x][y] = _quad(quad, f'{field}[{x}][{y}][{b}]')
    return tuple(ExactMatrix.from_rows(rows, cols=dim_h) for rows in per_coordinate)


def load_spec(text):
    """Parse a quadmod-spec-v1 JSON document into a QuadModuleSpec."""

    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise ParseError(error.msg, line=error.lineno) from error
    if not isinstance(document, dict):
        raise ParseError('expected a JSON object at the top level')
    schema = _require(document, 'schema')
    if schema != SCHEMA_VERSION:
        raise SchemaVersionMismatch(f'expected {SCHEMA_VERSION}, got {schema!r}', field='schema')
    dims = _require(document, 'algebras')
    if not isinstance(dims, dict):
        raise ParseError('expected an object of algebra dimensions', field='algebras')
    algebras = {key: FinDimCommAlgebra(_positive_int(_require(dims, key), f'algebras.{key}'), key)
                for key in ALGEBRA_KEYS}
    dim_h = _positive_int(_require(document, 'dimH'), 'dimH')
    fields = {'dim_h': dim_h, 'label': str(document.get('label', 'H'))}
    for name in HOM_FIELDS:
        target = algebras['B1' if name.endswith('1') else 'B2']
        matrix = _matrix(_require(document, name), name, target.dim, algebras['A'].dim)
        fields[name] = AlgebraHom(algebras['A'], target, matrix, name)
    for key, (name, kind) in ACTION_FIELDS.items():
        value = _require(document, key)
        if not isinstance(value, list) or len(value) != algebras[kind].dim:
            raise ParseError(f'expected one matrix per basis element of {kind}', field=key)
        fields[name] = tuple(_matrix(m, f'{key}[{b}]', dim_h, dim_h) for b, m in enumerate(value))
    for key, (name, kind) in INNER_FIELDS.items():
        fields[name] = _inner_tensor(_require(document, key), key, dim_h, algebras[kind].dim)
    for key, name in (('basisU', 'basis_u'), ('basisV', 'basis_v')):
        value = _require(document, key)
        if not isinstance(value, list) or not value:
            raise ParseError('expected a nonempty list of vectors', field=key)
        fields[name] = tuple(_vector(vector, f'{key}[{k}]', dim_h) for k, vector in enumerate(value))
    try:
        return QuadModuleSpec(algebra_a=algebras['A'], algebra_b1=algebras['B1'], algebra_b2=algebras['B2'],
                              **fields)
    except InvalidParameter as error:
        raise ParseError(str(error)) from error


def _vector_quads(vector):
    return [row[0] for row in vector.to_quads()]


def _inner_quads(tensor, dim_h):
    quads = [matrix.to_quads() for matrix in tensor]
    return [[[quads[b][x][y] for b in range(len(tensor))] for y in range(dim_h)] for x in range(dim_h)]


def dump_spec(spec):
    """The quadmod-spec-v1 document of a spec, as a dict ready for json.dumps."""

    document = {
        'schema': SCHEMA_VERSION,
        'label': spec.label,
        'algebras': {key: spec.algebra(key).dim for key in ALGEBRA_KEYS},
        'dimH': spec.dim_h,
    }
    for name in HOM_FIELDS:
        document[name] = getattr(spec, name).matrix.to_quads()
    for key, (name, _) in ACTION_FIELDS.items():
        document[key] = [matrix.to_quads() for matrix in getattr(spec, name)]
    for key, (name, _) in INNER_FIELDS.items():
        document[key] = _inner_quads(getattr(spec, name), spec.dim_h)
    document['basisU'] = [_vector_quads(vector) for vector in spec.basis_u]
    document['basisV'] = [_vector_quads(vector) for vector in spec.basis_v]
    return document


def dumps_spec(spec):
    return json.dumps(dump_spec(spec), indent=2)
