"""Verification records and their text and JSON renderings."""
import json
import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


def exact_str(value):
    """Render exact scalars and nested containers of them as JSON-friendly strings."""

    if isinstance(value, (list, tuple)):
        return [exact_str(item) for item in value]
    if isinstance(value, dict):
        return {key: exact_str(item) for key, item in value.items()}
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


def matrix_witness(difference, **context):
    """Witness for a nonzero matrix difference: the first nonzero entry, row-major."""

    found = difference.first_nonzero()
    if found is None:
        return None
    (row, col), value = found
    witness = dict(context)
    witness.update({'row': row, 'col': col, 'residual': str(value)})
    return witness


@dataclass(frozen=True)
class CheckRecord:
    """One checked identity of a validation pass."""

    identity: str
    citation: str
    passed: bool
    witness: dict = None
    note: str = ''

    def to_json(self):
        data = {
            'id': self.identity,
            'citation': self.citation,
            'pass': self.passed,
            'witness': exact_str(self.witness),
        }
        if self.note:
            data['note'] = self.note
        return data

    def render(self):
        status = 'PASS' if self.passed else 'FAIL'
        line = f'[{status}] {self.identity}: {self.citation}'
        if self.note:
            line += f' ({self.note})'
        if not self.passed and self.witness:
            line += f'\n       witness: {json.dumps(exact_str(self.witness), sort_keys=True)}'
        return line


@dataclass(frozen=True)
class IdentityWindowReport:
    """An operator identity checked on a level window of the truncated Fock module."""

    identity: str
    citation: str
    window: tuple
    passed: bool
    witness: dict = None
    informational: bool = False
    note: str = ''

    def to_json(self):
        data = {
            'id': self.identity,
            'citation': self.citation,
            'window': list(self.window),
            'pass': self.passed,
            'witness': exact_str(self.witness),
        }
        if self.informational:
            data['informational'] = True
        if self.note:
            data['note'] = self.note
        return data

    def render(self):
        status = 'PASS' if self.passed else ('INFO' if self.informational else 'FAIL')
        lo, hi = self.window
        line = f'[{status}] {self.identity} on levels {lo}..{hi}: {self.citation}'
        if self.note:
            line += f' ({self.note})'
        if not self.passed and self.witness:
            line += f'\n       witness: {json.dumps(exact_str(self.witness), sort_keys=True)}'
        return line


@dataclass
class ValidationReport:
    """Ordered list of checks produced by one validation pass."""

    title: str
    checks: list = field(default_factory=list)

    def add(self, identity, citation, passed, witness=None, note=''):
        record = CheckRecord(identity, citation, bool(passed), None if passed else witness, note)
        if passed:
            logger.debug('%s: %s passed', self.title, identity)
        else:
            logger.warning('%s: %s failed with witness %s', self.title, identity, exact_str(witness))
        self.checks.append(record)
        return record

    def extend(self, records):
        self.checks.extend(records)

    @property
    def passed(self):
        return all(check.passed for check in self.checks if not getattr(check, 'informational', False))

    def failures(self):
        return [check for check in self.checks
                if not check.passed and not getattr(check, 'informational', False)]

    def get(self, identity):
        """All records with the given identity slug."""

        return [check for check in self.checks if check.identity == identity]

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def to_json(self):
        return {
            'title': self.title,
            'pass': self.passed,
            'checks': [check.to_json() for check in self.checks],
        }

    def render(self):
        lines = [f'== {self.title} ==']
        lines.extend(check.render() for check in self.checks)
        passed = sum(1 for check in self.checks if check.passed)
        lines.append(f'{passed}/{len(self.checks)} checks passed')
        return '\n'.join(lines)


def window_check(identity, citation, window, defects, informational=False, note=''):
    """Check a family of (context, defect operator) pairs on a window.

    The identity holds when every defect vanishes on the window; otherwise the
    witness is the first nonzero entry found, tagged with its context.
    """
    witness = None
    for context, defect in defects:
        witness = defect.witness_on(window)
        if witness is not None:
            witness.update(context)
            break
    passed = witness is None
    if passed:
        logger.debug('%s holds on levels %s..%s', identity, *window)
    elif not informational:
        logger.warning('%s fails on levels %s..%s: %s', identity, window[0], window[1], witness)
    return IdentityWindowReport(identity, citation, tuple(window), passed, witness, informational, note)


def collect(title, reports):
    """Wrap window reports in a ValidationReport for uniform rendering."""

    return ValidationReport(title, list(reports))


def render_grid(matrix):
    """Plain-text aligned grid for an integer matrix given as nested lists."""

    rows = [[str(entry) for entry in row] for row in matrix]
    if not rows or not rows[0]:
        return '[]'
    width = max(len(entry) for row in rows for entry in row)
    return '\n'.join(' '.join(entry.rjust(width) for entry in row) for row in rows)
