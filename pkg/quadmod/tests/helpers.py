from pathlib import Path

from quadmod.exact import ExactMatrix, GaussianRational

FIXTURES = Path(__file__).resolve().parent / 'fixtures'


def fixture_path(name):
    """Absolute path of a file in the fixtures directory."""
    return str(FIXTURES / name)


def remixed_basis(basis):
    """The basis mixed by the unitary [[3/5, 4i/5], [4i/5, 3/5]] on its first two vectors."""

    c = [[GaussianRational('3/5'), GaussianRational(0, '4/5')],
         [GaussianRational(0, '4/5'), GaussianRational('3/5')]]
    mixed = list(basis)
    for j in range(2):
        mixed[j] = basis[0].scale(c[0][j]) + basis[1].scale(c[1][j])
    return tuple(mixed)


def column(*values):
    return ExactMatrix.column(values)


class ReportTesterMixin:
    """Class to extend tests with assertions on verification reports."""

    def assert_report_passes(self, report):
        """Check that every non-informational entry of a report passed."""

        failures = [(check.identity, check.witness) for check in report
                    if not check.passed and not getattr(check, 'informational', False)]
        self.assertEqual(failures, [], f'{report.title} has failing checks')

    def assert_all_pass(self, reports):
        """Check a list of window reports."""

        failures = [(r.identity, r.window, r.witness) for r in reports if not r.passed and not r.informational]
        self.assertEqual(failures, [])

    def assert_check_fails(self, report, identity):
        """Check that the named entry failed and carries a witness."""

        records = report.get(identity)
        self.assertTrue(records, f'{identity} is not in {report.title}')
        self.assertFalse(records[0].passed)
        self.assertIsNotNone(records[0].witness)

    def find(self, reports, identity):
        return next(r for r in reports if r.identity == identity)
