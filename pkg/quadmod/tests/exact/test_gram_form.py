"""Unit tests of Hermitian forms, Gram adjoints and the positivity classifier."""
from django.test import TestCase
from faker import Faker

from quadmod.exact import I, ExactMatrix, GramForm, PsdClass, gram_adjoint, psd_check
from quadmod.exceptions import DimensionMismatch, NotHermitian, SingularGram


class GramFormTestCase(TestCase):
    """Unit tests of GramForm and psd_check."""

    def setUp(self):
        self.fake = Faker()
        self.fake.seed_instance(7)

    def _random_matrix(self, rows, cols):
        return ExactMatrix.from_rows(
            [[self.fake.random_int(-5, 5) + I * self.fake.random_int(-5, 5) for _ in range(cols)]
             for _ in range(rows)], cols=cols)

    def test_positive_definite(self):
        self.assertIs(psd_check(GramForm.diag([1, 2, 3])), PsdClass.POSITIVE_DEFINITE)
        hermitian = ExactMatrix.from_rows([[2, I], [-I, 2]])
        self.assertIs(psd_check(hermitian), PsdClass.POSITIVE_DEFINITE)

    def test_positive_semidefinite_with_kernel(self):
        self.assertIs(psd_check(ExactMatrix.from_rows([[1, 1], [1, 1]])),
                      PsdClass.POSITIVE_SEMIDEFINITE_WITH_KERNEL)
        self.assertIs(psd_check(ExactMatrix.zeros(2, 2)), PsdClass.POSITIVE_SEMIDEFINITE_WITH_KERNEL)

    def test_indefinite(self):
        self.assertIs(psd_check(ExactMatrix.diag([1, -1])), PsdClass.INDEFINITE)
        self.assertIs(psd_check(ExactMatrix.from_rows([[0, 1], [1, 0]])), PsdClass.INDEFINITE)

    def test_non_hermitian_gram_is_rejected(self):
        with self.assertRaises(NotHermitian):
            GramForm(ExactMatrix.from_rows([[1, 1], [0, 1]]))

    def test_singular_gram_has_no_inverse(self):
        gram = GramForm(ExactMatrix.from_rows([[1, 1], [1, 1]]))
        with self.assertRaises(SingularGram):
            gram.inverse

    def test_pairing_is_conjugate_linear_in_the_first_argument(self):
        gram = GramForm.identity(1)
        x = ExactMatrix.column([I])
        y = ExactMatrix.column([1])
        self.assertEqual(gram.pair(x, y), -I)

    def test_gram_adjoint_satisfies_the_defining_identity(self):
        g_dom = GramForm.diag([1, 2, 3])
        g_cod = GramForm(ExactMatrix.from_rows([[2, I], [-I, 1]]))
        for _ in range(5):
            t = self._random_matrix(2, 3)
            adjoint = gram_adjoint(t, g_dom, g_cod)
            self.assertEqual(g_dom.matrix @ adjoint, t.H @ g_cod.matrix)

    def test_gram_adjoint_with_identity_forms_is_conjugate_transpose(self):
        t = self._random_matrix(3, 3)
        self.assertEqual(gram_adjoint(t, GramForm.identity(3), GramForm.identity(3)), t.H)

    def test_gram_adjoint_checks_shapes(self):
        with self.assertRaises(DimensionMismatch):
            gram_adjoint(ExactMatrix.zeros(2, 2), GramForm.identity(3), GramForm.identity(2))
