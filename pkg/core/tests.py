from fractions import Fraction

from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings, strategies as st

from algebras.strategies import invertible_matrices, matrices, prime_fields
from core.conf import setting
from core.exceptions import DimensionMismatch, FieldMismatch, InvalidField, InvalidScalar, NotInvertible
from core.fields import QQ_FIELD, FieldSpec
from core.linalg import (
    Matrix, basis_vector, commutes, determinant, dot, is_invertible, kernel_basis, mat_inverse, rank,
    vec_add, vec_scale, vec_sub, vec_sum,
)

F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)


class FieldSpecTest(SimpleTestCase):
    def test_rejects_composite_modulus(self):
        for p in (0, 1, 4, 9, -3):
            with self.assertRaises(InvalidField):
                FieldSpec.prime(p)

    def test_parses_rational_strings(self):
        self.assertEqual(QQ_FIELD.format(QQ_FIELD.parse("-2/4")), "-1/2")
        self.assertEqual(QQ_FIELD.format(QQ_FIELD.parse("6/3")), "2")
        self.assertEqual(QQ_FIELD.format(QQ_FIELD.coerce(Fraction(3, 9))), "1/3")

    def test_zero_denominator_is_rejected(self):
        with self.assertRaises(InvalidScalar):
            QQ_FIELD.parse("1/0")

    def test_malformed_scalar_is_rejected(self):
        for text in ("", "1.5", "a/b", "1//2"):
            with self.assertRaises(InvalidScalar):
                QQ_FIELD.parse(text)

    def test_booleans_are_not_scalars(self):
        with self.assertRaises(InvalidScalar):
            F3.coerce(True)

    def test_prime_field_reduces_fractions(self):
        # 1/2 = 2 in F_3
        self.assertEqual(F3.format(F3.parse("1/2")), 2)
        self.assertEqual(F5.format(F5.coerce(-1)), 4)
        with self.assertRaises(InvalidScalar):
            F3.parse("1/3")

    def test_elements_in_residue_order(self):
        self.assertEqual([F5.residue(a) for a in F5.elements()], [0, 1, 2, 3, 4])
        with self.assertRaises(InvalidField):
            QQ_FIELD.elements()

    def test_documents(self):
        self.assertEqual(QQ_FIELD.to_document(), 'Q')
        self.assertEqual(F5.to_document(), {'Fp': 5})
        self.assertEqual(str(F5), 'F_5')

    @given(prime_fields(), st.integers(-50, 50), st.integers(-50, 50))
    def test_prime_field_arithmetic_matches_integers(self, field, a, b):
        self.assertEqual(field.residue(field.coerce(a) * field.coerce(b)), (a * b) % field.p)
        self.assertEqual(field.residue(field.coerce(a) + field.coerce(b)), (a + b) % field.p)


class VectorTest(SimpleTestCase):
    def test_vector_helpers(self):
        u = tuple(QQ_FIELD.coerce(a) for a in (1, 2, 3))
        v = tuple(QQ_FIELD.coerce(a) for a in (3, 2, 1))
        self.assertEqual(vec_add(u, v), tuple(QQ_FIELD.coerce(4) for _ in range(3)))
        self.assertEqual(vec_sub(u, u), (QQ_FIELD.zero,) * 3)
        self.assertEqual(vec_scale(QQ_FIELD.coerce(2), u), tuple(QQ_FIELD.coerce(a) for a in (2, 4, 6)))
        self.assertEqual(dot(u, v), QQ_FIELD.coerce(10))
        self.assertEqual(vec_sum(QQ_FIELD, 3, [u, v, u]), tuple(QQ_FIELD.coerce(a) for a in (5, 6, 7)))
        self.assertEqual(basis_vector(QQ_FIELD, 3, 1), (QQ_FIELD.zero, QQ_FIELD.one, QQ_FIELD.zero))


class MatrixTest(SimpleTestCase):
    def test_inverse_over_rationals(self):
        m = Matrix(QQ_FIELD, [[2, 1], [1, 1]])
        inverse = mat_inverse(m)
        self.assertEqual(inverse, Matrix(QQ_FIELD, [[1, -1], [-1, 2]]))
        self.assertTrue((m @ inverse).is_identity())

    def test_singular_matrix_raises(self):
        with self.assertRaises(NotInvertible):
            mat_inverse(Matrix(F3, [[1, 2], [2, 1]]))
        self.assertFalse(is_invertible(Matrix(F3, [[1, 2], [2, 1]])))

    def test_shape_and_field_checks(self):
        with self.assertRaises(DimensionMismatch):
            Matrix(QQ_FIELD, [[1, 2], [3]])
        with self.assertRaises(DimensionMismatch):
            Matrix(QQ_FIELD, [[1, 2]]) @ Matrix(QQ_FIELD, [[1, 2]])
        with self.assertRaises(FieldMismatch):
            Matrix(QQ_FIELD, [[1]]) @ Matrix(F3, [[1]])

    def test_kernel_rank_and_determinant(self):
        m = Matrix(QQ_FIELD, [[1, 2, 3], [2, 4, 6]])
        self.assertEqual(rank(m), 1)
        kernel = kernel_basis(m)
        self.assertEqual(len(kernel), 2)
        for vector in kernel:
            self.assertFalse(any(m.apply(vector)))
        self.assertEqual(determinant(Matrix(QQ_FIELD, [[1, 2], [3, 4]])), QQ_FIELD.coerce(-2))

    def test_columns_transpose_power(self):
        shift = Matrix(QQ_FIELD, [[0, 0], [1, 0]])
        self.assertEqual(shift.column(0), (QQ_FIELD.zero, QQ_FIELD.one))
        self.assertEqual(shift.transpose(), Matrix(QQ_FIELD, [[0, 1], [0, 0]]))
        self.assertTrue(shift.power(2).is_zero())
        self.assertTrue(shift.power(0).is_identity())

    def test_commutes(self):
        diagonal = Matrix.diagonal(QQ_FIELD, [1, 2])
        self.assertTrue(commutes(diagonal, Matrix.scalar(QQ_FIELD, 2, 5)))
        self.assertFalse(commutes(diagonal, Matrix(QQ_FIELD, [[0, 1], [0, 0]])))

    def test_residues_are_row_major(self):
        self.assertEqual(Matrix(F5, [[1, 2], [3, 4]]).residues(), (1, 2, 3, 4))

    @settings(max_examples=40, deadline=None)
    @given(invertible_matrices(F5, 3))
    def test_inverse_round_trip(self, m):
        self.assertTrue((m @ mat_inverse(m)).is_identity())
        self.assertTrue((mat_inverse(m) @ m).is_identity())

    @settings(max_examples=40, deadline=None)
    @given(matrices(QQ_FIELD, 3))
    def test_rank_nullity(self, m):
        self.assertEqual(rank(m) + len(kernel_basis(m)), 3)


class SettingTest(SimpleTestCase):
    @override_settings(HOMALG_VIOLATION_LIMIT=2)
    def test_reads_overridden_setting(self):
        self.assertEqual(setting('HOMALG_VIOLATION_LIMIT'), 2)

    def test_falls_back_to_default(self):
        self.assertEqual(setting('HOMALG_UNKNOWN_SETTING', 7), 7)
