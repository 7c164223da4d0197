from django.test import SimpleTestCase
from hypothesis import given, strategies as st

from algebras.operations import (
    algebra_equal, determinant_product, eval_bracket, increasing_part, is_skew_symmetric, probe_order,
    skew_symmetrize, subset_sum,
)
from algebras.strategies import matrices, vectors
from algebras.structures import HomAlgebra, LinearFunctional, OperatorKind, StructureTensor, WeightedOperator
from core.exceptions import DimensionMismatch, FieldMismatch, TensorError
from core.fields import QQ_FIELD, FieldSpec
from core.linalg import Matrix, basis_vector, vec_add, vec_scale

F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)


def heisenberg(field=QQ_FIELD):
    """[e1,e2] = e3"""
    tensor = skew_symmetrize(StructureTensor(field, 3, 2, {(0, 1): (0, 0, 1)}))
    return HomAlgebra.untwisted(tensor, 'H3')


def truncated_polynomials(dim, field=QQ_FIELD):
    """e_i e_j = e_{i+j}, 0-based, zero past the top degree"""
    return HomAlgebra.untwisted(StructureTensor.from_function(
        field, dim, 2, lambda index: basis_vector(field, dim, sum(index)) if sum(index) < dim
        else (0,) * dim), f"T{dim}")


class StructureTensorTest(SimpleTestCase):
    def test_bounds(self):
        with self.assertRaises(TensorError):
            StructureTensor(QQ_FIELD, 0, 2)
        with self.assertRaises(TensorError):
            StructureTensor(QQ_FIELD, 2, 1)
        with self.assertRaises(TensorError):
            StructureTensor(QQ_FIELD, 2, 2, {(0, 2): (1, 0)})
        with self.assertRaises(TensorError):
            StructureTensor(QQ_FIELD, 2, 2, {(0, 1): (1, 0, 0)})

    def test_zero_vectors_are_not_stored(self):
        tensor = StructureTensor(QQ_FIELD, 2, 2, {(0, 1): (0, 0), (1, 1): (1, 0)})
        self.assertEqual(list(tensor.table), [(1, 1)])
        self.assertEqual(tensor.get((0, 1)), (QQ_FIELD.zero, QQ_FIELD.zero))
        self.assertTrue(StructureTensor.zero(QQ_FIELD, 2, 3).is_zero())

    def test_tensor_is_immutable(self):
        tensor = StructureTensor.zero(QQ_FIELD, 2, 2)
        with self.assertRaises(AttributeError):
            tensor.dim = 3

    def test_compose_applies_matrix_to_values(self):
        algebra = heisenberg()
        composed = algebra.tensor.compose(Matrix.diagonal(QQ_FIELD, [1, 1, 2]))
        self.assertEqual(composed.get((0, 1)), tuple(QQ_FIELD.coerce(a) for a in (0, 0, 2)))


class EvalBracketTest(SimpleTestCase):
    def test_heisenberg_bracket_is_bilinear(self):
        algebra = heisenberg()
        x = tuple(QQ_FIELD.coerce(a) for a in (1, 1, 0))
        y = tuple(QQ_FIELD.coerce(a) for a in (0, 1, 0))
        self.assertEqual(eval_bracket(algebra, [x, y]), tuple(QQ_FIELD.coerce(a) for a in (0, 0, 1)))
        self.assertEqual(algebra.bracket(y, x), tuple(QQ_FIELD.coerce(a) for a in (0, 0, -1)))

    def test_argument_checks(self):
        algebra = heisenberg()
        e1 = basis_vector(QQ_FIELD, 3, 0)
        with self.assertRaises(DimensionMismatch):
            eval_bracket(algebra, [e1])
        with self.assertRaises(DimensionMismatch):
            eval_bracket(algebra, [e1, e1[:2]])
        with self.assertRaises(FieldMismatch):
            eval_bracket(algebra, [e1, basis_vector(F3, 3, 1)])

    @given(vectors(F5, 3), vectors(F5, 3), vectors(F5, 3), st.integers(0, 4))
    def test_multilinear(self, x, y, z, c):
        algebra = heisenberg(F5)
        scalar = F5.coerce(c)
        left = algebra.bracket(vec_add(x, vec_scale(scalar, y)), z)
        right = vec_add(algebra.bracket(x, z), vec_scale(scalar, algebra.bracket(y, z)))
        self.assertEqual(left, right)


class SkewTest(SimpleTestCase):
    def test_skew_symmetrize_signs(self):
        tensor = skew_symmetrize(StructureTensor(QQ_FIELD, 3, 3, {(0, 1, 2): (1, 0, 0)}))
        self.assertEqual(len(tensor.table), 6)
        self.assertEqual(tensor.get((1, 0, 2)), tuple(QQ_FIELD.coerce(a) for a in (-1, 0, 0)))
        self.assertEqual(tensor.get((1, 2, 0)), tuple(QQ_FIELD.coerce(a) for a in (1, 0, 0)))
        self.assertTrue(is_skew_symmetric(tensor).passed)

    def test_skew_symmetrize_needs_increasing_tuples(self):
        with self.assertRaises(TensorError):
            skew_symmetrize(StructureTensor(QQ_FIELD, 2, 2, {(1, 0): (1, 0)}))

    def test_increasing_part_inverts_skew_symmetrize(self):
        stored = StructureTensor(QQ_FIELD, 3, 2, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0)})
        self.assertEqual(increasing_part(skew_symmetrize(stored)), stored)

    def test_commutative_product_is_not_skew(self):
        report = is_skew_symmetric(truncated_polynomials(3).tensor)
        self.assertFalse(report.passed)
        self.assertEqual(report.violations[0].tuple, (1, 1))
        tuples = [v.tuple for v in report.violations]
        self.assertEqual(tuples, sorted(tuples))

    def test_stop_at_first(self):
        report = is_skew_symmetric(truncated_polynomials(3).tensor, stop_at_first=True)
        self.assertEqual(len(report.violations), 1)
        self.assertEqual(report.checked, 1)


class AlgebraTest(SimpleTestCase):
    def test_twist_must_match(self):
        tensor = heisenberg().tensor
        with self.assertRaises(DimensionMismatch):
            HomAlgebra(tensor, Matrix.identity(QQ_FIELD, 2))
        with self.assertRaises(FieldMismatch):
            HomAlgebra(tensor, Matrix.identity(F3, 3))

    def test_over_prime_field(self):
        algebra = HomAlgebra(heisenberg().tensor, Matrix.diagonal(QQ_FIELD, [1, 2, 2]), 'H3')
        reduced = algebra.over(F3)
        self.assertEqual(reduced.field, F3)
        self.assertEqual(reduced.twist, Matrix.diagonal(F3, [1, 2, 2]))
        self.assertEqual(reduced.tensor.get((1, 0)), (F3.zero, F3.zero, F3.coerce(2)))
        self.assertTrue(algebra_equal(reduced, heisenberg(F3).with_twist(Matrix.diagonal(F3, [1, 2, 2]))))

    def test_functional_compose(self):
        f = LinearFunctional.of(QQ_FIELD, [1, 0, 0], 'f1')
        shift = Matrix(QQ_FIELD, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        # (f ∘ shift)(e2) = f(e1) = 1
        self.assertEqual(f.compose(shift).covector, tuple(QQ_FIELD.coerce(a) for a in (0, 1, 0)))
        self.assertEqual(f(basis_vector(QQ_FIELD, 3, 0)), QQ_FIELD.one)
        with self.assertRaises(DimensionMismatch):
            f(basis_vector(QQ_FIELD, 2, 0))

    def test_operator_constructors(self):
        with self.assertRaises(DimensionMismatch):
            WeightedOperator.rota_baxter(Matrix(QQ_FIELD, [[1, 0]]))
        with self.assertRaises(TensorError):
            WeightedOperator.alpha_k(Matrix.identity(QQ_FIELD, 2), -1)
        operator = WeightedOperator.derivation(Matrix.identity(QQ_FIELD, 2), '1/2', 'd')
        self.assertEqual(operator.kind, OperatorKind.DERIVATION)
        self.assertEqual(operator.over(F3).weight, F3.coerce(2))


class SubsetSumTest(SimpleTestCase):
    def test_binary_expansion(self):
        algebra = truncated_polynomials(3)
        tensor = algebra.tensor
        e1, e2 = algebra.basis()[:2]
        lam = QQ_FIELD.coerce(3)
        # u on I, x elsewhere: u1·x2 + x1·u2 + λ u1·u2
        expected = vec_add(vec_add(tensor.evaluate([e2, e2]), tensor.evaluate([e1, e1])),
                           vec_scale(lam, tensor.evaluate([e2, e1])))
        self.assertEqual(subset_sum(tensor, [e2, e1], [e1, e2], lam), expected)

    def test_weight_zero_keeps_single_substitutions(self):
        algebra = truncated_polynomials(3)
        e1, e2 = algebra.basis()[:2]
        self.assertEqual(subset_sum(algebra.tensor, [e2, e2], [e1, e1], QQ_FIELD.zero),
                         vec_scale(QQ_FIELD.coerce(2), e2))


class DeterminantProductTest(SimpleTestCase):
    @given(matrices(F5, 3))
    def test_repeated_rows_vanish_in_commutative_associative_algebras(self, m):
        algebra = truncated_polynomials(3, F5)
        row = [tuple(m.rows[i]) for i in range(3)]
        self.assertFalse(any(determinant_product(algebra.tensor, [row, row, algebra.basis()])))

    def test_scalar_rows(self):
        algebra = truncated_polynomials(3)
        e1, e2, e3 = algebra.basis()
        ones = [QQ_FIELD.one] * 3
        # det(1 1 1 / e1 e2 e3 / e1 e1 e1) has two equal vector rows
        self.assertFalse(any(determinant_product(algebra.tensor, [ones, [e1, e2, e3], [e1, e1, e1]],
                                                 scalar_rows=(0,))))


class ProbeOrderTest(SimpleTestCase):
    def test_stored_tuples_first(self):
        order = probe_order(heisenberg().tensor)
        self.assertEqual(order[:2], [(0, 1), (1, 0)])
        self.assertEqual(len(order), 9)
        self.assertEqual(len(set(order)), 9)
