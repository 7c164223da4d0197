from itertools import combinations, product

from django.test import SimpleTestCase, override_settings
from hypothesis import given

from algebras.operations import algebra_equal
from algebras.strategies import matrices
from algebras.structures import HomAlgebra, LinearFunctional, OperatorKind, WeightedOperator
from axioms.checkers import (
    KernelVariant, TripleConvention, check_derivation_weight, check_kernel_condition, check_rota_baxter,
)
from bundles.catalog import load_catalog
from core.exceptions import (
    DimensionMismatch, HypothesisFailed, NonzeroWeight, NotInvertible, TensorError, UnknownVariant,
)
from core.fields import QQ_FIELD, FieldSpec
from core.linalg import Matrix, commutes, is_invertible, mat_inverse
from search.enumeration import SearchSpec, enumerate_rota_baxter, enumerate_weighted_derivations
from search.linear import admissible_functionals

from .derived import DerivedStructure, DualDirection, bracket_dinv_alpha, derived_bracket, dualize
from .determinants import bracket_det_fD, bracket_det_omegaD, rota_baxter_determinant_sides
from .functional import (
    bracket_eq23, bracket_fP, bracket_from_functional, bracket_from_functional_twisted, bracket_from_rb_double,
)
from .products import commutator_bracket, lie_triple_from_lie, prelie_from_derivation, rb_prelie_double
from .results import derived_tensor
from .twists import centroid_twist, yau_twist

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)


def vec(field, *entries):
    return tuple(field.coerce(a) for a in entries)


def zero_operator(field, dim, weight=0):
    return WeightedOperator.rota_baxter(Matrix.scalar(field, dim, 0), weight, 'zero')


def square_matrices(field, dim):
    for residues in product(range(field.p), repeat=dim * dim):
        yield Matrix(field, [residues[i * dim:(i + 1) * dim] for i in range(dim)], dim)


class FunctionalBracketTest(SimpleTestCase):
    def setUp(self):
        self.bundle = load_catalog()

    def test_affine_bracket(self):
        algebra = self.bundle.algebra('AFF2C')
        result = bracket_from_functional(algebra, self.bundle.functional('f3'), verify=True)
        self.assertEqual(result.algebra.name, 'AFF2C.functional')
        self.assertEqual(result.algebra.tensor.get((0, 1, 2)), vec(QQ_FIELD, 0, 1, 0))
        self.assertEqual(result.algebra.tensor.get((1, 0, 2)), vec(QQ_FIELD, 0, -1, 0))
        self.assertTrue(result.conclusions_passed)
        self.assertEqual([r.axiom for r in result.hypothesis_reports],
                         ['hom-lie', 'functional-annihilates-bracket', 'functional-twist-compatible'])

    def test_heisenberg_bracket_vanishes(self):
        result = bracket_from_functional(self.bundle.algebra('H3'), self.bundle.functional('H3.f1'))
        self.assertTrue(result.algebra.tensor.is_zero())
        self.assertEqual(result.conclusion_reports, ())

    @override_settings(HOMALG_VERIFY_CONCLUSIONS=True)
    def test_verification_follows_setting(self):
        result = bracket_from_functional(self.bundle.algebra('H3'), self.bundle.functional('H3.f1'))
        self.assertEqual(len(result.conclusion_reports), 2)

    def test_refuses_functional_on_brackets(self):
        algebra = self.bundle.algebra('H3')
        with self.assertRaises(HypothesisFailed) as caught:
            bracket_from_functional(algebra, LinearFunctional.dual_basis(QQ_FIELD, 3, 2))
        self.assertEqual(caught.exception.report.axiom, 'functional-annihilates-bracket')
        self.assertEqual(caught.exception.report.violations[0].tuple, (1, 2))

    def test_needs_binary_algebra(self):
        with self.assertRaises(TensorError):
            bracket_from_functional(self.bundle.algebra('N4'), LinearFunctional.zero(QQ_FIELD, 4))

    def test_twisted_variant_matches_direct_formula(self):
        algebra = self.bundle.algebra('AFF2C')
        alpha = self.bundle.map('AFF2C.alpha')
        result = bracket_from_functional_twisted(algebra, alpha, self.bundle.functional('f3'), verify=True)
        self.assertEqual(result.algebra.twist, alpha)
        self.assertEqual(result.algebra.tensor.get((0, 1, 2)), vec(QQ_FIELD, 0, 1, 0))
        self.assertTrue(result.conclusions_passed)

    def test_twisted_variant_needs_untwisted_source(self):
        algebra = self.bundle.algebra('AFF2C')
        alpha = self.bundle.map('AFF2C.alpha')
        with self.assertRaises(HypothesisFailed):
            bracket_from_functional_twisted(algebra.with_twist(alpha), alpha, self.bundle.functional('f3'))


class RotaBaxterFunctionalTest(SimpleTestCase):
    def setUp(self):
        self.bundle = load_catalog()

    def test_closed_form_agrees_with_derived_bracket(self):
        result = bracket_fP(self.bundle.algebra('AFF2C'), self.bundle.functional('f3'),
                            self.bundle.operator('AFF2C.P'), verify=True)
        self.assertEqual(result.conclusion_reports[0].axiom, 'agrees-with-derived-functional-bracket')
        self.assertTrue(result.conclusions_passed)
        self.assertEqual(result.hypothesis_reports[-1].axiom, 'kernel-condition:lie')

    def test_rota_baxter_iff_kernel_condition(self):
        # every matrix is Rota-Baxter on the abelian algebra, so its population is capped
        cases = [('H3', None), ('AFF2C', None), ('abelian_3_2', 27)]
        for name, cap in cases:
            algebra = self.bundle.algebra(name).over(F3)
            functionals = admissible_functionals(algebra).exhaustive
            self.assertGreater(len(functionals), 1)
            brackets = [(f, bracket_from_functional(algebra, f).algebra) for f in functionals]
            for weight in (0, 1, 2):
                operators = enumerate_rota_baxter(SearchSpec(algebra, weight=weight, max_results=cap)).operators
                self.assertGreater(len(operators), 0)
                for operator in operators:
                    for functional, bracket in brackets:
                        kernel = check_kernel_condition(algebra, functional, operator, KernelVariant.LIE, limit=1)
                        self.assertEqual(check_rota_baxter(bracket, operator, stop_at_first=True).passed,
                                         kernel.passed, (name, weight, operator.matrix, functional.covector))
                        if kernel.passed and cap is None:
                            closed = bracket_fP(algebra, functional, operator).algebra.tensor
                            self.assertEqual(closed, derived_tensor(bracket.tensor, operator))

    def test_square_zero_operators_satisfy_kernel_condition(self):
        algebra = self.bundle.algebra('AFF2C').over(F2)
        functional = self.bundle.functional('f3').over(F2)
        for matrix in square_matrices(F2, 3):
            operator = WeightedOperator.rota_baxter(matrix, 0)
            if (matrix @ matrix).is_zero() and check_rota_baxter(algebra, operator, stop_at_first=True).passed:
                self.assertTrue(check_kernel_condition(algebra, functional, operator, KernelVariant.LIE).passed)

    def test_refuses_failing_kernel_condition(self):
        algebra = self.bundle.algebra('H3')
        # Pe1 = e1, Pe2 = e1, Pe3 = e2
        matrix = Matrix(QQ_FIELD, [[1, 1, 0], [0, 0, 1], [0, 0, 0]])
        with self.assertRaises(HypothesisFailed):
            bracket_fP(algebra, self.bundle.functional('H3.f1'), WeightedOperator.rota_baxter(matrix))


class DoubleFunctionalTest(SimpleTestCase):
    def setUp(self):
        self.algebra = load_catalog().algebra('T2')
        self.functional = LinearFunctional.of(QQ_FIELD, [1, 0], 'f')

    def test_zero_operator_gives_zero_bracket(self):
        result = bracket_from_rb_double(self.algebra, self.functional, zero_operator(QQ_FIELD, 2), verify=True)
        self.assertTrue(result.algebra.tensor.is_zero())
        self.assertTrue(result.extras['square_condition'].passed)
        self.assertTrue(result.conclusions_passed)
        self.assertIn('square_condition', result.to_document()['extras'])

    def test_rejects_nonzero_weight(self):
        with self.assertRaises(NonzeroWeight):
            bracket_from_rb_double(self.algebra, self.functional, zero_operator(QQ_FIELD, 2, 1))

    def test_available_under_operation_name(self):
        self.assertIs(bracket_eq23, bracket_from_rb_double)


class TwistTest(SimpleTestCase):
    def setUp(self):
        self.bundle = load_catalog()

    def test_yau_twist_of_lie_algebra(self):
        beta = self.bundle.map('H3.beta')
        result = yau_twist(self.bundle.algebra('H3'), beta, verify=True)
        self.assertEqual(result.algebra.twist, beta)
        self.assertEqual(result.algebra.tensor.get((0, 1)), vec(QQ_FIELD, 0, 0, 2))
        self.assertEqual([r.axiom for r in result.conclusion_reports], ['multiplicative', 'hom-lie'])
        self.assertTrue(result.conclusions_passed)

    def test_yau_twist_of_nambu_algebra_keeps_operator(self):
        beta = Matrix.diagonal(QQ_FIELD, [1, 2, 1, 2])
        result = yau_twist(self.bundle.algebra('N4'), beta, self.bundle.operator('N4.P'), verify=True)
        self.assertEqual(result.conclusion_reports[-1].axiom, 'rota-baxter')
        self.assertTrue(result.conclusions_passed)

    def test_yau_twist_needs_endomorphism(self):
        with self.assertRaises(HypothesisFailed) as caught:
            yau_twist(self.bundle.algebra('H3'), Matrix.diagonal(QQ_FIELD, [1, 1, 3]))
        self.assertEqual(caught.exception.report.axiom, 'endomorphism')

    def test_centroid_twist(self):
        gamma = self.bundle.map('T4.t')
        result = centroid_twist(self.bundle.algebra('T4'), gamma, zero_operator(QQ_FIELD, 4), verify=True)
        # γ(e1)·e1 = e2
        self.assertEqual(result.algebra.tensor.get((0, 0)), vec(QQ_FIELD, 0, 1, 0, 0))
        self.assertEqual(result.algebra.twist, gamma)
        self.assertTrue(result.conclusions_passed)

    def test_centroid_twist_needs_centroid_element(self):
        with self.assertRaises(HypothesisFailed):
            centroid_twist(self.bundle.algebra('T4'), self.bundle.map('T4.parity'), zero_operator(QQ_FIELD, 4))


class ProductTest(SimpleTestCase):
    def setUp(self):
        self.bundle = load_catalog()

    def test_prelie_from_derivation(self):
        euler = self.bundle.operator('T4.euler').matrix
        result = prelie_from_derivation(self.bundle.algebra('T4'), euler, zero_operator(QQ_FIELD, 4), verify=True)
        # e2 ∗ e2 = t · t = e3
        self.assertEqual(result.algebra.tensor.get((1, 1)), vec(QQ_FIELD, 0, 0, 1, 0))
        self.assertEqual(result.algebra.tensor.get((1, 0)), vec(QQ_FIELD, 0, 0, 0, 0))
        self.assertTrue(result.conclusions_passed)
        commutator = commutator_bracket(result.algebra, verify=True)
        self.assertTrue(algebra_equal(commutator.algebra, result.extras['sub_adjacent']))
        self.assertTrue(commutator.conclusions_passed)

    def test_commutator_of_commutative_product_is_zero(self):
        result = commutator_bracket(self.bundle.algebra('T3'), zero_operator(QQ_FIELD, 3), verify=True)
        self.assertTrue(result.algebra.tensor.is_zero())
        self.assertTrue(result.conclusions_passed)

    def test_double_of_commutative_prelie_algebra(self):
        algebra = self.bundle.algebra('T2').over(F3)
        operators = enumerate_rota_baxter(SearchSpec(algebra, weight=0)).operators
        self.assertTrue(operators)
        for operator in operators:
            result = rb_prelie_double(algebra, operator, verify=True)
            self.assertTrue(result.algebra.tensor.is_zero())
            self.assertTrue(result.conclusions_passed)

    def test_double_rejects_nonzero_weight(self):
        with self.assertRaises(NonzeroWeight):
            rb_prelie_double(self.bundle.algebra('T2'), zero_operator(QQ_FIELD, 2, 1))

    def test_lie_triple_from_lie(self):
        result = lie_triple_from_lie(self.bundle.algebra('AFF2C'), verify=True)
        # [e1,[e1,e2]] = e2
        self.assertEqual(result.algebra.tensor.get((0, 0, 1)), vec(QQ_FIELD, 0, 1, 0))
        self.assertTrue(result.conclusions_passed)
        with self.assertRaises(HypothesisFailed):
            lie_triple_from_lie(self.bundle.algebra('T4'))


class DeterminantBracketTest(SimpleTestCase):
    def setUp(self):
        self.bundle = load_catalog()
        self.algebra = self.bundle.algebra('T4')

    def test_functional_derivation_determinant(self):
        result = bracket_det_fD(self.algebra, self.bundle.functional('T4.f1'),
                                self.bundle.operator('T4.euler').matrix, zero_operator(QQ_FIELD, 4), verify=True)
        tensor = result.algebra.tensor
        nonzero = [index for index in combinations(range(4), 3) if any(tensor.get(index))]
        self.assertEqual(nonzero, [(0, 1, 2)])
        self.assertEqual(tensor.get((0, 1, 2)), vec(QQ_FIELD, 0, 0, 0, -1))
        self.assertTrue(result.extras['kernel_condition'].passed)
        self.assertEqual(result.conclusion_reports[-1].axiom, 'rota-baxter')
        self.assertTrue(result.conclusions_passed)

    def test_involution_derivation_determinant(self):
        result = bracket_det_omegaD(self.algebra, self.bundle.map('T4.parity'),
                                    self.bundle.operator('T4.t2d').matrix, verify=True)
        self.assertTrue(result.algebra.tensor.is_zero())
        self.assertEqual(result.hypothesis_reports[5].axiom, 'involution-anticommutes-with-derivation')
        self.assertTrue(result.conclusions_passed)

    def test_involution_must_anticommute(self):
        with self.assertRaises(HypothesisFailed):
            bracket_det_omegaD(self.algebra, self.bundle.map('T4.parity'), self.bundle.operator('T4.euler').matrix)

    def test_determinant_needs_commutative_product(self):
        with self.assertRaises(HypothesisFailed):
            bracket_det_fD(self.bundle.algebra('H3'), self.bundle.functional('H3.f1'), Matrix.identity(QQ_FIELD, 3))


class DeterminantSidesTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.algebra = load_catalog().algebra('T3').over(F3)
        cls.operators = [
            operator
            for weight in (0, 1)
            for operator in enumerate_rota_baxter(SearchSpec(cls.algebra, weight=weight, max_results=6)).operators
        ]

    @given(matrices(F3, 3), matrices(F3, 3), matrices(F3, 3))
    def test_sides_agree_for_rota_baxter_operators(self, x, y, z):
        columns = [x.rows, y.rows, z.rows]
        for operator in self.operators:
            left, right = rota_baxter_determinant_sides(self.algebra, operator, columns)
            self.assertEqual(left, right)

    def test_needs_three_columns(self):
        with self.assertRaises(DimensionMismatch):
            rota_baxter_determinant_sides(self.algebra, self.operators[0], [[]])


class DerivedBracketTest(SimpleTestCase):
    def setUp(self):
        self.bundle = load_catalog()
        self.algebra = self.bundle.algebra('N4')
        self.identity = WeightedOperator.rota_baxter(Matrix.identity(QQ_FIELD, 4), -1, 'id')

    def test_identity_at_weight_minus_one_reproduces_bracket(self):
        result = derived_bracket(self.algebra, self.identity, differential=self.bundle.operator('N4.d0'), verify=True)
        self.assertEqual(result.algebra.tensor, self.algebra.tensor)
        self.assertTrue(result.conclusions_passed)

    def test_projection_gives_zero_bracket(self):
        result = derived_bracket(self.algebra, self.bundle.operator('N4.P'), verify=True)
        self.assertTrue(result.algebra.tensor.is_zero())
        self.assertTrue(result.conclusions_passed)

    def test_lie_triple_structure(self):
        triple = lie_triple_from_lie(self.bundle.algebra('AFF2C')).algebra
        identity = WeightedOperator.rota_baxter(Matrix.identity(QQ_FIELD, 3), -1)
        result = derived_bracket(triple, identity, DerivedStructure.LIE_TRIPLE, TripleConvention.CYCLIC, verify=True)
        self.assertTrue(algebra_equal(result.algebra, triple))
        self.assertTrue(result.conclusions_passed)

    def test_argument_checks(self):
        with self.assertRaises(TensorError):
            derived_bracket(self.bundle.algebra('H3'), self.identity)
        with self.assertRaises(UnknownVariant):
            derived_bracket(self.algebra, self.identity, structure='leibniz')

    def test_conjugated_bracket(self):
        result = bracket_dinv_alpha(self.algebra, self.bundle.operator('N4.d'), verify=True)
        self.assertEqual(result.algebra.tensor.get((0, 1, 2)), vec(QQ_FIELD, 0, 0, 0, 7))
        operator = result.extras['operator']
        self.assertEqual(operator.kind, OperatorKind.ROTA_BAXTER)
        self.assertEqual(operator.matrix, Matrix.diagonal(QQ_FIELD, [1, 1, 1, '1/7']))
        self.assertEqual(result.conclusion_reports[0].axiom, 'agrees-with-derived-bracket')
        self.assertTrue(result.conclusions_passed)

    def test_conjugated_bracket_needs_invertible_derivation(self):
        with self.assertRaises(NotInvertible):
            bracket_dinv_alpha(self.algebra, WeightedOperator.derivation(Matrix.scalar(QQ_FIELD, 4, 0), 1))


class DualizeTest(SimpleTestCase):
    def fixtures(self):
        for field in (F3, F5):
            algebra = load_catalog().algebra('AFF2').over(field)
            # αe1 = e1 + e2 and αe2 = e2 preserve [e1,e2] = e2
            yield algebra
            yield algebra.with_twist(Matrix(field, [[1, 0], [1, 1]], 2))

    def test_rota_baxter_iff_dual_derivation(self):
        for algebra in self.fixtures():
            field = algebra.field
            noncommuting = 0
            for matrix in square_matrices(field, 2):
                if not is_invertible(matrix):
                    with self.assertRaises(NotInvertible):
                        dualize(algebra, WeightedOperator.rota_baxter(matrix))
                    continue
                for weight in (0, 1):
                    operator = WeightedOperator.rota_baxter(matrix, weight)
                    dual = dualize(algebra, operator)
                    self.assertEqual(dual.kind, OperatorKind.DERIVATION)
                    self.assertEqual(dual.matrix, algebra.twist @ mat_inverse(matrix))
                    rota_baxter = check_rota_baxter(algebra, operator).passed
                    self.assertEqual(rota_baxter,
                                     check_derivation_weight(algebra, dual, require_commuting=False).passed,
                                     (field, algebra.twist, matrix, weight))
                    if rota_baxter and not commutes(matrix, algebra.twist):
                        noncommuting += 1
                    back = dualize(algebra, dual, DualDirection.DIFF_TO_RB)
                    self.assertEqual(back.matrix, matrix)
                    self.assertEqual(back.kind, OperatorKind.ROTA_BAXTER)
            if not algebra.twist.is_identity():
                self.assertGreater(noncommuting, 0)

    def test_dual_populations_match(self):
        for algebra in self.fixtures():
            for weight in (0, 1):
                spec = SearchSpec(algebra, weight=weight)
                operators = [m for m in enumerate_rota_baxter(spec).matrices()
                             if is_invertible(m) and commutes(m, algebra.twist)]
                derivations = [m for m in enumerate_weighted_derivations(spec).matrices() if is_invertible(m)]
                duals = sorted((algebra.twist @ mat_inverse(m) for m in operators), key=Matrix.residues)
                self.assertEqual(duals, sorted(derivations, key=Matrix.residues))

    def test_catalog_operator_dualizes_to_named_derivation(self):
        bundle = load_catalog()
        algebra = bundle.algebra('N4')
        dual = dualize(algebra, bundle.operator('N4.d'), DualDirection.DIFF_TO_RB)
        self.assertEqual(dual.name, 'N4.d.dual')
        self.assertEqual(dual.weight, QQ_FIELD.one)

    def test_unknown_direction(self):
        algebra = load_catalog().algebra('AFF2')
        with self.assertRaises(UnknownVariant):
            dualize(algebra, WeightedOperator.rota_baxter(Matrix.identity(QQ_FIELD, 2)), 'sideways')

    def test_needs_invertible_twist(self):
        algebra = HomAlgebra(load_catalog().algebra('AFF2').tensor, Matrix.diagonal(QQ_FIELD, [1, 0]))
        with self.assertRaises(NotInvertible):
            dualize(algebra, WeightedOperator.rota_baxter(Matrix.identity(QQ_FIELD, 2)))
