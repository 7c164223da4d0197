from unittest.mock import patch

from django.test import SimpleTestCase, override_settings

from algebras.operations import algebra_equal
from algebras.structures import LinearFunctional, OperatorKind, WeightedOperator
from axioms.checkers import check_derivation_weight, check_rota_baxter
from bundles.catalog import load_catalog
from core.exceptions import (
    BudgetExceeded, RationalsUnsupported, SearchFailed, TensorError, UnknownVariant,
)
from core.fields import QQ_FIELD, FieldSpec
from core.linalg import Matrix, is_invertible

from .enumeration import (
    SearchSpec, check_search_limits, enumerate_operators, enumerate_rota_baxter, enumerate_structures,
    enumerate_weighted_derivations, partitions,
)
from .linear import admissible_functionals, solve_linear_derivations
from .tasks import algebra_from_payload, algebra_payload, scan_partition_task

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
F7 = FieldSpec.prime(7)


def catalog_algebra(name, field=None):
    algebra = load_catalog().algebra(name)
    return algebra.over(field) if field is not None else algebra


class SearchLimitTest(SimpleTestCase):
    def test_rationals_are_refused(self):
        with self.assertRaises(RationalsUnsupported):
            check_search_limits(QQ_FIELD, 2, 4)

    def test_dimension_and_modulus_limits(self):
        with self.assertRaises(BudgetExceeded):
            check_search_limits(F3, 4, 16)
        with self.assertRaises(BudgetExceeded):
            check_search_limits(F7, 2, 4)
        self.assertEqual(check_search_limits(F7, 2, 4, max_p=7), 7 ** 4)

    @override_settings(HOMALG_SEARCH_BUDGET=50)
    def test_budget_from_settings(self):
        with self.assertRaises(BudgetExceeded):
            enumerate_rota_baxter(SearchSpec(catalog_algebra('AFF2', F3)))

    def test_alpha_k_kind_is_not_enumerated(self):
        with self.assertRaises(UnknownVariant):
            SearchSpec(catalog_algebra('AFF2', F3), kind=OperatorKind.ALPHA_K)

    def test_partitions(self):
        self.assertEqual(partitions(9, 4), [(0, 3), (3, 5), (5, 7), (7, 9)])
        self.assertEqual(partitions(2, 5), [(0, 1), (1, 2)])
        self.assertEqual(partitions(4, 0), [(0, 4)])


class OperatorSearchTest(SimpleTestCase):
    def setUp(self):
        self.algebra = catalog_algebra('AFF2', F3)

    def test_results_pass_and_are_ordered(self):
        result = enumerate_rota_baxter(SearchSpec(self.algebra, weight=1))
        self.assertEqual(result.candidates_scanned, 3 ** 4)
        residues = [m.residues() for m in result.matrices()]
        self.assertEqual(residues, sorted(residues))
        self.assertEqual(residues[0], (0, 0, 0, 0))
        # P = −λ id is Rota-Baxter of weight λ
        self.assertIn(Matrix.scalar(F3, 2, -1), result.matrices())
        for operator in result.operators:
            self.assertEqual(operator.kind, OperatorKind.ROTA_BAXTER)
            self.assertTrue(check_rota_baxter(self.algebra, operator).passed)

    def test_partitioned_search_matches_single_job(self):
        for kind in (OperatorKind.ROTA_BAXTER, OperatorKind.DERIVATION):
            single = enumerate_operators(SearchSpec(self.algebra, weight=1, kind=kind))
            split = enumerate_operators(SearchSpec(self.algebra, weight=1, kind=kind, jobs=4))
            self.assertEqual(single.matrices(), split.matrices())
            self.assertEqual(single.candidates_scanned, split.candidates_scanned)

    def test_max_results_truncates(self):
        full = enumerate_rota_baxter(SearchSpec(self.algebra))
        first = enumerate_rota_baxter(SearchSpec(self.algebra, max_results=2, jobs=3))
        self.assertEqual(len(first), 2)
        self.assertEqual(first.matrices(), full.matrices()[:2])

    def test_invertible_solutions_are_dual(self):
        for weight in (0, 1):
            operators = enumerate_rota_baxter(SearchSpec(self.algebra, weight=weight)).matrices()
            derivations = enumerate_weighted_derivations(SearchSpec(self.algebra, weight=weight)).matrices()
            self.assertEqual(len([m for m in operators if is_invertible(m)]),
                             len([m for m in derivations if is_invertible(m)]))

    def test_weight_zero_derivations_match_linear_solution(self):
        result = enumerate_weighted_derivations(SearchSpec(self.algebra, weight=0))
        self.assertEqual(len(result), 3 ** len(solve_linear_derivations(self.algebra)))
        for operator in result.operators:
            self.assertTrue(check_derivation_weight(self.algebra, operator).passed)


class PartitionTaskTest(SimpleTestCase):
    def test_payload_round_trip(self):
        algebra = catalog_algebra('H3', F3)
        self.assertTrue(algebra_equal(algebra_from_payload(algebra_payload(algebra)), algebra))

    def test_task_scans_its_partition(self):
        payload = algebra_payload(catalog_algebra('AFF2', F3))
        outcome = scan_partition_task.apply(args=(payload, 0, 'rota-baxter', 0, 3)).get()
        self.assertEqual(outcome['status'], 'ok')
        self.assertEqual(outcome['scanned'], 3 * 3 ** 2)
        self.assertIn([0, 0, 0, 0], outcome['operators'])

    def test_task_reports_errors(self):
        payload = dict(algebra_payload(catalog_algebra('AFF2', F3)), field={'Fp': 4})
        outcome = scan_partition_task.apply(args=(payload, 0, 'rota-baxter', 0, 3)).get()
        self.assertEqual(outcome['status'], 'error')
        self.assertEqual(outcome['error_type'], 'InvalidField')

    def test_failed_partition_keeps_its_error_type(self):
        spec = SearchSpec(catalog_algebra('AFF2', F3), jobs=3)
        with patch('search.tasks.algebra_from_payload', side_effect=TensorError('bad table')):
            with self.assertRaises(SearchFailed) as caught:
                enumerate_rota_baxter(spec)
        self.assertNotIsInstance(caught.exception, BudgetExceeded)
        self.assertEqual(caught.exception.error_type, 'TensorError')
        self.assertIn('bad table', str(caught.exception))


class StructureSearchTest(SimpleTestCase):
    def test_commutative_products_over_f2(self):
        found = enumerate_structures(F2, 2, 2, ['commutative'])
        # free values on (1,1), (1,2) and (2,2)
        self.assertEqual(len(found), 2 ** 6)
        self.assertTrue(found[0].tensor.is_zero())

    def test_max_results(self):
        found = enumerate_structures(F2, 2, 2, ['commutative', 'hom-associative'], max_results=3)
        self.assertEqual(len(found), 3)

    def test_budget(self):
        with self.assertRaises(BudgetExceeded):
            enumerate_structures(F2, 2, 2, ['commutative'], budget=10)


class LinearProblemTest(SimpleTestCase):
    def test_heisenberg_derivations(self):
        solutions = solve_linear_derivations(catalog_algebra('H3'))
        self.assertEqual(len(solutions), 6)
        algebra = catalog_algebra('H3')
        for matrix in solutions:
            self.assertTrue(check_derivation_weight(algebra, WeightedOperator.derivation(matrix)).passed)

    def test_derivation_arguments(self):
        with self.assertRaises(TensorError):
            solve_linear_derivations(catalog_algebra('N4'))
        with self.assertRaises(TensorError):
            solve_linear_derivations(catalog_algebra('H3'), k=-1)

    def test_admissible_functionals_of_heisenberg(self):
        result = admissible_functionals(catalog_algebra('H3'))
        self.assertEqual(len(result.linear_basis), 2)
        self.assertIsNone(result.exhaustive)
        self.assertTrue(result.is_admissible(LinearFunctional.of(QQ_FIELD, [1, 1, 0])))
        self.assertFalse(result.is_admissible(LinearFunctional.of(QQ_FIELD, [0, 0, 1])))

    def test_admissible_functionals_of_affine_algebra(self):
        result = admissible_functionals(catalog_algebra('AFF2C'))
        for functional in result.linear_basis:
            self.assertEqual(functional.covector[1], QQ_FIELD.zero)
        self.assertEqual(len(result.linear_basis), 2)

    def test_exhaustive_list_over_prime_field(self):
        result = admissible_functionals(catalog_algebra('H3', F3))
        self.assertEqual(len(result.exhaustive), 9)

    def test_twist_compatibility_is_required(self):
        algebra = catalog_algebra('AFF2C')
        twisted = algebra.with_twist(Matrix(QQ_FIELD, [[1, 0, 0], [0, 1, 0], [1, 0, 1]]))
        result = admissible_functionals(twisted)
        # e1* ∘ α = e1* but e3* ∘ α = e1* + e3*
        self.assertTrue(result.is_admissible(LinearFunctional.dual_basis(QQ_FIELD, 3, 0)))
        self.assertFalse(result.is_admissible(LinearFunctional.dual_basis(QQ_FIELD, 3, 2)))
