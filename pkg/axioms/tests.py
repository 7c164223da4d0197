from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings

from algebras.payloads import algebra_payload, operator_payload
from algebras.strategies import invertible_matrices, matrices, vectors
from algebras.structures import HomAlgebra, LinearFunctional, StructureTensor, WeightedOperator
from axioms.checkers import (
    KernelVariant, NambuForm, TripleConvention, check_alpha_k_derivation, check_centroid, check_commutative,
    check_derivation_weight, check_derivation_weight_expanded, check_endomorphism, check_functional_annihilates,
    check_functional_derivation_balance, check_functional_twist_compatible, check_hom_associative,
    check_hom_lie, check_hom_lie_triple, check_hom_nambu, check_hom_prelie, check_involution,
    check_kernel_condition, check_multiplicative, check_nambu_form, check_rota_baxter,
    check_rota_baxter_expanded, commutation_report,
)
from axioms.partitions import check_partitioned
from axioms.registry import STRUCTURE_AXIOMS, check_structure_axiom
from axioms.reports import ReportBuilder, merge_reports
from axioms.tasks import check_partition_task
from bundles.catalog import load_catalog
from core.exceptions import TensorError, UnknownVariant
from core.fields import QQ_FIELD, FieldSpec
from core.linalg import Matrix, vec_add

F3 = FieldSpec.prime(3)


def catalog():
    return load_catalog()


class ReportTest(SimpleTestCase):
    def test_violations_sorted_and_one_based(self):
        builder = ReportBuilder('demo', 'x = y', QQ_FIELD)
        builder.compare((2, 0), (QQ_FIELD.one,), (QQ_FIELD.zero,))
        builder.compare((0, 1), (QQ_FIELD.one,), (QQ_FIELD.zero,))
        builder.compare((0, 0), (QQ_FIELD.one,), (QQ_FIELD.one,))
        report = builder.build()
        self.assertFalse(report)
        self.assertEqual(report.checked, 3)
        self.assertEqual([v.tuple for v in report.violations], [(1, 2), (3, 1)])
        self.assertEqual(report.to_document()['violations'][0], {'tuple': [1, 2], 'lhs': ['1'], 'rhs': ['0']})

    @override_settings(HOMALG_VIOLATION_LIMIT=2)
    def test_violation_cap(self):
        builder = ReportBuilder('demo', 'x = y', F3)
        for i in range(4):
            builder.compare((i,), (F3.one,), (F3.zero,))
        report = builder.build()
        self.assertEqual(len(report.violations), 2)
        self.assertEqual(report.to_document()['violations'][1]['lhs'], [1])

    def test_merge_labels_clauses(self):
        ok = ReportBuilder('a', 'a', QQ_FIELD).build()
        builder = ReportBuilder('b', 'b', QQ_FIELD)
        builder.compare((0,), (QQ_FIELD.one,), (QQ_FIELD.zero,))
        merged = merge_reports('ab', 'a and b', [ok, builder.build()])
        self.assertFalse(merged.passed)
        self.assertEqual(merged.violations[0].clause, 'b')


class StructureAxiomTest(SimpleTestCase):
    def test_heisenberg_is_hom_lie(self):
        self.assertTrue(check_hom_lie(catalog().algebra('H3')).passed)

    def test_heisenberg_is_not_commutative(self):
        report = check_commutative(catalog().algebra('H3'))
        self.assertFalse(report.passed)
        self.assertEqual(report.violations[0].tuple, (1, 2))

    def test_truncated_polynomials(self):
        t4 = catalog().algebra('T4')
        for check in (check_hom_associative, check_commutative, check_hom_prelie, check_multiplicative):
            self.assertTrue(check(t4).passed, check.__name__)
        self.assertFalse(check_hom_lie(t4).passed)

    def test_twisted_heisenberg_is_multiplicative(self):
        h3 = catalog().algebra('H3')
        twisted = h3.with_twist(Matrix.diagonal(QQ_FIELD, [1, 1, 2]))
        self.assertTrue(check_multiplicative(twisted).passed)
        self.assertFalse(check_multiplicative(h3.with_twist(Matrix.diagonal(QQ_FIELD, [1, 1, 3]))).passed)

    def test_abelian_passes_everything(self):
        abelian = catalog().algebra('abelian_2_3')
        self.assertTrue(check_hom_nambu(abelian).passed)
        self.assertTrue(check_hom_lie_triple(abelian).passed)

    def test_ternary_catalog_algebras_are_nambu_lie(self):
        for name in ('N4', 'S3'):
            algebra = catalog().algebra(name)
            verdicts = {form: check_nambu_form(algebra, form).passed for form in NambuForm}
            verdicts['generic'] = check_hom_nambu(algebra).passed
            self.assertEqual(set(verdicts.values()), {True}, name)

    def test_nambu_form_needs_ternary(self):
        with self.assertRaises(TensorError):
            check_nambu_form(catalog().algebra('H3'), NambuForm.INNER_LAST)
        with self.assertRaises(UnknownVariant):
            check_nambu_form(catalog().algebra('N4'), 'eq99')

    def test_stop_at_first(self):
        report = check_commutative(catalog().algebra('H3'), stop_at_first=True)
        self.assertEqual(len(report.violations), 1)

    def test_registry(self):
        self.assertIn('hom-lie', STRUCTURE_AXIOMS)
        self.assertTrue(check_structure_axiom(catalog().algebra('AFF2'), 'skew-symmetric').passed)
        with self.assertRaises(UnknownVariant):
            check_structure_axiom(catalog().algebra('AFF2'), 'lie-admissible')

    @given(vectors(F3, 3), vectors(F3, 3), vectors(F3, 3))
    def test_basis_verdict_holds_on_random_vectors(self, x, y, z):
        algebra = catalog().algebra('H3').over(F3)
        ev = algebra.tensor.evaluate
        total = vec_add(vec_add(ev([x, ev([y, z])]), ev([y, ev([z, x])])), ev([z, ev([x, y])]))
        self.assertFalse(any(total))


class TripleSystemTest(SimpleTestCase):
    def lie_triple(self):
        aff = catalog().algebra('AFF2C')
        tensor = aff.tensor
        return HomAlgebra.untwisted(StructureTensor.from_function(
            aff.field, aff.dim, 3, lambda index: tensor.evaluate([aff.basis()[index[0]], tensor.get(index[1:])])))

    def test_cyclic_convention(self):
        self.assertTrue(check_hom_lie_triple(self.lie_triple(), TripleConvention.CYCLIC).passed)

    def test_verbatim_convention_rejects_nonzero_bracket(self):
        report = check_hom_lie_triple(self.lie_triple(), TripleConvention.VERBATIM)
        self.assertFalse(report.passed)
        self.assertEqual(report.violations[0].clause, 'sum-verbatim')


class MapAxiomTest(SimpleTestCase):
    def test_endomorphism(self):
        bundle = catalog()
        self.assertTrue(check_endomorphism(bundle.algebra('H3'), bundle.map('H3.beta')).passed)

    def test_centroid(self):
        bundle = catalog()
        t4 = bundle.algebra('T4')
        self.assertTrue(check_centroid(t4, bundle.map('T4.t')).passed)
        self.assertFalse(check_centroid(t4, bundle.map('T4.parity')).passed)

    def test_involution(self):
        bundle = catalog()
        t4 = bundle.algebra('T4')
        self.assertTrue(check_involution(t4, bundle.map('T4.parity')).passed)
        report = check_involution(t4, bundle.map('T4.t'))
        self.assertFalse(report.passed)
        self.assertEqual(report.violations[0].clause, 'square')

    def test_commutation_reports(self):
        bundle = catalog()
        parity, t2d = bundle.map('T4.parity'), bundle.operator('T4.t2d').matrix
        euler = bundle.operator('T4.euler').matrix
        self.assertTrue(commutation_report(parity, t2d, 'w-D', anti=True).passed)
        self.assertFalse(commutation_report(parity, t2d, 'w-D').passed)
        self.assertTrue(commutation_report(parity, euler, 'w-E').passed)


class DerivationTest(SimpleTestCase):
    def test_catalog_derivations(self):
        bundle = catalog()
        self.assertTrue(check_derivation_weight(bundle.algebra('H3'), bundle.operator('H3.D')).passed)
        self.assertTrue(check_derivation_weight(bundle.algebra('N4'), bundle.operator('N4.d')).passed)
        self.assertTrue(check_derivation_weight(bundle.algebra('N4'), bundle.operator('N4.d0')).passed)
        t4 = bundle.algebra('T4')
        for name in ('T4.euler', 'T4.t2d'):
            self.assertTrue(check_alpha_k_derivation(t4, bundle.operator(name).matrix).passed, name)

    def test_weight_matters(self):
        bundle = catalog()
        d = bundle.operator('N4.d')
        wrong = WeightedOperator.derivation(d.matrix, 0)
        self.assertFalse(check_derivation_weight(bundle.algebra('N4'), wrong).passed)

    def test_rota_baxter_kind_is_refused(self):
        bundle = catalog()
        with self.assertRaises(UnknownVariant):
            check_derivation_weight(bundle.algebra('AFF2'), bundle.operator('AFF2.P'))

    def test_commuting_clause_is_optional(self):
        h3 = catalog().algebra('H3')
        twisted = h3.with_twist(Matrix.diagonal(QQ_FIELD, [1, 1, 2]))
        shear = Matrix(QQ_FIELD, [[0, 0, 0], [0, 0, 0], [1, 0, 0]])
        strict = check_alpha_k_derivation(twisted, shear, 0)
        relaxed = check_alpha_k_derivation(twisted, shear, 0, require_commuting=False)
        self.assertFalse(strict.passed)
        self.assertTrue(relaxed.passed)
        self.assertEqual(len(relaxed.advisories), 1)

    @settings(max_examples=40)
    @given(matrices(F3, 3), invertible_matrices(F3, 3))
    def test_alpha_derivation_is_weight_zero_derivation(self, m, twist):
        algebra = catalog().algebra('H3').over(F3).with_twist(twist)
        direct = check_alpha_k_derivation(algebra, m, k=1)
        generic = check_derivation_weight(algebra, WeightedOperator.derivation(m, 0))
        self.assertEqual(direct.passed, generic.passed)

    @settings(max_examples=30)
    @given(matrices(F3, 4))
    def test_ternary_expansion_agrees(self, m):
        algebra = catalog().algebra('N4').over(F3)
        for weight in (0, 1):
            operator = WeightedOperator.derivation(m, weight)
            generic = check_derivation_weight(algebra, operator)
            expanded = check_derivation_weight_expanded(algebra, operator)
            self.assertEqual(generic.passed, expanded.passed)


class RotaBaxterTest(SimpleTestCase):
    def test_catalog_operators(self):
        bundle = catalog()
        self.assertTrue(check_rota_baxter(bundle.algebra('AFF2'), bundle.operator('AFF2.P')).passed)
        self.assertTrue(check_rota_baxter(bundle.algebra('N4'), bundle.operator('N4.P')).passed)

    def test_identity_at_weight_minus_one(self):
        n4 = catalog().algebra('N4')
        identity = WeightedOperator.rota_baxter(Matrix.identity(QQ_FIELD, 4), -1)
        self.assertTrue(check_rota_baxter(n4, identity).passed)
        self.assertFalse(check_rota_baxter(n4, WeightedOperator.rota_baxter(Matrix.identity(QQ_FIELD, 4), 0)).passed)

    @settings(max_examples=40)
    @given(matrices(F3, 3))
    def test_binary_expansion_agrees(self, m):
        algebra = catalog().algebra('H3').over(F3)
        for weight in (0, 1, 2):
            operator = WeightedOperator.rota_baxter(m, weight)
            generic = check_rota_baxter(algebra, operator)
            expanded = check_rota_baxter_expanded(algebra, operator)
            self.assertEqual(generic.passed, expanded.passed)
            self.assertEqual([v.tuple for v in generic.violations], [v.tuple for v in expanded.violations])

    @settings(max_examples=30)
    @given(matrices(F3, 4))
    def test_ternary_expansion_agrees(self, m):
        algebra = catalog().algebra('N4').over(F3)
        operator = WeightedOperator.rota_baxter(m, 1)
        self.assertEqual(check_rota_baxter(algebra, operator).passed,
                         check_rota_baxter_expanded(algebra, operator).passed)


class PartitionedCheckTest(SimpleTestCase):
    def assertSameReport(self, partitioned, serial):
        self.assertEqual(partitioned.to_document(), serial.to_document())

    def test_rota_baxter_counterexamples_survive_partitioning(self):
        bundle = catalog()
        h3 = bundle.algebra('H3')
        operator = WeightedOperator.rota_baxter(bundle.map('H3.beta'), 0)
        serial = check_rota_baxter(h3, operator, limit=1)
        self.assertFalse(serial.passed)
        for jobs in (1, 2, 3, 8):
            self.assertSameReport(check_partitioned(h3, operator, 'rota-baxter', jobs, limit=1), serial)

    def test_derivation_over_rationals(self):
        bundle = catalog()
        for algebra, name in ((bundle.algebra('H3'), 'H3.D'), (bundle.algebra('N4'), 'N4.d')):
            operator = bundle.operator(name)
            self.assertSameReport(check_partitioned(algebra, operator, 'derivation-weight', 3),
                                  check_derivation_weight(algebra, operator))

    def test_commuting_clause_decides_before_dispatch(self):
        twisted = catalog().algebra('H3').with_twist(Matrix.diagonal(QQ_FIELD, [1, 1, 2]))
        shear = WeightedOperator.derivation(Matrix(QQ_FIELD, [[0, 0, 0], [0, 0, 0], [1, 0, 0]]), 0)
        strict = check_partitioned(twisted, shear, 'derivation-weight', 3)
        self.assertSameReport(strict, check_derivation_weight(twisted, shear))
        self.assertEqual({v.clause for v in strict.violations}, {'commutes'})
        self.assertSameReport(check_partitioned(twisted, shear, 'derivation-weight', 3, require_commuting=False),
                              check_derivation_weight(twisted, shear, require_commuting=False))

    @settings(max_examples=20)
    @given(matrices(F3, 4))
    def test_ternary_checks_match_single_job(self, m):
        algebra = catalog().algebra('N4').over(F3)
        rota_baxter = WeightedOperator.rota_baxter(m, 1)
        derivation = WeightedOperator.derivation(m, 1)
        self.assertSameReport(check_partitioned(algebra, rota_baxter, 'rota-baxter', 3),
                              check_rota_baxter(algebra, rota_baxter))
        self.assertSameReport(check_partitioned(algebra, derivation, 'derivation-weight', 2),
                              check_derivation_weight(algebra, derivation))

    def test_other_axioms_are_not_partitioned(self):
        bundle = catalog()
        with self.assertRaises(UnknownVariant):
            check_partitioned(bundle.algebra('AFF2'), bundle.operator('AFF2.P'), 'centroid', 2)

    def test_task_reports_errors(self):
        bundle = catalog()
        payload = dict(algebra_payload(bundle.algebra('AFF2').over(F3)), field={'Fp': 4})
        operator = operator_payload(bundle.operator('AFF2.P').over(F3))
        outcome = check_partition_task.apply(args=(payload, operator, 'rota-baxter', 0, 1)).get()
        self.assertEqual(outcome['status'], 'error')
        self.assertEqual(outcome['error_type'], 'InvalidField')


class FunctionalTest(SimpleTestCase):
    def test_annihilation(self):
        bundle = catalog()
        h3 = bundle.algebra('H3')
        self.assertTrue(check_functional_annihilates(h3, bundle.functional('H3.f1')).passed)
        report = check_functional_annihilates(bundle.algebra('AFF2C'), bundle.functional('f3').over(QQ_FIELD))
        self.assertTrue(report.passed)
        aff = bundle.algebra('AFF2C')
        e2 = LinearFunctional.of(QQ_FIELD, [0, 1, 0])
        self.assertEqual(check_functional_annihilates(aff, e2).violations[0].tuple, (1, 2))

    def test_twist_compatibility(self):
        bundle = catalog()
        aff = bundle.algebra('AFF2C').with_twist(bundle.map('AFF2C.alpha'))
        # f3∘α = 0
        self.assertTrue(check_functional_twist_compatible(aff, bundle.functional('f3')).passed)
        self.assertTrue(check_functional_twist_compatible(aff, bundle.functional('AFF2C.f1')).passed)

    def test_derivation_balance(self):
        bundle = catalog()
        report = check_functional_derivation_balance(bundle.algebra('T4'), bundle.functional('T4.f1'),
                                                     bundle.operator('T4.euler').matrix)
        self.assertTrue(report.passed)


class KernelConditionTest(SimpleTestCase):
    def test_central_image_satisfies_lie_variant(self):
        bundle = catalog()
        report = check_kernel_condition(bundle.algebra('AFF2C'), bundle.functional('f3'),
                                        bundle.operator('AFF2C.P'), KernelVariant.LIE)
        self.assertTrue(report.passed)
        self.assertEqual(report.checked, 27)
        self.assertEqual(report.axiom, 'kernel-condition:lie')

    def test_determinant_variant_needs_derivation(self):
        bundle = catalog()
        with self.assertRaises(UnknownVariant):
            check_kernel_condition(bundle.algebra('T4'), bundle.functional('T4.f1'),
                                   WeightedOperator.rota_baxter(Matrix.zeros(QQ_FIELD, 4)), 'determinant')
        with self.assertRaises(UnknownVariant):
            check_kernel_condition(bundle.algebra('T4'), bundle.functional('T4.f1'),
                                   WeightedOperator.rota_baxter(Matrix.zeros(QQ_FIELD, 4)), 'no-such-variant')

    def test_zero_operator_passes_every_variant(self):
        bundle = catalog()
        t4 = bundle.algebra('T4')
        zero = WeightedOperator.rota_baxter(Matrix.zeros(QQ_FIELD, 4))
        euler = bundle.operator('T4.euler').matrix
        for variant in KernelVariant:
            report = check_kernel_condition(t4, bundle.functional('T4.f1'), zero, variant, derivation=euler)
            self.assertTrue(report.passed, variant.value)
