import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase, override_settings

from algebras.operations import algebra_equal
from algebras.structures import OperatorKind
from axioms.checkers import KernelVariant, check_kernel_condition, check_rota_baxter
from constructions.functional import bracket_from_functional
from core.exceptions import BundleSemanticError, BundleSyntaxError
from core.fields import QQ_FIELD, FieldSpec
from core.linalg import Matrix
from search.enumeration import SearchSpec, enumerate_rota_baxter

from .catalog import catalog_dir, declared_axiom_reports, load_catalog, load_fixtures, load_source
from .documents import parse_bundle, parse_document, serialize_bundle
from .runner import run_command

F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)


def bundle_text(document):
    return json.dumps(document)


def small_document(**overrides):
    document = {
        'field': 'Q',
        'algebras': [{'name': 'A', 'dim': 2, 'arity': 2, 'skew_complete': True,
                      'bracket': [{'args': [1, 2], 'value': {'2': '1'}}]}],
    }
    document.update(overrides)
    return document


class ParseBundleTest(SimpleTestCase):
    def test_syntax_error_carries_position(self):
        with self.assertRaises(BundleSyntaxError) as caught:
            parse_bundle('{"field": "Q",\n  "algebras": [}')
        self.assertEqual(caught.exception.line, 2)

    def test_skew_complete_bracket_is_expanded(self):
        bundle = parse_bundle(bundle_text(small_document()))
        algebra = bundle.algebra('A')
        self.assertEqual(algebra.tensor.get((1, 0)), (QQ_FIELD.zero, QQ_FIELD.coerce(-1)))
        self.assertTrue(algebra.twist.is_identity())

    def test_zero_denominator_is_semantic_error(self):
        document = small_document()
        document['algebras'][0]['bracket'][0]['value'] = {'2': '1/0'}
        with self.assertRaises(BundleSemanticError) as caught:
            parse_bundle(bundle_text(document))
        self.assertIn('Zero denominator', str(caught.exception))
        self.assertTrue(caught.exception.path.startswith('$.algebras'))

    def test_bad_field(self):
        with self.assertRaises(BundleSemanticError) as caught:
            parse_document(small_document(field={'Fp': 4}))
        self.assertEqual(caught.exception.path, '$.field')
        with self.assertRaises(BundleSemanticError):
            parse_document(small_document(field='R'))
        with self.assertRaises(BundleSemanticError):
            parse_document([])

    def test_bracket_arguments_must_fit(self):
        document = small_document()
        document['algebras'][0]['bracket'][0]['args'] = [1, 3]
        with self.assertRaises(BundleSemanticError):
            parse_document(document)
        document['algebras'][0]['bracket'][0]['args'] = [1, 2, 1]
        with self.assertRaises(BundleSemanticError):
            parse_document(document)

    def test_basis_index_must_fit(self):
        document = small_document()
        document['algebras'][0]['bracket'][0]['value'] = {'3': '1'}
        with self.assertRaises(BundleSemanticError):
            parse_document(document)

    def test_duplicate_names(self):
        document = small_document(operators=[
            {'name': 'P', 'matrix': [['0', '0'], ['1', '0']]},
            {'name': 'P', 'matrix': [['0', '0'], ['0', '0']]},
        ])
        with self.assertRaises(BundleSemanticError) as caught:
            parse_document(document)
        self.assertIn('duplicate names P', str(caught.exception))

    def test_matrix_must_be_square(self):
        with self.assertRaises(BundleSemanticError):
            parse_document(small_document(maps=[{'name': 'm', 'matrix': [['1', '0']]}]))

    @override_settings(HOMALG_MAX_DIM=1)
    def test_dimension_limit(self):
        with self.assertRaises(BundleSemanticError):
            parse_document(small_document())

    def test_prime_field_residues(self):
        bundle = parse_document(small_document(
            field={'Fp': 5},
            operators=[{'name': 'P', 'matrix': [[7, 0], ['1/2', 1]], 'weight': -1, 'kind': 'rota-baxter'}],
        ))
        operator = bundle.operator('P')
        self.assertEqual(operator.matrix, Matrix(F5, [[2, 0], [3, 1]]))
        self.assertEqual(operator.weight, F5.coerce(4))
        document = json.loads(serialize_bundle(bundle))
        self.assertEqual(document['field'], {'Fp': 5})
        self.assertEqual(document['operators'][0]['matrix'], [[2, 0], [3, 1]])

    def test_operator_kinds(self):
        bundle = parse_document(small_document(operators=[
            {'name': 'a2', 'matrix': [['1', '0'], ['0', '1']], 'kind': {'alpha-k': 2}},
            {'name': 'd', 'matrix': [['1', '0'], ['0', '1']], 'kind': 'derivation', 'weight': '1/2'},
        ]))
        self.assertEqual(bundle.operator('a2').kind, OperatorKind.ALPHA_K)
        self.assertEqual(bundle.operator('a2').k, 2)
        self.assertEqual(bundle.operator('d').weight, QQ_FIELD.coerce('1/2'))
        document = json.loads(serialize_bundle(bundle))
        self.assertEqual(document['operators'][0]['kind'], {'alpha-k': 2})
        with self.assertRaises(BundleSemanticError):
            parse_document(small_document(operators=[{'name': 'x', 'matrix': [['1']], 'kind': 'lift'}]))

    def test_missing_entries(self):
        bundle = parse_document(small_document())
        with self.assertRaises(BundleSemanticError):
            bundle.algebra('B')
        with self.assertRaises(BundleSemanticError):
            bundle.operator('P')
        with self.assertRaises(BundleSemanticError):
            bundle.algebra('abelian_2_3')


class SerializeBundleTest(SimpleTestCase):
    def test_catalog_files_round_trip(self):
        paths = [*catalog_dir().glob('*.json'), *(catalog_dir() / 'fp').glob('*.json')]
        for path in sorted(paths):
            bundle = parse_bundle(path.read_text(encoding='utf-8'))
            text = serialize_bundle(bundle)
            again = parse_bundle(text)
            self.assertEqual(serialize_bundle(again), text, path.name)
            for name, algebra in bundle.algebras.items():
                self.assertTrue(algebra_equal(again.algebra(name), algebra), name)

    def test_skew_complete_algebras_store_increasing_tuples(self):
        document = json.loads(serialize_bundle(parse_bundle(bundle_text(small_document()))))
        entry = document['algebras'][0]
        self.assertEqual(entry['bracket'], [{'args': [1, 2], 'value': {'2': '1'}}])
        self.assertTrue(entry['skew_complete'])

    def test_canonical_text(self):
        text = serialize_bundle(parse_bundle(bundle_text(small_document())))
        self.assertTrue(text.endswith('}\n'))
        self.assertLess(text.index('"algebras"'), text.index('"field"'))


class CatalogTest(SimpleTestCase):
    def test_catalog_contents(self):
        bundle = load_catalog()
        for name in ('H3', 'AFF2', 'AFF2C', 'N4', 'S3', 'T2', 'T3', 'T4'):
            self.assertIn(name, bundle.algebras)
        self.assertEqual(bundle.field, QQ_FIELD)
        self.assertIs(load_source('catalog'), bundle)

    def test_abelian_algebras_are_generated(self):
        algebra = load_catalog().algebra('abelian_2_3')
        self.assertEqual((algebra.dim, algebra.arity), (2, 3))
        self.assertTrue(algebra.tensor.is_zero())

    def test_declared_axioms_hold(self):
        reports = declared_axiom_reports(load_catalog())
        for name, listed in reports.items():
            for report in listed:
                self.assertTrue(report.passed, f"{name}: {report.axiom}")

    def test_read_over_prime_field(self):
        bundle = load_catalog().over(F3)
        self.assertEqual(bundle.field, F3)
        self.assertEqual(bundle.algebra('H3').field, F3)
        self.assertEqual(bundle.operator('N4.d').matrix.residues()[-1], 1)
        self.assertEqual(bundle.algebra('abelian_3_2').field, F3)

    def test_prime_field_fixtures(self):
        fixtures = load_fixtures()
        self.assertEqual(sorted(fixtures), ['AFF2C_F3', 'N4_F3'])
        for stem, bundle in fixtures.items():
            self.assertEqual(bundle.field, F3, stem)
            self.assertIs(load_source(f"catalog:{stem}"), bundle)
            for name, listed in declared_axiom_reports(bundle).items():
                for report in listed:
                    self.assertTrue(report.passed, f"{name}: {report.axiom}")
            for operator in bundle.operators.values():
                for algebra in bundle.algebras.values():
                    self.assertTrue(check_rota_baxter(algebra, operator).passed, (operator.name, algebra.name))
        with self.assertRaises(BundleSemanticError):
            load_source('catalog:H3_F7')

    def test_affine_fixture_matches_search_and_construction(self):
        bundle = load_fixtures()['AFF2C_F3']
        algebra = bundle.algebra('AFF2C.F3')
        functional = bundle.functional('AFF2C.F3.f3')
        built = bracket_from_functional(algebra, functional).algebra
        self.assertTrue(algebra_equal(built, bundle.algebra('AFF2C.F3.functional')))
        for operator in bundle.operators.values():
            found = enumerate_rota_baxter(SearchSpec(algebra, weight=operator.weight)).matrices()
            self.assertIn(operator.matrix, found)
            self.assertTrue(check_kernel_condition(algebra, functional, operator, KernelVariant.LIE).passed)

    def test_unreadable_source(self):
        with self.assertRaises(BundleSemanticError):
            load_source('/nonexistent/bundle.json')


class CommandTest(SimpleTestCase):
    def run_json(self, *argv):
        code, output = run_command(list(argv))
        return code, json.loads(output) if output else None

    def test_passing_check(self):
        code, report = self.run_json('check', 'catalog', '--algebra', 'H3', '--axiom', 'hom-lie')
        self.assertEqual(code, 0)
        self.assertTrue(report['pass'])
        self.assertEqual(report['field'], 'Q')

    def test_failing_check_reports_counterexample(self):
        code, report = self.run_json('check', 'catalog', '--algebra', 'H3', '--axiom', 'commutative')
        self.assertEqual(code, 1)
        self.assertFalse(report['pass'])
        self.assertEqual(report['reports'][0]['violations'][0]['tuple'], [1, 2])

    def test_check_with_references(self):
        code, _ = self.run_json('check', 'catalog', '--algebra', 'T4', '--axiom', 'anticommutes',
                                '--map', 'T4.parity', '--map', 'T4.t2d')
        self.assertEqual(code, 0)
        code, _ = self.run_json('check', 'catalog', '--algebra', 'N4', '--axiom', 'derivation-weight',
                                '--operator', 'N4.d')
        self.assertEqual(code, 0)
        code, _ = self.run_json('check', 'catalog', '--algebra', 'AFF2C', '--axiom', 'kernel-condition',
                                '--functional', 'f3', '--operator', 'AFF2C.P')
        self.assertEqual(code, 0)

    def test_check_in_partitions_matches_single_job(self):
        for argv in (('--algebra', 'N4', '--axiom', 'rota-baxter', '--operator', 'N4.P'),
                     ('--algebra', 'N4', '--axiom', 'derivation-weight', '--operator', 'N4.d'),
                     ('--algebra', 'H3', '--axiom', 'rota-baxter', '--operator', 'H3.D')):
            single = self.run_json('check', 'catalog', *argv)
            split = self.run_json('check', 'catalog', *argv, '--jobs', '3')
            self.assertEqual(split, single, argv)

    def test_check_budget(self):
        argv = ['check', 'catalog', '--algebra', 'H3', '--axiom', 'hom-lie', '--budget']
        self.assertEqual(run_command(argv + ['8'])[0], 2)
        self.assertEqual(run_command(argv + ['9'])[0], 0)

    def test_bad_invocations(self):
        self.assertEqual(run_command(['check', 'catalog', '--algebra', 'H3', '--axiom', 'nonsense'])[0], 2)
        self.assertEqual(run_command(['check', 'catalog', '--algebra', 'Z9', '--axiom', 'hom-lie'])[0], 2)
        self.assertEqual(run_command(['check', 'catalog', '--algebra', 'H3', '--axiom', 'rota-baxter'])[0], 2)
        self.assertEqual(run_command(['check', '/nonexistent.json', '--algebra', 'H3', '--axiom', 'hom-lie'])[0], 2)
        self.assertEqual(run_command(['frobnicate'])[0], 2)

    def test_bad_coefficient_in_bundle_file(self):
        document = small_document()
        document['algebras'][0]['twist'] = [['1', '0'], ['0', '1/0']]
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'bad.json'
            path.write_text(bundle_text(document), encoding='utf-8')
            code, _ = run_command(['check', str(path), '--algebra', 'A', '--axiom', 'hom-lie'])
        self.assertEqual(code, 2)

    def test_build_writes_bundle(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'out.json'
            code, report = self.run_json('build', 'catalog', '--construction', 'bracket-from-functional',
                                         '--algebra', 'AFF2C', '--functional', 'f3', '--verify', '-o', str(path))
            self.assertEqual(code, 0)
            self.assertTrue(report['pass'])
            self.assertEqual(report['algebra'], 'AFF2C.functional')
            written = parse_bundle(path.read_text(encoding='utf-8'))
        algebra = written.algebra('AFF2C.functional')
        self.assertEqual(algebra.tensor.get((0, 1, 2)), (QQ_FIELD.zero, QQ_FIELD.one, QQ_FIELD.zero))
        self.assertTrue(written.skew_complete['AFF2C.functional'])

    def test_build_refused_by_hypothesis(self):
        code, report = self.run_json('build', 'catalog', '--construction', 'bracket-from-functional',
                                     '--algebra', 'H3', '--functional', 'f3')
        self.assertEqual(code, 1)
        self.assertFalse(report['pass'])
        self.assertEqual(report['hypothesis']['axiom'], 'functional-annihilates-bracket')

    def test_build_keeps_conjugated_operator(self):
        code, report = self.run_json('build', 'catalog', '--construction', 'bracket-dinv-alpha',
                                     '--algebra', 'N4', '--operator', 'N4.d', '--verify')
        self.assertEqual(code, 0)
        operator = report['bundle']['operators'][0]
        self.assertEqual(operator['kind'], 'rota-baxter')
        self.assertEqual(operator['name'], 'N4.conjugated.P')

    def test_double_functional_bracket_under_both_names(self):
        document = json.loads((catalog_dir() / 'T2.json').read_text(encoding='utf-8'))
        document['operators'] = [{'name': 'Z', 'kind': 'rota-baxter', 'matrix': [['0', '0'], ['0', '0']]}]
        document['functionals'] = [{'name': 'f', 'covector': ['1', '0']}]
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 't2.json'
            path.write_text(bundle_text(document), encoding='utf-8')
            for construction in ('bracket-eq23', 'bracket-from-rb-double'):
                code, report = self.run_json('build', str(path), '--construction', construction,
                                             '--algebra', 'T2', '--functional', 'f', '--operator', 'Z')
                self.assertEqual(code, 0, construction)
                self.assertEqual(report['construction'], construction)
                self.assertEqual(report['algebra'], 'T2.double-functional')

    def test_search_over_prime_field(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'found.json'
            code, report = self.run_json('search', 'catalog', '--prime', '3', '--algebra', 'AFF2',
                                         '--weight', '1', '--max-results', '3', '-o', str(path))
            self.assertEqual(code, 0)
            found = parse_bundle(path.read_text(encoding='utf-8'))
        self.assertEqual(report['found'], 3)
        self.assertEqual(report['operators'], ['AFF2.rb1', 'AFF2.rb2', 'AFF2.rb3'])
        self.assertEqual(found.field, F3)
        self.assertEqual(found.operator('AFF2.rb1').weight, F3.one)

    def test_search_over_rationals_is_refused(self):
        self.assertEqual(run_command(['search', 'catalog', '--algebra', 'AFF2'])[0], 2)

    def test_dualize(self):
        code, report = self.run_json('dualize', 'catalog', '--algebra', 'N4', '--operator', 'N4.d',
                                     '--direction', 'diff-to-rb')
        self.assertEqual(code, 0)
        self.assertEqual(report['operator']['kind'], 'rota-baxter')
        self.assertTrue(report['source']['pass'])
        self.assertTrue(report['dual']['pass'])

    def test_dualize_fails_when_operator_is_not_rota_baxter(self):
        # D = diag(1,1,2) is a derivation of H3, not a Rota-Baxter operator
        code, report = self.run_json('dualize', 'catalog', '--algebra', 'H3', '--operator', 'H3.D')
        self.assertEqual(code, 1)
        self.assertFalse(report['pass'])
        self.assertFalse(report['source']['pass'])
        self.assertFalse(report['dual']['pass'])

    def test_dualize_on_twisted_algebra_ignores_commutation(self):
        # αe1 = e1 + e2 and αe2 = e2 preserve [e1,e2] = e2; P = diag(1,-1) does not commute with α
        document = small_document(operators=[
            {'name': 'A.P', 'kind': 'rota-baxter', 'weight': '1', 'matrix': [['1', '0'], ['0', '-1']]},
        ])
        document['algebras'][0]['twist'] = [['1', '0'], ['1', '1']]
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'twisted.json'
            path.write_text(bundle_text(document), encoding='utf-8')
            code, report = self.run_json('dualize', str(path), '--algebra', 'A', '--operator', 'A.P')
        self.assertEqual(code, 0)
        self.assertTrue(report['pass'])
        self.assertEqual(report['operator']['matrix'], [['1', '0'], ['1', '-1']])

    def test_dualize_singular_operator(self):
        code, report = self.run_json('dualize', 'catalog', '--algebra', 'AFF2', '--operator', 'AFF2.P')
        self.assertEqual(code, 1)
        self.assertFalse(report['pass'])

    def test_report(self):
        code, report = self.run_json('report', 'catalog')
        self.assertEqual(code, 0)
        self.assertTrue(report['pass'])
        self.assertEqual(report['fixtures'], [{'name': 'AFF2C_F3', 'field': {'Fp': 3}},
                                              {'name': 'N4_F3', 'field': {'Fp': 3}}])
        self.assertIn('AFF2C.F3.functional', report['algebras'])
        self.assertIn('N4.F3', report['algebras'])
        code, text = run_command(['report', 'catalog', '--format', 'text'])
        self.assertEqual(code, 0)
        self.assertTrue(any(line.startswith('H3 ') for line in text.splitlines()))
        self.assertTrue(any(line.startswith('N4.F3 ') for line in text.splitlines()))

    def test_check_on_prime_field_fixture(self):
        code, report = self.run_json('check', 'catalog:N4_F3', '--algebra', 'N4.F3', '--axiom', 'rota-baxter',
                                     '--operator', 'N4.F3.P')
        self.assertEqual(code, 0)
        self.assertEqual(report['field'], {'Fp': 3})
        self.assertEqual(run_command(['check', 'catalog:N4_F7', '--algebra', 'N4', '--axiom', 'hom-nambu'])[0], 2)

    def test_catalog_listing(self):
        code, listing = self.run_json('catalog')
        self.assertEqual(code, 0)
        self.assertIn('f3', listing['functionals'])
        self.assertIn('H3', [entry['name'] for entry in listing['algebras']])
        self.assertEqual(listing['fixtures'], ['AFF2C_F3', 'N4_F3'])
