"""``manage.py homalg``: check, build, search and dualize Hom-algebra bundles.

Every subcommand prints one canonical JSON report (``report --format text``
excepted). Exit status 0 means every check passed, 1 that a check or a
construction hypothesis failed, 2 that the input or the invocation was bad.
"""
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from algebras.operations import is_skew_symmetric
from algebras.structures import OperatorKind
from axioms.checkers import (
    KernelVariant, NambuForm, TripleConvention, check_alpha_k_derivation, check_centroid,
    check_derivation_weight, check_derivation_weight_expanded, check_endomorphism,
    check_functional_annihilates, check_functional_derivation_balance, check_functional_double_balance,
    check_functional_twist_compatible, check_hom_lie_triple, check_involution, check_kernel_condition,
    check_nambu_form, check_rota_baxter, check_rota_baxter_expanded, commutation_report,
)
from axioms.partitions import check_partitioned
from axioms.registry import STRUCTURE_AXIOMS, check_structure_axiom
from bundles.catalog import CATALOG_NAME, declared_axiom_reports, load_fixtures, load_source
from bundles.documents import AlgebraBundle, canonical_json, operator_document, serialize_bundle
from constructions.derived import DerivedStructure, DualDirection, bracket_dinv_alpha, derived_bracket, dualize
from constructions.determinants import bracket_det_fD, bracket_det_omegaD
from constructions.functional import (
    bracket_fP, bracket_from_functional, bracket_from_functional_twisted, bracket_from_rb_double,
)
from constructions.products import (
    commutator_bracket, lie_triple_from_lie, prelie_from_derivation, rb_prelie_double,
)
from constructions.twists import centroid_twist, yau_twist
from core.exceptions import BudgetExceeded, ConstructionMismatch, HomAlgebraError, HypothesisFailed, NotInvertible
from core.fields import FieldSpec
from search.enumeration import SearchSpec, enumerate_operators

logger = logging.getLogger(__name__)

PASSED, FAILED, BAD_INPUT = 0, 1, 2


def _required(options, key):
    value = options.get(key)
    if value is None or value == []:
        raise CommandError(f"--{key.replace('_', '-')} is required here", returncode=BAD_INPUT)
    return value


def _maps(options, count):
    names = options.get('map') or []
    if len(names) < count:
        raise CommandError(f"{count} --map argument(s) required, got {len(names)}", returncode=BAD_INPUT)
    return names


def matrix_named(bundle, name):
    """Maps first, then the matrix of an operator of that name"""
    if name in bundle.maps:
        return bundle.maps[name]
    return bundle.operator(name).matrix


def _operator(bundle, options):
    return bundle.operator(_required(options, 'operator'))


def _functional(bundle, options):
    return bundle.functional(_required(options, 'functional'))


def _as_derivation(bundle, options):
    """The named operator read as a weighted derivation, whatever kind it was stored with"""
    operator = _operator(bundle, options)
    return operator.retagged(kind=OperatorKind.DERIVATION, name=operator.name)


def _structure_check(name):
    def check(bundle, algebra, options):
        return [check_structure_axiom(algebra, name, options['limit'])]
    return check


def _alpha_k_check(bundle, algebra, options):
    if options.get('operator'):
        operator = _operator(bundle, options)
        matrix, k = operator.matrix, operator.k if operator.kind is OperatorKind.ALPHA_K else options['k']
    else:
        matrix, k = matrix_named(bundle, _maps(options, 1)[0]), options['k']
    return [check_alpha_k_derivation(algebra, matrix, k, not options['no_commuting'], options['limit'])]


def _commutation_check(anti):
    def check(bundle, algebra, options):
        first, second = _maps(options, 2)[:2]
        name = 'anticommutes' if anti else 'commutes'
        return [commutation_report(matrix_named(bundle, first), matrix_named(bundle, second), name, anti,
                                   options['limit'])]
    return check


def _kernel_check(bundle, algebra, options):
    derivation = None
    if options.get('map'):
        derivation = matrix_named(bundle, options['map'][0])
    return [check_kernel_condition(algebra, _functional(bundle, options), _operator(bundle, options),
                                   options['variant'] or KernelVariant.LIE.value, derivation, options['limit'])]


# every axiom accepted by ``check --axiom``
AXIOM_CHECKS = {
    **{name: _structure_check(name) for name in STRUCTURE_AXIOMS},
    'hom-lie-triple': lambda bundle, algebra, options: [
        check_hom_lie_triple(algebra, options['convention'], options['limit'])],
    'nambu-form': lambda bundle, algebra, options: [
        check_nambu_form(algebra, _required(options, 'form'), options['limit'])],
    'endomorphism': lambda bundle, algebra, options: [
        check_endomorphism(algebra, matrix_named(bundle, _maps(options, 1)[0]), limit=options['limit'])],
    'centroid': lambda bundle, algebra, options: [
        check_centroid(algebra, matrix_named(bundle, _maps(options, 1)[0]), options['limit'])],
    'involution': lambda bundle, algebra, options: [
        check_involution(algebra, matrix_named(bundle, _maps(options, 1)[0]), options['limit'])],
    'alpha-k-derivation': _alpha_k_check,
    'derivation-weight': lambda bundle, algebra, options: [
        check_partitioned(algebra, _as_derivation(bundle, options), 'derivation-weight', options['jobs'],
                          options['limit'], not options['no_commuting'])],
    'derivation-weight-expanded': lambda bundle, algebra, options: [
        check_derivation_weight_expanded(algebra, _as_derivation(bundle, options), options['limit'])],
    'rota-baxter': lambda bundle, algebra, options: [
        check_partitioned(algebra, _operator(bundle, options), 'rota-baxter', options['jobs'], options['limit'])],
    'rota-baxter-expanded': lambda bundle, algebra, options: [
        check_rota_baxter_expanded(algebra, _operator(bundle, options), options['limit'])],
    'functional-annihilates-bracket': lambda bundle, algebra, options: [
        check_functional_annihilates(algebra, _functional(bundle, options), options['limit'])],
    'functional-twist-compatible': lambda bundle, algebra, options: [
        check_functional_twist_compatible(algebra, _functional(bundle, options), options['limit'])],
    'functional-derivation-balance': lambda bundle, algebra, options: [
        check_functional_derivation_balance(algebra, _functional(bundle, options),
                                            matrix_named(bundle, _maps(options, 1)[0]), options['limit'])],
    'functional-double-balance': lambda bundle, algebra, options: [
        check_functional_double_balance(algebra, _functional(bundle, options),
                                        _operator(bundle, options).matrix, options['limit'])],
    'kernel-condition': _kernel_check,
    'commutes': _commutation_check(anti=False),
    'anticommutes': _commutation_check(anti=True),
}


def _optional_operator(bundle, options):
    return bundle.operator(options['operator']) if options.get('operator') else None


# every construction accepted by ``build --construction``; each returns a ConstructionResult
CONSTRUCTIONS = {
    'bracket-from-functional': lambda bundle, algebra, options, verify, name: bracket_from_functional(
        algebra, _functional(bundle, options), verify, name),
    'bracket-from-functional-twisted': lambda bundle, algebra, options, verify, name:
        bracket_from_functional_twisted(algebra, matrix_named(bundle, _maps(options, 1)[0]),
                                        _functional(bundle, options), verify, name),
    'bracket-fp': lambda bundle, algebra, options, verify, name: bracket_fP(
        algebra, _functional(bundle, options), _operator(bundle, options), verify, name),
    'bracket-from-rb-double': lambda bundle, algebra, options, verify, name: bracket_from_rb_double(
        algebra, _functional(bundle, options), _operator(bundle, options), verify, name),
    'yau-twist': lambda bundle, algebra, options, verify, name: yau_twist(
        algebra, matrix_named(bundle, _maps(options, 1)[0]), _optional_operator(bundle, options), verify, name),
    'centroid-twist': lambda bundle, algebra, options, verify, name: centroid_twist(
        algebra, matrix_named(bundle, _maps(options, 1)[0]), _operator(bundle, options), verify, name),
    'commutator-bracket': lambda bundle, algebra, options, verify, name: commutator_bracket(
        algebra, _optional_operator(bundle, options), verify, name),
    'rb-prelie-double': lambda bundle, algebra, options, verify, name: rb_prelie_double(
        algebra, _operator(bundle, options), verify, name),
    'prelie-from-derivation': lambda bundle, algebra, options, verify, name: prelie_from_derivation(
        algebra, matrix_named(bundle, _maps(options, 1)[0]), _operator(bundle, options), verify, name),
    'lie-triple-from-lie': lambda bundle, algebra, options, verify, name: lie_triple_from_lie(
        algebra, verify, name),
    'bracket-det-fd': lambda bundle, algebra, options, verify, name: bracket_det_fD(
        algebra, _functional(bundle, options), matrix_named(bundle, _maps(options, 1)[0]),
        _optional_operator(bundle, options), verify, name),
    'bracket-det-omegad': lambda bundle, algebra, options, verify, name: bracket_det_omegaD(
        algebra, *(matrix_named(bundle, m) for m in _maps(options, 2)[:2]),
        _optional_operator(bundle, options), verify, name),
    'derived-bracket': lambda bundle, algebra, options, verify, name: derived_bracket(
        algebra, _operator(bundle, options), options['structure'], options['convention'],
        bundle.operator(options['differential']) if options.get('differential') else None, verify, name),
    'bracket-dinv-alpha': lambda bundle, algebra, options, verify, name: bracket_dinv_alpha(
        algebra, _operator(bundle, options), verify, name),
}
CONSTRUCTIONS['bracket-eq23'] = CONSTRUCTIONS['bracket-from-rb-double']


class Command(BaseCommand):
    help = 'Check axioms, build constructions, search operators and dualize over Hom-algebra bundles'
    requires_system_checks = []

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True)
        called = getattr(self, '_called_from_command_line', None)

        def add(name, help_text, bundle=True):
            sub = subparsers.add_parser(name, help=help_text, called_from_command_line=called)
            if bundle:
                sub.add_argument('bundle', help="bundle file, or 'catalog' for the shipped examples")
                sub.add_argument('--prime', type=int, help='read every coefficient in F_p instead')
            return sub

        add('catalog', 'List the shipped algebras, operators, functionals and maps', bundle=False)

        check = add('check', 'Check one axiom on one algebra')
        check.add_argument('--algebra', required=True)
        check.add_argument('--axiom', required=True, choices=sorted(AXIOM_CHECKS))
        self._add_references(check)
        check.add_argument('--k', type=int, default=0, help='twist power for alpha-k-derivation')
        check.add_argument('--form', choices=[form.value for form in NambuForm])
        check.add_argument('--variant', choices=[variant.value for variant in KernelVariant])
        check.add_argument('--convention', default=TripleConvention.VERBATIM.value,
                           choices=[convention.value for convention in TripleConvention])
        check.add_argument('--no-commuting', action='store_true',
                           help='drop the commuting-with-twist clause from derivation checks')
        check.add_argument('--limit', type=int, help='counterexamples kept per report')
        check.add_argument('--jobs', type=int, default=1,
                           help='partitions for rota-baxter and derivation-weight checks')
        check.add_argument('--budget', type=int, help='refuse checks over more basis tuples than this')

        build = add('build', 'Apply a construction and write the resulting algebra')
        build.add_argument('--construction', required=True, choices=sorted(CONSTRUCTIONS))
        build.add_argument('--algebra', required=True)
        self._add_references(build)
        build.add_argument('--differential', help='derivation transferred by derived-bracket')
        build.add_argument('--structure', default=DerivedStructure.NAMBU_LIE.value,
                           choices=[structure.value for structure in DerivedStructure])
        build.add_argument('--convention', default=TripleConvention.VERBATIM.value,
                           choices=[convention.value for convention in TripleConvention])
        build.add_argument('--verify', action='store_true', help='also check the promised conclusions')
        build.add_argument('--name', help='name of the output algebra')
        build.add_argument('-o', '--output', help='write the output bundle here')

        search = add('search', 'Enumerate Rota-Baxter operators or weighted derivations over F_p')
        search.add_argument('--algebra', required=True)
        search.add_argument('--kind', default=OperatorKind.ROTA_BAXTER.value,
                            choices=[OperatorKind.ROTA_BAXTER.value, OperatorKind.DERIVATION.value])
        search.add_argument('--weight', default='0')
        search.add_argument('--budget', type=int)
        search.add_argument('--max-dim', type=int)
        search.add_argument('--max-results', type=int)
        search.add_argument('--jobs', type=int, default=1)
        search.add_argument('-o', '--output', help='write the operators found as a bundle here')

        dual = add('dualize', 'Turn a Rota-Baxter operator into a weighted derivation or back')
        dual.add_argument('--algebra', required=True)
        dual.add_argument('--operator', required=True)
        dual.add_argument('--direction', default=DualDirection.RB_TO_DIFF.value,
                          choices=[direction.value for direction in DualDirection])
        dual.add_argument('-o', '--output')

        report = add('report', 'Check every algebra against the axioms it declares')
        report.add_argument('--format', default='json', choices=['json', 'text'])

    @staticmethod
    def _add_references(parser):
        parser.add_argument('--operator')
        parser.add_argument('--functional')
        parser.add_argument('--map', action='append', default=[], help='may be repeated; order matters')

    def handle(self, *args, **options):
        subcommand = options['subcommand']
        logger.info(f"homalg {subcommand}")
        try:
            bundle = self._bundle(options) if subcommand != 'catalog' else None
            document, status = getattr(self, f"handle_{subcommand}")(bundle, options)
        except HypothesisFailed as exc:
            self.stdout.write(canonical_json({'command': subcommand, 'pass': False,
                                              'hypothesis': exc.report.to_document()}), ending='')
            raise CommandError(str(exc), returncode=FAILED) from exc
        except ConstructionMismatch as exc:
            logger.error(f"homalg {subcommand}: {exc}")
            raise CommandError(str(exc), returncode=FAILED) from exc
        except HomAlgebraError as exc:
            logger.warning(f"homalg {subcommand}: {exc}")
            raise CommandError(str(exc), returncode=BAD_INPUT) from exc
        if isinstance(document, str):
            self.stdout.write(document, ending='')
        else:
            self.stdout.write(canonical_json(document), ending='')
        if status != PASSED:
            raise CommandError(f"{subcommand}: a check failed", returncode=status)

    def _bundle(self, options):
        bundle = load_source(options['bundle'])
        if options.get('prime') is not None:
            bundle = bundle.over(FieldSpec.prime(options['prime']))
        return bundle

    @staticmethod
    def _write(path, text):
        target = Path(path)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding='utf-8')
        except OSError as exc:
            raise CommandError(f"cannot write {path}: {exc.strerror}", returncode=BAD_INPUT) from exc
        logger.info(f"Wrote {target}")

    def handle_catalog(self, bundle, options):
        bundle = load_source('catalog')
        algebras = [
            {'name': name, 'dim': algebra.dim, 'arity': algebra.arity, 'axioms': bundle.axioms[name]}
            for name, algebra in bundle.algebras.items()
        ]
        operators = [
            {'name': name, 'kind': operator_document(operator)['kind'],
             'weight': operator.field.format(operator.weight)}
            for name, operator in bundle.operators.items()
        ]
        return {
            'command': 'catalog',
            'field': bundle.field.to_document(),
            'algebras': algebras,
            'parametric': 'abelian_<dim>_<arity>',
            'operators': operators,
            'functionals': sorted(bundle.functionals),
            'maps': sorted(bundle.maps),
            'fixtures': sorted(load_fixtures()),
        }, PASSED

    def handle_check(self, bundle, options):
        algebra = bundle.algebra(options['algebra'])
        tuples = algebra.dim ** algebra.arity
        if options['budget'] is not None and tuples > options['budget']:
            raise BudgetExceeded(f"{tuples} basis tuples exceed the budget of {options['budget']}")
        reports = AXIOM_CHECKS[options['axiom']](bundle, algebra, options)
        passed = all(report.passed for report in reports)
        logger.info(f"{options['axiom']} on {algebra.name}: {'pass' if passed else 'fail'}")
        return {
            'command': 'check',
            'algebra': algebra.name,
            'field': bundle.field.to_document(),
            'pass': passed,
            'reports': [report.to_document() for report in reports],
        }, PASSED if passed else FAILED

    def handle_build(self, bundle, options):
        algebra = bundle.algebra(options['algebra'])
        construction = options['construction']
        result = CONSTRUCTIONS[construction](bundle, algebra, options, options['verify'], options.get('name'))
        output = result.algebra
        skew = is_skew_symmetric(output.tensor, stop_at_first=True).passed
        built = AlgebraBundle(bundle.field)
        built.add_algebra(output, skew_complete=skew)
        operator = result.extras.get('operator')
        if operator is not None:
            operator_name = operator.name or f"{output.name}.P"
            built.operators[operator_name] = operator.retagged(name=operator_name)
        if options.get('output'):
            self._write(options['output'], serialize_bundle(built))
        passed = result.conclusions_passed
        return {
            'command': 'build',
            'construction': construction,
            'algebra': output.name,
            'pass': passed,
            'bundle': built.to_document(),
            **result.to_document(),
        }, PASSED if passed else FAILED

    def handle_search(self, bundle, options):
        algebra = bundle.algebra(options['algebra'])
        spec = SearchSpec(algebra, weight=options['weight'], kind=options['kind'], max_dim=options['max_dim'],
                          max_results=options['max_results'], budget=options['budget'], jobs=options['jobs'])
        result = enumerate_operators(spec)
        found = AlgebraBundle(bundle.field)
        found.add_algebra(algebra, bundle.skew_complete.get(algebra.name, False), bundle.axioms.get(algebra.name, ()))
        tag = 'rb' if spec.kind is OperatorKind.ROTA_BAXTER else 'd'
        for number, operator in enumerate(result.operators, start=1):
            name = f"{algebra.name}.{tag}{number}"
            found.operators[name] = operator.retagged(name=name)
        if options.get('output'):
            self._write(options['output'], serialize_bundle(found))
        return {
            'command': 'search',
            'algebra': algebra.name,
            'field': bundle.field.to_document(),
            'kind': spec.kind.value,
            'weight': bundle.field.format(spec.weight),
            'candidates_scanned': result.candidates_scanned,
            'found': len(result),
            'operators': list(found.operators),
        }, PASSED

    def handle_dualize(self, bundle, options):
        algebra = bundle.algebra(options['algebra'])
        operator = bundle.operator(options['operator'])
        try:
            dual = dualize(algebra, operator, options['direction'])
        except NotInvertible as exc:
            self.stdout.write(canonical_json({'command': 'dualize', 'pass': False, 'error': str(exc)}), ending='')
            raise CommandError(str(exc), returncode=FAILED) from exc
        if dual.kind is OperatorKind.DERIVATION:
            source = check_rota_baxter(algebra, operator)
            target = check_derivation_weight(algebra, dual, require_commuting=False)
        else:
            source = check_derivation_weight(algebra, operator, require_commuting=False)
            target = check_rota_baxter(algebra, dual)
        passed = source.passed and target.passed
        if options.get('output'):
            written = AlgebraBundle(bundle.field)
            written.operators[dual.name] = dual
            self._write(options['output'], serialize_bundle(written))
        return {
            'command': 'dualize',
            'algebra': algebra.name,
            'direction': DualDirection(options['direction']).value,
            'pass': passed,
            'operator': operator_document(dual),
            'source': source.to_document(),
            'dual': target.to_document(),
        }, PASSED if passed else FAILED

    def handle_report(self, bundle, options):
        reports = declared_axiom_reports(bundle)
        fixtures = []
        if options['bundle'] == CATALOG_NAME and options.get('prime') is None:
            for stem, fixture in load_fixtures().items():
                fixtures.append({'name': stem, 'field': fixture.field.to_document()})
                reports.update(declared_axiom_reports(fixture))
        passed = all(report.passed for listed in reports.values() for report in listed)
        if options['format'] == 'text':
            lines = []
            for name, listed in reports.items():
                for report in listed:
                    verdict = 'pass'
                    if not report.passed:
                        verdict = f"FAIL at {report.violations[0].tuple}" if report.violations else 'FAIL'
                    lines.append(f"{name:<12} {report.axiom:<18} {verdict} ({report.checked} checks)")
            return "\n".join(lines) + "\n", PASSED if passed else FAILED
        return {
            'command': 'report',
            'field': bundle.field.to_document(),
            'pass': passed,
            'algebras': {name: [report.to_document() for report in listed] for name, listed in reports.items()},
            'fixtures': fixtures,
        }, PASSED if passed else FAILED
