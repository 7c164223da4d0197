"""
Operator checks split by the first index of the basis tuple.

Each partition runs as a Celery task on a JSON payload; the partial
reports are merged so the result matches a single-job check.
"""
import logging
from itertools import product

from django.conf import settings

from algebras.payloads import algebra_payload, operator_payload
from core.conf import setting
from core.exceptions import SearchFailed, UnknownVariant

from .checkers import check_derivation_weight, check_rota_baxter
from .reports import AxiomReport, Violation

logger = logging.getLogger(__name__)

PARTITIONED_AXIOMS = ('rota-baxter', 'derivation-weight')


def partitions(count, jobs):
    """Split range(count) into at most ``jobs`` contiguous, nearly equal chunks"""
    jobs = max(1, min(jobs, count))
    size, extra = divmod(count, jobs)
    bounds = []
    start = 0
    for j in range(jobs):
        stop = start + size + (1 if j < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def first_index_order(dim, arity, start, stop):
    return (index for index in product(range(dim), repeat=arity) if start <= index[0] < stop)


def check_operator_span(algebra, operator, axiom, start, stop, limit=None):
    """Check the tuples whose first index lies in [start, stop), without the commuting clause"""
    order = first_index_order(algebra.dim, algebra.arity, start, stop)
    if axiom == 'rota-baxter':
        return check_rota_baxter(algebra, operator, limit, order=order)
    if axiom == 'derivation-weight':
        return check_derivation_weight(algebra, operator, False, limit, order=order)
    raise UnknownVariant(f"Axiom {axiom} cannot be partitioned")


def report_from_document(document, field):
    violations = tuple(
        Violation(tuple(v['tuple']), tuple(field.coerce(a) for a in v['lhs']),
                  tuple(field.coerce(a) for a in v['rhs']), v.get('clause', ''))
        for v in document['violations']
    )
    return AxiomReport(document['axiom'], document['identity'], document['pass'], document['checked'],
                       violations, field, tuple(document.get('advisories', ())))


def combine_reports(reports, limit):
    """Concatenate partial reports of one axiom; clauses are kept as they are"""
    first = reports[0]
    violations = sorted((v for report in reports for v in report.violations), key=lambda v: v.tuple)
    return AxiomReport(
        axiom=first.axiom,
        identity=first.identity,
        passed=all(report.passed for report in reports),
        checked=sum(report.checked for report in reports),
        violations=tuple(violations[:limit]),
        field=first.field,
        advisories=tuple(a for report in reports for a in report.advisories),
    )


def _dispatch(algebra, operator, axiom, bounds, limit):
    from celery import group

    from .tasks import check_partition_task

    payload = algebra_payload(algebra)
    operator_doc = operator_payload(operator)
    job = group(check_partition_task.s(payload, operator_doc, axiom, start, stop, limit) for start, stop in bounds)
    if getattr(settings, 'CELERY_TASK_ALWAYS_EAGER', True):
        outcome = job.apply()
    else:
        outcome = job.apply_async()
    reports = []
    for result in outcome.get():
        if result.get('status') != 'ok':
            span = f"[{result.get('start')}, {result.get('stop')})"
            raise SearchFailed(f"Check partition {span} failed: {result.get('message')}", result.get('error_type'))
        reports.append(report_from_document(result['report'], algebra.field))
    return reports


def check_partitioned(algebra, operator, axiom, jobs, limit=None, require_commuting=True):
    """Run a rota-baxter or derivation-weight check over ``jobs`` partitions"""
    if axiom not in PARTITIONED_AXIOMS:
        raise UnknownVariant(f"Axiom {axiom} cannot be partitioned")
    limit = setting('HOMALG_VIOLATION_LIMIT') if limit is None else limit
    reports = []
    if axiom == 'derivation-weight' and require_commuting:
        commuting = check_derivation_weight(algebra, operator, True, limit, order=())
        if not commuting.passed:
            return commuting
        reports.append(commuting)
    bounds = partitions(algebra.dim, jobs)
    logger.info(f"Checking {axiom} on {algebra.name} in {len(bounds)} partition(s)")
    if len(bounds) > 1:
        reports.extend(_dispatch(algebra, operator, axiom, bounds, limit))
    else:
        reports.append(check_operator_span(algebra, operator, axiom, 0, algebra.dim, limit))
    return combine_reports(reports, limit)
