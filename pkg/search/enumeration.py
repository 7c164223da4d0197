"""Exhaustive scans over matrices and structure tensors with entries in F_p.

Candidates are visited in row-major lexicographic order of their residues.
Matrix scans can be split by first row into contiguous partitions, which
are dispatched as Celery tasks when more than one job is requested.
"""
import logging
import time
from dataclasses import dataclass, replace
from itertools import product

from django.conf import settings

from algebras.operations import probe_order
from algebras.structures import HomAlgebra, OperatorKind, StructureTensor, WeightedOperator
from axioms.checkers import check_derivation_weight, check_rota_baxter
from axioms.partitions import partitions
from axioms.registry import check_structure_axiom
from core.conf import setting
from core.exceptions import BudgetExceeded, RationalsUnsupported, SearchFailed, UnknownVariant
from core.linalg import Matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchSpec:
    algebra: HomAlgebra
    weight: object = 0
    kind: OperatorKind = OperatorKind.ROTA_BAXTER
    max_dim: int | None = None
    max_p: int | None = None
    max_results: int | None = None
    budget: int | None = None
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'kind', OperatorKind(self.kind))
        if self.kind is OperatorKind.ALPHA_K:
            raise UnknownVariant("Only rota-baxter and derivation operators are enumerated")
        object.__setattr__(self, 'weight', self.algebra.field.coerce(self.weight))


@dataclass(frozen=True)
class SearchResult:
    operators: tuple
    candidates_scanned: int
    elapsed: float

    def __len__(self):
        return len(self.operators)

    def matrices(self):
        return [operator.matrix for operator in self.operators]


def check_search_limits(field, dim, entries, max_dim=None, max_p=None, budget=None):
    """Refuse scans over Q or beyond the configured dimension, modulus and candidate budget"""
    if not field.is_prime_field:
        raise RationalsUnsupported("Enumeration needs a prime field; over Q only linear problems are solved")
    max_dim = setting('HOMALG_SEARCH_MAX_DIM') if max_dim is None else max_dim
    max_p = setting('HOMALG_SEARCH_MAX_P') if max_p is None else max_p
    budget = setting('HOMALG_SEARCH_BUDGET') if budget is None else budget
    if dim > max_dim:
        raise BudgetExceeded(f"Dimension {dim} exceeds the search limit {max_dim}")
    if field.p > max_p:
        raise BudgetExceeded(f"Modulus {field.p} exceeds the search limit {max_p}")
    candidates = field.p ** entries
    if candidates > budget:
        raise BudgetExceeded(f"{candidates} candidates exceed the budget of {budget}")
    return candidates


def operator_passes(algebra, matrix, weight, kind, order=None):
    if kind is OperatorKind.ROTA_BAXTER:
        operator = WeightedOperator.rota_baxter(matrix, weight)
        return check_rota_baxter(algebra, operator, stop_at_first=True, order=order).passed
    operator = WeightedOperator.derivation(matrix, weight)
    return check_derivation_weight(algebra, operator, stop_at_first=True, order=order).passed


def scan_first_rows(algebra, weight, kind, start, stop, max_results=None):
    """Residue tuples of passing matrices whose first row lies in [start, stop)"""
    field, dim = algebra.field, algebra.dim
    p = field.p
    kind = OperatorKind(kind)
    order = probe_order(algebra.tensor)
    first_rows = list(product(range(p), repeat=dim))[start:stop]
    found = []
    scanned = 0
    for first in first_rows:
        for rest in product(range(p), repeat=dim * (dim - 1)):
            residues = first + rest
            scanned += 1
            matrix = Matrix(field, [residues[i * dim:(i + 1) * dim] for i in range(dim)], dim)
            if operator_passes(algebra, matrix, weight, kind, order):
                found.append(residues)
                if max_results is not None and len(found) >= max_results:
                    return found, scanned
    return found, scanned


def _dispatch(spec, bounds):
    from celery import group

    from .tasks import algebra_payload, scan_partition_task

    payload = algebra_payload(spec.algebra)
    weight = spec.algebra.field.residue(spec.weight)
    job = group(scan_partition_task.s(payload, weight, spec.kind.value, start, stop, spec.max_results)
                for start, stop in bounds)
    if getattr(settings, 'CELERY_TASK_ALWAYS_EAGER', True):
        outcome = job.apply()
    else:
        outcome = job.apply_async()
    results = outcome.get()
    chunks = []
    for result in results:
        if result.get('status') != 'ok':
            span = f"[{result.get('start')}, {result.get('stop')})"
            raise SearchFailed(f"Search partition {span} failed: {result.get('message')}", result.get('error_type'))
        chunks.append(([tuple(r) for r in result['operators']], result['scanned']))
    return chunks


def enumerate_operators(spec):
    algebra = spec.algebra
    field, dim = algebra.field, algebra.dim
    check_search_limits(field, dim, dim * dim, spec.max_dim, spec.max_p, spec.budget)
    started = time.monotonic()
    rows = field.p ** dim
    bounds = partitions(rows, spec.jobs)
    logger.info(f"Scanning {field.p ** (dim * dim)} {spec.kind.value} candidates on {algebra.name} "
                f"over {field} at weight {field.format(spec.weight)} in {len(bounds)} partition(s)")
    if len(bounds) > 1:
        chunks = _dispatch(spec, bounds)
    else:
        chunks = [scan_first_rows(algebra, spec.weight, spec.kind, 0, rows, spec.max_results)]
    found = [residues for chunk, _ in chunks for residues in chunk]
    if spec.max_results is not None:
        found = found[:spec.max_results]
    build = WeightedOperator.rota_baxter if spec.kind is OperatorKind.ROTA_BAXTER else WeightedOperator.derivation
    operators = tuple(
        build(Matrix(field, [residues[i * dim:(i + 1) * dim] for i in range(dim)], dim), spec.weight)
        for residues in found
    )
    elapsed = time.monotonic() - started
    logger.info(f"Found {len(operators)} operator(s) in {elapsed:.2f}s")
    return SearchResult(operators, sum(scanned for _, scanned in chunks), elapsed)


def enumerate_rota_baxter(spec):
    if spec.kind is not OperatorKind.ROTA_BAXTER:
        spec = replace(spec, kind=OperatorKind.ROTA_BAXTER)
    return enumerate_operators(spec)


def enumerate_weighted_derivations(spec):
    if spec.kind is not OperatorKind.DERIVATION:
        spec = replace(spec, kind=OperatorKind.DERIVATION)
    return enumerate_operators(spec)


def enumerate_structures(field, dim, arity, axioms, twist=None, budget=None, max_results=None):
    """Every structure tensor over F_p passing all named axioms, lexicographic in its coefficients"""
    slots = dim ** arity
    check_search_limits(field, dim, slots * dim, budget=budget)
    twist = twist or Matrix.identity(field, dim)
    indices = list(product(range(dim), repeat=arity))
    found = []
    for coefficients in product(range(field.p), repeat=slots * dim):
        table = {index: coefficients[k * dim:(k + 1) * dim] for k, index in enumerate(indices)}
        algebra = HomAlgebra(StructureTensor(field, dim, arity, table), twist)
        if all(check_structure_axiom(algebra, name, stop_at_first=True).passed for name in axioms):
            found.append(algebra)
            if max_results is not None and len(found) >= max_results:
                break
    logger.info(f"{len(found)} structure(s) over {field} of dim {dim} pass {', '.join(axioms)}")
    return found
