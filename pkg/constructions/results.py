import logging
from dataclasses import dataclass, field

from axioms.checkers import check_hom_nambu, commutation_report
from axioms.reports import ReportBuilder
from algebras.operations import is_skew_symmetric, subset_sum
from algebras.structures import StructureTensor
from core.conf import setting
from core.exceptions import HypothesisFailed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstructionResult:
    """Output algebra plus the reports that licensed and confirmed it"""
    algebra: object
    hypothesis_reports: tuple
    conclusion_reports: tuple = ()
    extras: dict = field(default_factory=dict)

    @property
    def conclusions_passed(self):
        return all(report.passed for report in self.conclusion_reports)

    def to_document(self):
        document = {
            'hypotheses': [report.to_document() for report in self.hypothesis_reports],
            'conclusions': [report.to_document() for report in self.conclusion_reports],
        }
        reports = {key: value.to_document() for key, value in self.extras.items() if hasattr(value, 'passed')}
        if reports:
            document['extras'] = reports
        return document


def require(reports):
    """Refuse the construction at the first failing hypothesis"""
    for report in reports:
        if not report.passed:
            logger.info(f"Hypothesis {report.axiom} failed after {report.checked} checks")
            raise HypothesisFailed(report)
    return tuple(reports)


def should_verify(verify):
    return setting('HOMALG_VERIFY_CONCLUSIONS') if verify is None else verify


def log_conclusions(construction, reports):
    for report in reports:
        if not report.passed:
            logger.warning(f"{construction}: conclusion {report.axiom} failed at {report.violations[0].tuple}")
    return tuple(reports)


def identity_report(matrix, name):
    """Basis columns where the matrix differs from the identity"""
    builder = ReportBuilder(name, f"{name}: m = id", matrix.field)
    identity = matrix.identity(matrix.field, matrix.nrows)
    for j in range(matrix.ncols):
        builder.compare((j,), matrix.column(j), identity.column(j))
    return builder.build()


def agreement_report(name, identity, left, right):
    """Compare two tensors on every basis tuple"""
    builder = ReportBuilder(name, identity, left.field)
    for index in left.tuples():
        builder.compare(index, left.get(index), right.get(index))
    return builder.build()


def nambu_lie_reports(algebra):
    return [is_skew_symmetric(algebra.tensor), check_hom_nambu(algebra)]


def derived_tensor(tensor, operator):
    """Σ_{I≠∅} λ^{|I|−1}[P̂_I x_1,…,P̂_I x_n], identity on I and P elsewhere, on basis tuples"""
    field, dim = tensor.field, tensor.dim
    basis = [tuple(field.one if i == j else field.zero for i in range(dim)) for j in range(dim)]
    images = operator.matrix.columns()
    return StructureTensor.from_function(
        field, dim, tensor.arity,
        lambda index: subset_sum(tensor, [basis[i] for i in index], [images[i] for i in index], operator.weight),
    )


def twist_commutes(algebra, matrix, name):
    return commutation_report(algebra.twist, matrix, name)
