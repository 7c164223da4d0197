from dataclasses import dataclass, field as dataclass_field

from core.conf import setting


@dataclass(frozen=True)
class Violation:
    """One failing basis tuple, 1-based, with both sides of the identity"""
    tuple: tuple
    lhs: tuple
    rhs: tuple
    clause: str = ''

    def to_document(self, field):
        document = {
            'tuple': list(self.tuple),
            'lhs': [field.format(a) for a in self.lhs],
            'rhs': [field.format(a) for a in self.rhs],
        }
        if self.clause:
            document['clause'] = self.clause
        return document


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    identity: str
    passed: bool
    checked: int
    violations: tuple = ()
    field: object = None
    advisories: tuple = dataclass_field(default=())

    def __bool__(self):
        return self.passed

    def to_document(self):
        document = {
            'axiom': self.axiom,
            'identity': self.identity,
            'pass': self.passed,
            'checked': self.checked,
            'violations': [v.to_document(self.field) for v in self.violations],
        }
        if self.advisories:
            document['advisories'] = list(self.advisories)
        return document


class ReportBuilder:
    """Accumulates comparisons over basis tuples into an AxiomReport.

    Tuples are passed 0-based and stored 1-based. With stop_at_first the
    caller can abandon the scan as soon as ``done`` turns true.
    """

    def __init__(self, axiom, identity, field, limit=None, stop_at_first=False):
        self.axiom = axiom
        self.identity = identity
        self.field = field
        self.limit = setting('HOMALG_VIOLATION_LIMIT') if limit is None else limit
        self.stop_at_first = stop_at_first
        self.checked = 0
        self.failures = 0
        self._violations = []

    @property
    def done(self):
        return self.stop_at_first and self.failures > 0

    def compare(self, index, lhs, rhs, clause=''):
        self.checked += 1
        if lhs == rhs:
            return True
        self.failures += 1
        self._violations.append(Violation(tuple(i + 1 for i in index), tuple(lhs), tuple(rhs), clause))
        return False

    def build(self, advisories=()):
        ordered = sorted(self._violations, key=lambda v: v.tuple)
        return AxiomReport(
            axiom=self.axiom,
            identity=self.identity,
            passed=self.failures == 0,
            checked=self.checked,
            violations=tuple(ordered[:self.limit]),
            field=self.field,
            advisories=tuple(advisories),
        )


def merge_reports(axiom, identity, reports, limit=None):
    """Combine clause reports into one verdict, relabelling each violation"""
    limit = setting('HOMALG_VIOLATION_LIMIT') if limit is None else limit
    violations = []
    for report in reports:
        violations.extend(
            Violation(v.tuple, v.lhs, v.rhs, v.clause or report.axiom) for v in report.violations
        )
    violations.sort(key=lambda v: v.tuple)
    return AxiomReport(
        axiom=axiom,
        identity=identity,
        passed=all(report.passed for report in reports),
        checked=sum(report.checked for report in reports),
        violations=tuple(violations[:limit]),
        field=reports[0].field if reports else None,
        advisories=tuple(a for report in reports for a in report.advisories),
    )
