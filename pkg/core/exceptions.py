"""Exception hierarchy shared by every app."""


class HomAlgebraError(Exception):
    """Base class for all library errors"""


class InvalidField(HomAlgebraError, ValueError):
    """Field specification is not Q or a prime field"""


class InvalidScalar(HomAlgebraError, ValueError):
    """Scalar text or value cannot be read in the requested field"""


class DimensionMismatch(HomAlgebraError, ValueError):
    pass


class FieldMismatch(HomAlgebraError, ValueError):
    pass


class NotInvertible(HomAlgebraError, ArithmeticError):
    pass


class TensorError(HomAlgebraError, ValueError):
    """Structure tensor violates its construction bounds or layout"""


class UnknownVariant(HomAlgebraError, ValueError):
    pass


class NonzeroWeight(HomAlgebraError, ValueError):
    """A weight-zero operator was required"""


class BudgetExceeded(HomAlgebraError):
    pass


class RationalsUnsupported(HomAlgebraError):
    """Enumeration was requested over Q"""


class SearchFailed(HomAlgebraError):
    """A search partition returned an error; ``error_type`` names the exception it raised"""

    def __init__(self, message, error_type=None):
        self.error_type = error_type
        super().__init__(f"{error_type}: {message}" if error_type else message)


class ConstructionMismatch(HomAlgebraError, AssertionError):
    """Two formulas that must agree produced different tensors"""


class HypothesisFailed(HomAlgebraError):
    """A construction precondition failed; carries the failing report"""

    def __init__(self, report):
        self.report = report
        first = report.violations[0].tuple if report.violations else ()
        super().__init__(f"Hypothesis '{report.axiom}' failed (first counterexample {first})")


class BundleError(HomAlgebraError):
    pass


class BundleSyntaxError(BundleError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")


class BundleSemanticError(BundleError):
    def __init__(self, message, path=''):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
