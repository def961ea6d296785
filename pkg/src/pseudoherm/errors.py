"""Exception types shared by the toolkit.

ValidationError covers malformed input (shapes, non-finite data, bad files
or flags); NumericalError covers computations that failed or left their
guaranteed accuracy range. The CLI maps the two branches to distinct exit
codes.
"""


class PseudohermError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(PseudohermError):
    """Input rejected before any computation ran."""


class DimensionMismatch(ValidationError):
    """Operands have incompatible dimensions."""


class GridMismatch(ValidationError):
    """Arrays do not live on the same momentum grid."""


class ParseError(ValidationError):
    """An input file could not be parsed."""


class DimensionError(ValidationError):
    """A parsed matrix is not square or contradicts its declared dimension."""


class NumericalError(PseudohermError):
    """A computation failed or cannot be trusted at the requested tolerance."""


class ConvergenceFailure(NumericalError):
    """An eigensolve could not reach the requested residual."""


class OverflowRisk(NumericalError):
    """Matrix norm outside the range where expm meets its accuracy contract."""


class BrokenPhase(NumericalError):
    """An all-real spectrum was required but the phase is broken or exceptional."""


class NearDefective(NumericalError):
    """Eigenbasis too ill-conditioned for a trustworthy metric."""


class NotPositiveDefinite(NumericalError):
    """A positive-definite metric was required but the given one is indefinite."""


class NoBracket(NumericalError):
    """Bisection endpoints do not bracket a phase transition."""


class StepRejected(NumericalError):
    """Time stepping produced a non-finite intermediate value."""
