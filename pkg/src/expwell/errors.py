"""Exception hierarchy shared by all expwell modules."""


class ExpwellError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ExpwellError):
    """An argument lies outside the supported domain (sign, range, shape)."""


class PoleInParameter(ExpwellError):
    """A lower hypergeometric parameter sits on or too close to a pole
    (a non-positive integer)."""


class NoConvergence(ExpwellError):
    """A series did not meet its stopping rule within the term budget."""


class DivisionDegenerate(ExpwellError):
    """The denominator hypergeometric value vanishes at the sample point,
    so the spectrum-function ratio is undefined there."""


class QuadratureFailure(ExpwellError):
    """Adaptive quadrature could not reach the requested accuracy."""


class ScanIncomplete(ExpwellError):
    """A root bracket could not be refined (for example because pole
    exclusions fragment the scan domain)."""


class NotAnEigenvalue(ExpwellError):
    """The supplied energy does not satisfy the spectrum condition to the
    required tolerance."""


class TooFewLevels(ExpwellError):
    """The operation needs more bound states than the level set contains."""


class ParamMismatch(ExpwellError):
    """Two objects built from different physical parameter sets were mixed."""


class IntegrationFailure(ExpwellError):
    """The ODE integrator broke down (step-controller failure or overflow)."""


class NumericalBreakdown(ExpwellError):
    """A residual scale underflowed; the sampled function is numerically
    zero on the whole grid."""
