"""Exception hierarchy shared by the numerical modules."""


class SuslovError(Exception):
    """Base class for every error raised by this package."""


class SymmetryViolationError(SuslovError, ValueError):
    pass


class OutOfRangeError(SuslovError, ValueError):
    """A rotation lies outside the Cayley range (rotation angle pi)."""


class InvalidInertiaError(SuslovError, ValueError):
    pass


class StiffnessError(SuslovError, RuntimeError):
    pass


class DegenerateInputError(SuslovError, ValueError):
    pass


class RootFindingError(SuslovError, RuntimeError):
    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class SingularJacobianError(SuslovError, RuntimeError):
    pass


class NonConvergenceError(SuslovError, RuntimeError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class LegendreInversionError(SuslovError, RuntimeError):
    """The discrete Legendre transform could not be inverted at the given momentum."""

    kind = "legendre-inversion-failed"


class StepFailedError(SuslovError, RuntimeError):
    kind = "step-failed"


class DegenerateStepError(SuslovError, RuntimeError):
    kind = "degenerate-step"


class AmbiguousLocusError(SuslovError, RuntimeError):
    def __init__(self, message, dimension):
        super().__init__(message)
        self.dimension = dimension


class ConfigError(SuslovError, ValueError):
    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
