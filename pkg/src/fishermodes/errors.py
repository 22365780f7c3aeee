"""Exception types shared across the package."""


class FisherModesError(Exception):
    """Base class for all package-specific errors."""


class HorizonDomainError(FisherModesError, ValueError):
    """Evaluation requested at r <= r_s, where the metric degenerates."""


class CoordinateSingularityError(FisherModesError, ValueError):
    """Evaluation at a coordinate singularity (theta in {0, pi} or r = 0)."""


class UnsupportedIndexError(FisherModesError, ValueError):
    """Special-function or quantization index outside the supported set."""


class EvanescentModeError(FisherModesError, ValueError):
    """Requested free mode has no oscillatory radial solution (alpha^2 + eta^2 <= 0)."""


class NormalizationError(FisherModesError, ValueError):
    """Mode is not unit-normalized on the stated domain."""


class NonFiniteSampleError(FisherModesError, RuntimeError):
    """Integrand returned a non-finite value; carries the offending node."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class QuadratureConvergenceError(FisherModesError, RuntimeError):
    """Refinement loop did not reach the requested tolerance; carries both estimates."""

    def __init__(self, message, last=None, previous=None):
        super().__init__(message)
        self.last = last
        self.previous = previous


class NearHorizonError(FisherModesError, RuntimeError):
    """Radial integration failed to start; r_start is too close to the horizon."""


class BlowUpError(FisherModesError, RuntimeError):
    """Radial integration produced a non-finite state; carries the last good r."""

    def __init__(self, message, last_good_r=None):
        super().__init__(message)
        self.last_good_r = last_good_r
