"""Exception types raised across the package."""


class HeisoscError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(HeisoscError, ValueError):
    pass


class UnsupportedDegreeError(HeisoscError, ValueError):
    pass


class ConvergenceError(HeisoscError, RuntimeError):
    """An iterative routine stopped before reaching its tolerance."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class DomainError(HeisoscError, ValueError):
    """A grid operation would move data beyond the sampled window."""


class ResamplingError(HeisoscError, ValueError):
    pass


class NearDeltaError(HeisoscError, ValueError):
    """Closed-form heat kernel requested at a time too close to zero."""


class TruncationError(HeisoscError, RuntimeError):
    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound
