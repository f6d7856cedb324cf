"""Exception types shared across the solver suite."""


class AnisodotError(Exception):
    """Base class for all package-specific errors."""


class InvalidPairingError(AnisodotError):
    """Factor parities do not match (products must pair equal parity)."""


class DegenerateInputError(AnisodotError):
    """An operation received a zero polynomial or otherwise degenerate input."""


class BracketError(AnisodotError):
    """A root bracket does not isolate a sign change as required."""


class RootNotFoundError(AnisodotError):
    """A scan found fewer roots than requested; carries the scan trace."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class SeedFailureError(AnisodotError):
    """Newton iteration diverged from the supplied seed."""


class InsufficientPrecisionError(AnisodotError):
    """Requested accuracy lies below the cancellation noise floor."""


class AccuracyError(AnisodotError):
    """A quadrature or refinement failed to reach the requested tolerance.

    The best available estimate is attached as ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
