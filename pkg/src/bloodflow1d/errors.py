"""Exception types shared across the package."""


class BloodflowError(Exception):
    """Base class for solver errors."""


class ConfigurationError(BloodflowError):
    """Invalid grid, geometry, scheme, or case configuration."""


class StateError(BloodflowError):
    """Physically invalid state (non-positive area, non-finite values)."""


class BlowUpError(StateError):
    """Time integration produced non-finite or collapsed state."""

    def __init__(self, message, step=None, time=None):
        super().__init__(message)
        self.step = step
        self.time = time


class UsageError(BloodflowError):
    """Bad command-line or API usage."""
