"""Exception types shared across the library."""


class ScheduleError(ValueError):
    """Raised when a coefficient schedule is invalid (e.g. non-increasing A)."""


class CapabilityError(RuntimeError):
    """Raised when an operation is requested from a model that does not support it."""


class TimeDomainError(ValueError):
    """Raised when a time value lies outside the domain covered by a model or table."""


class DivergenceError(RuntimeError):
    """Raised when an integration blows up. Carries the last time with a finite state."""

    def __init__(self, message: str, last_valid_time: float):
        super().__init__(message)
        self.last_valid_time = last_valid_time


class ConfigError(Exception):
    """Base class for harness configuration problems."""


class ConfigFileNotFoundError(ConfigError):
    """The configuration file does not exist."""


class ConfigParseError(ConfigError):
    """The configuration file is not valid JSON. Message names the offending line."""


class ConfigSchemaError(ConfigError):
    """The configuration parsed but violates the schema."""
