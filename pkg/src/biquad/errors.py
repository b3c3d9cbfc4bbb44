"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class BiquadError(Exception):
    exit_code = 1


class PropertyFailure(BiquadError):
    """A mathematical property that should hold was observed to fail."""

    exit_code = 1


class ConfigurationError(BiquadError):
    exit_code = 2


class InvariantDomainError(ConfigurationError):
    """An invariant was passed to an operation outside its domain."""


class CapacityError(BiquadError):
    exit_code = 3


class PrecisionError(ArithmeticError):
    """Raised internally when a truncated series cannot decide a quantity."""
