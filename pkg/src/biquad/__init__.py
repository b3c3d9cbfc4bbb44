"""Exact verification of orbital-integral identities for biquadratic
unramified covers of an elliptic curve over a small finite field."""

from .errors import (BiquadError, CapacityError, ConfigurationError,
                     InvariantDomainError, PrecisionError, PropertyFailure)

__version__ = "0.1.0"

__all__ = ["BiquadError", "CapacityError", "ConfigurationError", "InvariantDomainError",
           "PrecisionError", "PropertyFailure", "__version__"]
