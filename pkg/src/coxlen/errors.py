"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI: InputError and DomainError are user/domain
problems (exit 1); ResourceCapError means a configured cap was hit (exit 2).
"""


class CoxlenError(Exception):
    """Base class for all package errors."""


class InputError(CoxlenError):
    """Malformed input text or matrix data."""


class DomainError(CoxlenError):
    """Structurally valid input outside an operation's domain."""


class ResourceCapError(CoxlenError):
    """A configured node/size cap was exceeded before completion."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class UnsupportedParametersError(DomainError):
    """Parameter combination outside the supported (rational) range."""


class ConstructionFailedError(CoxlenError):
    """A verify-and-retry construction exhausted its schedule."""

    def __init__(self, message, best_violation=None):
        super().__init__(message)
        self.best_violation = best_violation


class SearchExhaustedError(CoxlenError):
    """A bounded search ended without a witness."""


class NotCertifiedError(CoxlenError):
    """Refusal to build a certificate from non-certified (sampled) data."""
