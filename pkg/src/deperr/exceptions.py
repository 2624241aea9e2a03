"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes, so keep the split between
configuration problems, domain (argument) problems, and capability gaps.
"""


class DepErrError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(DepErrError, ValueError):
    """A model specification violates an invariant (bad rate, shape, ...)."""


class ConfigError(DepErrError, ValueError):
    """A run configuration file is malformed or inconsistent."""


class DomainError(DepErrError, ValueError):
    """An operation was called outside its domain (t <= 0, negative x, ...)."""


class SingularityError(DomainError):
    """A metric is singular at the requested point (e.g. RHR where SF == 1)."""


class ZeroDenominatorError(DomainError):
    """A relative error is undefined because the reference metric is zero."""


class CapabilityError(DepErrError):
    """The requested operation is not supported for this model family."""
