"""Exception hierarchy shared by every module."""


class ZslError(Exception):
    """Base class for library errors."""


class UsageError(ZslError, ValueError):
    """Bad arguments: modulus mismatch, malformed literal, non-unit multiplier."""


class DomainError(ZslError, ValueError):
    """The operation is undefined for this input (e.g. A+B = G where C would be empty)."""


class PreconditionError(ZslError, ValueError):
    """A documented precondition of the operation does not hold."""


class RangeError(ZslError, ValueError):
    """A real parameter lies outside the range where a closed form is valid."""


class CapacityError(ZslError):
    """Input exceeds an exhaustive-enumeration cap."""
