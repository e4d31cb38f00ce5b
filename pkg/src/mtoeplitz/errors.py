"""Typed errors shared across the package.

Each class maps to one CLI exit code; see cli.EXIT_CODES.
"""


class MToeplitzError(Exception):
    """Base class for all typed errors raised by this package."""


class PreconditionError(MToeplitzError):
    """An operation's documented precondition was violated."""


class ScopeError(MToeplitzError):
    """Exponents outside the supported range 1 <= p <= q <= inf."""


class ResourceLimitError(MToeplitzError):
    """A configured memory or enumeration budget would be exceeded."""


class DispatchError(MToeplitzError):
    """An unknown target, kind, or strategy name was requested."""


class MissingPrimePowerError(PreconditionError):
    """A Multiplicative symbol was queried at a prime power outside its table."""


class NormDivergenceError(PreconditionError):
    """A norm required to be finite diverges for the given inputs."""
