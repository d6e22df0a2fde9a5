"""Exception types shared across the package.

Every raised error is one of these, so callers (and the CLI) can tell apart
bad inputs, unsupported requests, and internal consistency failures.
"""


class QformsError(Exception):
    """Base class for all package errors."""


class ParameterError(QformsError, ValueError):
    """Inputs are structurally invalid (wrong shape, incompatible objects)."""


class DomainError(QformsError, ValueError):
    """Inputs are well-formed but outside the mathematical domain."""


class CutoffError(QformsError, RuntimeError):
    """A truncated computation hit its safety bound before stabilising."""


class UnsupportedOracleError(QformsError, NotImplementedError):
    """An independent cross-check formula is not available for these inputs."""


class ContractViolation(QformsError, AssertionError):
    """An internal invariant failed; indicates a bug, not a user mistake."""
