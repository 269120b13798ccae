"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes, so keep the split coarse:
bad inputs (precondition), a verification that ran and failed, and
numerical trouble (non-convergence, precision exhaustion).
"""


class ExactWkbError(Exception):
    """Base class for all package errors."""


class PreconditionError(ExactWkbError):
    """An operation was called outside its documented domain."""


class VerificationError(ExactWkbError):
    """A verification suite ran to completion and found a violation."""


class NumericError(ExactWkbError):
    """Root refinement, continuation or quadrature failed to converge."""
