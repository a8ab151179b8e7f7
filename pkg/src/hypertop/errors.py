"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`HypertopError`, so callers (and the CLI) can map the whole family
to an "input or hypothesis" failure with a single ``except``.
"""


class HypertopError(ValueError):
    """Base class for all library errors."""


class UniverseMismatch(HypertopError):
    """Two operands live over different ground sets."""


class BaseError(HypertopError):
    """A family fails to generate a topology on ``M`` (MB1 or MB2 violated)."""

    def __init__(self, message, condition=None, witness=None):
        super().__init__(message)
        self.condition = condition
        self.witness = witness


class HypothesisError(HypertopError):
    """An operation was called outside the hypotheses it requires."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapExceeded(HypertopError):
    """An exhaustive routine was asked for an instance above its size cap."""


class InternalConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""
