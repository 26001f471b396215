"""Shared exception types."""


class BudgetExhaustedError(RuntimeError):
    """A recursion or scan budget ran out before the computation finished."""


class SoundnessViolationError(RuntimeError):
    """The certified bound failed oracle verification; always indicates a bug."""


class ContractViolationError(RuntimeError):
    """A runtime contract check failed; always indicates a bug."""


class InstanceSpecError(ValueError):
    """An instance description could not be parsed or validated."""
