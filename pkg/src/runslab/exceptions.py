"""Exception hierarchy shared by every runslab module."""


class RunslabError(Exception):
    """Base class for all errors raised by runslab."""


class InvalidInputError(RunslabError, ValueError):
    """An argument violates an operation's precondition."""


class PermutationParseError(InvalidInputError):
    """Text could not be read as a permutation."""


class CapExceededError(InvalidInputError):
    """Requested work is above the configured size limit."""

    def __init__(self, message, n=None, limit=None, cost=None):
        super().__init__(message)
        self.n = n
        self.limit = limit
        self.cost = cost


class DivisibilityError(RunslabError, ArithmeticError):
    """Synthetic division by (1+z) left a nonzero remainder."""

    def __init__(self, stage, remainder, message=None):
        self.stage = stage
        self.remainder = remainder
        super().__init__(
            message
            or f"not divisible by (1+z) at stage {stage}: remainder {remainder}"
        )


class InvariantViolation(RunslabError, AssertionError):
    """A structural property of the group action failed to hold.

    Raised loudly instead of returning a wrong answer: downstream
    polynomials would be meaningless if this ever fires.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
