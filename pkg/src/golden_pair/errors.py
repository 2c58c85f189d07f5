"""Exception hierarchy shared by every golden_pair module."""


class GoldenPairError(Exception):
    """Base class for all library errors."""


class ContractError(GoldenPairError, ValueError):
    """A caller broke an operation's precondition (scale mismatch, bad context, ...)."""


class DomainError(GoldenPairError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class DivisionByZeroError(DomainError, ZeroDivisionError):
    """Fixed-point division by zero."""


class RangeError(GoldenPairError, OverflowError):
    """An argument exceeds the supported range (e.g. the exp cap)."""


class ResourceError(GoldenPairError):
    """An allocation could not be satisfied."""


class TableTooSmallError(ResourceError):
    """A sieve table does not reach the index a computation needs."""

    def __init__(self, required: int, available: int):
        self.required = required
        self.available = available
        super().__init__(
            f"sieve table limit {available} is too small; "
            f"at least {required} entries are required"
        )


class PrecisionBudgetError(GoldenPairError):
    """Tail bound plus rounding budget did not fit below the requested accuracy."""


class IdentityError(GoldenPairError):
    """An exact algebraic step of an identity failed."""
