"""Exception types shared across the package."""


class IntervalGameError(Exception):
    """Base class for all domain errors raised by this package."""


class PartialSubtractionUndefined(IntervalGameError, ValueError):
    """``X - Y`` is undefined because ``Y`` is wider than ``X``."""

    def __init__(self, minuend, subtrahend):
        self.minuend = minuend
        self.subtrahend = subtrahend
        super().__init__(
            f"partial subtraction {minuend} - {subtrahend} is undefined: "
            f"length {subtrahend.length} exceeds {minuend.length}"
        )


class DivisionByZeroInterval(IntervalGameError, ZeroDivisionError):
    def __init__(self, divisor):
        self.divisor = divisor
        super().__init__(f"divisor interval {divisor} contains 0")


class BudgetExceeded(IntervalGameError):
    """A computation would exceed its declared size budget."""


class EmptyPolytope(IntervalGameError):
    pass


class Unbounded(IntervalGameError):
    pass


class PlayerCountMismatch(IntervalGameError, ValueError):
    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"player counts differ: {left} != {right}")


class InvalidParameter(IntervalGameError, ValueError):
    pass
