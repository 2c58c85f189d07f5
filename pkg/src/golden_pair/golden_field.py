"""Exact arithmetic in Q(golden): numbers a + b*golden with golden**2 = golden + 1."""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZeroError
from .fixedpoint import FixedPointValue, PrecisionContext, const, from_fraction, fx_add, fx_mul


@dataclass(frozen=True)
class GoldenNumber:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def of(cls, value: "GoldenNumber | Fraction | int") -> "GoldenNumber":
        return value if isinstance(value, GoldenNumber) else cls(Fraction(value))

    def __add__(self, other):
        other = GoldenNumber.of(other)
        return GoldenNumber(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenNumber(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-GoldenNumber.of(other))

    def __rsub__(self, other):
        return GoldenNumber.of(other) - self

    def __mul__(self, other):
        other = GoldenNumber.of(other)
        # (a + b g)(c + d g) = ac + bd + (ad + bc + bd) g
        bd = self.b * other.b
        return GoldenNumber(self.a * other.a + bd, self.a * other.b + self.b * other.a + bd)

    __rmul__ = __mul__

    def conjugate(self) -> "GoldenNumber":
        """Image under golden -> 1 - golden."""
        return GoldenNumber(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self) -> "GoldenNumber":
        n = self.norm()
        if n == 0:
            raise DivisionByZeroError("inverse of zero in Q(golden)")
        c = self.conjugate()
        return GoldenNumber(c.a / n, c.b / n)

    def __truediv__(self, other):
        return self * GoldenNumber.of(other).inverse()

    def __rtruediv__(self, other):
        return GoldenNumber.of(other) * self.inverse()

    def to_fixed(self, ctx: PrecisionContext) -> FixedPointValue:
        """a + b * const(golden) at working precision."""
        return fx_add(
            from_fraction(self.a, ctx),
            fx_mul(from_fraction(self.b, ctx), const("golden", ctx), ctx),
            ctx,
        )


GOLDEN = GoldenNumber(0, 1)
ONE = GoldenNumber(1, 0)
