"""Decimal fixed-point arithmetic at a chosen working precision.

A value is a signed integer count of units of 10**-scale. Every operation
truncates toward zero; the guard digits of a PrecisionContext absorb the
accumulated rounding so the first ``target_digits`` digits stay correct.
"""

import functools
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_GUARD_DIGITS, MIN_GUARD_DIGITS
from .errors import ContractError, DivisionByZeroError, DomainError, RangeError

logger = logging.getLogger(__name__)

# |a| <= 8 covers e**golden, the largest exponential any identity needs.
EXP_ARGUMENT_CAP = 8
# Extra digits carried inside fx_exp for ln 2 and the 2**m rescaling.
EXP_EXTRA_DIGITS = 10

CONSTANT_NAMES = ("sqrt5", "golden", "golden_inverse", "e")

_DECIMAL_RE = re.compile(r"^\s*([+-]?)(\d+)(?:\.(\d*))?\s*$")
_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


@dataclass(frozen=True)
class PrecisionContext:
    """Target digits D plus guard digits G; values live at scale D + G."""

    target_digits: int
    guard_digits: int = DEFAULT_GUARD_DIGITS

    def __post_init__(self):
        if self.target_digits < 1:
            raise ContractError(f"target_digits must be >= 1, got {self.target_digits}")
        if self.guard_digits < MIN_GUARD_DIGITS:
            raise ContractError(
                f"guard_digits must be >= {MIN_GUARD_DIGITS}, got {self.guard_digits}"
            )

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def one(self) -> int:
        """The integer representing 1 at working scale."""
        return 10 ** self.working_digits

    @property
    def ulp(self) -> "FixedPointValue":
        return FixedPointValue(1, self.working_digits)


@functools.total_ordering
@dataclass(frozen=True)
class FixedPointValue:
    """sign * magnitude * 10**-scale, stored as a signed integer of units."""

    units: int
    scale: int

    def __post_init__(self):
        if self.scale < 0:
            raise ContractError(f"scale must be nonnegative, got {self.scale}")

    @property
    def sign(self) -> int:
        return (self.units > 0) - (self.units < 0)

    @property
    def magnitude(self) -> int:
        return abs(self.units)

    def __lt__(self, other: "FixedPointValue") -> bool:
        if not isinstance(other, FixedPointValue):
            return NotImplemented
        _same_scale(self, other)
        return self.units < other.units

    def __float__(self) -> float:
        return self.units / 10 ** self.scale

    def __str__(self) -> str:
        return to_string(self)

    def to_fraction(self) -> Fraction:
        return Fraction(self.units, 10 ** self.scale)


def _tdiv(n: int, d: int) -> int:
    """Integer quotient truncated toward zero."""
    q = abs(n) // abs(d)
    return -q if (n < 0) != (d < 0) else q


def _same_scale(a: FixedPointValue, b: FixedPointValue) -> None:
    if a.scale != b.scale:
        raise ContractError(f"scale mismatch: {a.scale} != {b.scale}")


def _check(ctx: PrecisionContext, *values: FixedPointValue) -> None:
    for value in values:
        if value.scale != ctx.working_digits:
            raise ContractError(
                f"value has scale {value.scale}, context works at {ctx.working_digits}"
            )


# Construction and rendering

def from_int(n: int, ctx: PrecisionContext) -> FixedPointValue:
    return FixedPointValue(n * ctx.one, ctx.working_digits)


def from_fraction(q: Fraction, ctx: PrecisionContext) -> FixedPointValue:
    """Materialize an exact rational, truncated toward zero."""
    return FixedPointValue(_tdiv(q.numerator * ctx.one, q.denominator), ctx.working_digits)


def parse(text: str, ctx: PrecisionContext) -> FixedPointValue:
    """Parse a decimal literal or a ``p/q`` rational at working precision.

    Raises:
        ContractError: If the text is neither form.
        DivisionByZeroError: If ``q`` is zero.
    """
    if match := _RATIONAL_RE.match(text):
        p, q = int(match.group(1)), int(match.group(2))
        return fx_div(from_int(p, ctx), from_int(q, ctx), ctx)

    match = _DECIMAL_RE.match(text)
    if match is None:
        raise ContractError(f"cannot parse {text!r} as a decimal or p/q value")

    sign, whole, frac = match.group(1), match.group(2), match.group(3) or ""
    digits = ctx.working_digits
    frac = frac[:digits].ljust(digits, "0")
    units = int(whole) * ctx.one + (int(frac) if frac else 0)
    return FixedPointValue(-units if sign == "-" else units, digits)


def to_string(a: FixedPointValue) -> str:
    """Sign, integer part, '.', then exactly ``scale`` fractional digits."""
    sign = "-" if a.units < 0 else ""
    whole, frac = divmod(abs(a.units), 10 ** a.scale)
    if a.scale == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{a.scale}d}"


def to_scientific(a: FixedPointValue, significant: int = 3) -> str:
    """Short exponent form, rounded away from zero (used for error bounds)."""
    if a.units == 0:
        return "0"
    n = abs(a.units)
    length = len(str(n))
    drop = max(0, length - significant)
    lead = -(-n // 10 ** drop)
    exponent = length - 1 - a.scale
    if len(str(lead)) > significant:
        lead = -(-lead // 10)
        exponent += 1
    text = str(lead)
    mantissa = text[0] + ("." + text[1:] if len(text) > 1 else "")
    return f"{'-' if a.units < 0 else ''}{mantissa}e{exponent:+d}"


def fx_rescale(a: FixedPointValue, scale: int) -> FixedPointValue:
    """Change the scale, truncating toward zero when digits are dropped."""
    if scale >= a.scale:
        return FixedPointValue(a.units * 10 ** (scale - a.scale), scale)
    return FixedPointValue(_tdiv(a.units, 10 ** (a.scale - scale)), scale)


def fx_round(a: FixedPointValue, digits: int) -> FixedPointValue:
    """Round half away from zero to ``digits`` fractional digits (display only)."""
    if digits >= a.scale:
        return fx_rescale(a, digits)
    step = 10 ** (a.scale - digits)
    q, r = divmod(abs(a.units), step)
    if 2 * r >= step:
        q += 1
    return FixedPointValue(-q if a.units < 0 else q, digits)


# Ring operations

def fx_add(a: FixedPointValue, b: FixedPointValue, ctx: PrecisionContext) -> FixedPointValue:
    _check(ctx, a, b)
    return FixedPointValue(a.units + b.units, a.scale)


def fx_sub(a: FixedPointValue, b: FixedPointValue, ctx: PrecisionContext) -> FixedPointValue:
    _check(ctx, a, b)
    return FixedPointValue(a.units - b.units, a.scale)


def fx_mul(a: FixedPointValue, b: FixedPointValue, ctx: PrecisionContext) -> FixedPointValue:
    """Product truncated to working scale; error below 1 ulp."""
    _check(ctx, a, b)
    return FixedPointValue(_tdiv(a.units * b.units, ctx.one), a.scale)


def fx_div(a: FixedPointValue, b: FixedPointValue, ctx: PrecisionContext) -> FixedPointValue:
    """Quotient truncated to working scale; error below 1 ulp.

    Raises:
        DivisionByZeroError: If ``b`` is zero.
    """
    _check(ctx, a, b)
    if b.units == 0:
        raise DivisionByZeroError("fixed-point division by zero")
    return FixedPointValue(_tdiv(a.units * ctx.one, b.units), a.scale)


def fx_mul_ratio(a: FixedPointValue, num: int, den: int, ctx: PrecisionContext) -> FixedPointValue:
    """a * num / den with one truncation; error below 1 ulp."""
    _check(ctx, a)
    if den == 0:
        raise DivisionByZeroError("ratio with zero denominator")
    return FixedPointValue(_tdiv(a.units * num, den), a.scale)


def fx_pow_int(a: FixedPointValue, k: int, ctx: PrecisionContext) -> FixedPointValue:
    """Binary exponentiation; at most 2*log2(k) truncating multiplications."""
    _check(ctx, a)
    if k < 0:
        raise ContractError(f"exponent must be nonnegative, got {k}")
    if k == 0:
        return from_int(1, ctx)

    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else fx_mul(result, base, ctx)
        k >>= 1
        if k:
            base = fx_mul(base, base, ctx)
    return result


# Elementary functions

def _isqrt_newton(n: int) -> int:
    """floor(sqrt(n)) by integer Newton iteration from a float seed."""
    if n == 0:
        return 0
    # Seed from the leading 52 bits, shifted by an even amount, biased upward
    # so the iteration decreases monotonically onto the floor root.
    shift = max(0, n.bit_length() - 52)
    shift += shift & 1
    r = (int(math.sqrt(n >> shift)) + 2) << (shift // 2)
    while True:
        y = (r + n // r) // 2
        if y >= r:
            return r
        r = y


def fx_sqrt(a: FixedPointValue, ctx: PrecisionContext) -> FixedPointValue:
    """Square root truncated to working scale.

    The result r satisfies |r*r - a| <= 2*r*ulp, inside the 4*r*ulp contract.

    Raises:
        DomainError: If ``a`` is negative.
    """
    _check(ctx, a)
    if a.units < 0:
        raise DomainError(f"square root of negative value {a}")
    return FixedPointValue(_isqrt_newton(a.units * ctx.one), a.scale)


def _log1m_units(y: int, one: int) -> tuple[int, int]:
    """Sum y**i/i for i = 1..I in units of 1/one; returns (sum, I).

    I is the first index whose tail bound y**(I+1) / ((I+1)(1-y)) drops
    below one unit, evaluated on the truncated power.
    """
    complement = one - y
    total = 0
    power = y
    i = 1
    while True:
        total += power // i
        nxt = power * y // one
        if nxt * one < (i + 1) * complement:
            return total, i
        power = nxt
        i += 1


def fx_log1m_with_terms(y: FixedPointValue, ctx: PrecisionContext) -> tuple[FixedPointValue, int]:
    """Like fx_log1m but also returns the number of series terms summed."""
    _check(ctx, y)
    if not 0 < y.units < ctx.one:
        raise DomainError(f"-log(1 - y) needs 0 < y < 1, got {y}")
    total, terms = _log1m_units(y.units, ctx.one)
    return FixedPointValue(total, y.scale), terms


def fx_log1m(y: FixedPointValue, ctx: PrecisionContext) -> FixedPointValue:
    """-log(1 - y) for 0 < y < 1 via the series sum of y**i / i.

    The truncation error is below 1 ulp and each term adds at most 2 ulp of
    rounding, so the result is within 2*I ulp for I summed terms.

    Raises:
        DomainError: If y <= 0 or y >= 1.
    """
    return fx_log1m_with_terms(y, ctx)[0]


def fx_exp(a: FixedPointValue, ctx: PrecisionContext) -> FixedPointValue:
    """e**a for |a| <= 8.

    Reduces a = m*ln2 + r with |r| <= ln2/2, sums the Taylor series of e**r,
    then scales by 2**m. All of it runs EXP_EXTRA_DIGITS beyond the working
    scale so the 2**m amplification stays inside the guard digits.

    Raises:
        RangeError: If |a| exceeds EXP_ARGUMENT_CAP.
    """
    _check(ctx, a)
    if abs(a.units) > EXP_ARGUMENT_CAP * ctx.one:
        raise RangeError(f"exp argument {a} outside [-{EXP_ARGUMENT_CAP}, {EXP_ARGUMENT_CAP}]")

    lift = 10 ** EXP_EXTRA_DIGITS
    one = ctx.one * lift
    x = a.units * lift
    ln2, _ = _log1m_units(one // 2, one)

    m = (2 * x + ln2) // (2 * ln2)
    r = x - m * ln2

    total = one
    term = one
    n = 1
    while term:
        term = _tdiv(term * r, one * n)
        total += term
        n += 1

    if m >= 0:
        total <<= m
    else:
        total >>= -m
    return FixedPointValue(total // lift, a.scale)


# Constants and comparison

def const(name: str, ctx: PrecisionContext) -> FixedPointValue:
    """Named constant at working precision: sqrt5, golden, golden_inverse or e.

    Raises:
        ContractError: If the name is unknown.
    """
    match name:
        case "sqrt5":
            return fx_sqrt(from_int(5, ctx), ctx)
        case "golden":
            root5 = const("sqrt5", ctx)
            return FixedPointValue((ctx.one + root5.units) // 2, ctx.working_digits)
        case "golden_inverse":
            return fx_sub(const("golden", ctx), from_int(1, ctx), ctx)
        case "e":
            return fx_exp(from_int(1, ctx), ctx)
    raise ContractError(f"unknown constant {name!r}; expected one of {', '.join(CONSTANT_NAMES)}")


def matched_digits(a: FixedPointValue, b: FixedPointValue) -> int:
    """Largest m (capped at the scale) with |a - b| < 10**-m."""
    _same_scale(a, b)
    diff = abs(a.units - b.units)
    if diff == 0:
        return a.scale
    return max(0, a.scale - len(str(diff)))
