"""Exact coefficient extraction for the weighted log series.

Expanding sum_k (w(k)/k) * sum_i x**(k*i)/i, the coefficient of x**n is
sum_{k|n} w(k) / n: all ones for the totient (the geometric series x/(1-x))
and 1, 0, 0, ... for the Möbius weight (the series x). Everything here is
exact rational arithmetic.
"""

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .arithfn import ArithFnTable, divisor_sum_moebius, divisor_sum_totient
from .errors import ContractError

logger = logging.getLogger(__name__)

DEFAULT_DEGREE = 200


@dataclass(frozen=True)
class TruncatedRationalSeries:
    """Coefficients c_1..c_N of x**1..x**N; there is no constant term."""

    degree: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ContractError(f"series degree must be >= 1, got {self.degree}")
        if len(self.coefficients) != self.degree:
            raise ContractError(
                f"expected {self.degree} coefficients, got {len(self.coefficients)}"
            )

    @classmethod
    def from_values(cls, values: Sequence[Fraction | int]) -> "TruncatedRationalSeries":
        return cls(len(values), tuple(Fraction(v) for v in values))

    def coefficient(self, n: int) -> Fraction:
        if not 1 <= n <= self.degree:
            raise ContractError(f"no coefficient of x**{n} in a degree-{self.degree} series")
        return self.coefficients[n - 1]


def expand_double_sum(weight: str, degree: int, table: ArithFnTable) -> TruncatedRationalSeries:
    """Add w(k)/(k*i) into the coefficient of x**(k*i) for all k*i <= degree."""
    if degree < 1:
        raise ContractError(f"series degree must be >= 1, got {degree}")
    table.require(degree)
    weights = table.weight(weight)

    coefficients = [Fraction(0)] * (degree + 1)
    for k in range(1, degree + 1):
        if not weights[k]:
            continue
        for i in range(1, degree // k + 1):
            coefficients[k * i] += Fraction(weights[k], k * i)

    return TruncatedRationalSeries(degree, tuple(coefficients[1:]))


def expected_coefficients(weight: str, degree: int, table: ArithFnTable) -> TruncatedRationalSeries:
    """Coefficient of x**n predicted by the divisor sums: sum_{d|n} w(d) / n."""
    if degree < 1:
        raise ContractError(f"series degree must be >= 1, got {degree}")
    table.require(degree)
    match weight:
        case "totient":
            divisor_sum = divisor_sum_totient
        case "moebius":
            divisor_sum = divisor_sum_moebius
        case _:
            raise ContractError(f"unknown weight {weight!r}")

    return TruncatedRationalSeries(
        degree,
        tuple(Fraction(divisor_sum(n, table), n) for n in range(1, degree + 1)),
    )


def geometric_series(degree: int, start: int = 1) -> TruncatedRationalSeries:
    """x**start / (1 - x) through the given degree."""
    return TruncatedRationalSeries.from_values(
        [1 if n >= start else 0 for n in range(1, degree + 1)]
    )


def subtract_series(a: TruncatedRationalSeries, b: TruncatedRationalSeries) -> TruncatedRationalSeries:
    if a.degree != b.degree:
        raise ContractError(f"degree mismatch: {a.degree} != {b.degree}")
    return TruncatedRationalSeries(
        a.degree, tuple(p - q for p, q in zip(a.coefficients, b.coefficients))
    )


def compare_series(a: TruncatedRationalSeries, b: TruncatedRationalSeries) -> list[int]:
    """Exponents n (1-based) where the two coefficient lists differ."""
    if a.degree != b.degree:
        raise ContractError(f"degree mismatch: {a.degree} != {b.degree}")
    mismatches = [
        n for n, (p, q) in enumerate(zip(a.coefficients, b.coefficients), start=1) if p != q
    ]
    if mismatches:
        logger.info("%d coefficient mismatches, first at x**%d", len(mismatches), mismatches[0])
    return mismatches


def difference_expansion(degree: int, table: ArithFnTable) -> TruncatedRationalSeries:
    """Totient expansion minus Möbius expansion; equals x**2 / (1 - x)."""
    return subtract_series(
        expand_double_sum("totient", degree, table),
        expand_double_sum("moebius", degree, table),
    )


def closed_form(weight: str, degree: int) -> TruncatedRationalSeries:
    """x/(1-x) for the totient, x for Möbius, x**2/(1-x) for their difference."""
    match weight:
        case "totient":
            return geometric_series(degree)
        case "moebius":
            return TruncatedRationalSeries.from_values([1] + [0] * (degree - 1))
        case "difference":
            return geometric_series(degree, start=2)
    raise ContractError(f"unknown weight {weight!r}")


def check_expansion(weight: str, degree: int, table: ArithFnTable) -> tuple[TruncatedRationalSeries, list[int]]:
    """Expand a weight (or ``difference``) and list every exponent that disagrees.

    The expansion is compared with the closed form and, for a single weight,
    with the divisor-sum prediction from the same table.
    """
    target = closed_form(weight, degree)
    if weight == "difference":
        expanded = difference_expansion(degree, table)
        return expanded, compare_series(expanded, target)

    expanded = expand_double_sum(weight, degree, table)
    mismatches = set(compare_series(expanded, expected_coefficients(weight, degree, table)))
    mismatches.update(compare_series(expanded, target))
    return expanded, sorted(mismatches)


def dump_rows(series: TruncatedRationalSeries) -> Iterator[str]:
    """``n<TAB>p/q`` lines."""
    for n, c in enumerate(series.coefficients, start=1):
        yield f"{n}\t{c.numerator}/{c.denominator}"
