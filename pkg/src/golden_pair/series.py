"""Weighted logarithmic series sum((w(k)/k) * -log(1 - x**k)) for w = phi or mu.

For 0 < x < 1 the totient series sums to x/(1-x) and the Möbius series to x.
Products prod((1 - x**k) ** (-w(k)/k)) are evaluated as exp of the series.

Truncation rule: |w(k)/k| <= 1 and
-log(1-y) <= y/(1-y), so the terms beyond K are dominated by
sum(x**k / (1 - x**k)) <= x**(K+1) / ((1-x)(1-x**(K+1))). K is the smallest
index pushing that bound below 10**-(D + G/2): half the guard digits go to
truncation, half to rounding.
"""

import logging
import math
from dataclasses import dataclass
from enum import StrEnum

from .arithfn import ArithFnTable
from .config import DEFAULT_GUARD_DIGITS
from .errors import ContractError, DomainError, PrecisionBudgetError, TableTooSmallError
from .fixedpoint import (
    FixedPointValue,
    PrecisionContext,
    const,
    fx_add,
    fx_exp,
    fx_log1m_with_terms,
    fx_mul,
    fx_mul_ratio,
    parse,
    to_scientific,
)

logger = logging.getLogger(__name__)

GOLDEN_INVERSE_POINT = "golden-inverse"


class Weight(StrEnum):
    TOTIENT = "totient"
    MOEBIUS = "moebius"


class Form(StrEnum):
    SUM = "sum"
    PRODUCT = "product"


def _require_open_unit(x: FixedPointValue) -> None:
    if not 0 < x.units < 10 ** x.scale:
        raise DomainError(f"x must satisfy 0 < x < 1, got {x}")


def resolve_point(text: str, ctx: PrecisionContext) -> FixedPointValue:
    """Materialize an evaluation point: decimal, ``p/q`` or ``golden-inverse``.

    Raises:
        DomainError: If the point is not strictly inside (0, 1).
    """
    if text.strip().lower().replace("_", "-") == GOLDEN_INVERSE_POINT:
        x = const("golden_inverse", ctx)
    else:
        x = parse(text, ctx)
    _require_open_unit(x)
    return x


@dataclass(frozen=True)
class SeriesSpec:
    """One evaluation request; x must already be at the request's working scale."""

    weight: Weight
    x: FixedPointValue
    target_digits: int
    guard_digits: int = DEFAULT_GUARD_DIGITS

    def __post_init__(self):
        object.__setattr__(self, "weight", Weight(self.weight))
        ctx = self.context
        if self.x.scale != ctx.working_digits:
            raise ContractError(
                f"x has scale {self.x.scale}, expected {ctx.working_digits}"
            )
        _require_open_unit(self.x)

    @property
    def context(self) -> PrecisionContext:
        return PrecisionContext(self.target_digits, self.guard_digits)


@dataclass(frozen=True)
class EvalResult:
    value: FixedPointValue
    terms_used: int
    tail_bound: FixedPointValue
    rounding_budget: FixedPointValue

    def sidecar(self) -> dict:
        return {
            "terms_used": self.terms_used,
            "tail_bound": to_scientific(self.tail_bound),
            "rounding_budget": to_scientific(self.rounding_budget),
        }


def _log10_tail_bound(log10_x: float, log10_1mx: float, k: int) -> float:
    q = (k + 1) * log10_x
    return q - log10_1mx - math.log10(-math.expm1(q * math.log(10)))


def truncation_index(x: FixedPointValue, digits: int, guard_digits: int) -> int:
    """Smallest K with x**(K+1) / ((1-x)(1-x**(K+1))) < 10**-(digits + guard_digits/2).

    Raises:
        DomainError: If x is not strictly inside (0, 1).
    """
    _require_open_unit(x)
    log10_x = math.log10(x.units) - x.scale
    log10_1mx = math.log10(10 ** x.scale - x.units) - x.scale
    threshold = -(digits + guard_digits / 2)

    k = max(1, math.floor((threshold + log10_1mx) / log10_x) - 1)
    while k > 1 and _log10_tail_bound(log10_x, log10_1mx, k - 1) < threshold:
        k -= 1
    while _log10_tail_bound(log10_x, log10_1mx, k) >= threshold:
        k += 1
    return k


def tail_bound(x: FixedPointValue, k: int) -> FixedPointValue:
    """x**(k+1) / ((1-x)(1-x**(k+1))) at x's scale, rounded up."""
    _require_open_unit(x)
    base = 10 ** x.scale
    power = x.units ** (k + 1)
    full = base ** (k + 1)
    numerator = power * base * base
    denominator = (base - x.units) * (full - power)
    return FixedPointValue(-(-numerator // denominator), x.scale)


def _check_budget(result: EvalResult, ctx: PrecisionContext) -> EvalResult:
    spent = result.tail_bound.units + result.rounding_budget.units
    if spent >= 10 ** ctx.guard_digits:
        raise PrecisionBudgetError(
            f"tail bound {to_scientific(result.tail_bound)} plus rounding "
            f"{to_scientific(result.rounding_budget)} exceeds 1e-{ctx.target_digits}"
        )
    return result


def eval_weighted_log_series(spec: SeriesSpec, table: ArithFnTable) -> EvalResult:
    """Sum (w(k)/k) * -log(1 - x**k) for k = 1..K with a rigorous error bound.

    x**k is carried incrementally. Per term the rounding budget charges
    2k/(1-x) ulp for the power (including x's own materialization error,
    amplified by the log's slope), 2 ulp per log term, and 1 ulp for w(k)/k.

    Raises:
        TableTooSmallError: If the table does not reach the truncation index.
        PrecisionBudgetError: If the bounds do not fit below 10**-D.
    """
    ctx = spec.context
    x = spec.x
    k_max = truncation_index(x, spec.target_digits, spec.guard_digits)
    if table.limit < k_max:
        raise TableTooSmallError(required=k_max, available=table.limit)

    weights = table.weight(spec.weight)
    one = ctx.one
    complement = one - x.units

    total = FixedPointValue(0, ctx.working_digits)
    power = x
    budget = 0
    terms = 0
    for k in range(1, k_max + 1):
        if power.units == 0:
            break
        log_value, log_terms = fx_log1m_with_terms(power, ctx)
        if weights[k]:
            total = fx_add(total, fx_mul_ratio(log_value, weights[k], k, ctx), ctx)
        budget += -(-2 * k * one // complement) + 2 * log_terms + 1
        terms = k
        power = fx_mul(power, x, ctx)

    logger.debug(
        "%s series at x=%.6g: %d terms, budget %d ulp", spec.weight, float(x), terms, budget
    )
    result = EvalResult(
        value=total,
        terms_used=terms,
        tail_bound=tail_bound(x, k_max),
        rounding_budget=FixedPointValue(budget, ctx.working_digits),
    )
    return _check_budget(result, ctx)


def eval_product_form(spec: SeriesSpec, table: ArithFnTable) -> EvalResult:
    """prod((1 - x**k) ** (-w(k)/k)), computed as exp of the log series.

    An error d in the exponent moves e**s by at most 2*e**s*d (d <= 1), so
    both bounds are scaled by twice the product; exp adds a few ulp.

    Raises:
        RangeError: If the series value exceeds the exp cap.
    """
    ctx = spec.context
    series = eval_weighted_log_series(spec, table)
    value = fx_exp(series.value, ctx)
    scale = 2 * value.units
    one = ctx.one

    result = EvalResult(
        value=value,
        terms_used=series.terms_used,
        tail_bound=FixedPointValue(-(-scale * series.tail_bound.units // one), ctx.working_digits),
        rounding_budget=FixedPointValue(
            -(-scale * series.rounding_budget.units // one) + 4, ctx.working_digits
        ),
    )
    return _check_budget(result, ctx)


def evaluate(spec: SeriesSpec, table: ArithFnTable, form: Form = Form.SUM) -> EvalResult:
    if Form(form) is Form.PRODUCT:
        return eval_product_form(spec, table)
    return eval_weighted_log_series(spec, table)
