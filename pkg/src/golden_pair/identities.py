"""Verification harness binding series evaluations to closed-form targets.

Each identity computes its two sides through separate paths at working
precision D + G: the series side from sieve tables and fx_log1m, the closed
side from the named constants and fx_exp. A check passes when the sides
agree to at least D decimal digits.
"""

import logging
import re
import time
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import partial

from .arithfn import ArithFnTable, sieve_build
from .config import DEFAULT_GUARD_DIGITS
from .errors import ContractError, DomainError, GoldenPairError, IdentityError
from .fixedpoint import (
    FixedPointValue,
    PrecisionContext,
    const,
    from_fraction,
    from_int,
    fx_div,
    fx_exp,
    fx_log1m,
    fx_round,
    fx_sub,
    matched_digits,
    to_string,
)
from .golden_field import GOLDEN, ONE
from .series import EvalResult, Form, SeriesSpec, Weight, evaluate, truncation_index

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 1
DEFAULT_SAMPLE_POINTS = (Fraction(1, 4), Fraction(1, 2), Fraction(7, 10))


class IdentityName(StrEnum):
    THEOREM_TOTIENT = "theorem_totient"
    THEOREM_MOEBIUS = "theorem_moebius"
    COROLLARY1 = "corollary1"
    COROLLARY2 = "corollary2"
    COROLLARY3_TOTIENT = "corollary3_totient"
    COROLLARY3_MOEBIUS = "corollary3_moebius"
    COROLLARY3_RELATION = "corollary3_relation"
    LEMMA2_TOTIENT = "lemma2_totient"
    LEMMA2_MOEBIUS = "lemma2_moebius"
    GENERAL_PRODUCT_TOTIENT = "general_product_totient"
    GENERAL_PRODUCT_MOEBIUS = "general_product_moebius"


PARAMETERIZED = frozenset({
    IdentityName.LEMMA2_TOTIENT,
    IdentityName.LEMMA2_MOEBIUS,
    IdentityName.GENERAL_PRODUCT_TOTIENT,
    IdentityName.GENERAL_PRODUCT_MOEBIUS,
})
FIXED = tuple(name for name in IdentityName if name not in PARAMETERIZED)

_ID_RE = re.compile(r"^\s*(\w+)\s*(?:\(\s*([^)]*?)\s*\))?\s*$")


def _to_point(value: str | Fraction) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ContractError(f"invalid evaluation point {value!r}")


@dataclass(frozen=True)
class IdentityId:
    """An identity name, plus its evaluation point for the x-parameterized ones."""

    name: IdentityName
    x: Fraction | None = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "name", IdentityName(self.name))
        except ValueError:
            raise ContractError(f"unknown identity {self.name!r}")
        if self.name in PARAMETERIZED:
            if self.x is None:
                raise ContractError(f"{self.name} needs an evaluation point x")
            object.__setattr__(self, "x", Fraction(self.x))
            if not 0 < self.x < 1:
                raise DomainError(f"{self.name} needs 0 < x < 1, got {self.x}")
        elif self.x is not None:
            raise ContractError(f"{self.name} takes no evaluation point")

    @classmethod
    def parse(cls, text: str, x: str | Fraction | None = None) -> "IdentityId":
        """Accept ``name``, ``name(p/q)``, or a name with a separate x."""
        match = _ID_RE.match(text)
        if match is None:
            raise ContractError(f"cannot parse identity {text!r}")
        name, inline = match.groups()
        points = {_to_point(p) for p in (inline, x) if p not in (None, "")}
        if len(points) > 1:
            raise ContractError(f"conflicting evaluation points for {name}: {inline} and {x}")
        return cls(name, points.pop() if points else None)

    @property
    def sort_key(self) -> tuple[int, Fraction]:
        return list(IdentityName).index(self.name), self.x or Fraction(0)

    def __str__(self) -> str:
        return self.name.value if self.x is None else f"{self.name.value}({self.x})"


@dataclass(frozen=True)
class VerificationReport:
    identity: IdentityId
    digits_requested: int
    lhs: str
    rhs: str
    matched: int
    terms_used: int
    elapsed: float
    passed: bool
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "identity": self.identity.name.value,
            "x": None if self.identity.x is None else str(self.identity.x),
            "digits_requested": self.digits_requested,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "matched": self.matched,
            "terms_used": self.terms_used,
            "elapsed": round(self.elapsed, 6),
            "pass": self.passed,
            "reason": self.reason,
        }


# Exact golden-field steps

def _require(condition: bool, message: str) -> None:
    if not condition:
        raise IdentityError(message)


def check_theorem_simplification() -> None:
    """(1/g) / (1 - 1/g) = 1/(g - 1) = g, using 1/g = g - 1."""
    inverse = 1 / GOLDEN
    _require(inverse == GOLDEN - 1, "1/golden != golden - 1")
    _require(inverse / (1 - inverse) == 1 / (GOLDEN - 1), "x/(1-x) at 1/golden != 1/(golden-1)")
    _require(1 / (GOLDEN - 1) == GOLDEN, "1/(golden - 1) != golden")


def check_unit_difference() -> None:
    """golden - 1/golden = 1."""
    _require(GOLDEN - 1 / GOLDEN == ONE, "golden - 1/golden != 1")


def check_exponent_relation() -> None:
    """e**(1/g) = e**(g - 1) = e**g / e, which rests on 1/g = g - 1."""
    _require(1 / GOLDEN == GOLDEN - ONE, "1/golden != golden - 1")


# Sides

Sides = tuple[FixedPointValue, FixedPointValue, int]


def _point(identity: IdentityId, ctx: PrecisionContext) -> FixedPointValue:
    if identity.x is None:
        return const("golden_inverse", ctx)
    return from_fraction(identity.x, ctx)


def _series(weight: Weight, x: FixedPointValue, ctx: PrecisionContext,
            table: ArithFnTable, form: Form = Form.SUM) -> EvalResult:
    spec = SeriesSpec(weight, x, ctx.target_digits, ctx.guard_digits)
    return evaluate(spec, table, form)


def _theorem_totient(identity, ctx, table) -> Sides:
    check_theorem_simplification()
    result = _series(Weight.TOTIENT, _point(identity, ctx), ctx, table)
    return result.value, const("golden", ctx), result.terms_used


def _theorem_moebius(identity, ctx, table) -> Sides:
    result = _series(Weight.MOEBIUS, _point(identity, ctx), ctx, table)
    return result.value, const("golden_inverse", ctx), result.terms_used


def _difference_sum(identity, ctx, table) -> tuple[FixedPointValue, int]:
    x = _point(identity, ctx)
    totient = _series(Weight.TOTIENT, x, ctx, table)
    moebius = _series(Weight.MOEBIUS, x, ctx, table)
    terms = max(totient.terms_used, moebius.terms_used)
    return fx_sub(totient.value, moebius.value, ctx), terms


def _corollary1(identity, ctx, table) -> Sides:
    check_unit_difference()
    lhs, terms = _difference_sum(identity, ctx, table)
    return lhs, from_int(1, ctx), terms


def _corollary2(identity, ctx, table) -> Sides:
    check_unit_difference()
    exponent, terms = _difference_sum(identity, ctx, table)
    return fx_exp(exponent, ctx), const("e", ctx), terms


def _corollary3_totient(identity, ctx, table) -> Sides:
    result = _series(Weight.TOTIENT, _point(identity, ctx), ctx, table, Form.PRODUCT)
    return result.value, fx_exp(const("golden", ctx), ctx), result.terms_used


def _corollary3_moebius(identity, ctx, table) -> Sides:
    result = _series(Weight.MOEBIUS, _point(identity, ctx), ctx, table, Form.PRODUCT)
    return result.value, fx_exp(const("golden_inverse", ctx), ctx), result.terms_used


def _corollary3_relation(identity, ctx, table) -> Sides:
    check_exponent_relation()
    result = _series(Weight.MOEBIUS, _point(identity, ctx), ctx, table, Form.PRODUCT)
    rhs = fx_div(fx_exp(const("golden", ctx), ctx), const("e", ctx), ctx)
    return result.value, rhs, result.terms_used


def _odds(x: FixedPointValue, ctx: PrecisionContext) -> FixedPointValue:
    return fx_div(x, fx_sub(from_int(1, ctx), x, ctx), ctx)


def _lemma2_totient(identity, ctx, table) -> Sides:
    x = _point(identity, ctx)
    result = _series(Weight.TOTIENT, x, ctx, table)
    return result.value, _odds(x, ctx), result.terms_used


def _lemma2_moebius(identity, ctx, table) -> Sides:
    x = _point(identity, ctx)
    result = _series(Weight.MOEBIUS, x, ctx, table)
    return result.value, x, result.terms_used


def _general_product_totient(identity, ctx, table) -> Sides:
    x = _point(identity, ctx)
    result = _series(Weight.TOTIENT, x, ctx, table, Form.PRODUCT)
    return result.value, fx_exp(_odds(x, ctx), ctx), result.terms_used


def _general_product_moebius(identity, ctx, table) -> Sides:
    x = _point(identity, ctx)
    result = _series(Weight.MOEBIUS, x, ctx, table, Form.PRODUCT)
    return result.value, fx_exp(x, ctx), result.terms_used


_SIDES: dict[IdentityName, Callable[[IdentityId, PrecisionContext, ArithFnTable], Sides]] = {
    IdentityName.THEOREM_TOTIENT: _theorem_totient,
    IdentityName.THEOREM_MOEBIUS: _theorem_moebius,
    IdentityName.COROLLARY1: _corollary1,
    IdentityName.COROLLARY2: _corollary2,
    IdentityName.COROLLARY3_TOTIENT: _corollary3_totient,
    IdentityName.COROLLARY3_MOEBIUS: _corollary3_moebius,
    IdentityName.COROLLARY3_RELATION: _corollary3_relation,
    IdentityName.LEMMA2_TOTIENT: _lemma2_totient,
    IdentityName.LEMMA2_MOEBIUS: _lemma2_moebius,
    IdentityName.GENERAL_PRODUCT_TOTIENT: _general_product_totient,
    IdentityName.GENERAL_PRODUCT_MOEBIUS: _general_product_moebius,
}


# Harness

def required_limit(digits: int, guard_digits: int = DEFAULT_GUARD_DIGITS,
                   points: Iterable[Fraction | None] = (None,)) -> int:
    """Largest truncation index over the points; None stands for 1/golden."""
    ctx = PrecisionContext(digits, guard_digits)
    limit = 1
    for point in points:
        x = const("golden_inverse", ctx) if point is None else from_fraction(Fraction(point), ctx)
        limit = max(limit, truncation_index(x, digits, guard_digits))
    return limit


def evaluate_sides(
    identity: IdentityId, ctx: PrecisionContext, table: ArithFnTable | None = None
) -> Sides:
    """Left side, right side and series terms of one identity at working precision."""
    if table is None:
        table = sieve_build(required_limit(ctx.target_digits, ctx.guard_digits, [identity.x]))
    return _SIDES[identity.name](identity, ctx, table)


def verify(
    identity: IdentityId | str,
    digits: int,
    table: ArithFnTable | None = None,
    guard_digits: int = DEFAULT_GUARD_DIGITS,
) -> VerificationReport:
    """Check one identity to ``digits`` digits.

    Library errors never escape: they produce a failed report whose
    ``reason`` carries the message.
    """
    start = time.perf_counter()
    if isinstance(identity, str):
        identity = IdentityId.parse(identity)

    try:
        ctx = PrecisionContext(digits, guard_digits)
        lhs, rhs, terms = evaluate_sides(identity, ctx, table)
    except GoldenPairError as exc:
        logger.info("%s failed: %s", identity, exc)
        return VerificationReport(
            identity=identity,
            digits_requested=digits,
            lhs="",
            rhs="",
            matched=0,
            terms_used=0,
            elapsed=time.perf_counter() - start,
            passed=False,
            reason=str(exc),
        )

    matched = matched_digits(lhs, rhs)
    passed = matched >= digits
    report = VerificationReport(
        identity=identity,
        digits_requested=digits,
        lhs=to_string(fx_round(lhs, digits)),
        rhs=to_string(fx_round(rhs, digits)),
        matched=matched,
        terms_used=terms,
        elapsed=time.perf_counter() - start,
        passed=passed,
        reason=None if passed else f"sides agree to {matched} digits, {digits} requested",
    )
    logger.info("%s: %s (%d digits matched)", identity, "pass" if passed else "FAIL", matched)
    return report


def suite(points: Iterable[Fraction] = DEFAULT_SAMPLE_POINTS) -> list[IdentityId]:
    """Every fixed identity plus each x-parameterized family at every point."""
    points = list(points)
    ids = [IdentityId(name) for name in FIXED]
    ids += [IdentityId(name, x) for name in IdentityName if name in PARAMETERIZED for x in points]
    return ids


def verify_all(
    digits: int,
    table: ArithFnTable | None = None,
    guard_digits: int = DEFAULT_GUARD_DIGITS,
    points: Iterable[Fraction] = DEFAULT_SAMPLE_POINTS,
    workers: int = 1,
) -> list[VerificationReport]:
    """Run the full suite with one shared sieve; reports ordered by identity."""
    points = [Fraction(p) for p in points]
    ids = suite(points)
    if table is None:
        table = sieve_build(required_limit(digits, guard_digits, [None, *points]))

    check = partial(verify, digits=digits, table=table, guard_digits=guard_digits)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(check, ids))
    else:
        reports = [check(identity) for identity in ids]

    failed = sum(not r.passed for r in reports)
    logger.info("verified %d identities at %d digits, %d failed", len(reports), digits, failed)
    return sorted(reports, key=lambda r: r.identity.sort_key)


def all_passed(reports: Iterable[VerificationReport]) -> bool:
    return all(r.passed for r in reports)


def log1m_golden_cross_check(digits: int, guard_digits: int = DEFAULT_GUARD_DIGITS) -> int:
    """Digits to which exp(-log(1 - 1/g)) agrees with g + 1.

    1 - 1/g = 1/g**2, so -log(1 - 1/g) = 2 log g and its exponential is
    g**2 = g + 1. This is a consistency check on fx_log1m and fx_exp.
    """
    inverse = 1 / GOLDEN
    _require(1 / (1 - inverse) == GOLDEN * GOLDEN == GOLDEN + 1, "1/(1 - 1/golden) != golden + 1")
    ctx = PrecisionContext(digits, guard_digits)
    value = fx_exp(fx_log1m(const("golden_inverse", ctx), ctx), ctx)
    return matched_digits(value, (GOLDEN + 1).to_fixed(ctx))
