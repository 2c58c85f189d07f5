"""Tests for decimal fixed-point arithmetic and the elementary functions."""

import math
import random
from fractions import Fraction

import pytest

from golden_pair.errors import ContractError, DivisionByZeroError, DomainError, RangeError
from golden_pair.fixedpoint import (
    FixedPointValue,
    PrecisionContext,
    const,
    from_fraction,
    from_int,
    fx_add,
    fx_div,
    fx_exp,
    fx_log1m,
    fx_log1m_with_terms,
    fx_mul,
    fx_mul_ratio,
    fx_pow_int,
    fx_rescale,
    fx_round,
    fx_sqrt,
    fx_sub,
    matched_digits,
    parse,
    to_scientific,
    to_string,
)

GOLDEN_DIGITS = "1.6180339887498948482045868343656381177203"
GOLDEN_INVERSE_DIGITS = "0.6180339887498948482045868343656381177203"
SQRT5_DIGITS = "2.2360679774997896964091736687312762354406"
E_DIGITS = "2.7182818284590452353602874713526624977572"
LOG2_DIGITS = "0.6931471805599453094172321214581765680755"
TWO_LOG_GOLDEN_DIGITS = "0.9624236501192068949955178268487368462703"


def starts_with(value: FixedPointValue, digits: str) -> bool:
    return to_string(value).startswith(digits)


class TestContext:
    def test_working_digits(self):
        ctx = PrecisionContext(30, 25)
        assert ctx.working_digits == 55
        assert ctx.one == 10 ** 55
        assert ctx.ulp == FixedPointValue(1, 55)

    def test_guard_digits_below_minimum(self):
        with pytest.raises(ContractError):
            PrecisionContext(30, 19)

    def test_target_digits_positive(self):
        with pytest.raises(ContractError):
            PrecisionContext(0)


class TestValue:
    def test_sign_and_magnitude(self):
        assert FixedPointValue(-25, 2).sign == -1
        assert FixedPointValue(-25, 2).magnitude == 25
        assert FixedPointValue(0, 2).sign == 0

    def test_ordering_needs_equal_scale(self):
        assert FixedPointValue(1, 3) < FixedPointValue(2, 3)
        with pytest.raises(ContractError):
            FixedPointValue(1, 3) < FixedPointValue(2, 4)

    def test_render(self):
        assert to_string(FixedPointValue(-150, 2)) == "-1.50"
        assert to_string(FixedPointValue(5, 3)) == "0.005"

    def test_parse_decimal_and_rational(self, ctx):
        assert parse("1.5", ctx) == fx_div(from_int(3, ctx), from_int(2, ctx), ctx)
        assert parse("-0.25", ctx).units == -ctx.one // 4
        assert parse("3/7", ctx) == from_fraction(Fraction(3, 7), ctx)

    def test_parse_rejects_garbage(self, ctx):
        with pytest.raises(ContractError):
            parse("1e-5", ctx)
        with pytest.raises(DivisionByZeroError):
            parse("1/0", ctx)

    def test_render_parse_round_trip(self, ctx):
        for value in (const("golden", ctx), from_fraction(Fraction(-22, 7), ctx), ctx.ulp):
            assert parse(to_string(value), ctx) == value

    def test_scientific(self):
        assert to_scientific(FixedPointValue(123456, 10)) == "1.24e-5"
        assert to_scientific(FixedPointValue(999999, 10)) == "1.00e-4"
        assert to_scientific(FixedPointValue(0, 10)) == "0"

    def test_round_half_away_from_zero(self):
        assert fx_round(FixedPointValue(99999, 5), 2) == FixedPointValue(100, 2)
        assert fx_round(FixedPointValue(-12345, 4), 3) == FixedPointValue(-1235, 3)
        assert fx_round(FixedPointValue(12344, 4), 3) == FixedPointValue(1234, 3)

    def test_rescale_truncates(self):
        assert fx_rescale(FixedPointValue(-1999, 3), 1) == FixedPointValue(-19, 1)
        assert fx_rescale(FixedPointValue(7, 1), 3) == FixedPointValue(700, 3)


class TestRing:
    def test_add_exact(self, ctx):
        assert fx_add(parse("1.50", ctx), parse("0.25", ctx), ctx) == parse("1.75", ctx)

    def test_additive_identity(self, ctx):
        x = const("e", ctx)
        assert fx_add(x, from_int(0, ctx), ctx) == x

    def test_add_then_sub(self, ctx):
        a, b = const("golden", ctx), const("e", ctx)
        assert fx_sub(fx_add(a, b, ctx), b, ctx) == a

    def test_scale_mismatch(self, ctx):
        with pytest.raises(ContractError):
            fx_add(from_int(1, ctx), FixedPointValue(1, 2), ctx)

    def test_golden_minus_one(self, ctx):
        value = fx_sub(const("golden", ctx), from_int(1, ctx), ctx)
        assert starts_with(value, GOLDEN_INVERSE_DIGITS[:32])

    def test_mul(self, ctx):
        half = parse("0.5", ctx)
        assert fx_mul(half, half, ctx) == parse("0.25", ctx)

    def test_sqrt5_squared(self, ctx):
        root = const("sqrt5", ctx)
        assert matched_digits(fx_mul(root, root, ctx), from_int(5, ctx)) >= ctx.target_digits

    def test_reciprocal_pair(self, ctx):
        product = fx_mul(const("golden", ctx), const("golden_inverse", ctx), ctx)
        assert matched_digits(product, from_int(1, ctx)) >= ctx.target_digits

    def test_div(self, ctx):
        assert fx_div(from_int(1, ctx), from_int(2, ctx), ctx) == parse("0.5", ctx)
        inverse = fx_div(from_int(1, ctx), const("golden", ctx), ctx)
        assert starts_with(inverse, GOLDEN_INVERSE_DIGITS[:32])

    def test_div_by_zero(self, ctx):
        with pytest.raises(DivisionByZeroError):
            fx_div(from_int(1, ctx), from_int(0, ctx), ctx)

    def test_mul_ratio(self, ctx):
        assert fx_mul_ratio(from_int(1, ctx), 2, 8, ctx) == parse("0.25", ctx)
        assert fx_mul_ratio(from_int(1, ctx), -1, 3, ctx) == fx_sub(
            from_int(0, ctx), from_fraction(Fraction(1, 3), ctx), ctx
        )

    def test_pow_int(self, ctx):
        assert fx_pow_int(parse("0.5", ctx), 10, ctx) == parse("0.0009765625", ctx)
        x = const("golden", ctx)
        assert fx_pow_int(x, 1, ctx) == x
        assert fx_pow_int(x, 0, ctx) == from_int(1, ctx)

    def test_pow_int_golden_inverse_square(self, ctx):
        inverse = const("golden_inverse", ctx)
        square = fx_pow_int(inverse, 2, ctx)
        assert matched_digits(square, fx_sub(from_int(1, ctx), inverse, ctx)) >= ctx.target_digits

    def test_pow_int_negative(self, ctx):
        with pytest.raises(ContractError):
            fx_pow_int(from_int(2, ctx), -1, ctx)


class TestSqrt:
    def test_exact_square(self, ctx):
        assert fx_sqrt(from_int(4, ctx), ctx) == from_int(2, ctx)
        assert fx_sqrt(from_int(0, ctx), ctx) == from_int(0, ctx)

    def test_sqrt5_digits(self):
        ctx = PrecisionContext(40)
        assert starts_with(fx_sqrt(from_int(5, ctx), ctx), SQRT5_DIGITS)

    def test_negative(self, ctx):
        with pytest.raises(DomainError):
            fx_sqrt(from_int(-1, ctx), ctx)

    def test_round_trip_bound(self, ctx):
        rng = random.Random(5)
        for _ in range(200):
            exponent = rng.uniform(-6, 6)
            a = from_fraction(Fraction(10 ** exponent), ctx)
            r = fx_sqrt(a, ctx)
            assert abs(r.units ** 2 - a.units * ctx.one) <= 4 * r.units
            assert r.units == math.isqrt(a.units * ctx.one)


class TestLog1m:
    def test_log2(self):
        ctx = PrecisionContext(40)
        assert starts_with(fx_log1m(parse("0.5", ctx), ctx), LOG2_DIGITS)

    def test_log2_exp_round_trip(self, ctx):
        log2 = fx_log1m(parse("0.5", ctx), ctx)
        assert matched_digits(fx_exp(log2, ctx), from_int(2, ctx)) >= ctx.target_digits

    def test_golden_inverse_is_twice_log_golden(self):
        ctx = PrecisionContext(40)
        assert starts_with(fx_log1m(const("golden_inverse", ctx), ctx), TWO_LOG_GOLDEN_DIGITS)

    def test_tiny_argument(self, ctx):
        y = FixedPointValue(10 ** ctx.guard_digits, ctx.working_digits)
        assert matched_digits(fx_log1m(y, ctx), y) >= ctx.target_digits - 1

    def test_term_count(self, ctx):
        _, terms = fx_log1m_with_terms(parse("0.5", ctx), ctx)
        # 2**-(I+1) / ((I+1)/2) first drops below 1e-50 near I = 160
        assert 150 <= terms <= 170

    @pytest.mark.parametrize("y", ["0", "1", "-0.5", "1.5"])
    def test_domain(self, ctx, y):
        with pytest.raises(DomainError):
            fx_log1m(parse(y, ctx), ctx)


class TestExp:
    def test_zero(self, ctx):
        assert fx_exp(from_int(0, ctx), ctx) == from_int(1, ctx)

    def test_e_digits(self):
        ctx = PrecisionContext(40)
        assert starts_with(fx_exp(from_int(1, ctx), ctx), E_DIGITS)

    def test_negative_argument(self, ctx):
        product = fx_mul(fx_exp(from_int(-1, ctx), ctx), const("e", ctx), ctx)
        assert matched_digits(product, from_int(1, ctx)) >= ctx.target_digits

    def test_range(self, ctx):
        assert fx_exp(from_int(8, ctx), ctx).units > 0
        with pytest.raises(RangeError):
            fx_exp(parse("8.001", ctx), ctx)

    def test_log_inverse_pair(self, ctx):
        rng = random.Random(11)
        one = from_int(1, ctx)
        for _ in range(100):
            y = from_fraction(Fraction(rng.randint(10, 990), 1000), ctx)
            lhs = fx_exp(fx_log1m(y, ctx), ctx)
            rhs = fx_div(one, fx_sub(one, y, ctx), ctx)
            assert matched_digits(lhs, rhs) >= ctx.target_digits


class TestConstants:
    def test_golden_digits(self):
        ctx = PrecisionContext(40)
        assert to_string(fx_round(const("golden", ctx), 40)) == GOLDEN_DIGITS

    def test_golden_minus_inverse_is_one(self, ctx):
        difference = fx_sub(const("golden", ctx), const("golden_inverse", ctx), ctx)
        assert difference == from_int(1, ctx)

    def test_golden_inverse_polynomial(self, ctx):
        x = const("golden_inverse", ctx)
        residual = fx_sub(fx_add(fx_mul(x, x, ctx), x, ctx), from_int(1, ctx), ctx)
        assert abs(residual.units) < 10 ** (ctx.working_digits - ctx.target_digits + 2)

    def test_golden_defining_identity(self, ctx):
        golden = const("golden", ctx)
        one = from_int(1, ctx)
        rhs = fx_add(one, fx_div(one, golden, ctx), ctx)
        assert matched_digits(golden, rhs) >= ctx.target_digits

    def test_unknown(self, ctx):
        with pytest.raises(ContractError):
            const("pi", ctx)

    @pytest.mark.parametrize("name", ["sqrt5", "golden", "golden_inverse", "e"])
    def test_two_precision_consistency(self, name):
        low, high = PrecisionContext(30), PrecisionContext(50)
        a = const(name, low)
        b = fx_rescale(const(name, high), low.working_digits)
        assert matched_digits(a, b) >= low.target_digits


class TestMatchedDigits:
    def test_last_place(self):
        assert matched_digits(FixedPointValue(12345, 4), FixedPointValue(12346, 4)) == 3

    def test_identical(self):
        assert matched_digits(FixedPointValue(12345, 4), FixedPointValue(12345, 4)) == 4

    def test_far_apart(self):
        assert matched_digits(FixedPointValue(10000, 4), FixedPointValue(90000, 4)) == 0

    def test_scale_mismatch(self):
        with pytest.raises(ContractError):
            matched_digits(FixedPointValue(1, 4), FixedPointValue(1, 5))


ELEMENTARY_CASES = {
    "exp": lambda ctx: fx_exp(parse("1.5", ctx), ctx),
    "exp_negative": lambda ctx: fx_exp(parse("-3.25", ctx), ctx),
    "exp_golden": lambda ctx: fx_exp(const("golden", ctx), ctx),
    "log1m": lambda ctx: fx_log1m(parse("0.3", ctx), ctx),
    "log1m_golden_inverse": lambda ctx: fx_log1m(const("golden_inverse", ctx), ctx),
    "div": lambda ctx: fx_div(from_int(2, ctx), from_int(7, ctx), ctx),
    "sqrt": lambda ctx: fx_sqrt(from_int(5, ctx), ctx),
}


@pytest.mark.slow
@pytest.mark.parametrize("digits", [30, 60])
@pytest.mark.parametrize("case", sorted(ELEMENTARY_CASES))
def test_elementary_functions_agree_across_precisions(case, digits):
    compute = ELEMENTARY_CASES[case]
    low = compute(PrecisionContext(digits))
    high = compute(PrecisionContext(digits + 20))
    assert matched_digits(low, fx_rescale(high, low.scale)) >= digits
