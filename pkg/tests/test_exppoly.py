"""ExpPoly algebra, the expression grammar, and the normal form."""

import math
from fractions import Fraction

import numpy as np
import pytest

from tiltbound.exppoly import (
    ExpPoly,
    ExprSyntaxError,
    T,
    W,
    derivative,
    normalize,
    parse_expression,
)


def poly(terms):
    return ExpPoly({k: Fraction(v) for k, v in terms.items()})


class TestArithmetic:
    def test_builders(self):
        p = 2 * W + T - 1
        assert p == poly({(1, 0): 2, (0, 1): 1, (0, 0): -1})

    def test_product(self):
        assert W * T == poly({(1, 1): 1})
        assert (W + T) * (W - T) == poly({(2, 0): 1, (0, 2): -1})

    def test_power(self):
        assert (W + 1) ** 2 == poly({(2, 0): 1, (1, 0): 2, (0, 0): 1})
        assert T**0 == ExpPoly.constant(1)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            ExpPoly.constant(0.5)

    def test_eval_at_zero(self):
        p = poly({(0, 0): 1, (0, 2): -1, (1, 3): 7})
        assert p.eval_at_zero() == 0
        assert (p + 3).eval_at_zero() == 3

    def test_evaluate(self):
        p = poly({(1, 1): 1})  # w e^w
        assert p.evaluate(2.0) == pytest.approx(2.0 * math.exp(2.0), rel=1e-15)

    def test_serialization_round_trip(self):
        p = poly({(0, -1): Fraction(-1, 2), (0, 1): Fraction(1, 2), (1, 0): -1})
        assert ExpPoly.from_term_list(p.to_term_list()) == p


class TestNormalize:
    def test_clears_negative_powers_and_scales(self):
        # sinh w - w, times 2t
        raw = poly({(0, 1): Fraction(1, 2), (0, -1): Fraction(-1, 2), (1, 0): -1})
        assert normalize(raw) == poly({(0, 2): 1, (0, 0): -1, (1, 1): -2})

    def test_already_normal(self):
        p = T - 1 - W
        assert normalize(p) == p

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            normalize(ExpPoly.zero())

    def test_strips_common_monomial(self):
        assert normalize(W * T - W * W * T) == poly({(0, 0): 1, (1, 0): -1})

    def test_sign_preserved_on_random_inputs(self, rng):
        for _ in range(100):
            terms = {}
            for _ in range(int(rng.integers(1, 6))):
                i = int(rng.integers(0, 4))
                k = int(rng.integers(-3, 4))
                c = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7)))
                if c:
                    terms[(i, k)] = terms.get((i, k), Fraction(0)) + c
            raw = ExpPoly(terms)
            if raw.is_zero:
                continue
            normal = normalize(raw)
            for w in rng.uniform(0.05, 4.0, size=100):
                a, b = raw.evaluate(float(w)), normal.evaluate(float(w))
                # allow either to be a numerical zero
                if abs(a) > 1e-9 and abs(b) > 1e-9:
                    assert (a > 0) == (b > 0)


class TestDerivative:
    def test_product_rule_monomial(self):
        assert derivative(W * T) == T + W * T

    def test_contract_example(self):
        p = poly({(0, 2): 1, (1, 1): -2, (0, 0): -1})  # t^2 - 2wt - 1
        assert derivative(p) == poly({(0, 2): 2, (0, 1): -2, (1, 1): -2})

    def test_constant(self):
        assert derivative(ExpPoly.constant(5)) == ExpPoly.zero()

    def test_linearity(self, rng):
        for _ in range(20):
            a = poly({(int(rng.integers(0, 3)), int(rng.integers(0, 3))): int(rng.integers(1, 5))})
            b = poly({(int(rng.integers(0, 3)), int(rng.integers(0, 3))): int(rng.integers(1, 5))})
            assert derivative(a + b) == derivative(a) + derivative(b)
            assert derivative(a * b) == derivative(a) * b + a * derivative(b)

    def test_matches_finite_differences(self):
        p = parse_expression("1 + exp(w)^2*(w + 2*w*exp(w) - exp(w)^2*(1+w))")
        dp = derivative(p)
        for w in (0.5, 1.0, 2.0):
            h = 1e-6
            numeric = (p.evaluate(w + h) - p.evaluate(w - h)) / (2 * h)
            assert dp.evaluate(w) == pytest.approx(numeric, rel=1e-6)


class TestParser:
    def test_plain_polynomial(self):
        assert parse_expression("w^2 - 2*w + 1") == poly({(2, 0): 1, (1, 0): -2, (0, 0): 1})

    def test_exponentials(self):
        assert parse_expression("exp(w)") == T
        assert parse_expression("exp(2*w)") == poly({(0, 2): 1})
        assert parse_expression("exp(w)^3") == poly({(0, 3): 1})
        assert parse_expression("exp(0)") == ExpPoly.constant(1)

    def test_hyperbolics(self):
        assert parse_expression("sinh(w)") == poly({(0, 1): Fraction(1, 2), (0, -1): Fraction(-1, 2)})
        assert parse_expression("cosh(w)") == poly({(0, 1): Fraction(1, 2), (0, -1): Fraction(1, 2)})
        assert parse_expression("2*sinh(w)") == poly({(0, 1): 1, (0, -1): -1})

    def test_decimals_are_exact(self):
        assert parse_expression("0.5*w") == poly({(1, 0): Fraction(1, 2)})

    def test_division_by_constant(self):
        assert parse_expression("w/2") == poly({(1, 0): Fraction(1, 2)})

    def test_unary_minus(self):
        assert parse_expression("-w + +w - w") == poly({(1, 0): -1})

    def test_precedence(self):
        assert parse_expression("2*w^2") == poly({(2, 0): 2})
        assert parse_expression("(2*w)^2") == poly({(2, 0): 4})

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "w +",
            "exp(w^2)",  # nonlinear exponent
            "sinh(w/2)",  # non-integer multiple
            "1/w",  # division by a non-constant
            "q + 1",
            "w ^ 1.5",
            "exp(w",
        ],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(ExprSyntaxError):
            parse_expression(text)

    def test_round_trip_against_float_eval(self, rng):
        p = parse_expression("w*cosh(w) + (w - 4*(2+w))*sinh(w)")
        for _ in range(20):
            w = float(rng.uniform(0.1, 3.0))
            direct = w * math.cosh(w) + (w - 4 * (2 + w)) * math.sinh(w)
            assert p.evaluate(w) == pytest.approx(direct, rel=1e-12)
