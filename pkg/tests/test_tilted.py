"""Tilted-capped means: evaluator contracts and the bound's structure."""

import math
from fractions import Fraction

import numpy as np
import pytest

from tiltbound import (
    BoundKind,
    DegenerateDistributionError,
    InvalidDistributionError,
    SymmetricDiscreteDistribution,
    TiltParams,
    bound_factor,
    check_bound,
    d_expr,
    expected_d,
    g_expr,
    tilted_mean,
    winsorize,
)
from tiltbound.tilted import (
    ExpSum,
    symmetrized_moment,
    symmetrized_moment_exact,
    tilted_mean_signed,
    winsorized_moment,
    winsorized_moment_exact,
)

from conftest import random_symmetric_distribution

RADEMACHER = SymmetricDiscreteDistribution([(1.0, 1.0)])
P11 = TiltParams(h=1.0, w=1.0)

# Frozen oracle values, computed by direct summation / reference evaluation
# (see the module docstrings for the formulas).
TANH_1 = 0.7615941559557649
THREE_POINT_MEAN = 0.011688533773022888  # sigma = 0.1, h = w = 1
SINH_1 = 1.1752011936438014
COSH_1 = 1.5430806348152437
D_111 = -2.5529160411188316
D_121 = -10.34472038952272  # matches both the folded-sum and case-1 routes


class TestWinsorize:
    def test_caps_above(self):
        assert winsorize(3.0, 2.0) == 2.0

    def test_passes_below(self):
        assert winsorize(-1.0, 2.0) == -1.0

    def test_boundary(self):
        assert winsorize(2.0, 2.0) == 2.0

    def test_rejects_nonpositive_cap(self):
        with pytest.raises(ValueError):
            winsorize(1.0, 0.0)


class TestTiltParams:
    @pytest.mark.parametrize("h,w", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
    def test_strict_positivity(self, h, w):
        with pytest.raises(ValueError):
            TiltParams(h, w)


class TestDistributionValidation:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(InvalidDistributionError):
            SymmetricDiscreteDistribution([(1.0, 0.5), (2.0, 0.6)])

    def test_weights_nonnegative(self):
        with pytest.raises(InvalidDistributionError):
            SymmetricDiscreteDistribution([(1.0, 1.5), (2.0, -0.5)])

    def test_positions_strictly_increasing(self):
        with pytest.raises(InvalidDistributionError):
            SymmetricDiscreteDistribution([(2.0, 0.5), (1.0, 0.5)])

    def test_positions_nonnegative(self):
        with pytest.raises(InvalidDistributionError):
            SymmetricDiscreteDistribution([(-1.0, 1.0)])

    def test_json_round_trip(self):
        dist = SymmetricDiscreteDistribution([(0.0, 0.4), (1.5, 0.6)])
        again = SymmetricDiscreteDistribution.from_dict(dist.to_dict())
        assert again == dist

    def test_second_moment(self):
        dist = SymmetricDiscreteDistribution([(0.0, 0.75), (0.5, 0.25)])
        assert dist.second_moment() == pytest.approx(0.0625, abs=1e-15)


class TestTiltedMean:
    def test_rademacher(self):
        assert tilted_mean(RADEMACHER, P11) == pytest.approx(TANH_1, abs=1e-15)

    def test_three_point(self):
        dist = SymmetricDiscreteDistribution([(0.0, 0.99), (1.0, 0.01)])
        assert tilted_mean(dist, P11) == pytest.approx(THREE_POINT_MEAN, abs=1e-15)

    def test_vanishes_as_h_drops(self):
        mean = tilted_mean(RADEMACHER, TiltParams(h=1e-9, w=1.0))
        assert abs(mean) < 1e-8

    def test_matches_signed_evaluator(self, rng):
        for _ in range(50):
            dist = random_symmetric_distribution(rng)
            h, w = rng.uniform(0.1, 4.0), rng.uniform(0.1, 4.0)
            p = TiltParams(h, w)
            direct = tilted_mean_signed(dist.signed_atoms(), h, w)
            assert tilted_mean(dist, p) == pytest.approx(direct, rel=1e-14)


class TestBoundFactor:
    def test_symmetric_unit(self):
        assert bound_factor(BoundKind.SYMMETRIC, P11).value == pytest.approx(SINH_1, abs=1e-15)

    def test_zero_mean_unit(self):
        expected = 1.718281828459045
        assert bound_factor(BoundKind.ZERO_MEAN, P11).value == pytest.approx(expected, abs=1e-15)

    def test_scale_relation(self):
        factor = bound_factor(BoundKind.SYMMETRIC, TiltParams(h=2.0, w=0.5)).value
        assert factor == pytest.approx(2.3504023872876028, abs=1e-15)

    def test_symmetric_strictly_smaller(self, rng):
        for _ in range(200):
            p = TiltParams(rng.uniform(0.05, 5.0), rng.uniform(0.05, 5.0))
            sym = bound_factor(BoundKind.SYMMETRIC, p).value
            gen = bound_factor(BoundKind.ZERO_MEAN, p).value
            assert sym < gen

    def test_ratio_approaches_one_half(self):
        ratios = [math.sinh(hw) / math.expm1(hw) for hw in (1.0, 5.0, 10.0, 20.0)]
        assert all(a > b for a, b in zip(ratios, ratios[1:]))
        assert ratios[2] == pytest.approx(0.5, abs=1e-4)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            bound_factor("bogus", P11)


class TestCheckBound:
    def test_rademacher_margin(self):
        report = check_bound(RADEMACHER, P11)
        assert report.margin == pytest.approx(0.4136070376880365, abs=1e-12)
        assert report.holds

    def test_three_point_margin(self):
        dist = SymmetricDiscreteDistribution([(0.0, 0.99), (1.0, 0.01)])
        report = check_bound(dist, P11)
        assert report.margin == pytest.approx(6.347816341512567e-05, abs=1e-12)
        assert report.holds

    def test_point_mass_at_zero_rejected(self):
        with pytest.raises(DegenerateDistributionError):
            check_bound(SymmetricDiscreteDistribution([(0.0, 1.0)]), P11)


class TestGExpr:
    def test_zero_uses_power_convention(self):
        assert g_expr(0, 0.0, 1.0) == 1.0
        assert g_expr(1, 0.0, 1.0) == 0.0

    def test_cosh_value(self):
        assert g_expr(0, 1.0, 1.0) == pytest.approx(COSH_1, abs=1e-15)

    def test_capped_value(self):
        assert g_expr(1, 2.0, 1.0) == pytest.approx(2.5829465452224323, abs=1e-15)

    def test_negative_argument_rejected(self):
        with pytest.raises(ValueError):
            g_expr(0, -1.0, 1.0)

    def test_bad_index_rejected(self):
        with pytest.raises(ValueError):
            g_expr(2, 1.0, 1.0)


class TestDExpr:
    def test_degenerate_zero(self):
        # d vanishes in the u -> 0 limit when v = w
        assert d_expr(0.0, 1.0, 1.0) == pytest.approx(0.0, abs=1e-14)

    def test_diagonal_value(self):
        assert d_expr(1.0, 1.0, 1.0) == pytest.approx(D_111, abs=1e-13)

    def test_case1_value(self):
        assert d_expr(1.0, 2.0, 1.0) == pytest.approx(D_121, abs=1e-12)

    def test_negative_everywhere_sampled(self, rng):
        for _ in range(500):
            u, v, w = rng.uniform(0.01, 6.0, size=3)
            assert d_expr(u, v, w) < 0.0


class TestTheoremInvariants:
    def test_bound_holds_on_random_distributions(self, rng):
        for _ in range(500):
            dist = random_symmetric_distribution(rng)
            p = TiltParams(rng.uniform(0.05, 5.0), rng.uniform(0.05, 5.0))
            report = check_bound(dist, p)
            assert report.mean > 0.0
            assert report.margin > -1e-12

    def test_monotone_in_h(self, rng):
        # Strict increase, asserted with the float-mode slack: once h(x+w) is
        # large the mean saturates at the top atom to the last ulp.
        grid = [0.1 * k for k in range(1, 51)]
        for _ in range(20):
            dist = random_symmetric_distribution(rng)
            w = rng.uniform(0.1, 5.0)
            values = [tilted_mean(dist, TiltParams(h, w)) for h in grid]
            assert all(b > a - 1e-12 for a, b in zip(values, values[1:]))
            assert values[-1] > values[0]

    def test_scale_covariance(self, rng):
        for _ in range(50):
            dist = random_symmetric_distribution(rng)
            h, w = rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0)
            c = rng.uniform(0.3, 3.0)
            base = tilted_mean(dist, TiltParams(h, w))
            scaled = tilted_mean(dist.scaled(c), TiltParams(h / c, c * w))
            assert scaled == pytest.approx(c * base, rel=1e-12)

    def test_expected_d_sign_matches_bound_comparison(self, rng):
        # E d(U, V, w) < 0 iff mean < (sinh w / w) E X^2, by double summation
        for _ in range(100):
            dist = random_symmetric_distribution(rng, max_pairs=5)
            w = rng.uniform(0.2, 4.0)
            p = TiltParams(1.0, w)
            lhs = expected_d(dist, w)
            bound = bound_factor(BoundKind.SYMMETRIC, p).value * dist.second_moment()
            assert (lhs < 0.0) == (tilted_mean(dist, p) < bound)
            assert lhs < 0.0  # and both sides do hold


class TestSymmetrizationIdentity:
    def test_float_agreement(self, rng):
        for _ in range(100):
            dist = random_symmetric_distribution(rng)
            p = TiltParams(rng.uniform(0.1, 4.0), rng.uniform(0.1, 4.0))
            for j in (0, 1):
                a = winsorized_moment(dist, j, p)
                b = symmetrized_moment(dist, j, p)
                assert a == pytest.approx(b, rel=1e-14, abs=1e-14)

    def test_exact_agreement(self, rng):
        # exact rational atoms, exponentials deferred symbolically
        for _ in range(50):
            n = int(rng.integers(1, 5))
            xs = sorted(set(Fraction(int(k), 8) for k in rng.integers(0, 40, size=n)))
            raw = [Fraction(int(k)) for k in rng.integers(1, 9, size=len(xs))]
            total = sum(raw)
            atoms = [(x, q / total) for x, q in zip(xs, raw)]
            h = Fraction(int(rng.integers(1, 5)), 2)
            w = Fraction(int(rng.integers(1, 9)), 4)
            for j in (0, 1):
                assert winsorized_moment_exact(atoms, j, h, w) == symmetrized_moment_exact(
                    atoms, j, h, w
                )

    def test_exact_sum_arithmetic(self):
        a = ExpSum.term(Fraction(1, 2), Fraction(1)) + ExpSum.term(Fraction(1, 2), Fraction(1))
        assert a == ExpSum.term(1, 1)
        assert (a + a.scaled(-1)) == ExpSum()
        assert a.to_float() == pytest.approx(math.e, rel=1e-15)
