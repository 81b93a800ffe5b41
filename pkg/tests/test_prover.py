"""Sign decisions, certificates, replay, and the inequality battery."""

import json
from fractions import Fraction

import mpmath
import pytest

from tiltbound.exppoly import ExpPoly, normalize, parse_expression
from tiltbound.prover import (
    BATTERY,
    CertificateError,
    Outcome,
    Sign,
    SignCertificate,
    base_case_sign,
    boundary_sign_at_zero,
    decide_sign,
    replay,
    verify_battery,
)


def mp_value(p: ExpPoly, w) -> mpmath.mpf:
    """High-precision evaluation of p(w, e^w), independent of ExpPoly.evaluate."""
    w = mpmath.mpf(w)
    t = mpmath.e**w
    total = mpmath.mpf(0)
    for i, k, c in p.terms():
        total += mpmath.mpf(c.numerator) / c.denominator * w**i * t**k
    return total


class TestBoundarySign:
    def test_exp_tail(self):
        # e^w - 1 - w: zero through order 1, positive at order 2
        result = boundary_sign_at_zero(parse_expression("exp(w) - 1 - w"))
        assert result.sign is Sign.POSITIVE
        assert result.order == 2
        assert not result.exhausted

    def test_sinh_tail(self):
        # 2t(sinh w - w) = t^2 - 2wt - 1 behaves like w^3/3 at the origin;
        # series oracle: first nonzero Taylor coefficient sits at order 3.
        result = boundary_sign_at_zero(normalize(parse_expression("sinh(w) - w")))
        assert result.sign is Sign.POSITIVE
        assert result.order == 3

    def test_battery_head_resolves_at_order_one(self):
        p = parse_expression("1 + exp(w)^2*(w + 2*w*exp(w) - exp(w)^2*(1+w))")
        assert p.eval_at_zero() == 0
        result = boundary_sign_at_zero(p)
        assert result.sign is Sign.NEGATIVE
        assert result.order == 1

    def test_exhaustion_reports_zero(self):
        p = parse_expression("exp(w) - 1 - w")
        result = boundary_sign_at_zero(p, max_order=1)
        assert result.sign is Sign.ZERO
        assert result.exhausted

    def test_matches_small_w_sampling(self):
        for text in ("exp(w) - 1 - w", "sinh(w) - w", "1 + w - exp(w)"):
            p = parse_expression(text)
            expected = boundary_sign_at_zero(p).sign
            sampled = mp_value(p, mpmath.mpf(1) / 1000)
            assert (sampled > 0) == (expected is Sign.POSITIVE)


class TestBaseCase:
    def test_linear_positive(self):
        decision = base_case_sign([Fraction(-1), Fraction(1)])  # t - 1
        assert decision.outcome is Outcome.POSITIVE
        assert decision.record.root_count == 0

    def test_golden_ratio_blocks(self):
        decision = base_case_sign([Fraction(1), Fraction(1), Fraction(-1)])  # -t^2 + t + 1
        assert decision.outcome is Outcome.UNDETERMINED
        (lo, hi), = decision.record.isolating_intervals
        golden = (1 + 5 ** 0.5) / 2  # quadratic-formula oracle
        assert float(lo) <= golden <= float(hi)

    def test_cubic_domain_dependence(self):
        coeffs = [Fraction(0), Fraction(-3), Fraction(0), Fraction(1)]  # t^3 - 3t
        assert base_case_sign(coeffs).outcome is Outcome.UNDETERMINED  # root at sqrt 3
        assert base_case_sign(coeffs, Fraction(9, 5)).outcome is Outcome.POSITIVE

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            base_case_sign([])


class TestDecideSign:
    def test_exp_dominates_linear(self):
        decision = decide_sign(parse_expression("exp(w) - 1 - w"))
        assert decision.outcome is Outcome.POSITIVE
        assert decision.certificate is not None

    def test_sinh_dominates_identity(self):
        decision = decide_sign(parse_expression("sinh(w) - w"))
        assert decision.outcome is Outcome.POSITIVE

    def test_battery_head_negative(self):
        decision = decide_sign(parse_expression("1 + exp(w)^2*(w + 2*w*exp(w) - exp(w)^2*(1+w))"))
        assert decision.outcome is Outcome.NEGATIVE

    def test_sign_change_detected_at_base(self):
        decision = decide_sign(parse_expression("exp(w) - 2"))  # root at w = ln 2
        assert decision.outcome is Outcome.UNDETERMINED
        assert "root" in decision.reason

    def test_sign_change_detected_by_boundary(self):
        decision = decide_sign(parse_expression("w - 1"))  # negative then positive
        assert decision.outcome is Outcome.UNDETERMINED
        assert "inconsistent" in decision.reason

    def test_depth_cap(self):
        decision = decide_sign(parse_expression("exp(w) - 1 - w"), max_depth=0)
        assert decision.outcome is Outcome.UNDETERMINED
        assert "max_depth" in decision.reason

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            decide_sign(ExpPoly.zero())

    def test_certified_signs_match_sampling(self):
        # falsifier, not prover: certified claims must survive point sampling
        for text in ("exp(w) - 1 - w", "sinh(w) - w", "3*w - exp(w)^2*(w+2) + 2"):
            decision = decide_sign(parse_expression(text))
            assert decision.outcome is not Outcome.UNDETERMINED
            want_positive = decision.outcome is Outcome.POSITIVE
            p = parse_expression(text)
            for i in range(1, 200):
                value = mp_value(p, mpmath.mpf(i) / 10)
                assert (value > 0) == want_positive


class TestCertificates:
    def test_replay_reproduces_claim(self):
        decision = decide_sign(parse_expression("sinh(w) - w"))
        assert replay(decision.certificate) is decision.outcome

    def test_json_round_trip_then_replay(self):
        decision = decide_sign(
            parse_expression("w*cosh(w) + (w - 4*(2+w))*sinh(w)")
        )
        blob = json.dumps(decision.certificate.to_dict())
        restored = SignCertificate.from_dict(json.loads(blob))
        assert replay(restored) is Outcome.NEGATIVE
        assert restored.to_dict() == decision.certificate.to_dict()

    def test_tampered_chain_rejected(self):
        decision = decide_sign(parse_expression("sinh(w) - w"))
        data = decision.certificate.to_dict()
        data["steps"][1]["terms"][0][2] = "7/1"
        with pytest.raises(CertificateError):
            replay(SignCertificate.from_dict(data))

    def test_tampered_claim_rejected(self):
        decision = decide_sign(parse_expression("sinh(w) - w"))
        data = decision.certificate.to_dict()
        data["claim"] = "negative"
        with pytest.raises(CertificateError):
            replay(SignCertificate.from_dict(data))

    def test_tampered_boundary_rejected(self):
        decision = decide_sign(parse_expression("exp(w) - 1 - w"))
        data = decision.certificate.to_dict()
        data["steps"][0]["boundary_value"] = "-3/1"
        with pytest.raises(CertificateError):
            replay(SignCertificate.from_dict(data))


class TestBattery:
    def test_every_member_certifies_with_expected_sign(self):
        report = verify_battery()
        assert report.all_certified
        for entry in report.entries:
            assert entry.decision.outcome is entry.expected
            assert entry.replay_matches

    def test_members_survive_numeric_sampling(self):
        for name, text, expected, _ in BATTERY:
            p = parse_expression(text)
            want_positive = expected is Outcome.POSITIVE
            for i in range(1, 401):
                value = mp_value(p, mpmath.mpf(i) / 8)  # w up to 50
                assert (value > 0) == want_positive, f"{name} fails at w={i / 8}"

    def test_report_shape(self):
        report = verify_battery()
        data = report.to_dict()
        assert data["all_certified"] is True
        assert len(data["entries"]) == len(BATTERY)
        assert all(e["outcome"] == e["expected"] for e in data["entries"])
