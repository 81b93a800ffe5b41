"""Winsorized-tilted means of symmetric discrete distributions.

The central quantity is the mean of X under the exponential tilt applied to
the capped variable min(X, w):

    m(h, w) = E[X e^{h (X ^ w)}] / E[e^{h (X ^ w)}],      h > 0, w > 0,

where ``^`` is the pointwise minimum.  For a symmetric X with second moment
s2 in (0, oo) this mean is strictly between 0 and (sinh(hw)/w) * s2, and the
factor sinh(hw)/w is the smallest possible; for merely zero-mean X the sharp
factor is the larger (e^{hw} - 1)/w.  This module evaluates the mean, the two
factors, and the symmetrized comparison expressions g0, g1 and d used by the
region checker, plus an exact-arithmetic path where exponentials stay
symbolic so that algebraic identities can be tested without rounding.

Distributions are finite and symmetric: a list of (x, p) with x >= 0, where
x > 0 contributes mass p/2 at each of +x and -x, and x = 0 contributes mass p
at zero.  Expectations are finite sums, so no quadrature error enters.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

WEIGHT_TOLERANCE = 1e-12
STRICTNESS_SLACK = 1e-12


class InvalidDistributionError(ValueError):
    """Atom list violates the symmetric-distribution contract."""


class DegenerateDistributionError(ValueError):
    """Second moment is zero, so the bound's hypothesis fails."""


@dataclass(frozen=True)
class TiltParams:
    """Tilt rate h and cap level w, both strictly positive."""

    h: float
    w: float

    def __post_init__(self):
        if not (math.isfinite(self.h) and self.h > 0):
            raise ValueError(f"tilt rate h must be positive and finite, got {self.h}")
        if not (math.isfinite(self.w) and self.w > 0):
            raise ValueError(f"cap level w must be positive and finite, got {self.w}")


class SymmetricDiscreteDistribution:
    """Finite symmetric law given by nonnegative atoms with pair weights."""

    __slots__ = ("_atoms",)

    def __init__(self, atoms: Iterable[tuple[float, float]]):
        atoms = tuple((float(x), float(p)) for x, p in atoms)
        if not atoms:
            raise InvalidDistributionError("at least one atom is required")
        previous = -math.inf
        for x, p in atoms:
            if not math.isfinite(x) or x < 0:
                raise InvalidDistributionError(f"atom positions must be finite and >= 0, got {x}")
            if x <= previous:
                raise InvalidDistributionError("atom positions must be strictly increasing")
            if not math.isfinite(p) or p < 0:
                raise InvalidDistributionError(f"weights must be finite and >= 0, got {p}")
            previous = x
        total = math.fsum(p for _, p in atoms)
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise InvalidDistributionError(f"weights sum to {total!r}, expected 1")
        self._atoms = atoms

    @property
    def atoms(self) -> tuple[tuple[float, float], ...]:
        return self._atoms

    def second_moment(self) -> float:
        return math.fsum(p * x * x for x, p in self._atoms)

    def signed_atoms(self) -> list[tuple[float, float]]:
        """Expand to signed support: (+x, p/2), (-x, p/2), and (0, p)."""
        signed = []
        for x, p in self._atoms:
            if x == 0.0:
                signed.append((0.0, p))
            else:
                signed.append((-x, p / 2))
                signed.append((x, p / 2))
        return signed

    def scaled(self, c: float) -> "SymmetricDiscreteDistribution":
        """Law of c*X for c > 0."""
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return SymmetricDiscreteDistribution((c * x, p) for x, p in self._atoms)

    def to_dict(self) -> dict:
        return {"atoms": [[x, p] for x, p in self._atoms]}

    @classmethod
    def from_dict(cls, data: dict) -> "SymmetricDiscreteDistribution":
        try:
            atoms = data["atoms"]
        except (TypeError, KeyError) as exc:
            raise InvalidDistributionError('expected an object {"atoms": [[x, p], ...]}') from exc
        return cls((x, p) for x, p in atoms)

    @classmethod
    def from_json(cls, text: str) -> "SymmetricDiscreteDistribution":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"SymmetricDiscreteDistribution({list(self._atoms)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricDiscreteDistribution):
            return NotImplemented
        return self._atoms == other._atoms


def winsorize(x: float, w: float) -> float:
    """Cap x at level w from above: min(x, w)."""
    if w <= 0:
        raise ValueError("cap level w must be positive")
    return min(x, w)


def tilted_mean_signed(atoms: Sequence[tuple[float, float]], h: float, w: float) -> float:
    """Tilted mean over an explicit signed support; the evaluation core."""
    num = math.fsum(x * math.exp(h * min(x, w)) * p for x, p in atoms)
    den = math.fsum(math.exp(h * min(x, w)) * p for x, p in atoms)
    return num / den


def winsorized_moment(dist: SymmetricDiscreteDistribution, j: int, p: TiltParams) -> float:
    """E[X^j e^{h (X ^ w)}] over the signed support, j in {0, 1}."""
    if j not in (0, 1):
        raise ValueError("moment order j must be 0 or 1")
    total = 0.0
    for x, mass in dist.signed_atoms():
        value = math.exp(p.h * min(x, p.w)) * mass
        total += value * x if j else value
    return total


def symmetrized_moment(dist: SymmetricDiscreteDistribution, j: int, p: TiltParams) -> float:
    """Same moment computed atom-wise through the folded integrands.

    For x >= 0 the folded integrand is (x^j e^{h(x^w)} + (-x)^j e^{-hx}) / 2,
    with 0^0 = 1.  Agreement with :func:`winsorized_moment` is the
    symmetrization identity used to reduce the bound to the sign of d.
    """
    if j not in (0, 1):
        raise ValueError("moment order j must be 0 or 1")
    total = 0.0
    for x, mass in dist.atoms:
        plus = math.exp(p.h * min(x, p.w))
        minus = math.exp(-p.h * x)
        if j == 0:
            total += mass * 0.5 * (plus + minus)
        else:
            total += mass * 0.5 * (x * plus - x * minus)
    return total


def tilted_mean(dist: SymmetricDiscreteDistribution, p: TiltParams) -> float:
    """The tilted-capped mean m(h, w); denominator is always positive."""
    return winsorized_moment(dist, 1, p) / winsorized_moment(dist, 0, p)


class BoundKind:
    SYMMETRIC = "symmetric"
    ZERO_MEAN = "zero-mean"


@dataclass(frozen=True)
class BoundFactor:
    """Sharp factor c(h, w) with mean < c * E[X^2] over the matching class."""

    kind: str
    value: float


def bound_factor(kind: str, p: TiltParams) -> BoundFactor:
    """sinh(hw)/w for the symmetric class, (e^{hw} - 1)/w for zero-mean."""
    hw = p.h * p.w
    if kind == BoundKind.SYMMETRIC:
        return BoundFactor(kind, math.sinh(hw) / p.w)
    if kind == BoundKind.ZERO_MEAN:
        return BoundFactor(kind, math.expm1(hw) / p.w)
    raise ValueError(f"unknown bound kind {kind!r}")


@dataclass(frozen=True)
class BoundCheck:
    mean: float
    bound: float
    margin: float
    slack: float = STRICTNESS_SLACK

    @property
    def holds(self) -> bool:
        """0 < mean < bound, allowing the configured absolute slack."""
        return self.mean > -self.slack and self.margin > -self.slack

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "bound": self.bound,
            "margin": self.margin,
            "holds": self.holds,
        }


def check_bound(
    dist: SymmetricDiscreteDistribution,
    p: TiltParams,
    slack: float = STRICTNESS_SLACK,
) -> BoundCheck:
    """Evaluate mean, the symmetric-class bound, and their margin.

    Requires E[X^2] > 0; a point mass at zero has no meaningful bound and
    raises DegenerateDistributionError.
    """
    s2 = dist.second_moment()
    if s2 <= 0:
        raise DegenerateDistributionError("second moment must be positive")
    mean = tilted_mean(dist, p)
    bound = bound_factor(BoundKind.SYMMETRIC, p).value * s2
    return BoundCheck(mean=mean, bound=bound, margin=bound - mean, slack=slack)


# ---------------------------------------------------------------------------
# Symmetrized comparison expressions (h = 1 normalization)
# ---------------------------------------------------------------------------


def g_expr(j: int, x: float, w: float) -> float:
    """Folded integrand g_j(x) = (f_j(x) + f_j(-x)) / 2 at tilt rate 1.

    Here f_j(x) = x^j e^{x ^ w} with the convention 0^0 = 1, so
    g0(x) = (e^{x^w} + e^{-x}) / 2 and g1(x) = x (e^{x^w} - e^{-x}) / 2.
    Callers pass x = |X| >= 0; negative x is an input error.
    """
    if j not in (0, 1):
        raise ValueError("index j must be 0 or 1")
    if x < 0:
        raise ValueError("g is defined for nonnegative arguments; pass |x|")
    if w <= 0:
        raise ValueError("cap level w must be positive")
    plus = math.exp(min(x, w))
    minus = math.exp(-x)
    if j == 0:
        return 0.5 * (plus + minus)
    return 0.5 * x * (plus - minus)


def d_expr(u: float, v: float, w: float) -> float:
    """Comparison expression whose negativity implies the symmetric bound.

    d(u, v, w) = 2 [g1(u) + g1(v) - (sinh w / w)(g0(u) v^2 + g0(v) u^2)],
    at tilt rate 1 (general rates reduce to this by rescaling).  Boundary
    inputs u = 0 or v = 0 are allowed and return the continuous limit.
    """
    if u < 0 or v < 0:
        raise ValueError("u and v must be >= 0")
    if w <= 0:
        raise ValueError("cap level w must be positive")
    factor = math.sinh(w) / w
    return 2.0 * (
        g_expr(1, u, w)
        + g_expr(1, v, w)
        - factor * (g_expr(0, u, w) * v * v + g_expr(0, v, w) * u * u)
    )


def expected_d(dist: SymmetricDiscreteDistribution, w: float) -> float:
    """E d(U, V, w) for U, V independent copies of |X|, by double summation."""
    total = 0.0
    for xi, pi in dist.atoms:
        for xj, pj in dist.atoms:
            total += pi * pj * d_expr(xi, xj, w)
    return total


# ---------------------------------------------------------------------------
# Exact path: deferred exponentials
# ---------------------------------------------------------------------------


class ExpSum:
    """Finite sum of c * e^q terms with exact rational c and q.

    Supports just enough arithmetic to state expectation identities exactly:
    addition, scalar multiplication, and equality of normal forms.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        cleaned: dict[Fraction, Fraction] = {}
        if terms:
            for q, c in dict(terms).items():
                q = Fraction(q)
                c = Fraction(c)
                if c:
                    cleaned[q] = cleaned.get(q, Fraction(0)) + c
        self._terms = {q: c for q, c in cleaned.items() if c}

    @classmethod
    def term(cls, coeff, exponent) -> "ExpSum":
        return cls({Fraction(exponent): Fraction(coeff)})

    def __add__(self, other: "ExpSum") -> "ExpSum":
        merged = dict(self._terms)
        for q, c in other._terms.items():
            merged[q] = merged.get(q, Fraction(0)) + c
        return ExpSum(merged)

    def scaled(self, factor) -> "ExpSum":
        factor = Fraction(factor)
        return ExpSum({q: c * factor for q, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpSum):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        parts = [f"{c}*e^({q})" for q, c in sorted(self._terms.items())]
        return "ExpSum(" + (" + ".join(parts) or "0") + ")"

    def to_float(self) -> float:
        return math.fsum(float(c) * math.exp(float(q)) for q, c in self._terms.items())


RationalAtoms = Sequence[tuple[Fraction, Fraction]]


def winsorized_moment_exact(atoms: RationalAtoms, j: int, h, w) -> ExpSum:
    """Exact E[X^j e^{h (X ^ w)}] over the signed support of rational atoms."""
    if j not in (0, 1):
        raise ValueError("moment order j must be 0 or 1")
    h, w = Fraction(h), Fraction(w)
    total = ExpSum()
    for x, mass in atoms:
        x, mass = Fraction(x), Fraction(mass)
        if x == 0:
            if j == 0:
                total = total + ExpSum.term(mass, 0)
            continue
        plus_exponent = h * min(x, w)
        minus_exponent = h * min(-x, w)  # equals -h*x since x > 0
        half = mass / 2
        if j == 0:
            total = total + ExpSum.term(half, plus_exponent) + ExpSum.term(half, minus_exponent)
        else:
            total = total + ExpSum.term(half * x, plus_exponent) + ExpSum.term(
                -half * x, minus_exponent
            )
    return total


def symmetrized_moment_exact(atoms: RationalAtoms, j: int, h, w) -> ExpSum:
    """Exact atom-wise moment through the folded integrands g_j."""
    if j not in (0, 1):
        raise ValueError("moment order j must be 0 or 1")
    h, w = Fraction(h), Fraction(w)
    total = ExpSum()
    for x, mass in atoms:
        x, mass = Fraction(x), Fraction(mass)
        plus_exponent = h * min(x, w)
        minus_exponent = -h * x
        half = Fraction(mass, 2)
        if j == 0:
            total = total + ExpSum.term(half, plus_exponent) + ExpSum.term(half, minus_exponent)
        else:
            total = total + ExpSum.term(half * x, plus_exponent) + ExpSum.term(
                -half * x, minus_exponent
            )
    return total
