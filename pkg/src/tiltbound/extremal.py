"""Numerical search for the largest tilted-capped mean under moment constraints.

The sharpness side of the bound: over symmetric laws with E[X^2] = s^2 the
supremum of the tilted mean, divided by s^2, climbs to sinh(hw)/w as s drops
to 0, driven by the three-point family supported on {-w, 0, w}.  This module
reproduces that limit numerically and also searches the zero-mean class,
whose corresponding constant is (e^{hw} - 1)/w.

The optimizer is deterministic (coarse grids plus coordinate refinement, no
randomness) so scans are reproducible run to run.  For fixed atom positions
the objective is a ratio of two linear functions of the weights, so over the
weight polytope cut out by the mass and second-moment constraints the optimum
sits at a vertex with at most two active support points; the search therefore
enumerates one- and two-point support families with weights solved exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .tilted import (
    BoundKind,
    SymmetricDiscreteDistribution,
    TiltParams,
    bound_factor,
    tilted_mean_signed,
)


class FamilyKind(enum.Enum):
    SYMMETRIC = "symmetric-second-moment"
    ZERO_MEAN = "zero-mean-second-moment"


@dataclass(frozen=True)
class FamilySpec:
    """Distribution family: fixed second moment, bounded support."""

    kind: FamilyKind
    sigma2: float
    max_atom_pairs: int = 3
    x_max: Optional[float] = None  # defaults to 4w at solve time

    def __post_init__(self):
        if not (math.isfinite(self.sigma2) and self.sigma2 > 0):
            raise ValueError("sigma2 must be positive and finite")
        if self.max_atom_pairs < 1:
            raise ValueError("max_atom_pairs must be at least 1")
        if self.x_max is not None and self.x_max <= 0:
            raise ValueError("x_max must be positive")

    def resolved_x_max(self, p: TiltParams) -> float:
        return self.x_max if self.x_max is not None else 4.0 * p.w


def three_point_extremal(sigma: float, w: float) -> SymmetricDiscreteDistribution:
    """Three-point law on {-w, 0, w} with E[X^2] = sigma^2.

    Pair weight sigma^2 / w^2 splits evenly over +-w; the rest sits at zero.
    Requires 0 < sigma < w so the zero mass stays positive.
    """
    if not (0 < sigma < w):
        raise ValueError("three-point family needs 0 < sigma < w")
    pair = sigma * sigma / (w * w)
    return SymmetricDiscreteDistribution([(0.0, 1.0 - pair), (w, pair)])


# -- candidate constructors (weights solved from the constraints) -----------


def single_pair_distribution(x: float, sigma2: float) -> SymmetricDiscreteDistribution:
    """Symmetric law on {-x, 0, x} with E[X^2] = sigma2; needs x^2 >= sigma2."""
    pair = sigma2 / (x * x)
    if pair > 1.0 + 1e-15:
        raise ValueError("atom too close to zero for the requested moment")
    pair = min(pair, 1.0)
    if pair == 1.0:
        return SymmetricDiscreteDistribution([(x, 1.0)])
    return SymmetricDiscreteDistribution([(0.0, 1.0 - pair), (x, pair)])


def two_pair_distribution(x_low: float, x_high: float, sigma2: float) -> SymmetricDiscreteDistribution:
    """Symmetric law on {+-x_low, +-x_high} with full mass and E[X^2] = sigma2.

    Feasible when x_low^2 <= sigma2 <= x_high^2 (with x_low < x_high); the two
    pair weights are then determined.
    """
    low2, high2 = x_low * x_low, x_high * x_high
    if not (x_low < x_high and low2 <= sigma2 <= high2):
        raise ValueError("infeasible two-pair configuration")
    q_high = (sigma2 - low2) / (high2 - low2)
    q_low = 1.0 - q_high
    atoms = []
    if q_low > 0:
        atoms.append((x_low, q_low))
    if q_high > 0:
        atoms.append((x_high, q_high))
    return SymmetricDiscreteDistribution(atoms)


def zero_mean_three_atom(
    x_pos: float, x_neg: float, sigma2: float
) -> list[tuple[float, float]]:
    """Zero-mean signed atoms {x_pos, -x_neg, 0} with E[X^2] = sigma2.

    Solving E X = 0 and E X^2 = sigma2 gives the two outer weights; the
    remainder sits at zero and must be nonnegative, i.e. x_pos * x_neg >=
    sigma2.
    """
    if x_pos <= 0 or x_neg <= 0:
        raise ValueError("support points must be positive")
    q_pos = sigma2 / (x_pos * (x_pos + x_neg))
    q_neg = sigma2 / (x_neg * (x_pos + x_neg))
    q_zero = 1.0 - q_pos - q_neg
    if q_zero < -1e-12:
        raise ValueError("infeasible: support too close to zero for the moment")
    atoms = [(-x_neg, q_neg), (x_pos, q_pos)]
    if q_zero > 0:
        atoms.append((0.0, q_zero))
    return atoms


# -- deterministic refinement ------------------------------------------------


def _refine_scalar(
    objective: Callable[[float], float],
    lo: float,
    hi: float,
    extra: Sequence[float] = (),
    points: int = 129,
    rounds: int = 4,
) -> tuple[float, float]:
    """Grid search with shrinking windows; returns (best_x, best_value)."""
    best_x, best_val = lo, -math.inf
    candidates = [lo + (hi - lo) * i / (points - 1) for i in range(points)]
    candidates.extend(x for x in extra if lo <= x <= hi)
    for x in candidates:
        val = objective(x)
        if val > best_val:
            best_x, best_val = x, val
    span = (hi - lo) / (points - 1)
    for _ in range(rounds):
        window_lo = max(lo, best_x - span)
        window_hi = min(hi, best_x + span)
        for i in range(points):
            x = window_lo + (window_hi - window_lo) * i / (points - 1)
            val = objective(x)
            if val > best_val:
                best_x, best_val = x, val
        span = (window_hi - window_lo) / (points - 1)
    return best_x, best_val


@dataclass(frozen=True)
class SupSearchResult:
    value: float
    atoms: tuple[tuple[float, float], ...]  # signed support
    distribution: Optional[SymmetricDiscreteDistribution]
    family: FamilyKind

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "family": self.family.value,
            "atoms": [[x, p] for x, p in self.atoms],
        }


def sup_tilted_mean(spec: FamilySpec, p: TiltParams) -> SupSearchResult:
    """Best tilted mean found in the family; a lower bound on the true sup."""
    if spec.kind is FamilyKind.SYMMETRIC:
        return _sup_symmetric(spec, p)
    return _sup_zero_mean(spec, p)


def _sup_symmetric(spec: FamilySpec, p: TiltParams) -> SupSearchResult:
    sigma2 = spec.sigma2
    sigma = math.sqrt(sigma2)
    x_max = spec.resolved_x_max(p)
    if sigma > x_max:
        raise ValueError("infeasible: sigma exceeds the atom range")

    def single_value(x: float) -> float:
        if x <= 0 or x * x < sigma2:
            return -math.inf
        dist = single_pair_distribution(x, sigma2)
        return tilted_mean_signed(dist.signed_atoms(), p.h, p.w)

    extras = [x for x in (p.w, sigma) if sigma <= x <= x_max]
    best_x, best_val = _refine_scalar(single_value, sigma, x_max, extra=extras)
    best_dist = single_pair_distribution(best_x, sigma2)

    if spec.max_atom_pairs >= 2 and sigma > 1e-9:

        def pair_value(x_low: float, x_high: float) -> float:
            if not (0 < x_low < x_high) or not (x_low**2 <= sigma2 <= x_high**2):
                return -math.inf
            dist = two_pair_distribution(x_low, x_high, sigma2)
            return tilted_mean_signed(dist.signed_atoms(), p.h, p.w)

        grid_n = 33
        lows = [sigma * i / grid_n for i in range(1, grid_n + 1)]
        highs = [sigma + (x_max - sigma) * i / (grid_n - 1) for i in range(grid_n)]
        best_lo, best_hi, best_two = lows[0], highs[-1], -math.inf
        for xl in lows:
            for xh in highs:
                val = pair_value(xl, xh)
                if val > best_two:
                    best_lo, best_hi, best_two = xl, xh, val
        for _ in range(3):  # coordinate refinement
            best_lo, best_two = _refine_scalar(
                lambda x: pair_value(x, best_hi), sigma / grid_n, sigma, points=65, rounds=2
            )
            best_hi, best_two = _refine_scalar(
                lambda x: pair_value(best_lo, x), sigma, x_max, extra=[p.w], points=65, rounds=2
            )
        if best_two > best_val:
            best_val = best_two
            best_dist = two_pair_distribution(best_lo, best_hi, sigma2)

    return SupSearchResult(
        value=best_val,
        atoms=tuple(best_dist.signed_atoms()),
        distribution=best_dist,
        family=FamilyKind.SYMMETRIC,
    )


def _sup_zero_mean(spec: FamilySpec, p: TiltParams) -> SupSearchResult:
    sigma2 = spec.sigma2
    x_max = spec.resolved_x_max(p)
    if sigma2 > x_max * x_max:
        raise ValueError("infeasible: sigma exceeds the atom range")

    def value(x_pos: float, x_neg: float) -> float:
        if x_pos <= 0 or x_neg <= 0 or x_pos * x_neg < sigma2 * (1 - 1e-14):
            return -math.inf
        atoms = zero_mean_three_atom(x_pos, x_neg, sigma2)
        return tilted_mean_signed(atoms, p.h, p.w)

    # x_neg spans many orders of magnitude (the extremal shape pushes it to
    # its feasibility floor sigma2 / x_pos), so scan it on a log scale.
    def neg_grid(x_pos: float, n: int = 65) -> list[float]:
        floor = sigma2 / x_pos
        if floor >= x_max:
            return []
        ratio = x_max / floor
        return [floor * ratio ** (i / (n - 1)) for i in range(n)]

    pos_points = [sigma2 / x_max + (x_max - sigma2 / x_max) * i / 64 for i in range(65)]
    if sigma2 / x_max <= p.w <= x_max:
        pos_points.append(p.w)
    best = (-math.inf, x_max, x_max)
    for xp in pos_points:
        for xn in neg_grid(xp):
            val = value(xp, xn)
            if val > best[0]:
                best = (val, xp, xn)
    _, best_pos, best_neg = best
    for _ in range(3):
        best_pos, _ = _refine_scalar(
            lambda x: value(x, best_neg), sigma2 / x_max, x_max, extra=[p.w], points=65, rounds=2
        )
        floor = sigma2 / best_pos
        best_neg, best_value = _refine_scalar(
            lambda x: value(best_pos, x), floor, x_max, extra=[floor], points=65, rounds=2
        )
    atoms = tuple(zero_mean_three_atom(best_pos, best_neg, sigma2))
    return SupSearchResult(
        value=best_value,
        atoms=atoms,
        distribution=None,
        family=FamilyKind.ZERO_MEAN,
    )


# -- sharpness scan ----------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    sigma: float
    sup: float
    ratio: float
    bound_factor: float
    gap: float

    def to_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "sup": self.sup,
            "ratio": self.ratio,
            "bound_factor": self.bound_factor,
            "gap": self.gap,
        }


def ratio_limit_scan(
    p: TiltParams,
    sigmas: Sequence[float],
    max_atom_pairs: int = 3,
) -> list[ScanRow]:
    """sup / sigma^2 for each sigma; the ratios climb toward sinh(hw)/w.

    Each ratio stays strictly below the bound factor (the bound is strict for
    every positive sigma); the gap column is the remaining distance.
    """
    factor = bound_factor(BoundKind.SYMMETRIC, p).value
    rows = []
    for sigma in sigmas:
        if not (0 < sigma < p.w):
            raise ValueError("scan requires 0 < sigma < w")
        spec = FamilySpec(FamilyKind.SYMMETRIC, sigma * sigma, max_atom_pairs=max_atom_pairs)
        found = sup_tilted_mean(spec, p)
        ratio = found.value / (sigma * sigma)
        rows.append(
            ScanRow(
                sigma=sigma,
                sup=found.value,
                ratio=ratio,
                bound_factor=factor,
                gap=factor - ratio,
            )
        )
    return rows


def scan_to_csv(rows: Sequence[ScanRow]) -> str:
    lines = ["sigma,sup,ratio,bound_factor,gap"]
    for row in rows:
        lines.append(
            f"{row.sigma!r},{row.sup!r},{row.ratio!r},{row.bound_factor!r},{row.gap!r}"
        )
    return "\n".join(lines) + "\n"
