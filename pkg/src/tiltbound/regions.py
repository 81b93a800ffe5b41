"""Interval certification of the multivariate negativity claims.

The symmetric bound reduces to d(u, v, w) < 0 for positive u, v, w, where d
is the symmetrized comparison expression from :mod:`tiltbound.tilted`.  The
proof splits the orthant by how u and v compare with the cap w:

    case 1:  0 < w <= u <= v
    case 2:  0 < u <= w <= v
    case 3:  0 < u <= v <= w   (reduces to case 2 by monotonicity in w)

On each region d loses its minimum operator and becomes an explicit
exp/sinh/cosh formula; the same is true of the auxiliary expressions (partial
derivatives, scaled restrictions, and splittings) used by the case analysis.
This module hard-codes those closed forms in a catalog, bounds their ranges
over boxes with outward-rounded interval arithmetic sharpened by a mean-value
form, and certifies strict negativity by adaptive bisection.

Certification is sound but not complete: d genuinely reaches 0 at u = 0 with
v = w, so boxes touching that edge come back UNDETERMINED with the undecided
sub-boxes as witnesses.  Unbounded tails are out of reach of boxes by nature
and are covered by the monotonicity checks in :func:`verify_case_structure`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .intervals import Dual, Interval, vcosh, vexp, vsinh, vsinh_over
from .tilted import d_expr


class EmptyRegionError(ValueError):
    """Box does not meet the ordering constraints of its case region."""


class CaseRegion(enum.Enum):
    CASE1 = "case1"  # w <= u <= v
    CASE2 = "case2"  # u <= w <= v
    CASE3 = "case3"  # u <= v <= w


_CASE_ORDER: dict[CaseRegion, tuple[tuple[str, str], ...]] = {
    CaseRegion.CASE1: (("w", "u"), ("u", "v")),
    CaseRegion.CASE2: (("u", "w"), ("w", "v")),
    CaseRegion.CASE3: (("u", "v"), ("v", "w")),
}

_AXES = ("u", "v", "w")


@dataclass(frozen=True)
class BoxRegion:
    """Axis-aligned box in (u, v, w) tagged with its case region."""

    u: tuple[float, float]
    v: tuple[float, float]
    w: tuple[float, float]
    case: CaseRegion

    def __post_init__(self):
        for name in _AXES:
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise ValueError(f"invalid {name}-range [{lo}, {hi}]")

    def interval(self, axis: str) -> tuple[float, float]:
        return getattr(self, axis)

    def replace(self, axis: str, bounds: tuple[float, float]) -> "BoxRegion":
        parts = {name: getattr(self, name) for name in _AXES}
        parts[axis] = bounds
        return BoxRegion(case=self.case, **parts)

    def clipped(self, axes: tuple[str, ...] = _AXES) -> Optional["BoxRegion"]:
        """Bounding box of the intersection with the case-order constraints.

        Only constraints speaking about ``axes`` are applied; restricted
        catalog expressions (for example those with v pinned to u or w) use
        the surviving constraint among their own variables.  Returns None
        when the intersection is empty.
        """
        bounds = {name: list(getattr(self, name)) for name in _AXES}
        pairs = [
            (a, b) for a, b in _CASE_ORDER[self.case] if a in axes and b in axes
        ]
        for _ in range(2):  # a <= b chains settle after two sweeps
            for a, b in pairs:
                bounds[b][0] = max(bounds[b][0], bounds[a][0])
                bounds[a][1] = min(bounds[a][1], bounds[b][1])
        for name in axes:
            if bounds[name][0] > bounds[name][1]:
                return None
        return BoxRegion(
            u=tuple(bounds["u"]), v=tuple(bounds["v"]), w=tuple(bounds["w"]), case=self.case
        )

    def widest_axis(self, axes: tuple[str, ...]) -> str:
        return max(axes, key=lambda name: getattr(self, name)[1] - getattr(self, name)[0])

    def split(self, axis: str) -> tuple["BoxRegion", "BoxRegion"]:
        lo, hi = getattr(self, axis)
        mid = 0.5 * (lo + hi)
        return self.replace(axis, (lo, mid)), self.replace(axis, (mid, hi))

    def sort_key(self) -> tuple:
        return (self.u, self.v, self.w)

    def to_dict(self) -> dict:
        return {"u": list(self.u), "v": list(self.v), "w": list(self.w), "case": self.case.value}


# ---------------------------------------------------------------------------
# Expression catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProofExpr:
    """Closed form from the case analysis, generic over the value type.

    ``fn`` accepts floats, Intervals or Duals, in the order given by
    ``variables``.  ``point`` evaluates at floats.
    """

    name: str
    variables: tuple[str, ...]
    case: CaseRegion
    fn: Callable
    description: str

    def point(self, **values: float) -> float:
        return self.fn(*(values[name] for name in self.variables))


def _d_case1(u, v, w):
    f = vsinh_over(w)
    ew = vexp(w)
    return (
        (ew - vexp(-u)) * u
        + (ew - vexp(-v)) * v
        - f * (ew * (u * u + v * v) + vexp(-v) * (u * u) + vexp(-u) * (v * v))
    )


def _dv2_case1(u, v, w):
    return vexp(-v) * (2 - v) - vsinh_over(w) * (vexp(-v) * (u * u) + 2 * vexp(-u) + 2 * vexp(w))


def _dv3_case1(u, v, w):
    return vexp(-v) * (v - 3 + (u * u) * vsinh_over(w))


def _d2_case1(u, w):
    return w * (2 - u) - vsinh(w) * (u * u + 2 + 2 * vexp(u + w))


def _dtilde_case1(u, w):
    return vexp(u + w) * (w / u) * _d_case1(u, u, w)


def _d1_case1(u, w):
    euw = vexp(u + w)
    return w * (euw - 1 + u) - vsinh(w) * (2 * u * euw - u * u + 2 * u)


def _d_case2(u, v, w):
    return (
        2 * u * vsinh(u)
        + v * (vsinh(v) + vsinh(w) + vcosh(w))
        - v * vcosh(v)
        - vsinh_over(w) * ((u * u) * (vexp(-v) + vexp(w)) + 2 * (v * v) * vcosh(u))
    )


def _d1_case2(u, v, w):
    return w * (vexp(v + w) - 1 + v) - vsinh(w) * (4 * v * vexp(v) * vcosh(u) - u * u)


def _dv_d1_at_w_case2(u, w):
    ew = vexp(w)
    return ew * (ew * w - 4 * (w + 1) * vcosh(u) * vsinh(w)) + w


def _d11_case2(u, w):
    return vexp(w) * w * (vsinh(w) + vcosh(w) - 3 * vcosh(u) * vsinh(w)) + (w - 1) * w


def _d12_case2(u, w):
    return (u * u - vexp(w) * w * vcosh(u)) * vsinh(w)


def _d111_case2(w):
    return vexp(w) * w * (vcosh(w) - 2 * vsinh(w)) + (w - 1) * w


def _d112_case2(u, w):
    return -3 * (vcosh(u) - 1) * vexp(w) * w * vsinh(w)


def _d_at_v_eq_w_case2(u, w):
    return 2 * (
        u * vsinh(u) + w * vsinh(w) - vsinh_over(w) * ((u * u) * vcosh(w) + (w * w) * vcosh(u))
    )


CATALOG: dict[str, ProofExpr] = {
    expr.name: expr
    for expr in (
        ProofExpr(
            "d_case1", ("u", "v", "w"), CaseRegion.CASE1, _d_case1,
            "d with both arguments at or above the cap",
        ),
        ProofExpr(
            "dv2_case1", ("u", "v", "w"), CaseRegion.CASE1, _dv2_case1,
            "second v-derivative of d in case 1 (concavity in v)",
        ),
        ProofExpr(
            "dv3_case1", ("u", "v", "w"), CaseRegion.CASE1, _dv3_case1,
            "third v-derivative of d in case 1 (single sign change in v)",
        ),
        ProofExpr(
            "d2_case1", ("u", "w"), CaseRegion.CASE1, _d2_case1,
            "w e^u times the second v-derivative of d at v = u",
        ),
        ProofExpr(
            "dtilde_case1", ("u", "w"), CaseRegion.CASE1, _dtilde_case1,
            "rescaled diagonal restriction e^{u+w} (w/u) d(u, u, w)",
        ),
        ProofExpr(
            "d1_case1", ("u", "w"), CaseRegion.CASE1, _d1_case1,
            "w e^u times the v-slope of d at v = u",
        ),
        ProofExpr(
            "d_case2", ("u", "v", "w"), CaseRegion.CASE2, _d_case2,
            "d with u below and v above the cap",
        ),
        ProofExpr(
            "d1_case2", ("u", "v", "w"), CaseRegion.CASE2, _d1_case2,
            "w e^v times the v-slope of d in case 2",
        ),
        ProofExpr(
            "dv_d1_at_w_case2", ("u", "w"), CaseRegion.CASE2, _dv_d1_at_w_case2,
            "v-slope of d1 at v = w (decreasing in u)",
        ),
        ProofExpr(
            "d11", ("u", "w"), CaseRegion.CASE2, _d11_case2,
            "first part of the split of d1 at v = w",
        ),
        ProofExpr(
            "d12", ("u", "w"), CaseRegion.CASE2, _d12_case2,
            "second part of the split of d1 at v = w",
        ),
        ProofExpr(
            "d111", ("w",), CaseRegion.CASE2, _d111_case2,
            "u-independent part of d11",
        ),
        ProofExpr(
            "d112", ("u", "w"), CaseRegion.CASE2, _d112_case2,
            "u-dependent part of d11 (manifestly nonpositive)",
        ),
        ProofExpr(
            "d_at_v_eq_w_case2", ("u", "w"), CaseRegion.CASE2, _d_at_v_eq_w_case2,
            "d restricted to v = w (vanishes as u -> 0)",
        ),
    )
}


# ---------------------------------------------------------------------------
# Enclosures
# ---------------------------------------------------------------------------


def _enclosure(expr: ProofExpr, box: BoxRegion) -> Interval:
    """Interval evaluation sharpened by derivative information.

    Three rigorous enclosures are intersected: the naive evaluation, the
    mean-value form f(m) + grad(box) . (box - m) (quadratically tight in the
    box width, which rescues the cancellation-heavy expressions near the
    degenerate corner), and a monotonicity contraction: every axis whose
    gradient enclosure has a strict sign is pinned to the face where the
    supremum (respectively infimum) lives before re-evaluating.
    """
    arity = len(expr.variables)
    spans = [box.interval(name) for name in expr.variables]

    duals = [
        Dual.variable(Interval(lo, hi), index, arity)
        for index, (lo, hi) in enumerate(spans)
    ]
    full = expr.fn(*duals)
    naive: Interval = full.val

    mids = [Interval.point(0.5 * (lo + hi)) for lo, hi in spans]
    center = _as_interval(expr.fn(*mids))
    mean_value = center
    for index, (lo, hi) in enumerate(spans):
        mid = 0.5 * (lo + hi)
        offset = Interval(_dnext(lo - mid), _unext(hi - mid))
        mean_value = mean_value + full.grad[index] * offset
    enclosure = naive.intersect(mean_value)

    upper_faces = []
    lower_faces = []
    monotone = False
    for index, (lo, hi) in enumerate(spans):
        grad = full.grad[index]
        if lo < hi and grad.hi < 0.0:
            monotone = True
            upper_faces.append(Interval.point(lo))
            lower_faces.append(Interval.point(hi))
        elif lo < hi and grad.lo > 0.0:
            monotone = True
            upper_faces.append(Interval.point(hi))
            lower_faces.append(Interval.point(lo))
        else:
            upper_faces.append(Interval(lo, hi))
            lower_faces.append(Interval(lo, hi))
    if monotone:
        sup_bound = _as_interval(expr.fn(*upper_faces)).hi
        inf_bound = _as_interval(expr.fn(*lower_faces)).lo
        enclosure = Interval(max(enclosure.lo, inf_bound), min(enclosure.hi, sup_bound))
    return enclosure


def _as_interval(value) -> Interval:
    return value if isinstance(value, Interval) else Interval.point(float(value))


def _dnext(x: float) -> float:
    return math.nextafter(x, -math.inf)


def _unext(x: float) -> float:
    return math.nextafter(x, math.inf)


def eval_interval(
    expr: ProofExpr | str,
    box: BoxRegion,
    within: Interval | None = None,
) -> Interval:
    """Rigorous enclosure of the expression's range over box ∩ case region.

    Raises EmptyRegionError when the box misses its case region entirely.
    If ``within`` is given (an enclosure already known to hold, e.g. from the
    parent box), the result is intersected with it, which keeps enclosures
    nested along a subdivision path.
    """
    if isinstance(expr, str):
        expr = CATALOG[expr]
    clipped = box.clipped(expr.variables)
    if clipped is None:
        raise EmptyRegionError(
            f"box does not intersect the {box.case.value} ordering constraints"
        )
    enclosure = _enclosure(expr, clipped)
    if within is not None:
        enclosure = enclosure.intersect(within)
    return enclosure


@dataclass(frozen=True)
class CertifyResult:
    certified: bool
    undecided: tuple[BoxRegion, ...]
    boxes_evaluated: int
    deepest_level: int

    @property
    def status(self) -> str:
        return "certified" if self.certified else "undetermined"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "boxes_evaluated": self.boxes_evaluated,
            "deepest_level": self.deepest_level,
            "undecided": [b.to_dict() for b in self.undecided],
        }


def certify_negative(
    expr: ProofExpr | str,
    box: BoxRegion,
    max_depth: int = 18,
) -> CertifyResult:
    """Adaptive bisection proof that the expression is negative on the box.

    A sub-box is settled once its enclosure has hi < 0; otherwise its widest
    axis is halved.  ``max_depth`` caps how many times any single axis may be
    halved, so depth d resolves features down to (axis width) / 2^d.  The
    result is sound: ``certified`` means the expression is strictly negative
    everywhere on box ∩ case region.  Undecided boxes are returned in
    canonical order for inspection.
    """
    if isinstance(expr, str):
        expr = CATALOG[expr]
    axes = expr.variables
    root = box.clipped(axes)
    if root is None:
        return CertifyResult(True, (), 0, 0)

    undecided: list[BoxRegion] = []
    evaluated = 0
    deepest = 0
    zero_levels = {axis: 0 for axis in axes}
    stack: list[tuple[BoxRegion, dict[str, int], Interval | None]] = [
        (root, zero_levels, None)
    ]
    while stack:
        current, levels, inherited = stack.pop()
        clipped = current.clipped(axes)
        if clipped is None:
            continue
        enclosure = _enclosure(expr, clipped)
        if inherited is not None:
            enclosure = enclosure.intersect(inherited)
        evaluated += 1
        if enclosure.hi < 0.0:
            continue
        axis = clipped.widest_axis(axes)
        level = levels[axis]
        deepest = max(deepest, level)
        if level >= max_depth:
            undecided.append(clipped)
            continue
        child_levels = dict(levels)
        child_levels[axis] = level + 1
        left, right = clipped.split(axis)
        stack.append((right, child_levels, enclosure))
        stack.append((left, child_levels, enclosure))

    undecided.sort(key=lambda b: b.sort_key())
    return CertifyResult(not undecided, tuple(undecided), evaluated, deepest)


# ---------------------------------------------------------------------------
# Case-structure checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureCheck:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class CaseStructureReport:
    checks: tuple[StructureCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"all_passed": self.all_passed, "checks": [c.to_dict() for c in self.checks]}


def default_box(case: CaseRegion, lo: float = 0.05, hi: float = 8.0) -> BoxRegion:
    return BoxRegion(u=(lo, hi), v=(lo, hi), w=(lo, hi), case=case)


def verify_case_structure(
    lo: float = 0.05,
    hi: float = 8.0,
    max_depth: int = 18,
) -> CaseStructureReport:
    """Certify the structural facts the case analysis rests on.

    (a) concavity of d in v on case 1 (second v-derivative negative);
    (b) d decreasing in v on case 2 (the scaled slope d1 negative);
    (c) case-3 reduction: sinh(w)/w increases while the terms it multiplies
        are positive, so d decreases in w beyond v and the w = v face
        dominates;
    (d) boundary behaviour at v = w: strictly negative for u > 0 and
        vanishing as u -> 0.
    """
    checks: list[StructureCheck] = []

    concavity = certify_negative("dv2_case1", default_box(CaseRegion.CASE1, lo, hi), max_depth)
    checks.append(
        StructureCheck(
            "case1_concavity_in_v",
            concavity.certified,
            f"dv2_case1 < 0 on [{lo}, {hi}]^3 via {concavity.boxes_evaluated} boxes",
        )
    )

    slope = certify_negative("d1_case2", default_box(CaseRegion.CASE2, lo, hi), max_depth)
    checks.append(
        StructureCheck(
            "case2_decreasing_in_v",
            slope.certified,
            f"d1_case2 < 0 on [{lo}, {hi}]^3 via {slope.boxes_evaluated} boxes",
        )
    )

    # (c) sinh(w)/w increasing: forward differences on a grid, then the sign
    # of the multiplied terms, then a direct monotonicity spot check of d.
    grid = [0.1 * k for k in range(1, 101)]
    factor_increasing = all(
        math.sinh(b) / b > math.sinh(a) / a for a, b in zip(grid, grid[1:])
    )
    multiplier = _case3_multiplier_interval(lo, hi)
    spot = _case3_spot_monotone(lo, hi)
    checks.append(
        StructureCheck(
            "case3_decreasing_in_w",
            factor_increasing and multiplier.lo > 0.0 and spot,
            "sinh(w)/w increasing on grid; multiplied term enclosure "
            f"[{multiplier.lo:.6g}, {multiplier.hi:.6g}] stays positive; "
            "d(u, v, .) decreasing on sampled w >= v",
        )
    )

    boundary_box = BoxRegion(u=(lo, hi), v=(lo, hi), w=(lo, hi), case=CaseRegion.CASE2)
    boundary = certify_negative("d_at_v_eq_w_case2", boundary_box, max_depth)
    at_zero = d_expr(0.0, 1.0, 1.0)
    checks.append(
        StructureCheck(
            "boundary_v_eq_w",
            boundary.certified and abs(at_zero) <= 1e-12,
            f"d|_(v=w) < 0 for u in [{lo}, {hi}] via {boundary.boxes_evaluated} boxes; "
            f"d(0, 1, 1) = {at_zero:.3e}",
        )
    )

    return CaseStructureReport(tuple(checks))


def _case3_multiplier_interval(lo: float, hi: float) -> Interval:
    # In case 3 both arguments sit below the cap, so the factor multiplies
    # u^2 cosh(v) + v^2 cosh(u); positivity makes d decreasing in w.
    u = Interval(lo, hi)
    v = Interval(lo, hi)
    return (u * u) * vcosh(v) + (v * v) * vcosh(u)


def _case3_spot_monotone(lo: float, hi: float) -> bool:
    points = [lo, 0.25, 0.5, 1.0, 2.0, min(4.0, hi)]
    for u in points:
        for v in points:
            if not (lo <= u <= v <= hi):
                continue
            previous = None
            for step in range(6):
                w = v + step * 0.5
                value = d_expr(u, v, w)
                if previous is not None and value >= previous:
                    return False
                previous = value
    return True
