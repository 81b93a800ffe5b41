"""Command-line front end.

Subcommands map one-to-one onto the library layers:

    eval          tilted mean of a distribution file at given (h, w)
    bound-check   mean against the symmetric sharp bound, with margin
    prove         sign certificate for an exp-polynomial inequality
    verify-proof  inequality battery + case structure + region certification
    extremal      sharpness scan sup/sigma^2 toward sinh(hw)/w
    report        aggregate JSON of everything above

All reports are deterministic: the same inputs produce byte-identical
output.  Exit status is 0 exactly when every executed check passed;
undecided boxes that touch the genuinely degenerate boundary are expected
and do not fail a run.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .exppoly import ExprSyntaxError, normalize, parse_expression
from .extremal import FamilyKind, FamilySpec, ratio_limit_scan, scan_to_csv, sup_tilted_mean
from .prover import Outcome, decide_sign, verify_battery
from .regions import BoxRegion, CaseRegion, certify_negative, verify_case_structure
from .tilted import (
    BoundKind,
    SymmetricDiscreteDistribution,
    TiltParams,
    bound_factor,
    check_bound,
    tilted_mean,
)

DEFAULT_BOX = (0.05, 8.0)
DEFAULT_DEPTH = 18
DEFAULT_SIGMAS = (0.5, 0.1, 0.01, 0.001)


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "text":
        for key, value in payload.items():
            print(f"{key}: {value}")
    else:
        print(json.dumps(payload, indent=2))


def _load_distribution(path: str) -> SymmetricDiscreteDistribution:
    with open(path, "r", encoding="utf-8") as handle:
        return SymmetricDiscreteDistribution.from_json(handle.read())


def _parse_box(text: str) -> tuple[float, float]:
    try:
        lo_text, hi_text = text.split(":")
        lo, hi = float(lo_text), float(hi_text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected --box lo:hi") from exc
    if not (0 <= lo < hi):
        raise argparse.ArgumentTypeError("box bounds must satisfy 0 <= lo < hi")
    return lo, hi


def _cmd_eval(args) -> int:
    params = TiltParams(args.h, args.w)
    dist = _load_distribution(args.dist)
    _emit({"h": args.h, "w": args.w, "mean": tilted_mean(dist, params)}, args.format)
    return 0


def _cmd_bound_check(args) -> int:
    params = TiltParams(args.h, args.w)
    dist = _load_distribution(args.dist)
    result = check_bound(dist, params)
    payload = {"h": args.h, "w": args.w}
    payload.update(result.to_dict())
    _emit(payload, args.format)
    return 0 if result.holds else 1


def _cmd_prove(args) -> int:
    poly = parse_expression(args.expr)
    decision = decide_sign(normalize(poly), max_depth=args.depth)
    payload = {
        "expression": args.expr,
        "outcome": decision.outcome.value,
        "reason": decision.reason,
        "certificate": decision.certificate.to_dict() if decision.certificate else None,
    }
    _emit(payload, args.format)
    return 0 if decision.outcome is not Outcome.UNDETERMINED else 1


DEGENERATE_MARGIN = 0.05


def _region_reports(box: tuple[float, float], depth: int) -> tuple[list[dict], bool]:
    lo, hi = box
    reports = []
    passed = True
    for name, case in (("d_case1", CaseRegion.CASE1), ("d_case2", CaseRegion.CASE2)):
        region = BoxRegion(u=(lo, hi), v=(lo, hi), w=(lo, hi), case=case)
        result = certify_negative(name, region, max_depth=depth)
        boxes = []
        ok = True
        for b in result.undecided:
            expected = _near_degenerate_curve(b)
            ok = ok and expected
            entry = b.to_dict()
            entry["boundary_expected"] = expected
            boxes.append(entry)
        passed = passed and ok
        reports.append(
            {
                "expression": name,
                "region": region.to_dict(),
                "depth": depth,
                "status": result.status,
                "boxes_evaluated": result.boxes_evaluated,
                "undecided_boxes": boxes,
            }
        )
    return reports, passed


def _near_degenerate_curve(b) -> bool:
    # The comparison expression genuinely reaches zero on the curve u = 0,
    # v = w, so undecided boxes inside the 0.05 margin around it are
    # expected at any depth and do not fail a run.  (A cube touching the
    # origin keeps a wider undecided halo: the expression vanishes to fourth
    # order there, beyond what a fixed margin can excuse; such runs report
    # failure and want either a deeper search or a positive lower bound.)
    return (
        b.u[0] <= DEGENERATE_MARGIN
        and b.v[0] - b.w[1] <= DEGENERATE_MARGIN
        and b.w[0] - b.v[1] <= DEGENERATE_MARGIN
    )


def _cmd_verify_proof(args) -> int:
    battery = verify_battery()
    # structure checks need a positive floor: at u = 0 the boundary
    # expression genuinely reaches zero and nothing certifies
    structure = verify_case_structure(
        lo=max(args.box[0], 0.05), hi=args.box[1], max_depth=args.depth
    )
    regions, regions_ok = _region_reports(args.box, args.depth)
    all_passed = battery.all_certified and structure.all_passed and regions_ok
    payload = {
        "battery": battery.to_dict(),
        "case_structure": structure.to_dict(),
        "regions": regions,
        "all_passed": all_passed,
    }
    _emit(payload, args.format)
    return 0 if all_passed else 1


def _cmd_extremal(args) -> int:
    params = TiltParams(args.h, args.w)
    sigmas = args.sigma if args.sigma else list(DEFAULT_SIGMAS)
    rows = ratio_limit_scan(params, sigmas)
    if args.format == "csv":
        sys.stdout.write(scan_to_csv(rows))
        return 0
    detail_rows = []
    for row, sigma in zip(rows, sigmas):
        entry = row.to_dict()
        found = sup_tilted_mean(
            FamilySpec(FamilyKind.SYMMETRIC, sigma * sigma), params
        )
        entry["argmax_atoms"] = [[x, p] for x, p in found.atoms]
        detail_rows.append(entry)
    _emit({"h": args.h, "w": args.w, "rows": detail_rows}, args.format)
    return 0


def _cmd_report(args) -> int:
    params = TiltParams(args.h, args.w)
    factor_rows = []
    for hw in (1.0, 5.0, 10.0, 20.0):
        probe = TiltParams(hw, 1.0)
        sym = bound_factor(BoundKind.SYMMETRIC, probe).value
        gen = bound_factor(BoundKind.ZERO_MEAN, probe).value
        factor_rows.append({"hw": hw, "ratio": sym / gen})
    battery = verify_battery()
    structure = verify_case_structure(
        lo=max(args.box[0], 0.05), hi=args.box[1], max_depth=args.depth
    )
    regions, regions_ok = _region_reports(args.box, args.depth)
    rows = ratio_limit_scan(params, args.sigma if args.sigma else list(DEFAULT_SIGMAS))
    all_passed = battery.all_certified and structure.all_passed and regions_ok
    payload = {
        "factor_comparison": factor_rows,
        "battery": battery.to_dict(),
        "case_structure": structure.to_dict(),
        "regions": regions,
        "extremal": {"h": args.h, "w": args.w, "rows": [r.to_dict() for r in rows]},
        "all_passed": all_passed,
    }
    _emit(payload, args.format)
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiltbound",
        description="Verification toolkit for sharp bounds on tilted-capped means "
        "of symmetric distributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, dist=False, expr=False, sigmas=False):
        p.add_argument("--h", type=float, default=1.0, help="tilt rate (default 1)")
        p.add_argument("--w", type=float, default=1.0, help="cap level (default 1)")
        p.add_argument(
            "--format", choices=("json", "csv", "text"), default="json", help="output format"
        )
        p.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="bisection depth cap")
        p.add_argument(
            "--box",
            type=_parse_box,
            default=DEFAULT_BOX,
            help="region bounds lo:hi applied to each axis (default 0.05:8)",
        )
        if dist:
            p.add_argument("--dist", required=True, help='distribution JSON {"atoms": [[x, p], ...]}')
        if expr:
            p.add_argument("--expr", required=True, help="expression in w and exp(w)")
        if sigmas:
            p.add_argument(
                "--sigma",
                type=float,
                action="append",
                help="sigma for the scan (repeatable; default 0.5 0.1 0.01 0.001)",
            )

    p_eval = sub.add_parser("eval", help="tilted mean of a distribution")
    add_common(p_eval, dist=True)
    p_eval.set_defaults(func=_cmd_eval)

    p_check = sub.add_parser("bound-check", help="mean against the symmetric bound")
    add_common(p_check, dist=True)
    p_check.set_defaults(func=_cmd_bound_check)

    p_prove = sub.add_parser("prove", help="certify the sign of an expression")
    add_common(p_prove, expr=True)
    p_prove.set_defaults(func=_cmd_prove)

    p_verify = sub.add_parser("verify-proof", help="battery, case structure and regions")
    add_common(p_verify)
    p_verify.set_defaults(func=_cmd_verify_proof)

    p_ext = sub.add_parser("extremal", help="sharpness scan over sigma")
    add_common(p_ext, sigmas=True)
    p_ext.set_defaults(func=_cmd_extremal)

    p_report = sub.add_parser("report", help="aggregate JSON report")
    add_common(p_report, sigmas=True)
    p_report.set_defaults(func=_cmd_report)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, ExprSyntaxError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
