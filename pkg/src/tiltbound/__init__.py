"""Verification toolkit for sharp bounds on tilted-capped means.

Layers:

* :mod:`tiltbound.tilted` evaluates tilted-capped means of finite symmetric
  distributions, the sharp bound factors, and the symmetrized comparison
  expressions.
* :mod:`tiltbound.prover` certifies one-variable exp-polynomial inequalities
  with exact, replayable certificates.
* :mod:`tiltbound.regions` certifies the multivariate negativity claims on
  bounded boxes with outward-rounded interval arithmetic.
* :mod:`tiltbound.extremal` searches constrained distribution families to
  reproduce the sharpness of the bound factor.
* :mod:`tiltbound.cli` ties everything into reproducible reports.
"""

from .exppoly import ExpPoly, derivative, normalize, parse_expression
from .extremal import (
    FamilyKind,
    FamilySpec,
    ScanRow,
    ratio_limit_scan,
    scan_to_csv,
    sup_tilted_mean,
    three_point_extremal,
)
from .intervals import Interval
from .prover import (
    BatteryReport,
    Outcome,
    Sign,
    SignCertificate,
    SignDecision,
    base_case_sign,
    boundary_sign_at_zero,
    decide_sign,
    replay,
    verify_battery,
)
from .regions import (
    CATALOG,
    BoxRegion,
    CaseRegion,
    CertifyResult,
    EmptyRegionError,
    certify_negative,
    eval_interval,
    verify_case_structure,
)
from .tilted import (
    BoundCheck,
    BoundFactor,
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
    tilted_mean_signed,
    winsorize,
)

__version__ = "0.1.0"

__all__ = [
    "BatteryReport",
    "BoundCheck",
    "BoundFactor",
    "BoundKind",
    "BoxRegion",
    "CATALOG",
    "CaseRegion",
    "CertifyResult",
    "DegenerateDistributionError",
    "EmptyRegionError",
    "ExpPoly",
    "FamilyKind",
    "FamilySpec",
    "Interval",
    "InvalidDistributionError",
    "Outcome",
    "ScanRow",
    "Sign",
    "SignCertificate",
    "SignDecision",
    "SymmetricDiscreteDistribution",
    "TiltParams",
    "base_case_sign",
    "bound_factor",
    "boundary_sign_at_zero",
    "certify_negative",
    "check_bound",
    "d_expr",
    "decide_sign",
    "derivative",
    "eval_interval",
    "expected_d",
    "g_expr",
    "normalize",
    "parse_expression",
    "ratio_limit_scan",
    "replay",
    "scan_to_csv",
    "sup_tilted_mean",
    "three_point_extremal",
    "tilted_mean",
    "tilted_mean_signed",
    "verify_battery",
    "verify_case_structure",
    "winsorize",
]
