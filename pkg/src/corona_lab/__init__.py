"""Falsification probes for corona properties of metric spaces and the
continuity and Lipschitz behaviour of their ball maps."""

from .core import (
    BoundKind,
    CertifiedInterval,
    CoronaLabError,
    ProbeReport,
    SpaceHandle,
    ball_distance,
    check_metric_axioms,
    distance,
    in_closed_ball,
    parse_scalar,
)
from .hyperspace import continuity_probe, hausdorff, lipschitz_estimate, sample_closed_ball
from .probes import corona_ratio, scp_scan, theorem2_crosscheck, wcp_probe
from .report import emit_report
from .spaces import SPACE_NAMES, make_builtin_space, space_from_spec

__all__ = [
    "BoundKind",
    "CertifiedInterval",
    "CoronaLabError",
    "ProbeReport",
    "SpaceHandle",
    "SPACE_NAMES",
    "ball_distance",
    "check_metric_axioms",
    "continuity_probe",
    "corona_ratio",
    "distance",
    "emit_report",
    "hausdorff",
    "in_closed_ball",
    "lipschitz_estimate",
    "make_builtin_space",
    "parse_scalar",
    "sample_closed_ball",
    "scp_scan",
    "space_from_spec",
    "theorem2_crosscheck",
    "wcp_probe",
]
