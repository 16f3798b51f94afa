"""Canonical JSON/CSV encoding of probe reports.

Every report serializes to ``{"probe", "space", "params", "rows", "verdict",
"gap", "seed"}``.  Rationals become ``"p/q"`` strings so exact values survive
the round trip; floats are printed with 12 significant digits.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from fractions import Fraction
from typing import Any

from .core import BoundKind, CertifiedInterval, ProbeReport, SpaceHandle, UnsupportedFormat, format_scalar
from .hyperspace import ContinuityReport, Direction
from .probes import CoronaEstimate, WCPReport

FORMATS = ("json", "csv", "svg")
FLOAT_DIGITS = 12


def encode_value(v: Any) -> Any:
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, Fraction):
        return format_scalar(v)
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        if not math.isfinite(v):
            return repr(v)
        return float(f"{v:.{FLOAT_DIGITS}g}")
    if isinstance(v, CertifiedInterval):
        return {
            "lower": encode_value(v.lower),
            "upper": encode_value(v.upper),
            "lower_kind": v.lower_kind.value,
            "upper_kind": v.upper_kind.value,
        }
    if isinstance(v, dict):
        return {str(k): encode_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [encode_value(x) for x in v]
    raise TypeError(f"cannot encode {type(v).__name__}")


def decode_scalar(v: Any) -> Any:
    """Inverse of :func:`encode_value` on a single number."""
    if isinstance(v, str):
        if v in ("inf", "-inf", "nan"):
            return float(v)
        return Fraction(v)
    return v


def decode_interval(obj: dict) -> CertifiedInterval:
    return CertifiedInterval(
        decode_scalar(obj["lower"]),
        decode_scalar(obj["upper"]),
        BoundKind(obj["lower_kind"]),
        BoundKind(obj["upper_kind"]),
    )


def _space(name: str) -> SpaceHandle:
    from .spaces import make_builtin_space

    return make_builtin_space(name)


def _point(space: SpaceHandle | None, p):
    return encode_value(p if space is None else space.encode_point(p))


def to_dict(report, space: SpaceHandle | None = None) -> dict:
    """Canonical dictionary of any report kind.

    ``space`` encodes points; by default the builtin space named in the
    report is used.
    """
    if isinstance(report, ProbeReport):
        body = {
            "probe": report.probe,
            "space": report.space,
            "params": report.params,
            "rows": report.rows,
            "verdict": report.verdict,
            "gap": report.gap,
            "seed": report.seed,
        }
        return encode_value(body)
    space = space or _space(report.space)
    if isinstance(report, WCPReport):
        rows = [
            {
                "k": r["k"],
                "point": _point(space, r["point"]),
                "distance": encode_value(r["distance"]),
                "excess": encode_value(r["excess"]),
                "ball_distance": encode_value(r["ball_distance"]),
            }
            for r in report.rows
        ]
        params = {"family": report.family, "center": _point(space, report.center),
                  "t": encode_value(report.t), "k_max": report.k_max}
        params.update(encode_value(report.params))
        return {"probe": "wcp", "space": report.space, "params": params, "rows": rows,
                "verdict": report.verdict, "gap": encode_value(report.gap), "seed": report.seed}
    if isinstance(report, ContinuityReport):
        rows = [{"eps": encode_value(e), "h": encode_value(h)}
                for e, h in zip(report.eps_schedule, report.h_values)]
        params = {"x": _point(space, report.x), "t": encode_value(report.t),
                  "direction": report.direction.value, "resolution": report.resolution,
                  "threshold": encode_value(report.threshold)}
        params.update(encode_value(report.params))
        return {"probe": "continuity", "space": report.space, "params": params, "rows": rows,
                "verdict": report.verdict, "gap": encode_value(report.witness_gap), "seed": report.seed}
    if isinstance(report, CoronaEstimate):
        rows = []
        for entry in report.per_t:
            for r in entry["ratios"]:
                rows.append({"t": entry["t"], "eps0": entry["eps0"], "eps": r["eps"],
                             "lower": r["lower"], "upper": r["upper"], "upper_kind": r["upper_kind"],
                             "C": entry["C"], "C_lower": entry["C_lower"]})
        params = dict(report.params)
        params.update({"divergence_factor": report.divergence_factor, "divergence_flag": report.divergence_flag,
                       "unbounded_in_eps": report.unbounded_in_eps})
        return encode_value({"probe": "scp_scan", "space": report.space, "params": params, "rows": rows,
                             "verdict": report.verdict, "gap": report.global_C, "seed": report.seed})
    raise TypeError(f"not a report: {type(report).__name__}")


def from_dict(data: dict, space: SpaceHandle | None = None):
    """Rebuild a report object from :func:`to_dict` output."""
    probe = data["probe"]
    if probe not in ("wcp", "continuity", "scp_scan"):
        return ProbeReport(data["probe"], data["space"], data["params"], data["rows"],
                           data["verdict"], data["gap"], data["seed"])
    space = space or _space(data["space"])
    params = dict(data["params"])
    gap = data["gap"]
    gap = None if gap is None else decode_scalar(gap)
    if probe == "wcp":
        rows = [
            {
                "k": r["k"],
                "point": space.decode_point(r["point"]),
                "distance": decode_scalar(r["distance"]),
                "excess": decode_scalar(r["excess"]),
                "ball_distance": decode_interval(r["ball_distance"]),
            }
            for r in data["rows"]
        ]
        return WCPReport(
            space=data["space"], family=params.pop("family"), center=space.decode_point(params.pop("center")),
            t=decode_scalar(params.pop("t")), rows=rows, verdict=data["verdict"], gap=gap,
            k_max=params.pop("k_max"), seed=data["seed"], params=params,
        )
    if probe == "continuity":
        return ContinuityReport(
            space=data["space"], x=space.decode_point(params.pop("x")), t=decode_scalar(params.pop("t")),
            direction=Direction(params.pop("direction")),
            eps_schedule=[decode_scalar(r["eps"]) for r in data["rows"]],
            h_values=[decode_scalar(r["h"]) for r in data["rows"]],
            verdict=data["verdict"], witness_gap=gap, threshold=decode_scalar(params.pop("threshold")),
            resolution=params.pop("resolution"), seed=data["seed"], params=params,
        )
    per_t: list[dict] = []
    for r in data["rows"]:
        t = decode_scalar(r["t"])
        if not per_t or per_t[-1]["t"] != t:
            eps0 = r["eps0"]
            per_t.append({"t": t, "eps0": None if eps0 is None else decode_scalar(eps0),
                          "C": decode_scalar(r["C"]), "C_lower": decode_scalar(r["C_lower"]), "ratios": []})
        per_t[-1]["ratios"].append({"eps": decode_scalar(r["eps"]), "lower": decode_scalar(r["lower"]),
                                    "upper": decode_scalar(r["upper"]), "upper_kind": r["upper_kind"]})
    return CoronaEstimate(
        space=data["space"], per_t=per_t, global_C=gap,
        divergence_flag=params.pop("divergence_flag"), unbounded_in_eps=params.pop("unbounded_in_eps"),
        divergence_factor=decode_scalar(params.pop("divergence_factor")), seed=data["seed"], params=params,
    )


def to_json(report, space: SpaceHandle | None = None) -> bytes:
    return (json.dumps(to_dict(report, space), sort_keys=True, indent=2) + "\n").encode()


def from_json(blob: bytes | str, space: SpaceHandle | None = None):
    return from_dict(json.loads(blob), space)


def _flatten(row: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in row.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict) and v and all(isinstance(x, (str, int, float, bool)) or x is None for x in v.values()):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (dict, list)):
            out[key] = json.dumps(v, sort_keys=True, separators=(",", ":"))
        else:
            out[key] = v
    return out


def to_csv(report, space: SpaceHandle | None = None) -> bytes:
    """One CSV line per report row; nested intervals become dotted columns."""
    rows = [_flatten(r) for r in to_dict(report, space)["rows"]]
    columns: list[str] = []
    for r in rows:
        columns.extend(k for k in r if k not in columns)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue().encode()


def emit_report(report, fmt: str, space: SpaceHandle | None = None) -> bytes:
    if fmt == "json":
        return to_json(report, space)
    if fmt == "csv":
        return to_csv(report, space)
    if fmt == "svg":
        from .plotting import render_svg

        return render_svg(report)
    raise UnsupportedFormat(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
