"""Single-series SVG figures of probe reports.

The plotted line carries ``gid="series"`` so tests (and readers of the SVG)
can find its markers.  Output is byte-stable: fixed hash salt, no date.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

from matplotlib.backends.backend_svg import FigureCanvasSVG  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from .core import UnsupportedFormat  # noqa: E402
from .hyperspace import ContinuityReport  # noqa: E402
from .probes import CoronaEstimate, WCPReport  # noqa: E402

SERIES_ID = "series"


@dataclass
class Series:
    xs: list[float]
    ys: list[float]
    xlabel: str
    ylabel: str
    title: str
    logx: bool = False


def series_of(report) -> Series | None:
    if isinstance(report, ContinuityReport):
        return Series(
            [float(e) for e in report.eps_schedule],
            [float(h) for h in report.h_values],
            "eps",
            f"H(B(x, t), B(x, t {'+' if report.direction.value == 'RIGHT' else '-'} eps))",
            f"{report.space}: ball map at t = {report.t} ({report.direction.value.lower()})",
            logx=True,
        )
    if isinstance(report, CoronaEstimate):
        return Series(
            [float(row["t"]) for row in report.per_t],
            [float(row["C"]) for row in report.per_t],
            "t",
            "C(t)",
            f"{report.space}: corona constant per radius",
        )
    if isinstance(report, WCPReport):
        return Series(
            [r["k"] for r in report.rows],
            [float(r["ball_distance"].lower) for r in report.rows],
            "k",
            "certified lower bound of d(y_k, B(x, t))",
            f"{report.space}: family {report.family}",
        )
    return None


def render_svg(report) -> bytes:
    series = series_of(report)
    if series is None:
        raise UnsupportedFormat(f"{type(report).__name__} has no scalar series to plot")
    with matplotlib.rc_context({"svg.hashsalt": "corona-lab", "svg.fonttype": "path"}):
        fig = Figure(figsize=(6, 4))
        FigureCanvasSVG(fig)
        ax = fig.add_subplot()
        ax.plot(series.xs, series.ys, marker="o", linestyle="-", gid=SERIES_ID)
        if series.logx:
            ax.set_xscale("log")
        ax.set_xlabel(series.xlabel)
        ax.set_ylabel(series.ylabel)
        ax.set_title(series.title, fontsize=9)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        buf = io.BytesIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def write_svg(report, path) -> None:
    with open(path, "wb") as fh:
        fh.write(render_svg(report))
