"""Bundled reproductions of the worked examples, one function per claim.

Each returns a :class:`ProbeReport` whose rows are ``{check, expected,
observed, ok}``.  The verdict is the headline outcome of the bundle, or
``FAIL`` when any check disagrees with its expected value.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .core import ProbeReport, ball_distance, parse_scalar
from .hyperspace import CONTINUOUS, DISCONTINUOUS, continuity_probe, sample_closed_ball
from .probes import (
    BOUND_VERIFIED,
    FAIL,
    NO_VIOLATION,
    PASS,
    VIOLATION,
    corona_ratio,
    random_pairs,
    scp_scan,
    theorem2_crosscheck,
    wcp_probe,
)
from .spaces import make_builtin_space
from .spaces.line import ball_interval
from .spaces.plfunc import PLFunction
from .spaces.seminorm import (
    ConstructionError,
    SeminormMetricConfig,
    ball_profile,
    m_envelope,
    project_into_ball,
    random_pl_function,
    scale_into_ball,
    seminorm_distance,
)
from .spaces.sequence import SparseSeq, allocate_budget, sequence_distance

PLANAR_CHECK_TOL = 1e-6
# the dense-grid oracle is slow, so it is run on a few rows only
DENSE_CHECK_KS = (1, 2, 5, 10, 50)


def _row(check: str, expected, observed, ok: bool | None = None) -> dict:
    return {"check": check, "expected": expected, "observed": observed,
            "ok": bool(expected == observed) if ok is None else bool(ok)}


def _report(name: str, space: str, params: dict, rows: list, headline: str, gap, seed: int) -> ProbeReport:
    verdict = headline if all(r["ok"] for r in rows) else FAIL
    return ProbeReport(f"repro_{name}", space, params, rows, verdict, gap, seed)


def repro_theorem6(k_max: int = 100, seed: int = 0) -> ProbeReport:
    """Spikes ``(2/k) delta_k`` in the Phi-sequence space: exact distances
    ``1 + 1/k``, nearest ball points ``(1/k) delta_k`` at distance 1."""
    space = make_builtin_space("phi_sequence")
    zero = SparseSeq()
    rows = []
    for k in range(1, k_max + 1):
        y = SparseSeq.spike(k, Fraction(2, k))
        rows.append(_row(f"distance(0, y_{k})", 1 + Fraction(1, k), sequence_distance(zero, y)))
        nearest, value = allocate_budget(y, 1)
        rows.append(_row(
            f"nearest point of B(0, 1) to y_{k}",
            {"point": SparseSeq.spike(k, Fraction(1, k)).encode(), "distance": Fraction(1)},
            {"point": nearest.encode(), "distance": value},
        ))
    report = wcp_probe(space, "spike", k_max, seed)
    rows.append(_row("wcp verdict", VIOLATION, report.verdict))
    rows.append(_row("wcp gap", Fraction(1), report.gap))
    return _report("theorem6", space.name, {"k_max": k_max}, rows, report.verdict, report.gap, seed)


def repro_example1(labels: int = 5, seed: int = 0) -> ProbeReport:
    """Discrete metric: zero corona ratios below ``1 - t``, a jump of the ball map at ``t = 1``."""
    space = make_builtin_space("discrete", {"labels": labels})
    rows = []
    for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        for eps in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
            if eps >= 1 - t:
                continue
            r = corona_ratio(space, 0, t, eps, seed=seed)
            rows.append(_row(f"corona ratio t={t} eps={eps}", {"lower": 0, "upper": 0},
                             {"lower": r.lower, "upper": r.upper}))
    left = continuity_probe(space, 0, 1, "left", seed=seed)
    right = continuity_probe(space, 0, 1, "right", seed=seed)
    rows.append(_row("left continuity at t=1", DISCONTINUOUS, left.verdict))
    rows.append(_row("left gap at t=1", Fraction(1), left.witness_gap))
    rows.append(_row("right continuity at t=1", CONTINUOUS, right.verdict))
    return _report("example1", space.name, {"labels": labels}, rows, DISCONTINUOUS, left.witness_gap, seed)


def repro_example2(seed: int = 0) -> ProbeReport:
    """Bounded remetrization of the line: interval balls, whole-line balls for
    ``t >= 1``, and corona constants blowing up as ``t -> 1``."""
    space = make_builtin_space("bounded_line")
    rows = []
    for x in (Fraction(0), Fraction(3, 2)):
        for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10)):
            sample = sample_closed_ball(space, x, t, 16, seed)
            half = t / (1 - t)
            rows.append(_row(f"ball extremes x={x} t={t}", [x - half, x + half], [min(sample), max(sample)]))
        for t in (Fraction(1), Fraction(3, 2)):
            far = x + 10**6
            rows.append(_row(f"whole-line ball x={x} t={t}", {"interval": None, "far_distance": 0},
                             {"interval": ball_interval(x, t), "far_distance": ball_distance(space, x, t, far).upper}))
    eps = Fraction(1, 10000)
    est = scp_scan(space, [Fraction(1, 2), Fraction(9, 10), Fraction(99, 100)], [eps], seed=seed)
    per_t = est.per_t_C
    ratio = per_t[Fraction(99, 100)] / per_t[Fraction(9, 10)]
    rows.append(_row("C(99/100) / C(9/10) >= 50", ">= 50", ratio, ratio >= 50))
    rows.append(_row("divergence flag", True, est.divergence_flag))
    return _report("example2", space.name, {"eps": eps}, rows, VIOLATION, est.global_C, seed)


def repro_theorem7(c="harmonic", t="3/10", eps=None, trials: int = 20, seed: int = 0) -> ProbeReport:
    """Projection into seminorm balls: for random ``f`` in ``B(0, t + eps)`` the
    constructed ``g`` lies in ``B(0, t)`` with ``sup |f - g| <= M(t, eps)`` and
    ``d(f, g) <= c_0 M / (1 + M)``."""
    config = SeminormMetricConfig.from_params({"c": c})
    t = parse_scalar(t)
    eps_list = [parse_scalar(eps)] if eps is not None else [Fraction(1, 64), Fraction(1, 128), Fraction(1, 256)]
    prof = ball_profile(config, t)
    rows = [_row("ball profile", None, {"active": list(prof.active), "eps0": prof.eps0}, True)]
    rng = random.Random(seed)
    zero = PLFunction.constant(0)
    bounds = []
    for e in eps_list:
        M = m_envelope(config, t, e)
        bound = config.c_first * M / (1 + M)
        bounds.append(bound)
        worst_sup = worst_dist = Fraction(0)
        in_ball = True
        built = True
        for _ in range(trials):
            f = scale_into_ball(config, random_pl_function(rng) * 64, t + e)
            try:
                g = project_into_ball(config, f, t)
            except ConstructionError:
                built = False
                continue
            in_ball = in_ball and seminorm_distance(config, g, zero) <= t
            worst_sup = max(worst_sup, (f - g).sup_norm())
            worst_dist = max(worst_dist, seminorm_distance(config, f, g))
        rows.append(_row(f"eps={e}: projections constructed", True, built))
        rows.append(_row(f"eps={e}: g in B(0, t)", True, in_ball))
        rows.append(_row(f"eps={e}: max sup|f - g| <= M", M, worst_sup, worst_sup <= M))
        rows.append(_row(f"eps={e}: max d(f, g) <= c0 M/(1+M)", bound, worst_dist, worst_dist <= bound))
    if len(bounds) > 1:
        ordered = sorted(zip(eps_list, bounds), reverse=True)
        dec = all(b2 < b1 for (_, b1), (_, b2) in zip(ordered, ordered[1:]))
        rows.append(_row("bounds decrease with eps", True, dec))
    params = {"c": config.c.describe(), "t": t, "eps": eps_list, "trials": trials}
    return _report("theorem7", "seminorm_function", params, rows, BOUND_VERIFIED, max(bounds), seed)


def repro_x1(k_max: int = 50, seed: int = 0) -> ProbeReport:
    """Open punctured plane: tangent spikes stay at distance about 1 from ``B(0, 1)``."""
    space = make_builtin_space("punctured_plane_x1")
    report = wcp_probe(space, "tangent_spike", k_max, seed)
    rows = []
    for r in report.rows:
        k, y, bd = r["k"], r["point"], r["ball_distance"]
        oracle = 1 + 1 / k
        rows.append(_row(f"ball distance k={k}", oracle, bd.lower, abs(bd.lower - oracle) <= PLANAR_CHECK_TOL))
        if k not in DENSE_CHECK_KS:
            continue
        dense, spacing = space.dense_lower_bound((0.0, 0.0), 1.0, y, rings=200)
        rows.append(_row(f"dense-grid check k={k}", [dense - spacing, dense], bd.lower,
                         dense - spacing - PLANAR_CHECK_TOL <= bd.lower <= dense + PLANAR_CHECK_TOL))
    rows.append(_row("wcp verdict", VIOLATION, report.verdict))
    rows.append(_row("wcp gap >= 0.99", ">= 0.99", report.gap, report.gap >= 0.99))
    return _report("x1", space.name, {"k_max": k_max}, rows, report.verdict, report.gap, seed)


def repro_x2(k_max: int = 50, seed: int = 0) -> ProbeReport:
    """Closed punctured plane: no weak corona violation, but the ball map
    jumps from the left at ``t = 1``."""
    space = make_builtin_space("closed_punctured_x2")
    report = wcp_probe(space, "tangent_spike", k_max, seed)
    rows = []
    for r in report.rows:
        k, bd = r["k"], r["ball_distance"]
        rows.append(_row(f"ball distance k={k} <= 1/k", 1 / k, bd.upper, bd.upper <= 1 / k + PLANAR_CHECK_TOL))
    rows.append(_row("wcp verdict", NO_VIOLATION, report.verdict))
    left = continuity_probe(space, (0.0, 0.0), 1.0, "left", seed=seed)
    gap = left.witness_gap or 0.0
    rows.append(_row("left continuity at t=1", DISCONTINUOUS, left.verdict))
    rows.append(_row("left gap >= 1 - 1e-6", ">= 1 - 1e-6", gap, gap >= 1 - PLANAR_CHECK_TOL))
    return _report("x2", space.name, {"k_max": k_max}, rows, left.verdict, gap, seed)


def repro_theorem2(pairs: int = 200, seed: int = 0) -> ProbeReport:
    """Euclidean plane: sampled Lipschitz constant of the ball map against the scanned corona constant."""
    space = make_builtin_space("euclidean_plane")
    check = theorem2_crosscheck(space, random_pairs(space, pairs, seed), seed=seed)
    C = check.rows[0]["value"]
    L = check.rows[1]["value"]
    rows = [
        _row("C in [0.9, 1.1]", [0.9, 1.1], C, 0.9 <= C <= 1.1),
        _row("L in [0.9, 2.2]", [0.9, 2.2], L, 0.9 <= L <= 2.2),
        _row("C <= 1.25 L and L <= 2.5 C", PASS, check.verdict),
    ]
    params = dict(check.params)
    params["random_pairs"] = pairs
    return _report("theorem2", space.name, params, rows, PASS, None, seed)


REPROS: dict[str, Callable[..., ProbeReport]] = {
    "theorem6": repro_theorem6,
    "example1": repro_example1,
    "example2": repro_example2,
    "theorem7": repro_theorem7,
    "x1": repro_x1,
    "x2": repro_x2,
    "theorem2": repro_theorem2,
}


def run_repro(name: str, **kwargs) -> ProbeReport:
    try:
        fn = REPROS[name]
    except KeyError:
        raise KeyError(f"unknown reproduction {name!r}; choose from {', '.join(REPROS)}") from None
    return fn(**kwargs)
