"""Falsification probes for the weak, plain and strong corona properties.

No probe ever concludes that a property *holds*; they witness violations,
verify stated bounds, or report that nothing was found up to the probed
grids.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .core import (
    PLANAR_TOL,
    BoundKind,
    CertifiedInterval,
    FamilyCenterMismatch,
    Number,
    PointKind,
    PointOutsideSpace,
    ProbeReport,
    SpaceHandle,
    WitnessFamily,
    ball_distance,
    distance,
)
from .hyperspace import lipschitz_cells, sample_closed_ball
from .workers import pmap

VIOLATION = "VIOLATION_WITNESSED"
NO_VIOLATION = "NO_VIOLATION_FOUND"
BOUND_VERIFIED = "BOUND_VERIFIED"
PASS = "PASS"
FAIL = "FAIL"
DIVERGENCE = "DIVERGENCE_FOUND"
NO_DIVERGENCE = "NO_DIVERGENCE_FOUND"

DIVERGENCE_FACTOR = 5


@dataclass
class WCPReport:
    space: str
    family: str
    center: Any
    t: Number
    rows: list
    verdict: str
    gap: Number
    k_max: int
    seed: int = 0
    params: dict = field(default_factory=dict)


def _resolve_family(space: SpaceHandle, family) -> WitnessFamily:
    if isinstance(family, WitnessFamily):
        return family
    try:
        return space.witness_families[family]
    except KeyError:
        raise KeyError(f"space {space.name!r} has no witness family {family!r}") from None


def wcp_probe(space: SpaceHandle, family, k_max: int = 50, seed: int = 0) -> WCPReport:
    """Evaluate a witness family for ``k = 1..k_max`` against the weak corona property.

    A violation needs three things on the rows: the excess ``|d(x, y_k) - t|``
    converges (final excess at most ``max(tol, 2/k_max * initial)``, and
    nonincreasing on exact spaces); every ball-distance lower bound is
    certified; and over the tail ``k >= k_max/4`` those lower bounds stay above
    a positive ``gap`` while keeping at least 3/4 of their value at the start
    of the tail.  Families whose ball distances shrink with the excess fail
    the last test.
    """
    if k_max < 3:
        raise ValueError("k_max must be at least 3")
    fam = _resolve_family(space, family)
    try:
        center = space.validate(fam.center)
    except PointOutsideSpace as exc:
        raise FamilyCenterMismatch(str(exc)) from exc
    t = space.coerce_radius(fam.t)

    def row(k):
        y = fam(k)
        d = distance(space, center, y)
        bd = ball_distance(space, center, t, y)
        return {"k": k, "point": y, "distance": d, "excess": abs(d - t), "ball_distance": bd}

    rows = pmap(row, range(1, k_max + 1))
    tol = 0 if space.exact else 1e-6
    excess = [r["excess"] for r in rows]
    shrink = Fraction(2, k_max) if space.exact else 2 / k_max
    converges = excess[-1] <= max(tol, shrink * excess[0])
    if space.exact:
        converges = converges and all(b <= a for a, b in zip(excess, excess[1:]))
    start = max(1, k_max // 4) - 1
    tail = [r["ball_distance"] for r in rows[start:]]
    certified = all(b.lower_kind is not BoundKind.SAMPLED for b in tail)
    gap = min(b.lower for b in tail)
    flat = 4 * gap >= 3 * tail[0].lower
    witnessed = converges and certified and gap > tol and flat
    return WCPReport(
        space=space.name,
        family=fam.name,
        center=center,
        t=t,
        rows=rows,
        verdict=VIOLATION if witnessed else NO_VIOLATION,
        gap=gap if witnessed else 0 * gap,
        k_max=k_max,
        seed=seed,
        params={"expected": fam.expected.value},
    )


@dataclass(frozen=True)
class SamplerSpec:
    """Candidate points for corona ratios.

    The candidate set is the union of the ball samples at resolutions
    ``resolution * 2**j`` for ``j = 0..refinements`` (none when
    ``resolution`` is None), the space's analytic witnesses, and any explicit
    ``points``.  Raising ``refinements`` only adds candidates, so lower
    bounds never decrease.
    """

    resolution: int | None = 16
    refinements: int = 0
    points: tuple = ()
    use_witnesses: bool = True


def _candidates(space: SpaceHandle, x, radius, eps, t, sampler: SamplerSpec, seed: int) -> tuple[list, bool]:
    pts = []
    exhaustive = False
    rounds = 0 if sampler.resolution is None else sampler.refinements + 1
    for j in range(rounds):
        sample = sample_closed_ball(space, x, radius, sampler.resolution * 2**j, seed)
        exhaustive = exhaustive or sample.covering_radius == 0
        pts.extend(sample.points)
    if sampler.use_witnesses:
        pts.extend(space.corona_witnesses(x, t, eps))
    pts.extend(space.validate(p) for p in sampler.points)
    tol = 0 if space.exact else PLANAR_TOL
    return [p for p in pts if space._distance(x, p) <= radius + tol], exhaustive


def corona_ratio(space: SpaceHandle, x, t, eps, sampler: SamplerSpec | None = None, seed: int = 0) -> CertifiedInterval:
    """Enclosure of ``sup { d(y, B(x, t)) / eps : d(x, y) <= t + eps }``.

    The lower bound is the best certified witness.  The upper bound is
    analytic when the space provides one (or the sampler is exhaustive) and
    otherwise repeats the sampled maximum, flagged SAMPLED.
    """
    sampler = sampler or SamplerSpec()
    t, eps = space.coerce_radius(t), space.coerce_radius(eps)
    if eps <= 0 or t <= 0:
        raise ValueError("corona_ratio requires t > 0 and eps > 0")
    x = space.validate(x)
    cands, exhaustive = _candidates(space, x, t + eps, eps, t, sampler, seed)
    lower = 0 * eps
    lower_kind = BoundKind.WITNESS
    for y in cands:
        bd = ball_distance(space, x, t, y)
        if bd.lower_kind is BoundKind.SAMPLED:
            lower_kind = BoundKind.SAMPLED
        lower = max(lower, bd.lower / eps)
    bound = space.corona_sup_bound(x, t, eps)
    if bound is not None:
        upper = bound / eps
        if space.exact and upper < lower:
            raise AssertionError("analytic corona bound undercuts a witness")
        return CertifiedInterval(lower, max(lower, upper), lower_kind, BoundKind.ANALYTIC)
    if exhaustive:
        return CertifiedInterval(lower, lower, lower_kind, BoundKind.ANALYTIC)
    return CertifiedInterval(lower, lower, lower_kind, BoundKind.SAMPLED)


@dataclass
class CoronaEstimate:
    space: str
    per_t: list
    global_C: Number
    divergence_flag: bool
    unbounded_in_eps: bool
    divergence_factor: Number = DIVERGENCE_FACTOR
    seed: int = 0
    params: dict = field(default_factory=dict)

    @property
    def per_t_C(self) -> dict:
        return {row["t"]: row["C"] for row in self.per_t}

    @property
    def verdict(self) -> str:
        return DIVERGENCE if self.divergence_flag or self.unbounded_in_eps else NO_DIVERGENCE


def grows(values: Sequence[Number], factor: Number = DIVERGENCE_FACTOR, steps: int = 2) -> bool:
    """True when ``values`` grow by ``factor`` at each of ``steps`` consecutive steps."""
    run = 0
    for a, b in zip(values, values[1:]):
        run = run + 1 if a > 0 and b >= factor * a else 0
        if run >= steps:
            return True
    return False


def probe_eps(space: SpaceHandle, t, eps_grid: Sequence) -> list:
    """Grid values strictly below the space's ``eps0(t)``; ``eps0/2`` if none remain."""
    e0 = space.eps0(t)
    eps = [e for e in eps_grid if e0 is None or e < e0]
    return eps or [e0 / 2]


def scp_scan(
    space: SpaceHandle,
    t_grid: Sequence,
    eps_grid: Sequence,
    sampler: SamplerSpec | None = None,
    seed: int = 0,
    x=None,
    divergence_factor: Number = DIVERGENCE_FACTOR,
) -> CoronaEstimate:
    """Per-``t`` corona constants ``C(t) = max_eps ratio.upper`` over eps below eps0(t).

    ``divergence_flag`` marks growth by ``divergence_factor`` across two
    consecutive steps of the (sorted) t-grid, in either direction;
    ``unbounded_in_eps`` marks the same growth along decreasing eps at a
    fixed t.  Neither flag being set only means no divergence was found.
    """
    if not t_grid or not eps_grid:
        raise ValueError("grids must be nonempty")
    t_grid = sorted(space.coerce_radius(t) for t in t_grid)
    eps_grid = sorted((space.coerce_radius(e) for e in eps_grid), reverse=True)
    if t_grid[0] <= 0 or eps_grid[-1] <= 0:
        raise ValueError("grids must be positive")
    if x is None:
        x = default_center(space)

    cells = [(t, e) for t in t_grid for e in probe_eps(space, t, eps_grid)]
    ratios = pmap(lambda c: corona_ratio(space, x, c[0], c[1], sampler, seed), cells)
    per_t = []
    for t in t_grid:
        entries = [(e, r) for (tt, e), r in zip(cells, ratios) if tt == t]
        per_t.append({
            "t": t,
            "eps0": space.eps0(t),
            "C": max(r.upper for _, r in entries),
            "C_lower": max(r.lower for _, r in entries),
            "ratios": [{"eps": e, "lower": r.lower, "upper": r.upper,
                        "upper_kind": r.upper_kind.value} for e, r in entries],
        })
    cs = [row["C"] for row in per_t]
    flag = grows(cs, divergence_factor) or grows(cs[::-1], divergence_factor)
    in_eps = any(grows([r["upper"] for r in row["ratios"]], divergence_factor) for row in per_t)
    return CoronaEstimate(
        space=space.name,
        per_t=per_t,
        global_C=max(cs),
        divergence_flag=flag,
        unbounded_in_eps=in_eps,
        divergence_factor=divergence_factor,
        seed=seed,
    )


def default_center(space: SpaceHandle):
    if space.zero is not None:
        return space.zero
    if space.point_kind is PointKind.PLANAR:
        return (0.0, 0.0)
    return 0


def random_pairs(space: SpaceHandle, count: int, seed: int = 0) -> list:
    """Seeded ``((x, t), (y, s))`` pairs with radii in ``[1/4, 2]``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        x, y = space.random_point(rng), space.random_point(rng)
        if space.exact:
            t, s = Fraction(rng.randint(2, 16), 8), Fraction(rng.randint(2, 16), 8)
        else:
            t, s = rng.uniform(0.25, 2.0), rng.uniform(0.25, 2.0)
        if space._distance(x, y) == 0 and t == s:
            continue
        out.append(((x, t), (y, s)))
    return out


def theorem2_crosscheck(
    space: SpaceHandle,
    pair_samples: Sequence | None = None,
    t_grid: Sequence = (Fraction(1, 2), Fraction(1), Fraction(2)),
    eps_grid: Sequence = (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)),
    seed: int = 0,
    resolution: int = 12,
    tol: Number = Fraction(1, 4),
) -> ProbeReport:
    """Compare the sampled Lipschitz constant of the ball map with the scanned
    strong-corona constant: ``C <= L`` and ``L <= 2C`` up to ``tol``, or both unbounded.

    Pairs always include the matched grid pairs ``((x0, t), (x0, t + eps))``;
    extra ``pair_samples`` are added.  On spaces that expose ``eps0`` only
    pairs with ``d(x, y) + |t - s| < eps0(min(t, s))`` are kept, matching
    the range the scan probes.
    """
    est = scp_scan(space, t_grid, eps_grid, SamplerSpec(resolution), seed)
    x0 = default_center(space)
    grid_t = sorted(space.coerce_radius(t) for t in t_grid)
    grid_eps = sorted((space.coerce_radius(e) for e in eps_grid), reverse=True)
    matched = [((x0, t), (x0, t + e)) for t in grid_t for e in probe_eps(space, t, grid_eps)]
    extra = list(pair_samples or [])

    def in_range(pair):
        (x, t), (y, s) = pair
        e0 = space.eps0(min(t, s))
        return e0 is None or distance(space, x, y) + abs(t - s) < e0

    kept_extra = [p for p in extra if in_range(p)]
    cells = lipschitz_cells(space, matched + kept_extra, resolution, seed)
    L = max(c.ratio for c in cells)
    m_cells = cells[: len(matched)]
    L_div = False
    for t in grid_t:
        seq = [c.ratio for c, ((_, tt), _) in zip(m_cells, matched) if tt == t]
        L_div = L_div or grows(seq)
    C = est.global_C
    C_div = est.divergence_flag or est.unbounded_in_eps
    one = 1 + tol
    if C_div or L_div:
        ok = C_div and L_div
    else:
        ok = C <= L * one and L <= 2 * C * one
    return ProbeReport(
        probe="theorem2_crosscheck",
        space=space.name,
        params={
            "t_grid": grid_t,
            "eps_grid": grid_eps,
            "tol": tol,
            "pairs": len(matched) + len(kept_extra),
            "excluded_pairs": len(extra) - len(kept_extra),
            "resolution": resolution,
        },
        rows=[
            {"quantity": "scp_constant", "value": C, "diverges": C_div},
            {"quantity": "lipschitz_constant", "value": L, "diverges": L_div},
        ],
        verdict=PASS if ok else FAIL,
        gap=None,
        seed=seed,
    )


def sampled_families(space: SpaceHandle, count: int = 4, seed: int = 0) -> list[WitnessFamily]:
    """Seeded families ``y_k`` with ``d(x, y_k) -> t`` for spaces with simple geometry."""
    rng = random.Random(seed)
    fams = []
    kind = space.point_kind
    for i in range(count):
        name = f"sampled_{i}"
        if kind is PointKind.PLANAR:
            x = space.random_point(rng)
            t = rng.uniform(0.25, 2.0)
            a = rng.uniform(0, 2 * math.pi)
            u = (math.cos(a), math.sin(a))
            sign = rng.choice((1, -1))

            def gen(k, x=x, t=t, u=u, sign=sign):
                r = t + sign * t / (2 * k)
                return (x[0] + r * u[0], x[1] + r * u[1])

            ok = all(space.member(gen(k)) for k in (1, 2, 10, 100))
            if ok:
                fams.append(WitnessFamily(name, x, t, gen))
        elif kind is PointKind.FINITE_LABEL:
            x = space.random_point(rng)
            labels = [rng.randrange(space.labels) for _ in range(7)]
            fams.append(WitnessFamily(name, x, Fraction(1), lambda k, labels=labels: labels[k % 7]))
        elif kind is PointKind.SCALAR_POINT:
            x = space.random_point(rng)
            t = Fraction(rng.randint(1, 19), 20)
            sign = rng.choice((1, -1))

            def gen(k, x=x, t=t, sign=sign):
                s = t + (1 - t) / (k + 1)
                return x + sign * s / (1 - s)

            fams.append(WitnessFamily(name, x, t, gen))
    return fams


def default_battery(spaces: Sequence[SpaceHandle], k_max: int = 40, seed: int = 0) -> list[WCPReport]:
    """WCP probes of every registered and sampled family on every given space."""
    reports = []
    for space in spaces:
        fams = list(space.witness_families.values()) + sampled_families(space, seed=seed)
        for fam in fams:
            reports.append(wcp_probe(space, fam, k_max, seed))
    return reports
