"""Function space with the translation-invariant seminorm metric.

Points are :class:`PLFunction` instances.  For a nonincreasing weight
sequence ``c_n -> 0`` and the seminorms ``p_n(f) = max_{|x| <= n} |f(x)|``
(indexed from ``n = 0``) the metric is::

    d(f, g) = max_n c_n * p_n(f - g) / (1 + p_n(f - g))

The closed ball ``B(0, t)`` is exactly the set of functions with
``p_k(f) <= R_k = t / (c_k - t)`` for every *active* index ``k`` (those with
``c_k > t``); inactive indices never constrain anything.  That box
description drives :func:`project_into_ball`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..core import (
    BadParams,
    BoundKind,
    CertifiedInterval,
    EpsTooLarge,
    Expectation,
    FiniteSet,
    PointKind,
    PointOutsideSpace,
    SpaceHandle,
    SpaceMetadata,
    WitnessFamily,
    parse_scalar,
)
from .plfunc import PLFunction

ZERO = Fraction(0)
HALF = Fraction(1, 2)


# weight sequences --------------------------------------------------------------


class WeightRule:
    """Closed-form nonincreasing positive sequence ``c_n`` with limit 0."""

    name = ""

    def __call__(self, n: int) -> Fraction:
        raise NotImplementedError

    def first_index_at_most(self, t: Fraction) -> int:
        """Smallest ``n`` with ``c_n <= t``; exists because ``c_n -> 0``."""
        n = 0
        while self(n) > t:
            n += 1
        return n

    def describe(self) -> dict:
        return {"rule": self.name}


class Harmonic(WeightRule):
    name = "harmonic"

    def __call__(self, n):
        return Fraction(1, n + 1)

    def first_index_at_most(self, t):
        # 1/(n+1) <= t  <=>  n >= 1/t - 1
        return max(0, math.ceil(1 / t) - 1)


class Geometric(WeightRule):
    name = "geometric"

    def __init__(self, c0=1, ratio=HALF):
        self.c0 = parse_scalar(c0)
        self.ratio = parse_scalar(ratio)
        if self.c0 <= 0 or not 0 < self.ratio < 1:
            raise BadParams("geometric weights need c0 > 0 and 0 < ratio < 1")

    def __call__(self, n):
        return self.c0 * self.ratio**n

    def describe(self):
        return {"rule": self.name, "c0": str(self.c0), "ratio": str(self.ratio)}


class Table(WeightRule):
    """Explicit values ``c_0..c_m`` followed by a certified tail rule."""

    name = "table"

    def __init__(self, values, tail="geometric", ratio=HALF):
        self.values = [parse_scalar(v) for v in values]
        if not self.values:
            raise BadParams("table weights need at least one value")
        if any(v <= 0 for v in self.values):
            raise BadParams("weights must be positive")
        if any(b > a for a, b in zip(self.values, self.values[1:])):
            raise BadParams("weights must be nonincreasing")
        self.tail = tail
        self.ratio = parse_scalar(ratio)
        if tail == "geometric":
            if not 0 < self.ratio < 1:
                raise BadParams("geometric tail needs 0 < ratio < 1")
        elif tail != "harmonic":
            raise BadParams(f"unknown tail rule {tail!r}")

    def __call__(self, n):
        m = len(self.values) - 1
        if n <= m:
            return self.values[n]
        last = self.values[-1]
        if self.tail == "geometric":
            return last * self.ratio ** (n - m)
        return last * Fraction(m + 1, n + 1)

    def describe(self):
        out = {"rule": self.name, "values": [str(v) for v in self.values], "tail": self.tail}
        if self.tail == "geometric":
            out["ratio"] = str(self.ratio)
        return out


def make_weight_rule(spec: Any) -> WeightRule:
    if isinstance(spec, WeightRule):
        return spec
    if spec is None or spec == "harmonic":
        return Harmonic()
    if spec == "geometric":
        return Geometric()
    if isinstance(spec, dict):
        spec = dict(spec)
        rule = spec.pop("rule", "harmonic")
        try:
            if rule == "harmonic":
                return Harmonic()
            if rule == "geometric":
                return Geometric(**spec)
            if rule == "table":
                return Table(**spec)
        except TypeError as exc:
            raise BadParams(str(exc)) from exc
    raise BadParams(f"unknown weight rule {spec!r}")


@dataclass(frozen=True)
class SeminormMetricConfig:
    c: WeightRule
    seminorm: str = "sup_abs"

    def __post_init__(self):
        if self.seminorm != "sup_abs":
            raise BadParams(f"unsupported seminorm family {self.seminorm!r}")

    @classmethod
    def from_params(cls, params: dict | None) -> "SeminormMetricConfig":
        params = params or {}
        return cls(make_weight_rule(params.get("c", "harmonic")), params.get("seminorm", "sup_abs"))

    @property
    def c_first(self) -> Fraction:
        return self.c(0)


def _squash(p: Fraction) -> Fraction:
    return p / (1 + p)


def seminorm_distance(config: SeminormMetricConfig, f: PLFunction, g: PLFunction) -> Fraction:
    """Exact metric value.  ``p_n(f-g)`` is constant once ``[-n, n]`` covers every
    breakpoint, and ``c_n`` is nonincreasing, so the sup is a max over finitely
    many ``n``."""
    h = f - g
    top = math.ceil(h.reach)
    best = ZERO
    for n in range(top + 1):
        best = max(best, config.c(n) * _squash(h.seminorm(n)))
    return best


# ball profile --------------------------------------------------------------------


@dataclass(frozen=True)
class BallProfile:
    t: Fraction
    active: tuple[int, ...]
    radii: tuple[Fraction, ...]
    eps0: Fraction | None

    @property
    def whole_space(self) -> bool:
        return not self.active

    @property
    def n0(self) -> int:
        return self.active[-1]


def ball_profile(config: SeminormMetricConfig, t) -> BallProfile:
    t = parse_scalar(t)
    if t <= 0:
        raise ValueError("ball_profile requires t > 0")
    stop = config.c.first_index_at_most(t)
    active = tuple(range(stop))
    radii = tuple(t / (config.c(k) - t) for k in active)
    eps0 = config.c(stop - 1) - t if active else None
    return BallProfile(t, active, radii, eps0)


def m_envelope(config: SeminormMetricConfig, t, eps) -> Fraction:
    """``max_k c_k eps / ((c_k - t - eps)(c_k - t))`` over the active indices.

    Equal to ``max_k R_k(t + eps) - R_k(t)``.  Zero when the ball is the whole space.
    """
    t, eps = parse_scalar(t), parse_scalar(eps)
    prof = ball_profile(config, t)
    if prof.whole_space:
        return ZERO
    if not 0 < eps < prof.eps0:
        raise EpsTooLarge(f"eps must lie in (0, {prof.eps0}) for t = {t}")
    return max(config.c(k) * eps / ((config.c(k) - t - eps) * (config.c(k) - t)) for k in prof.active)


def _symmetric(points: list[tuple[Fraction, Fraction]]) -> PLFunction:
    """Even PL function from its values at nonnegative abscissae."""
    left = [(-x, y) for x, y in reversed(points) if x > 0]
    return PLFunction.from_points(left + points)


class ConstructionError(RuntimeError):
    pass


def project_into_ball(config: SeminormMetricConfig, f: PLFunction, t) -> PLFunction:
    """Continuous PL function ``g`` in ``B(0, t)`` close to ``f``.

    With ``D_k = max(0, p_k(f) - R_k)`` the core ``|x| <= n0`` is soft-thresholded
    by a shrink profile equal to ``D_k`` at ``|x| = k`` (ramping to ``D_{k+1}``
    over ``[k, k + 1/2]``) and then clipped to ``R_k`` on ``k - 1 < |x| <= k``.
    On the collars ``n0 <= |x| <= n0 + 1/2`` the difference ``f - g`` is tapered
    linearly to zero, and ``g = f`` beyond.  Hence ``sup |f - g| = max_k D_k``,
    which is at most ``m_envelope(t, eps)`` whenever ``f`` is in ``B(0, t + eps)``.
    """
    t = parse_scalar(t)
    prof = ball_profile(config, t)
    if prof.whole_space:
        return f
    radii = prof.radii
    n0 = prof.n0
    excess = [max(ZERO, f.seminorm(k) - radii[k]) for k in range(n0 + 1)]
    if not any(excess):
        return f

    shrink_pts = []
    for k in range(n0):
        shrink_pts += [(Fraction(k), excess[k]), (k + HALF, excess[k + 1])]
    shrink_pts.append((Fraction(n0), excess[n0]))
    shrink = _symmetric(shrink_pts)
    soft = (f - shrink).maximum(0) + (f + shrink).minimum(0)

    core: dict[Fraction, Fraction] = {ZERO: soft(ZERO)}
    if abs(core[ZERO]) > radii[0]:
        raise ConstructionError("soft threshold left f(0) outside the first box")
    for k in range(1, n0 + 1):
        piece = soft.clip(radii[k])
        for side in (1, -1):
            lo, hi = sorted((side * (k - 1), side * k))
            xs = {Fraction(lo), Fraction(hi)} | {x for x in piece.xs if lo < x < hi}
            for x in xs:
                value = piece(x)
                if x in core and core[x] != value:
                    raise ConstructionError(f"pieces disagree at x = {x}")
                core[x] = value

    pts = dict(core)
    for side in (1, -1):
        edge = Fraction(side * n0)
        delta = f(edge) - core[edge]
        lo, hi = sorted((edge, edge + side * HALF))
        for x in {lo, hi} | {x for x in f.xs if lo < x < hi}:
            if x == edge:
                continue
            weight = 1 - 2 * abs(x - edge)
            pts[x] = f(x) - delta * weight
    reach = n0 + HALF
    for x, y in zip(f.xs, f.ys):
        if abs(x) > reach:
            pts[x] = y
    g = PLFunction.from_points(sorted(pts.items())).simplified()

    for k in prof.active:
        if g.seminorm(k) > radii[k]:
            raise ConstructionError(f"p_{k}(g) exceeds R_{k}")
    return g


def seminorm_gap_lower_bound(config: SeminormMetricConfig, f: PLFunction, prof: BallProfile) -> Fraction:
    """``max_k c_k q_k / (1 + q_k)`` with ``q_k = max(0, p_k(f) - R_k)``.

    Valid for every ``h`` in the ball since ``p_k(f - h) >= p_k(f) - p_k(h)``.
    """
    best = ZERO
    for k, r in zip(prof.active, prof.radii):
        q = max(ZERO, f.seminorm(k) - r)
        best = max(best, config.c(k) * _squash(q))
    return best


def function_ball_distance(config: SeminormMetricConfig, f: PLFunction, t) -> CertifiedInterval:
    t = parse_scalar(t)
    if t <= 0:
        raise ValueError("function_ball_distance requires t > 0")
    prof = ball_profile(config, t)
    if prof.whole_space:
        return CertifiedInterval.exact(ZERO)
    lower = seminorm_gap_lower_bound(config, f, prof)
    g = project_into_ball(config, f, t)
    upper = seminorm_distance(config, f, g)
    if upper == 0:
        return CertifiedInterval.exact(ZERO)
    return CertifiedInterval(lower, upper, BoundKind.ANALYTIC, BoundKind.WITNESS)


def envelope_function(prof: BallProfile) -> PLFunction:
    """Largest-looking member of the ball: ``R_k`` at ``|x| = k``, linear between,
    tapering to 0 over the collar."""
    pts = [(Fraction(k), r) for k, r in zip(prof.active, prof.radii)]
    pts.append((prof.n0 + HALF, ZERO))
    return _symmetric(pts)


def random_pl_function(rng, reach: int = 3, max_breaks: int = 5, height: int = 3) -> PLFunction:
    count = rng.randint(1, max_breaks)
    grid = range(-4 * reach, 4 * reach + 1)
    xs = sorted(Fraction(v, 4) for v in rng.sample(grid, count))
    ys = [Fraction(rng.randint(-4 * height, 4 * height), rng.choice((1, 2, 3, 4))) for _ in xs]
    return PLFunction(xs, ys)


def scale_into_ball(config: SeminormMetricConfig, f: PLFunction, t) -> PLFunction:
    """Largest ``lam * f`` (``lam <= 1``) inside ``B(0, t)``; exact since seminorms are homogeneous."""
    prof = ball_profile(config, t)
    if prof.whole_space:
        return f
    lam = Fraction(1)
    for k, r in zip(prof.active, prof.radii):
        p = f.seminorm(k)
        if p > r:
            lam = min(lam, r / p)
    return f * lam


class SeminormFunctionSpace(SpaceHandle):
    name = "seminorm_function"
    point_kind = PointKind.PL_FUNCTION
    exact = True
    metadata = SpaceMetadata(translation_invariant=True, is_tvs=True)
    zero = PLFunction.constant(0)

    def __init__(self, params=None):
        super().__init__(params)
        self.config = SeminormMetricConfig.from_params(self.params)
        t = parse_scalar(self.params.get("plateau_t", Fraction(3, 10)))
        prof = ball_profile(self.config, t)
        if not prof.whole_space:
            def plateau(k, prof=prof, t=t):
                eps = prof.eps0 / (k + 1)
                return PLFunction.constant((t + eps) / (self.config.c(0) - t - eps))

            self.register_family(WitnessFamily(
                "plateau", self.zero, t, plateau, Expectation.SATISFIES_WCP,
                "constant functions just outside the ball",
            ))

    def validate(self, p):
        if not isinstance(p, PLFunction):
            raise PointOutsideSpace(f"not a PLFunction: {p!r}")
        return p

    def _distance(self, p, q):
        return seminorm_distance(self.config, p, q)

    def add(self, p, q):
        return p + q

    def sub(self, p, q):
        return p - q

    def point_key(self, p):
        return p

    def encode_point(self, p):
        return p.encode()

    def decode_point(self, obj):
        return PLFunction.decode(obj)

    def random_point(self, rng):
        return random_pl_function(rng)

    def _ball_backend(self, x, t, y):
        return function_ball_distance(self.config, y, t)

    def eps0(self, t):
        return ball_profile(self.config, t).eps0

    def corona_sup_bound(self, x, t, eps):
        prof = ball_profile(self.config, t)
        if prof.whole_space:
            return ZERO
        if eps >= prof.eps0:
            return None
        m = m_envelope(self.config, t, eps)
        return self.config.c_first * _squash(m)

    def corona_witnesses(self, x, t, eps):
        prof = ball_profile(self.config, t + eps)
        if prof.whole_space:
            return []
        shapes = [envelope_function(prof), PLFunction.constant(prof.radii[0])]
        return [x + s for s in shapes] + [x - s for s in shapes]

    def sample_ball(self, x, t, resolution, rng):
        prof = ball_profile(self.config, t)
        if prof.whole_space:
            shapes = [PLFunction.constant(v) for v in (1, 10, 100)]
        else:
            shapes = [envelope_function(prof), PLFunction.constant(prof.radii[0])]
            for k, r in zip(prof.active, prof.radii):
                if k >= 1:
                    shapes.append(PLFunction([k - 1, k - HALF, k], [0, r, 0]))
                    shapes.append(PLFunction([-k, -k + HALF, -k + 1], [0, r, 0]))
            far = prof.n0 + 1
            tail = 10 * prof.radii[-1] + 1
            shapes.append(PLFunction([prof.n0, far], [0, tail]))
        steps = max(1, min(resolution, 8))
        out = []
        for s in shapes:
            for j in range(1, steps + 1):
                lam = Fraction(j, steps)
                out += [x + s * lam, x - s * lam]
        if rng is not None:
            for _ in range(resolution):
                out.append(x + scale_into_ball(self.config, random_pl_function(rng), t))
        out.append(x)
        return FiniteSet(out, covering_radius=None)
