"""The Euclidean plane and the two punctured planes.

``punctured_plane_x1`` removes ``{p : |p| <= 1 and p_x > 0}`` from the plane;
``closed_punctured_x2`` is its closure, which only removes the open
half-disk ``{|p| < 1, p_x > 0}``.  Both carry the restricted Euclidean metric.

Distances to balls in the punctured planes are computed by candidate
enumeration.  The feasible set ``B(x, t) ∩ X`` is a union of two closed
pieces (the part outside the open unit disk and the part in ``p_x <= 0``)
whose boundaries are arcs of the sphere ``|p - x| = t``, of the unit circle,
and segments of the axis ``p_x = 0``.  Along a circular arc or a segment the
distance from ``y`` is unimodal, so the minimum over each piece is attained
at ``y`` itself, at a projection of ``y`` onto one of the boundary curves, or
at an intersection of two curves.
"""

from __future__ import annotations

import math

import numpy as np

from ..core import (
    PLANAR_TOL,
    CertifiedInterval,
    Expectation,
    FiniteSet,
    PointKind,
    PointOutsideSpace,
    SpaceHandle,
    SpaceMetadata,
    WitnessFamily,
)

Point = tuple[float, float]
ORIGIN: Point = (0.0, 0.0)


def as_point(p) -> Point:
    x, y = (float(v) for v in p)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise PointOutsideSpace(f"non-finite planar point {p!r}")
    return (x, y)


def _norm(p: Point) -> float:
    return math.hypot(p[0], p[1])


def _dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def polar_grid(x: Point, t: float, rings: int) -> tuple[list[Point], float]:
    """Points of the closed disk ``B(x, t)`` on concentric rings.

    Ring ``i`` has radius ``t i / rings`` and at least ``2 pi i`` points, so
    consecutive points on a ring are at most ``t / rings`` apart.  Every
    point of the disk is within ``t / (2 rings)`` radially of a ring and then
    within ``t / (2 rings)`` of a point on it: the covering radius is
    ``t / rings``.
    """
    pts = [x]
    for i in range(1, rings + 1):
        r = t * i / rings
        count = math.ceil(2 * math.pi * i)
        for j in range(count):
            a = 2 * math.pi * j / count
            pts.append((x[0] + r * math.cos(a), x[1] + r * math.sin(a)))
    return pts, t / rings


def _circle_intersections(c0: Point, r0: float, c1: Point, r1: float) -> list[Point]:
    dx, dy = c1[0] - c0[0], c1[1] - c0[1]
    d = math.hypot(dx, dy)
    if d == 0 or d > r0 + r1 + PLANAR_TOL or d < abs(r0 - r1) - PLANAR_TOL:
        return []
    a = (r0 * r0 - r1 * r1 + d * d) / (2 * d)
    h = math.sqrt(max(r0 * r0 - a * a, 0.0))
    mx, my = c0[0] + a * dx / d, c0[1] + a * dy / d
    return [(mx + h * dy / d, my - h * dx / d), (mx - h * dy / d, my + h * dx / d)]


def _circle_axis_intersections(c: Point, r: float) -> list[Point]:
    """Intersections of the circle ``|p - c| = r`` with the line ``p_x = 0``."""
    s = r * r - c[0] * c[0]
    if s < -PLANAR_TOL:
        return []
    h = math.sqrt(max(s, 0.0))
    return [(0.0, c[1] + h), (0.0, c[1] - h)]


def _project_to_circle(y: Point, c: Point, r: float) -> list[Point]:
    d = _dist(y, c)
    if d == 0:
        return [(c[0] + r, c[1]), (c[0] - r, c[1]), (c[0], c[1] + r), (c[0], c[1] - r)]
    return [(c[0] + r * (y[0] - c[0]) / d, c[1] + r * (y[1] - c[1]) / d)]


def _min_over_piece(y: Point, x: Point, t: float, member, boundary_pts: list[Point]) -> float:
    cands = [y] + _project_to_circle(y, x, t) + boundary_pts
    best = math.inf
    for p in cands:
        if _dist(p, x) <= t + PLANAR_TOL and member(p):
            best = min(best, _dist(p, y))
    return best


def punctured_ball_distance(x: Point, t: float, y: Point, closed: bool) -> float:
    """``inf { |y - p| : |p - x| <= t, p in X }`` for X1 (``closed=False``) or X2."""
    def outer(p):
        return _norm(p) >= 1 - PLANAR_TOL

    def left(p):
        return p[0] <= PLANAR_TOL

    best = math.inf
    # In X1 the outer piece is the closure of B(x,t) ∩ {|p| > 1}, which is empty
    # when the ball sits inside the closed unit disk.
    if closed or _norm(x) + t > 1:
        pts = _project_to_circle(y, ORIGIN, 1.0) + _circle_intersections(x, t, ORIGIN, 1.0)
        pts += [(0.0, 1.0), (0.0, -1.0)]
        best = min(best, _min_over_piece(y, x, t, outer, pts))
    pts = [(0.0, y[1])] + _circle_axis_intersections(x, t)
    best = min(best, _min_over_piece(y, x, t, left, pts))
    return best


class EuclideanPlane(SpaceHandle):
    name = "euclidean_plane"
    point_kind = PointKind.PLANAR
    exact = False
    metadata = SpaceMetadata(boundedly_compact=True)

    def __init__(self, params=None):
        super().__init__(params)
        self.register_family(WitnessFamily(
            "radial", ORIGIN, 1.0, lambda k: (1.0 + 1.0 / k, 0.0),
            Expectation.SATISFIES_WCP, "points approaching the unit sphere from outside",
        ))
        self.register_family(WitnessFamily(
            "diagonal", (1.0, -2.0), 2.0,
            lambda k: (1.0 + (2.0 + 1.0 / k) / math.sqrt(2), -2.0 + (2.0 + 1.0 / k) / math.sqrt(2)),
            Expectation.SATISFIES_WCP,
        ))

    def member(self, p: Point) -> bool:
        return True

    def validate(self, p):
        p = as_point(p)
        if not self.member(p):
            raise PointOutsideSpace(f"{p} lies in the removed region of {self.name}")
        return p

    def _distance(self, p, q):
        return _dist(p, q)

    def encode_point(self, p):
        return [p[0], p[1]]

    def decode_point(self, obj):
        return as_point(obj)

    def random_point(self, rng):
        while True:
            p = (rng.uniform(-3, 3), rng.uniform(-3, 3))
            if self.member(p):
                return p

    def _ball_backend(self, x, t, y):
        return CertifiedInterval.exact(max(0.0, _dist(x, y) - t))

    def corona_sup_bound(self, x, t, eps):
        return eps

    def corona_witnesses(self, x, t, eps):
        r = t + eps
        return [(x[0] + r * math.cos(a), x[1] + r * math.sin(a)) for a in np.linspace(0, 2 * math.pi, 8, endpoint=False)]

    def sample_ball(self, x, t, resolution, rng):
        pts, cover = polar_grid(x, t, resolution)
        return FiniteSet(pts, covering_radius=cover)


class PuncturedPlane(EuclideanPlane):
    """Shared code for X1 and X2; ``closed`` selects the closure."""

    closed = False
    metadata = SpaceMetadata()

    def __init__(self, params=None):
        SpaceHandle.__init__(self, params)
        expected = Expectation.SATISFIES_WCP if self.closed else Expectation.VIOLATES_WCP
        self.register_family(WitnessFamily(
            "tangent_spike", ORIGIN, 1.0, lambda k: (1.0 + 1.0 / k, 0.0), expected,
            "points (1 + 1/k, 0) just outside the removed half-disk",
        ))

    def member(self, p):
        if p[0] <= 0:
            return True
        r2 = p[0] * p[0] + p[1] * p[1]
        return r2 >= 1 - PLANAR_TOL if self.closed else r2 > 1

    def _ball_backend(self, x, t, y):
        return CertifiedInterval.exact(punctured_ball_distance(x, t, y, self.closed))

    def corona_sup_bound(self, x, t, eps):
        return None

    def corona_witnesses(self, x, t, eps):
        return [p for p in super().corona_witnesses(x, t, eps) if self.member(p)]

    def sample_ball(self, x, t, resolution, rng):
        """Polar grid filtered by membership; the grid spacing is only nominal
        near the removed half-disk, so the cover is not certified."""
        pts, cover = polar_grid(x, t, resolution)
        pts = [p for p in pts if self.member(p)]
        if not pts:
            return None
        return FiniteSet(pts, covering_radius=None, nominal_radius=cover)

    def dense_lower_bound(self, x: Point, t: float, y: Point, rings: int = 400) -> tuple[float, float]:
        """Sampled ``min |y - p|`` over the feasible set and the grid spacing.

        Independent check of :func:`punctured_ball_distance`: the true value lies
        within ``[sampled - spacing, sampled]`` whenever the grid meets every part
        of the feasible set.
        """
        pts, cover = polar_grid(x, t, rings)
        arr = np.asarray(pts)
        if self.closed:
            keep = (arr[:, 0] <= 0) | (np.hypot(arr[:, 0], arr[:, 1]) >= 1 - PLANAR_TOL)
        else:
            keep = (arr[:, 0] <= 0) | (np.hypot(arr[:, 0], arr[:, 1]) > 1)
        arr = arr[keep]
        d = np.hypot(arr[:, 0] - y[0], arr[:, 1] - y[1])
        return float(d.min()), cover


class PuncturedX1(PuncturedPlane):
    name = "punctured_plane_x1"
    closed = False


class ClosedPuncturedX2(PuncturedPlane):
    name = "closed_punctured_x2"
    closed = True
