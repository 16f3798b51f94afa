"""Finite label set with the discrete metric."""

from __future__ import annotations

from fractions import Fraction

from ..core import (
    BadParams,
    CertifiedInterval,
    Expectation,
    FiniteSet,
    PointKind,
    PointOutsideSpace,
    SpaceHandle,
    SpaceMetadata,
    WitnessFamily,
)

ZERO, ONE = Fraction(0), Fraction(1)


class DiscreteSpace(SpaceHandle):
    """Labels ``0..n-1``; ``d(a, b) = 1`` for ``a != b``.

    Balls are ``{x}`` for ``t < 1`` and the whole space for ``t >= 1``.
    """

    name = "discrete"
    point_kind = PointKind.FINITE_LABEL
    exact = True
    metadata = SpaceMetadata(boundedly_compact=True)

    def __init__(self, params=None):
        super().__init__(params)
        labels = self.params.get("labels", 5)
        if not isinstance(labels, int) or isinstance(labels, bool) or labels < 2:
            raise BadParams("discrete space needs an integer 'labels' >= 2")
        self.labels = labels
        self.register_family(WitnessFamily(
            "neighbor", 0, ONE, lambda k: 1 + (k % (labels - 1)), Expectation.SATISFIES_WCP,
            "other labels, all at distance exactly 1",
        ))

    def validate(self, p):
        if not isinstance(p, int) or isinstance(p, bool) or not 0 <= p < self.labels:
            raise PointOutsideSpace(f"{p!r} is not a label of {self.name}")
        return p

    def _distance(self, p, q):
        return ZERO if p == q else ONE

    def encode_point(self, p):
        return p

    def decode_point(self, obj):
        return int(obj)

    def random_point(self, rng):
        return rng.randrange(self.labels)

    def _ball_backend(self, x, t, y):
        return CertifiedInterval.exact(ZERO if t >= 1 or x == y else ONE)

    def eps0(self, t):
        return 1 - t if t < 1 else None

    def corona_sup_bound(self, x, t, eps):
        # the sampler is exhaustive, so this is the exact supremum
        return ZERO if t >= 1 or t + eps < 1 else ONE

    def sample_ball(self, x, t, resolution, rng):
        pts = list(range(self.labels)) if t >= 1 else [x]
        return FiniteSet(pts, covering_radius=ZERO)
