"""Closed bounded sets as finite samples, the Hausdorff metric, and probes of
the ball map ``(x, t) -> B(x, t)``."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .core import (
    FiniteSet,
    NoBackend,
    Number,
    PointKind,
    ResolutionTooLow,
    SpaceHandle,
    ball_distance,
)
from .workers import pmap


class Direction(str, enum.Enum):
    RIGHT = "RIGHT"
    LEFT = "LEFT"


CONTINUOUS = "CONTINUOUS_UP_TO_SAMPLING"
DISCONTINUOUS = "DISCONTINUITY_WITNESSED"


def sample_closed_ball(space: SpaceHandle, x, t, resolution: int = 16, seed: int | None = 0) -> FiniteSet:
    t = space.coerce_radius(t)
    if t <= 0:
        raise ValueError("sample_closed_ball requires t > 0")
    x = space.validate(x)
    rng = None if seed is None else random.Random(seed)
    sample = space.sample_ball(x, t, resolution, rng)
    if sample is None:
        raise NoBackend(f"space {space.name!r} has no ball sampler")
    # an exhaustive one-point ball ({x} in the discrete space) is not a low resolution
    if len(sample) < 2 and sample.covering_radius != 0:
        raise ResolutionTooLow(f"resolution {resolution} produced {len(sample)} sample(s)")
    return sample


def _directed(space: SpaceHandle, A: Sequence, B: Sequence) -> Number:
    return max(min(space._distance(a, b) for b in B) for a in A)


def hausdorff(space: SpaceHandle, A, B) -> Number:
    """``max(sup_a d(a, B), sup_b d(b, A))`` for finite nonempty point sets."""
    A = list(A)
    B = list(B)
    if not A or not B:
        raise ValueError("hausdorff needs nonempty sets")
    if space.point_kind is PointKind.PLANAR:
        dm = cdist(np.asarray(A, dtype=float), np.asarray(B, dtype=float))
        return float(max(dm.min(axis=1).max(), dm.min(axis=0).max()))
    return max(_directed(space, A, B), _directed(space, B, A))


def sup_ball_distance(space: SpaceHandle, sample, x, t) -> Number:
    """``max_z d(z, B(x, t))`` over ``z`` in ``sample`` using certified lower bounds."""
    return max(ball_distance(space, x, t, z).lower for z in sample)


@dataclass
class ContinuityReport:
    space: str
    x: Any
    t: Number
    direction: Direction
    eps_schedule: list
    h_values: list
    verdict: str
    witness_gap: Number | None
    threshold: Number
    resolution: int
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.h_values) != len(self.eps_schedule):
            raise ValueError("one Hausdorff value per eps")


def default_eps_schedule(t: Number, steps: int = 12) -> list:
    """``eps_j = 2^-j t`` for ``j = 1..steps``."""
    if isinstance(t, Fraction):
        return [t / 2**j for j in range(1, steps + 1)]
    return [t * 2.0**-j for j in range(1, steps + 1)]


def continuity_probe(
    space: SpaceHandle,
    x,
    t,
    direction: Direction | str = Direction.RIGHT,
    eps_schedule: Sequence | None = None,
    resolution: int = 16,
    seed: int = 0,
) -> ContinuityReport:
    """One-sided continuity of ``s -> B(x, s)`` at ``s = t``.

    For each eps the balls at ``t`` and ``t +- eps`` are nested, so their
    Hausdorff distance is the sup over the larger ball of the distance to
    the smaller one.  The larger ball is sampled; distances to the smaller
    ball use the certified backend, so each ``h`` is a lower bound of the
    true value.

    A discontinuity is reported when ``delta = min(h)`` exceeds ten times the
    sampler's covering radius (nominal grid spacing for filtered grids, zero
    for exact structured samplers) and the values stay flat over the second
    half of the schedule (``delta >= h_mid / 2``), where a continuous ball map
    would have shrunk them by the eps ratio.
    """
    direction = Direction(direction.upper() if isinstance(direction, str) else direction)
    t = space.coerce_radius(t)
    x = space.validate(x)
    if eps_schedule is None:
        eps_schedule = default_eps_schedule(t)
    eps_schedule = [space.coerce_radius(e) for e in eps_schedule]
    if any(e <= 0 for e in eps_schedule) or any(b >= a for a, b in zip(eps_schedule, eps_schedule[1:])):
        raise ValueError("eps_schedule must be positive and strictly decreasing")
    if direction is Direction.LEFT and eps_schedule[0] >= t:
        raise ValueError("LEFT probes need t - eps > 0")

    if direction is Direction.LEFT:
        big = sample_closed_ball(space, x, t, resolution, seed)
        cells = [(big, t - e) for e in eps_schedule]
    else:
        cells = [(sample_closed_ball(space, x, t + e, resolution, seed), t) for e in eps_schedule]

    h_values = pmap(lambda cell: sup_ball_distance(space, cell[0], x, cell[1]), cells)
    covers = [c[0].covering_radius if c[0].certified else c[0].nominal_radius for c in cells]
    cover = max((c for c in covers if c is not None), default=0)
    threshold = 10 * cover
    delta = min(h_values)
    mid = h_values[len(h_values) // 2]
    witnessed = delta > threshold and delta > 0 and 2 * delta >= mid
    return ContinuityReport(
        space=space.name,
        x=x,
        t=t,
        direction=direction,
        eps_schedule=list(eps_schedule),
        h_values=h_values,
        verdict=DISCONTINUOUS if witnessed else CONTINUOUS,
        witness_gap=delta if witnessed else None,
        threshold=threshold,
        resolution=resolution,
        seed=seed,
    )


@dataclass(frozen=True)
class LipschitzCell:
    d_inf: Number
    hausdorff: Number
    ratio: Number


def ball_pair_hausdorff(space: SpaceHandle, x, t, y, s, resolution: int, seed: int) -> Number:
    """Sampled lower estimate of ``H(B(x, t), B(y, s))``, exact distances to the true balls."""
    a = sample_closed_ball(space, x, t, resolution, seed)
    b = sample_closed_ball(space, y, s, resolution, seed)
    return max(sup_ball_distance(space, a, y, s), sup_ball_distance(space, b, x, t))


def lipschitz_cells(space: SpaceHandle, pair_samples: Sequence, resolution: int = 12, seed: int = 0) -> list[LipschitzCell]:
    pairs = []
    for (x, t), (y, s) in pair_samples:
        t, s = space.coerce_radius(t), space.coerce_radius(s)
        if t <= 0 or s <= 0:
            raise ValueError("radii must be positive")
        x, y = space.validate(x), space.validate(y)
        d_inf = max(space._distance(x, y), abs(t - s))
        if d_inf <= 0:
            raise ValueError("pairs must differ in the product metric")
        pairs.append((x, t, y, s, d_inf))

    def cell(item):
        i, (x, t, y, s, d_inf) = item
        h = ball_pair_hausdorff(space, x, t, y, s, resolution, seed * 1_000_003 + i)
        return LipschitzCell(d_inf, h, h / d_inf)

    return pmap(cell, list(enumerate(pairs)))


def lipschitz_estimate(space: SpaceHandle, pair_samples: Sequence, resolution: int = 12, seed: int = 0) -> Number:
    """``max H(B(x,t), B(y,s)) / max(d(x,y), |t-s|)`` over the pairs: a lower
    estimate of the Lipschitz constant of the ball map."""
    return max(c.ratio for c in lipschitz_cells(space, pair_samples, resolution, seed))
