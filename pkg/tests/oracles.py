"""Independent reference computations used by the tests.

They share no code with the package: plain numpy over explicit grids.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

GRID = 60


def phi_np(k: int, u: np.ndarray) -> np.ndarray:
    a = np.abs(u)
    return np.where(a <= 1.0 / k, k * a, 1.0 + a - 1.0 / k)


def brute_force_ball_distance(y: dict[int, Fraction], t: Fraction, step: int = GRID) -> float:
    """``min sum_n Phi_n(y_n - a_n)`` over ``sum_n Phi_n(a_n) <= t`` with every
    ``a_n`` on the grid ``(1/step) Z`` between 0 and ``y_n``.

    Moving ``a_n`` past ``y_n`` or to the other side of 0 raises both the cost
    and the residual, so the restriction loses nothing beyond grid resolution.
    """
    idx = sorted(y)
    if not idx:
        return 0.0
    axes = []
    for n in idx:
        m = int(abs(y[n]) * step)
        vals = np.arange(m + 1) / step
        axes.append(np.sign(float(y[n])) * vals)
    mesh = np.meshgrid(*axes, indexing="ij")
    cost = sum(phi_np(n, a) for n, a in zip(idx, mesh))
    residual = sum(phi_np(n, float(y[n]) - a) for n, a in zip(idx, mesh))
    feasible = cost <= float(t) + 1e-12
    return float(residual[feasible].min())


def dense_planar_ball_distance(x, t, y, member, n: int = 801) -> tuple[float, float]:
    """Min ``|y - p|`` over a square grid of the feasible set and the grid's covering radius."""
    xs = np.linspace(x[0] - t, x[0] + t, n)
    ys = np.linspace(x[1] - t, x[1] + t, n)
    X, Y = np.meshgrid(xs, ys)
    inside = np.hypot(X - x[0], Y - x[1]) <= t
    keep = inside & member(X, Y)
    d = np.hypot(X[keep] - y[0], Y[keep] - y[1])
    h = xs[1] - xs[0]
    return float(d.min()), h * np.sqrt(2) / 2


def x1_member(X, Y):
    return (X <= 0) | (np.hypot(X, Y) > 1)


def x2_member(X, Y):
    return (X <= 0) | (np.hypot(X, Y) >= 1)


def hausdorff_np(A, B) -> float:
    A, B = np.asarray(A, float), np.asarray(B, float)
    D = np.sqrt(((A[:, None, :] - B[None, :, :]) ** 2).sum(-1))
    return float(max(D.min(1).max(), D.min(0).max()))


def subsets(seq):
    return itertools.chain.from_iterable(itertools.combinations(seq, r) for r in range(len(seq) + 1))
