from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from corona_lab.spaces.plfunc import PLFunction
from corona_lab.spaces.seminorm import random_pl_function


def _probe_grid(*fs):
    xs = set()
    for f in fs:
        xs.update(f.xs)
    lo, hi = min(xs) - 2, max(xs) + 2
    grid = {lo + F(i, 8) * (hi - lo) / 8 for i in range(65)}
    return sorted(grid | xs)


def test_evaluation_and_tails():
    f = PLFunction([0, 2], [1, 3])
    assert f(-5) == 1 and f(1) == 2 and f(F(1, 2)) == F(3, 2) and f(9) == 3
    with pytest.raises(ValueError):
        PLFunction([1, 1], [0, 0])
    with pytest.raises(ValueError):
        PLFunction([], [])


def test_equality_ignores_redundant_breakpoints():
    assert PLFunction([0, 1, 2], [0, 1, 2]) == PLFunction([0, 2], [0, 2])
    assert PLFunction([-3, 0, 5], [1, 1, 1]) == PLFunction.constant(1)
    assert hash(PLFunction([0, 1, 2], [0, 1, 2])) == hash(PLFunction([0, 2], [0, 2]))


@pytest.mark.parametrize("seed", range(20))
def test_algebra_matches_pointwise_evaluation(seed):
    rng = random.Random(seed)
    f, g = random_pl_function(rng), random_pl_function(rng)
    ops = {
        "add": (f + g, lambda x: f(x) + g(x)),
        "sub": (f - g, lambda x: f(x) - g(x)),
        "neg": (-f, lambda x: -f(x)),
        "scale": (f * F(-3, 2), lambda x: F(-3, 2) * f(x)),
        "max": (f.maximum(g), lambda x: max(f(x), g(x))),
        "min": (f.minimum(g), lambda x: min(f(x), g(x))),
        "abs": (abs(f), lambda x: abs(f(x))),
        "clip": (f.clip(1), lambda x: max(-1, min(1, f(x)))),
        "shift": (f.shifted(F(1, 3)), lambda x: f(x - F(1, 3))),
    }
    grid = _probe_grid(f, g)
    for name, (h, ref) in ops.items():
        for x in grid:
            assert h(x) == ref(x), (name, x)


def test_max_inserts_crossings():
    f = PLFunction([0, 2], [0, 2])
    h = f.maximum(PLFunction.constant(1))
    assert F(1) in h.xs
    assert h(F(1, 2)) == 1 and h(F(3, 2)) == F(3, 2)


@pytest.mark.parametrize("seed", range(10))
def test_seminorms_against_dense_evaluation(seed):
    rng = random.Random(100 + seed)
    f = random_pl_function(rng)
    for n in range(4):
        grid = [F(i, 16) for i in range(-16 * n, 16 * n + 1)]
        dense = max(abs(f(x)) for x in grid + [x for x in f.xs if abs(x) <= n])
        assert f.seminorm(n) == dense
    assert f.sup_norm() == max(abs(f(x)) for x in _probe_grid(f))


def test_encode_roundtrip():
    f = PLFunction([F(-1, 2), 3], [F(2, 7), -1])
    assert PLFunction.decode(f.encode()) == f
    assert f.encode()[0] == ["-1/2", "2/7"]
