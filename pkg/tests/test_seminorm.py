from __future__ import annotations

import random
from fractions import Fraction as F

import numpy as np
import pytest

from corona_lab.core import BadParams, CertifiedInterval, EpsTooLarge
from corona_lab.spaces import make_builtin_space
from corona_lab.spaces.plfunc import PLFunction
from corona_lab.spaces.seminorm import (
    SeminormMetricConfig,
    ball_profile,
    function_ball_distance,
    m_envelope,
    make_weight_rule,
    project_into_ball,
    random_pl_function,
    scale_into_ball,
    seminorm_distance,
)

HARMONIC = SeminormMetricConfig.from_params({"c": "harmonic"})
ZERO = PLFunction.constant(0)


def dense_distance(c, f, g, horizon=8):
    """Float reference: sample |f - g| on a fine grid plus all breakpoints."""
    xs = np.union1d(np.linspace(-horizon, horizon, 3201), [float(x) for x in f.xs + g.xs])
    vals = np.array([abs(float(f(F(x)) - g(F(x)))) for x in xs])
    best = 0.0
    for n in range(horizon + 1):
        p = vals[np.abs(xs) <= n].max()
        best = max(best, float(c(n)) * p / (1 + p))
    return best


def test_weight_rules():
    assert make_weight_rule("harmonic")(3) == F(1, 4)
    geo = make_weight_rule({"rule": "geometric", "c0": "2", "ratio": "1/3"})
    assert geo(2) == F(2, 9)
    table = make_weight_rule({"rule": "table", "values": ["1", "1/2", "1/2"], "tail": "harmonic"})
    assert [table(n) for n in range(5)] == [1, F(1, 2), F(1, 2), F(3, 8), F(3, 10)]
    for bad in ({"rule": "table", "values": ["1/2", "1"]}, {"rule": "geometric", "ratio": "1"}, "zeta"):
        with pytest.raises(BadParams):
            make_weight_rule(bad)


def test_harmonic_first_index_matches_scan():
    rule = make_weight_rule("harmonic")
    for t in (F(3, 10), F(1, 2), F(1, 3), F(2, 7), F(1), F(5)):
        n = 0
        while rule(n) > t:
            n += 1
        assert rule.first_index_at_most(t) == n


@pytest.mark.parametrize("seed", range(8))
def test_seminorm_distance_matches_dense_evaluation(seed):
    rng = random.Random(seed)
    f, g = random_pl_function(rng), random_pl_function(rng)
    exact = seminorm_distance(HARMONIC, f, g)
    assert float(exact) == pytest.approx(dense_distance(HARMONIC.c, f, g), abs=1e-9)


def test_ball_profile_examples():
    p = ball_profile(HARMONIC, F(3, 10))
    assert p.active == (0, 1, 2)
    assert p.radii == (F(3, 7), F(3, 2), F(9))
    assert p.eps0 == F(1, 30)
    assert ball_profile(HARMONIC, 2).whole_space
    p = ball_profile(HARMONIC, F(1, 2))
    assert p.active == (0,) and p.radii == (F(1),) and p.eps0 == F(1, 2)


@pytest.mark.parametrize("t", [F(1, 7), F(3, 10), F(2, 5), F(9, 10)])
def test_ball_profile_invariants(t):
    p = ball_profile(HARMONIC, t)
    assert list(p.active) == list(range(len(p.active)))
    assert all(a < b for a, b in zip(p.radii, p.radii[1:]))
    assert p.eps0 > 0
    # c_k > t iff c_k > t + eps for eps below eps0
    eps = p.eps0 * F(999, 1000)
    for k in range(40):
        assert (HARMONIC.c(k) > t) == (HARMONIC.c(k) > t + eps)


def test_ball_profile_characterizes_the_ball():
    t = F(3, 10)
    prof = ball_profile(HARMONIC, t)
    rng = random.Random(5)
    for _ in range(40):
        f = random_pl_function(rng) * F(rng.randint(1, 8), 8)
        boxed = all(f.seminorm(k) <= r for k, r in zip(prof.active, prof.radii))
        assert boxed == (seminorm_distance(HARMONIC, f, ZERO) <= t)


def test_m_envelope_examples():
    assert m_envelope(HARMONIC, F(2, 5), F(1, 20)) == 5
    assert m_envelope(HARMONIC, F(1, 2), F(1, 8)) == F(2, 3)
    vals = [m_envelope(HARMONIC, F(3, 10), F(1, 30 * 2**j)) for j in range(1, 12)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < F(1, 100)
    with pytest.raises(EpsTooLarge):
        m_envelope(HARMONIC, F(3, 10), F(1, 30))
    assert m_envelope(HARMONIC, 2, F(1, 10)) == 0


def test_project_identity_inside_ball():
    f = PLFunction([-1, 0, 1], [0, F(1, 5), 0])
    assert seminorm_distance(HARMONIC, f, ZERO) <= F(3, 10)
    assert project_into_ball(HARMONIC, f, F(3, 10)) == f


def test_project_plateau_example():
    t = F(1, 2)
    f = PLFunction([F(-3, 2), -1, 1, F(3, 2)], [0, F(3, 2), F(3, 2), 0])
    excess = seminorm_distance(HARMONIC, f, ZERO) - t
    assert excess == F(1, 10)
    g = project_into_ball(HARMONIC, f, t)
    assert g.seminorm(0) <= 1
    assert seminorm_distance(HARMONIC, g, ZERO) <= t
    assert (f - g).sup_norm() == F(1, 2)
    assert (f - g).sup_norm() <= m_envelope(HARMONIC, t, excess) == F(1, 2)
    assert (f - g).sup_norm() <= m_envelope(HARMONIC, t, F(1, 6)) == 1


@pytest.mark.parametrize("seed", range(15))
@pytest.mark.parametrize("t,eps", [(F(3, 10), F(1, 64)), (F(1, 2), F(1, 8)), (F(1, 7), F(1, 200))])
def test_project_random_functions(seed, t, eps):
    rng = random.Random(seed)
    f = scale_into_ball(HARMONIC, random_pl_function(rng) * 50, t + eps)
    assert seminorm_distance(HARMONIC, f, ZERO) <= t + eps
    g = project_into_ball(HARMONIC, f, t)
    prof = ball_profile(HARMONIC, t)
    M = m_envelope(HARMONIC, t, eps)
    assert seminorm_distance(HARMONIC, g, ZERO) <= t
    diff = f - g
    assert diff.sup_norm() <= M
    assert seminorm_distance(HARMONIC, f, g) <= HARMONIC.c_first * M / (1 + M)
    reach = prof.n0 + F(1, 2)
    assert all(diff(x) == 0 for x in diff.xs if abs(x) >= reach)
    for j in (1, 2, 5):
        assert diff.seminorm(prof.n0 + j) == diff.seminorm(prof.n0)


def test_function_ball_distance_examples():
    t = F(1, 2)
    assert function_ball_distance(HARMONIC, PLFunction.constant(F(1, 3)), t) == CertifiedInterval.exact(0)
    bd = function_ball_distance(HARMONIC, PLFunction.constant(2), t)
    assert bd.lower == F(1, 2)
    assert bd.upper >= F(1, 2)


def test_function_ball_distance_upper_vanishes_with_eps():
    t = F(3, 10)
    base = PLFunction([-3, -1, 0, 2, 4], [1, -2, 3, 5, -1])
    uppers = []
    for j in (40, 80, 160, 320, 640):
        f = scale_into_ball(HARMONIC, base * 100, t + F(1, j))
        bd = function_ball_distance(HARMONIC, f, t)
        assert bd.lower <= bd.upper
        uppers.append(bd.upper)
    assert all(b <= a for a, b in zip(uppers, uppers[1:]))
    assert uppers[-1] < F(1, 100)


def test_space_handle_translation_invariance():
    space = make_builtin_space("seminorm_function")
    rng = random.Random(9)
    for _ in range(10):
        f, g, z = (random_pl_function(rng) for _ in range(3))
        assert space._distance(f + z, g + z) == space._distance(f, g)
