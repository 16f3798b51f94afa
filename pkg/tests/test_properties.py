from __future__ import annotations

import random
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from corona_lab.core import BoundKind, ball_distance, check_metric_axioms, distance, in_closed_ball
from corona_lab.hyperspace import hausdorff, sample_closed_ball
from corona_lab.spaces import make_builtin_space
from corona_lab.spaces.plfunc import PLFunction
from corona_lab.spaces.sequence import SparseSeq, allocate_budget, phi, sequence_distance
from conftest import EXACT_SPACES

SEQ = make_builtin_space("phi_sequence")
LINE = make_builtin_space("bounded_line")
FUNC = make_builtin_space("seminorm_function")
DISC = make_builtin_space("discrete")
EUC = make_builtin_space("euclidean_plane")
X1 = make_builtin_space("punctured_plane_x1")
X2 = make_builtin_space("closed_punctured_x2")

small = st.fractions(min_value=-3, max_value=3, max_denominator=8)
radii = st.fractions(min_value=F(1, 8), max_value=3, max_denominator=16)
seqs = st.dictionaries(st.integers(1, 6), small, max_size=3).map(SparseSeq)


@st.composite
def pl_functions(draw):
    xs = sorted(draw(st.sets(st.fractions(-3, 3, max_denominator=4), min_size=1, max_size=4)))
    ys = draw(st.lists(small, min_size=len(xs), max_size=len(xs)))
    return PLFunction(xs, ys)


planar = st.tuples(st.floats(-3, 3, allow_nan=False), st.floats(-3, 3, allow_nan=False))

POINTS = {
    "phi_sequence": (SEQ, seqs),
    "bounded_line": (LINE, small),
    "seminorm_function": (FUNC, pl_functions()),
    "discrete": (DISC, st.integers(0, 4)),
}


def test_metric_axioms_on_fifty_point_samples():
    for name in EXACT_SPACES:
        space = make_builtin_space(name)
        rng = random.Random(0)
        sample = [space.random_point(rng) for _ in range(50)]
        assert check_metric_axioms(space, sample).verdict == "PASS", name


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(POINTS)), st.data())
def test_certified_intervals_are_ordered(name, data):
    space, points = POINTS[name]
    x, y = data.draw(points), data.draw(points)
    t = data.draw(radii)
    bd = ball_distance(space, x, t, y)
    assert 0 <= bd.lower <= bd.upper
    if bd.lower_kind is BoundKind.ANALYTIC and bd.upper_kind is BoundKind.ANALYTIC:
        assert bd.lower == bd.upper
    assert in_closed_ball(space, x, t, y) == (bd.upper == 0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["phi_sequence", "bounded_line", "discrete"]), st.data())
def test_ball_distance_monotone_in_radius(name, data):
    space, points = POINTS[name]
    x, y = data.draw(points), data.draw(points)
    t1, t2 = sorted((data.draw(radii), data.draw(radii)))
    assert ball_distance(space, x, t1, y).lower >= ball_distance(space, x, t2, y).upper


@settings(max_examples=40, deadline=None)
@given(pl_functions(), pl_functions(), radii, radii)
def test_function_space_monotone_up_to_widths(f, g, a, b):
    t1, t2 = sorted((a, b))
    lo = ball_distance(FUNC, f, t1, g)
    hi = ball_distance(FUNC, f, t2, g)
    assert lo.lower >= hi.upper - lo.width - hi.width


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["phi_sequence", "bounded_line", "seminorm_function"]), st.data())
def test_translation_invariance(name, data):
    space, points = POINTS[name]
    p, q, z = data.draw(points), data.draw(points), data.draw(points)
    assert distance(space, space.add(p, z), space.add(q, z)) == distance(space, p, q)


@settings(max_examples=80, deadline=None)
@given(planar, st.floats(0.1, 3), planar)
def test_euclidean_ball_distance_is_normed(x, t, y):
    bd = ball_distance(EUC, x, t, y)
    d = ((x[0] - y[0]) ** 2 + (x[1] - y[1]) ** 2) ** 0.5
    assert abs(bd.lower - max(0.0, d - t)) <= 1e-9


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([X1, X2]), planar, st.floats(0.1, 3), planar)
def test_punctured_backend_bounded_by_any_feasible_point(space, x, t, y):
    if not (space.member(x) and space.member(y)):
        return
    bd = ball_distance(space, x, t, y)
    assert bd.lower >= 0
    # the center is always feasible, so the distance to it bounds the infimum
    assert bd.upper <= ((x[0] - y[0]) ** 2 + (x[1] - y[1]) ** 2) ** 0.5 + 1e-9
    for p in sample_closed_ball(space, x, t, 6):
        assert bd.lower <= ((p[0] - y[0]) ** 2 + (p[1] - y[1]) ** 2) ** 0.5 + 1e-9


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(POINTS)), st.data(), st.integers(2, 10), st.integers(0, 2**32))
def test_samplers_emit_ball_members(name, data, resolution, seed):
    space, points = POINTS[name]
    x = data.draw(points)
    t = data.draw(radii)
    for p in sample_closed_ball(space, x, t, resolution, seed):
        assert in_closed_ball(space, x, t, p)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 30), small)
def test_phi_even_and_nondecreasing(k, u):
    assert phi(k, u) == phi(k, -u)
    assert phi(k, abs(u) + F(1, 16)) >= phi(k, u)
    assert phi(k, u) >= min(k * abs(u), 1)


@settings(max_examples=80, deadline=None)
@given(seqs, radii)
def test_allocate_budget_feasible_and_consistent(y, t):
    a, value = allocate_budget(y, t)
    assert sequence_distance(SparseSeq(), a) <= t
    assert sequence_distance(y, a) == value
    assert set(a.support) <= set(y.support)


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=1, max_size=5), st.lists(small, min_size=1, max_size=5),
       st.lists(small, min_size=1, max_size=5))
def test_hausdorff_is_a_metric_on_finite_sets(A, B, C):
    assert hausdorff(LINE, A, B) == hausdorff(LINE, B, A)
    assert hausdorff(LINE, A, C) <= hausdorff(LINE, A, B) + hausdorff(LINE, B, C)
    assert (hausdorff(LINE, A, B) == 0) == (set(A) == set(B))
