from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from corona_lab.spaces.sequence import (
    SparseSeq,
    allocate_budget,
    phi,
    phi_inverse,
    sequence_distance,
)
from oracles import GRID, brute_force_ball_distance


def test_sparse_seq_drops_zeros_and_validates():
    s = SparseSeq({1: F(0), 3: F(1, 2)})
    assert s.support == [3]
    assert s[1] == 0
    with pytest.raises(ValueError):
        SparseSeq({0: 1})
    assert SparseSeq.decode(s.encode()) == s
    assert s.encode() == {"3": "1/2"}


def test_phi_examples():
    for k in (1, 2, 5, 40):
        assert phi(k, F(1, k)) == 1
        assert phi(k, F(2, k)) == 1 + F(1, k)
        assert phi(k, F(-2, k)) == 1 + F(1, k)
    assert phi(3, 0) == 0
    with pytest.raises(ValueError):
        phi(0, 1)


@pytest.mark.parametrize("k", [1, 2, 3, 9])
def test_phi_membership_lemma(k):
    for i in range(-50, 51):
        u = F(i, 10 * k)
        assert phi(k, u) >= min(k * abs(u), 1)
        if phi(k, u) <= 1:
            assert abs(u) <= F(1, k)
        assert phi_inverse(k, phi(k, abs(u))) == abs(u)


def test_allocate_budget_examples():
    for k in range(1, 40):
        a, value = allocate_budget(SparseSeq.spike(k, F(2, k)), 1)
        assert a == SparseSeq.spike(k, F(1, k)) and value == 1
    assert allocate_budget(SparseSeq(), F(1, 3)) == (SparseSeq(), 0)
    for k in (1, 4, 11):
        assert allocate_budget(SparseSeq.spike(k, F(1, 2 * k)), F(1, 2))[1] == 0


def test_allocate_budget_beats_greedy_on_a_concave_instance():
    # spending by best marginal gain first trims the flat tail of coordinate 2
    # and ends near 1.25; absorbing coordinate 2 entirely leaves exactly 1
    y = SparseSeq({2: F(1), 3: F(1, 3)})
    a, value = allocate_budget(y, F(3, 2))
    assert value == 1
    assert a == SparseSeq.spike(2, F(1))


def _random_instance(rng):
    size = rng.randint(1, 3)
    idx = rng.sample(range(1, 5), size)
    y = {n: F(rng.randint(-90, 90) or 1, GRID) for n in idx}
    return y, rng.choice((F(1, 2), F(1), F(3, 2)))


@pytest.mark.parametrize("seed", range(25))
def test_allocate_budget_matches_grid_brute_force(seed):
    rng = random.Random(seed)
    y, t = _random_instance(rng)
    a, value = allocate_budget(SparseSeq(y), t)
    brute = brute_force_ball_distance(y, t)
    # the exact optimum can only undercut the grid optimum, by at most one
    # grid step times the largest slope of any Phi_n
    assert float(value) <= brute + 1e-9
    assert brute - float(value) <= max(y) / GRID + 1e-9


@pytest.mark.parametrize("seed", range(25))
def test_allocate_budget_returns_a_feasible_minimizer(seed):
    rng = random.Random(1000 + seed)
    y, t = _random_instance(rng)
    yy = SparseSeq(y)
    a, value = allocate_budget(yy, t)
    assert set(a.support) <= set(yy.support)
    assert sequence_distance(SparseSeq(), a) <= t
    assert sequence_distance(yy, a) == value
    assert (value == 0) == (sequence_distance(SparseSeq(), yy) <= t)


def test_allocate_budget_requires_positive_budget():
    with pytest.raises(ValueError):
        allocate_budget(SparseSeq.spike(1, 1), 0)
