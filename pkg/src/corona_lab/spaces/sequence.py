"""Finitely supported real sequences with the metric ``sum_n Phi_n(a_n - b_n)``.

``Phi_k(u) = k|u|`` for ``|u| <= 1/k`` and ``1 + |u| - 1/k`` beyond.  The
slope drops from ``k`` to ``1`` at the knee, so ``Phi_k`` is *concave* on
``[0, inf)``; this is exactly why the space fails the weak corona property
and why :func:`allocate_budget` cannot be a greedy.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from ..core import (
    CertifiedInterval,
    Expectation,
    FiniteSet,
    PointKind,
    PointOutsideSpace,
    SpaceHandle,
    SpaceMetadata,
    WitnessFamily,
    parse_scalar,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class SparseSeq(Mapping):
    """Immutable map ``index (>= 1) -> nonzero Fraction``; absent indices are zero."""

    __slots__ = ("_data", "_hash")

    def __init__(self, entries: Mapping | Iterable = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        data = {}
        for idx, val in items:
            idx = int(idx)
            if idx < 1:
                raise ValueError(f"sequence indices start at 1, got {idx}")
            val = parse_scalar(val)
            if val:
                data[idx] = val
        self._data = dict(sorted(data.items()))
        self._hash = None

    @classmethod
    def spike(cls, k: int, value) -> "SparseSeq":
        """``value * delta_k``."""
        return cls({k: value})

    def __getitem__(self, idx):
        return self._data.get(idx, ZERO)

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __contains__(self, idx):
        return idx in self._data

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in self._data.items())
        return f"SparseSeq({{{body}}})"

    def __eq__(self, other):
        if isinstance(other, SparseSeq):
            return self._data == other._data
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._data.items()))
        return self._hash

    @property
    def support(self) -> list[int]:
        return list(self._data)

    def __add__(self, other: "SparseSeq") -> "SparseSeq":
        keys = set(self._data) | set(other._data)
        return SparseSeq({k: self[k] + other[k] for k in keys})

    def __sub__(self, other: "SparseSeq") -> "SparseSeq":
        keys = set(self._data) | set(other._data)
        return SparseSeq({k: self[k] - other[k] for k in keys})

    def __neg__(self):
        return SparseSeq({k: -v for k, v in self._data.items()})

    def __mul__(self, scalar):
        c = parse_scalar(scalar)
        return SparseSeq({k: c * v for k, v in self._data.items()})

    __rmul__ = __mul__

    def encode(self) -> dict:
        return {str(k): f"{v.numerator}/{v.denominator}" for k, v in self._data.items()}

    @classmethod
    def decode(cls, obj: Mapping) -> "SparseSeq":
        return cls({int(k): v for k, v in obj.items()})


def phi(k: int, u) -> Fraction:
    if k < 1:
        raise ValueError("phi is indexed from k = 1")
    a = abs(parse_scalar(u))
    knee = Fraction(1, k)
    return k * a if a <= knee else 1 + a - knee


def phi_inverse(k: int, r: Fraction) -> Fraction:
    """Nonnegative ``u`` with ``phi(k, u) = r``."""
    return r / k if r <= 1 else r - 1 + Fraction(1, k)


def sequence_distance(a: SparseSeq, b: SparseSeq) -> Fraction:
    keys = set(a.support) | set(b.support)
    return sum((phi(n, a[n] - b[n]) for n in keys), ZERO)


def _reduced_cost(k: int, y: Fraction, budget: Fraction) -> tuple[Fraction, Fraction]:
    """Move a coordinate of magnitude ``y`` toward the origin by ``u`` with
    ``phi(k, u) = budget``; return ``(u, phi(k, y - u))``."""
    u = phi_inverse(k, budget)
    return u, phi(k, y - u)


def allocate_budget(y: SparseSeq, t) -> tuple[SparseSeq, Fraction]:
    """Exact ``min sum_n Phi_n(y_n - a_n)`` subject to ``sum_n Phi_n(a_n) <= t``.

    Returns the minimizer ``a`` (supported on ``support(y)``) and the minimum,
    i.e. ``d(y, B(0, t))``.

    Writing ``b_n = Phi_n(a_n)`` for the budget spent on coordinate ``n``, each
    coordinate's residual ``Phi_n(|y_n| - Phi_n^{-1}(b_n))`` is concave and
    decreasing in ``b_n``.  A concave objective over the polytope
    ``{0 <= b_n <= Phi_n(y_n), sum b_n <= t}`` is minimized at a vertex: every
    coordinate is either untouched or fully absorbed, except at most one that
    takes the leftover budget.  The vertices are enumerated exactly; ties go to
    the lexicographically smallest set of absorbed indices.  Cost is
    ``O(2^S * S)`` for support size ``S``.
    """
    t = parse_scalar(t)
    if t <= 0:
        raise ValueError("allocate_budget requires t > 0")
    support = y.support
    full = {n: phi(n, y[n]) for n in support}
    total = sum(full.values(), ZERO)
    if total <= t:
        return y, ZERO

    best_value = None
    best_choice = None
    for size in range(len(support) + 1):
        for absorbed in combinations(support, size):
            spent = sum((full[n] for n in absorbed), ZERO)
            if spent > t:
                continue
            rest = [n for n in support if n not in absorbed]
            untouched = total - spent
            left = t - spent
            # leftover budget goes to the single coordinate where it helps most
            partial = None
            value = untouched
            if left > 0:
                for n in rest:
                    if left >= full[n]:
                        continue
                    u, residual = _reduced_cost(n, abs(y[n]), left)
                    candidate = untouched - full[n] + residual
                    if candidate < value:
                        value, partial = candidate, (n, u)
            if best_value is None or value < best_value:
                best_value, best_choice = value, (absorbed, partial)

    absorbed, partial = best_choice
    a = {n: y[n] for n in absorbed}
    if partial is not None:
        n, u = partial
        a[n] = u if y[n] > 0 else -u
    return SparseSeq(a), best_value


def coordinate_spikes(radius: Fraction, indices: Iterable[int]) -> list[SparseSeq]:
    """``+-u delta_j`` with ``Phi_j(u) = radius``: the farthest points of the ball along each axis."""
    out = []
    for j in indices:
        u = phi_inverse(j, radius)
        out += [SparseSeq.spike(j, u), SparseSeq.spike(j, -u)]
    return out


# powers of two reach the spike index ~1/eps needed to see the missing corona
_SPIKE_POWERS = [2**i for i in range(1, 41)]


class PhiSequenceSpace(SpaceHandle):
    name = "phi_sequence"
    point_kind = PointKind.SPARSE_SEQ
    exact = True
    metadata = SpaceMetadata(translation_invariant=True, is_tvs=True)
    zero = SparseSeq()

    def __init__(self, params=None):
        super().__init__(params)
        self.register_family(WitnessFamily(
            "spike", self.zero, ONE,
            lambda k: SparseSeq.spike(k, Fraction(2, k)),
            Expectation.VIOLATES_WCP,
            "(2/k) delta_k at distance 1 + 1/k from 0 and distance 1 from B(0, 1)",
        ))

    def validate(self, p):
        if not isinstance(p, SparseSeq):
            raise PointOutsideSpace(f"not a SparseSeq: {p!r}")
        return p

    def _distance(self, p, q):
        return sequence_distance(p, q)

    def add(self, p, q):
        return p + q

    def sub(self, p, q):
        return p - q

    def encode_point(self, p):
        return p.encode()

    def decode_point(self, obj):
        return SparseSeq.decode(obj)

    def random_point(self, rng):
        size = rng.randint(0, 3)
        idx = rng.sample(range(1, 9), size)
        return SparseSeq({i: Fraction(rng.randint(-12, 12), rng.choice((1, 2, 3, 4, 6))) for i in idx})

    def _ball_backend(self, x, t, y):
        _, value = allocate_budget(y, t)
        return CertifiedInterval.exact(value)

    def corona_witnesses(self, x, t, eps):
        return [x + s for s in coordinate_spikes(t + eps, self._spike_indices(16))]

    def _spike_indices(self, resolution):
        return sorted(set(range(1, resolution + 1)) | set(_SPIKE_POWERS))

    def sample_ball(self, x, t, resolution, rng):
        """Structured heuristic sampler: axis spikes at several radii, two-coordinate
        splits and (with ``rng``) random scaled points.  Not a certified cover."""
        pts = [self.zero]
        indices = self._spike_indices(resolution)
        for frac in (ONE, Fraction(1, 2)):
            pts += coordinate_spikes(t * frac, indices)
        half = t / 2
        for j in range(1, resolution):
            u, v = phi_inverse(j, half), phi_inverse(j + 1, half)
            pts += [SparseSeq({j: u, j + 1: v}), SparseSeq({j: u, j + 1: -v})]
        if rng is not None:
            for _ in range(resolution):
                p = self.random_point(rng)
                r = sequence_distance(p, self.zero)
                if r > t:
                    p = p * (t / r)
                    # scaling a concave penalty can overshoot; keep only true members
                    if sequence_distance(p, self.zero) > t:
                        continue
                pts.append(p)
        return FiniteSet([x + p for p in pts], covering_radius=None)
