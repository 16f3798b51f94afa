"""Continuous piecewise-linear functions on the real line with exact breakpoints.

A :class:`PLFunction` is linear between consecutive breakpoints and constant
outside the breakpoint range.  All arithmetic is over :class:`Fraction`.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Callable, Iterable

from ..core import parse_scalar


class PLFunction:
    __slots__ = ("xs", "ys", "_hash")

    def __init__(self, xs: Iterable, ys: Iterable):
        xs = tuple(parse_scalar(x) for x in xs)
        ys = tuple(parse_scalar(y) for y in ys)
        if not xs:
            raise ValueError("a PLFunction needs at least one breakpoint")
        if len(xs) != len(ys):
            raise ValueError("breakpoint abscissae and ordinates differ in length")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        self.xs = xs
        self.ys = ys
        self._hash = None

    @classmethod
    def constant(cls, value) -> "PLFunction":
        return cls([0], [value])

    @classmethod
    def from_points(cls, points: Iterable[tuple]) -> "PLFunction":
        xs, ys = zip(*points)
        return cls(xs, ys)

    def __repr__(self):
        pts = ", ".join(f"({x}, {y})" for x, y in zip(self.xs, self.ys))
        return f"PLFunction([{pts}])"

    def __call__(self, x) -> Fraction:
        xs, ys = self.xs, self.ys
        if x <= xs[0]:
            return ys[0]
        if x >= xs[-1]:
            return ys[-1]
        i = bisect_right(xs, x)
        x0, x1 = xs[i - 1], xs[i]
        y0, y1 = ys[i - 1], ys[i]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def points(self) -> list[tuple[Fraction, Fraction]]:
        return list(zip(self.xs, self.ys))

    # canonical form ------------------------------------------------------------
    def simplified(self) -> "PLFunction":
        """Drop breakpoints that do not change the function."""
        pts = self.points()
        while len(pts) > 1 and pts[0][1] == pts[1][1]:
            pts.pop(0)
        while len(pts) > 1 and pts[-1][1] == pts[-2][1]:
            pts.pop()
        out = [pts[0]]
        for i in range(1, len(pts) - 1):
            (xa, ya), (xb, yb), (xc, yc) = out[-1], pts[i], pts[i + 1]
            if (yb - ya) * (xc - xb) != (yc - yb) * (xb - xa):
                out.append(pts[i])
        if len(pts) > 1:
            out.append(pts[-1])
        return PLFunction.from_points(out)

    def _key(self):
        s = self.simplified()
        if len(s.xs) == 1:
            return ((), s.ys)
        return (s.xs, s.ys)

    def __eq__(self, other):
        if not isinstance(other, PLFunction):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    # algebra -------------------------------------------------------------------
    def _combine(self, other: "PLFunction", op: Callable) -> "PLFunction":
        xs = sorted(set(self.xs) | set(other.xs))
        return PLFunction(xs, [op(self(x), other(x)) for x in xs])

    def __add__(self, other):
        if isinstance(other, PLFunction):
            return self._combine(other, lambda a, b: a + b)
        return PLFunction(self.xs, [y + parse_scalar(other) for y in self.ys])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PLFunction):
            return self._combine(other, lambda a, b: a - b)
        return PLFunction(self.xs, [y - parse_scalar(other) for y in self.ys])

    def __neg__(self):
        return PLFunction(self.xs, [-y for y in self.ys])

    def __mul__(self, scalar):
        c = parse_scalar(scalar)
        return PLFunction(self.xs, [c * y for y in self.ys])

    __rmul__ = __mul__

    def _with_crossings(self, other: "PLFunction") -> list[Fraction]:
        """Union of breakpoints plus every point where ``self - other`` changes sign."""
        xs = sorted(set(self.xs) | set(other.xs))
        out = [xs[0]]
        for a, b in zip(xs, xs[1:]):
            ha = self(a) - other(a)
            hb = self(b) - other(b)
            if (ha < 0 < hb) or (hb < 0 < ha):
                out.append(a + (b - a) * ha / (ha - hb))
            out.append(b)
        return out

    def maximum(self, other) -> "PLFunction":
        if not isinstance(other, PLFunction):
            other = PLFunction.constant(other)
        xs = self._with_crossings(other)
        return PLFunction(xs, [max(self(x), other(x)) for x in xs])

    def minimum(self, other) -> "PLFunction":
        if not isinstance(other, PLFunction):
            other = PLFunction.constant(other)
        xs = self._with_crossings(other)
        return PLFunction(xs, [min(self(x), other(x)) for x in xs])

    def __abs__(self):
        return self.maximum(-self)

    def clip(self, bound) -> "PLFunction":
        """Pointwise clip to ``[-bound, bound]`` for a nonnegative constant ``bound``."""
        return self.minimum(bound).maximum(-parse_scalar(bound))

    def shifted(self, dx) -> "PLFunction":
        """``x -> self(x - dx)``."""
        dx = parse_scalar(dx)
        return PLFunction([x + dx for x in self.xs], self.ys)

    # norms ---------------------------------------------------------------------
    def sup_abs(self, lo, hi) -> Fraction:
        """``max |f(x)|`` over ``lo <= x <= hi``; exact since |f| is PL."""
        lo, hi = parse_scalar(lo), parse_scalar(hi)
        if hi < lo:
            raise ValueError("empty interval")
        cand = [lo, hi] + [x for x in self.xs if lo < x < hi]
        return max(abs(self(x)) for x in cand)

    def seminorm(self, n) -> Fraction:
        """``p_n(f) = max_{|x| <= n} |f(x)|``."""
        return self.sup_abs(-n, n)

    def sup_norm(self) -> Fraction:
        return max(abs(y) for y in self.ys)

    @property
    def reach(self) -> Fraction:
        """Smallest ``r >= 0`` such that every breakpoint lies in ``[-r, r]``."""
        return max(abs(self.xs[0]), abs(self.xs[-1]))

    def encode(self) -> list:
        return [[f"{x.numerator}/{x.denominator}", f"{y.numerator}/{y.denominator}"]
                for x, y in zip(self.xs, self.ys)]

    @classmethod
    def decode(cls, obj) -> "PLFunction":
        return cls([p[0] for p in obj], [p[1] for p in obj])


def breakpoints_between(f: PLFunction, lo, hi) -> list[Fraction]:
    return [x for x in f.xs if lo < x < hi]
