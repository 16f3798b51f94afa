"""The real line with the bounded metric ``|x - y| / (1 + |x - y|)``.

For ``t < 1`` the closed ball is the interval ``[x - t/(1-t), x + t/(1-t)]``;
for ``t >= 1`` it is the whole line.
"""

from __future__ import annotations

from fractions import Fraction

from ..core import (
    CertifiedInterval,
    Expectation,
    FiniteSet,
    PointKind,
    PointOutsideSpace,
    ResolutionTooLow,
    SpaceHandle,
    SpaceMetadata,
    WitnessFamily,
    parse_scalar,
)

ZERO, ONE = Fraction(0), Fraction(1)


def remetrize(gap: Fraction) -> Fraction:
    """Metric value of an ambient gap ``|x - y|``."""
    return gap / (1 + gap)


def ball_radius(t: Fraction) -> Fraction | None:
    """Ambient half-width of ``B(x, t)``, or None when the ball is the whole line."""
    return t / (1 - t) if t < 1 else None


def ball_interval(x: Fraction, t: Fraction) -> tuple[Fraction, Fraction] | None:
    r = ball_radius(t)
    return None if r is None else (x - r, x + r)


class BoundedLine(SpaceHandle):
    name = "bounded_line"
    point_kind = PointKind.SCALAR_POINT
    exact = True
    metadata = SpaceMetadata(translation_invariant=True)
    zero = ZERO

    def __init__(self, params=None):
        super().__init__(params)
        t = parse_scalar(self.params.get("shrink_t", Fraction(9, 10)))
        self.register_family(WitnessFamily(
            "shrink", ZERO, t,
            lambda k: ball_radius(t + (1 - t) / (k + 1)),
            Expectation.UNKNOWN,
            "right endpoints of B(0, t + (1-t)/(k+1))",
        ))

    def validate(self, p):
        try:
            return parse_scalar(p)
        except Exception as exc:
            raise PointOutsideSpace(f"not a rational point: {p!r}") from exc

    def _distance(self, p, q):
        return remetrize(abs(p - q))

    def add(self, p, q):
        return p + q

    def sub(self, p, q):
        return p - q

    def encode_point(self, p):
        return f"{p.numerator}/{p.denominator}"

    def decode_point(self, obj):
        return parse_scalar(obj)

    def random_point(self, rng):
        return Fraction(rng.randint(-60, 60), rng.choice((1, 2, 3, 5, 7)))

    def _ball_backend(self, x, t, y):
        r = ball_radius(t)
        if r is None:
            return CertifiedInterval.exact(ZERO)
        return CertifiedInterval.exact(remetrize(max(ZERO, abs(y - x) - r)))

    def eps0(self, t):
        # below this the enlarged ball is still a proper interval
        return 1 - t if t < 1 else None

    def corona_sup_bound(self, x, t, eps):
        r = ball_radius(t)
        if r is None:
            return ZERO
        outer = ball_radius(t + eps)
        if outer is None:
            # sup over the whole line is approached, never attained
            return ONE
        return remetrize(outer - r)

    def corona_witnesses(self, x, t, eps):
        outer = ball_radius(t + eps)
        return [] if outer is None else [x - outer, x + outer]

    def sample_ball(self, x, t, resolution, rng):
        """Uniform grid including both endpoints.  The covering radius is half the
        grid step in ambient units, converted through ``remetrize``.  For
        ``t >= 1`` the grid spans ``[x - resolution, x + resolution]`` and the
        only honest cover radius is 1, the diameter of the space."""
        if resolution < 2:
            raise ResolutionTooLow("need at least 2 samples")
        r = ball_radius(t)
        if r is None:
            half, cover = Fraction(resolution), ONE
        else:
            half = r
        step = 2 * half / (resolution - 1)
        pts = [x - half + i * step for i in range(resolution)]
        if r is not None:
            cover = remetrize(step / 2)
        return FiniteSet(pts, covering_radius=cover)
