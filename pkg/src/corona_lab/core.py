"""Metric-space contract, certified intervals and space-agnostic operations.

Every concrete space subclasses :class:`SpaceHandle`.  The module-level
functions (:func:`distance`, :func:`in_closed_ball`, :func:`ball_distance`,
:func:`check_metric_axioms`) are the entry points the rest of the package
uses; they validate inputs and dispatch to the space.

Exact spaces work with :class:`fractions.Fraction` throughout.  Planar spaces
use floats and compare with :data:`PLANAR_TOL`.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Any, Callable, Sequence

Scalar = Fraction
Number = Fraction | float

PLANAR_TOL = 1e-9


class CoronaLabError(Exception):
    """Base class for all errors raised by the package."""

    code = "ERROR"


class PointOutsideSpace(CoronaLabError):
    code = "POINT_OUTSIDE_SPACE"


class NoBackend(CoronaLabError):
    code = "NO_BACKEND"


class UnknownSpace(CoronaLabError):
    code = "UNKNOWN_SPACE"


class BadParams(CoronaLabError):
    code = "BAD_PARAMS"


class EpsTooLarge(CoronaLabError):
    code = "EPS_TOO_LARGE"


class ResolutionTooLow(CoronaLabError):
    code = "RESOLUTION_TOO_LOW"


class FamilyCenterMismatch(CoronaLabError):
    code = "FAMILY_CENTER_MISMATCH"


class UnsupportedFormat(CoronaLabError):
    code = "UNSUPPORTED_FORMAT"


def parse_scalar(value: Any) -> Fraction:
    """Convert ``"p/q"``, decimal strings, ints or Fractions to an exact Fraction.

    Floats are refused: a float literal has already lost exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise BadParams(f"not a rational literal: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise BadParams(f"not a rational literal: {value!r}") from exc
    raise BadParams(f"not a rational literal: {value!r}")


def format_scalar(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class BoundKind(str, enum.Enum):
    ANALYTIC = "ANALYTIC"
    WITNESS = "WITNESS"
    SAMPLED = "SAMPLED"


@dataclass(frozen=True)
class CertifiedInterval:
    """Enclosure ``[lower, upper]`` of a distance, with the provenance of each bound."""

    lower: Number
    upper: Number
    lower_kind: BoundKind = BoundKind.ANALYTIC
    upper_kind: BoundKind = BoundKind.ANALYTIC

    def __post_init__(self):
        if self.lower < 0:
            raise ValueError(f"negative lower bound {self.lower}")
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")
        if (
            self.lower_kind is BoundKind.ANALYTIC
            and self.upper_kind is BoundKind.ANALYTIC
            and self.lower != self.upper
        ):
            raise ValueError("two analytic bounds must coincide")

    @classmethod
    def exact(cls, value: Number) -> "CertifiedInterval":
        return cls(value, value)

    @property
    def width(self) -> Number:
        return self.upper - self.lower

    @property
    def is_zero(self) -> bool:
        return self.upper == 0

    def scaled(self, factor: Number) -> "CertifiedInterval":
        return CertifiedInterval(
            self.lower * factor, self.upper * factor, self.lower_kind, self.upper_kind
        )


class PointKind(str, enum.Enum):
    PLANAR = "PLANAR"
    SCALAR_POINT = "SCALAR_POINT"
    SPARSE_SEQ = "SPARSE_SEQ"
    PL_FUNCTION = "PL_FUNCTION"
    FINITE_LABEL = "FINITE_LABEL"


class Expectation(str, enum.Enum):
    VIOLATES_WCP = "VIOLATES_WCP"
    SATISFIES_WCP = "SATISFIES_WCP"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SpaceMetadata:
    # declared, never inferred
    boundedly_compact: bool = False
    translation_invariant: bool = False
    is_tvs: bool = False


@dataclass(frozen=True)
class WitnessFamily:
    """A sequence ``k -> y_k`` (k >= 1) probed against the ball ``B(center, t)``."""

    name: str
    center: Any
    t: Number
    generator: Callable[[int], Any]
    expected: Expectation = Expectation.UNKNOWN
    description: str = ""

    def __call__(self, k: int):
        if k < 1:
            raise ValueError("witness families are indexed from k = 1")
        return self.generator(k)


@dataclass
class FiniteSet:
    """Finite sample of a closed bounded set.

    ``covering_radius`` is ``None`` when uncertified.  ``nominal_radius`` is the
    spacing of the underlying grid for samplers that filter a certified grid
    (and so lose the certificate near the removed region).
    """

    points: list
    covering_radius: Number | None = None
    nominal_radius: Number | None = None

    def __post_init__(self):
        if not self.points:
            raise ValueError("FiniteSet must be nonempty")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def certified(self) -> bool:
        return self.covering_radius is not None


class SpaceHandle:
    """A registered metric space.

    Subclasses implement :meth:`_distance` and usually :meth:`_ball_backend`
    and :meth:`sample_ball`.  Translation-invariant spaces also implement
    :meth:`add`, :meth:`sub` and :attr:`zero`; ball queries on them are
    recentred at the origin before dispatch.
    """

    name: str = ""
    point_kind: PointKind
    exact: bool = True
    metadata = SpaceMetadata()

    def __init__(self, params: dict | None = None):
        self.params = dict(params or {})
        self.witness_families: dict[str, WitnessFamily] = {}

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    def register_family(self, family: WitnessFamily) -> None:
        self.witness_families[family.name] = family

    # points -----------------------------------------------------------------
    def validate(self, p):
        """Return ``p`` normalized; raise :class:`PointOutsideSpace` if invalid."""
        return p

    def random_point(self, rng):
        raise NotImplementedError

    def encode_point(self, p):
        raise NotImplementedError

    def decode_point(self, obj):
        raise NotImplementedError

    def point_key(self, p):
        """Hashable key identifying ``p`` as a set element."""
        return p

    # metric -----------------------------------------------------------------
    def _distance(self, p, q) -> Number:
        raise NotImplementedError

    def coerce_radius(self, t) -> Number:
        return parse_scalar(t) if self.exact else float(t)

    def _ball_backend(self, x, t, y) -> CertifiedInterval | None:
        return None

    def sample_ball(self, x, t, resolution: int, rng) -> FiniteSet | None:
        return None

    # translation structure ---------------------------------------------------
    zero: Any = None

    def add(self, p, q):
        raise NotImplementedError

    def sub(self, p, q):
        raise NotImplementedError

    # corona hooks ------------------------------------------------------------
    def eps0(self, t) -> Number | None:
        """Threshold below which the corona property is probed, or None (no threshold)."""
        return None

    def corona_witnesses(self, x, t, eps) -> list:
        """Extra candidate points y with d(x, y) <= t + eps for corona ratios."""
        return []

    def corona_sup_bound(self, x, t, eps) -> Number | None:
        """Analytic upper bound of sup d(y, B(x,t)) over d(x,y) <= t + eps."""
        return None


def _tol(space: SpaceHandle) -> float:
    return 0 if space.exact else PLANAR_TOL


def distance(space: SpaceHandle, p, q) -> Number:
    p = space.validate(p)
    q = space.validate(q)
    return space._distance(p, q)


def in_closed_ball(space: SpaceHandle, x, t, y) -> bool:
    t = space.coerce_radius(t)
    if t < 0:
        raise ValueError("radius must be nonnegative")
    return distance(space, x, y) <= t + _tol(space)


def ball_distance(space: SpaceHandle, x, t, y) -> CertifiedInterval:
    """Enclosure of ``inf { d(y, z) : z in B(x, t) }``.

    Falls back to a sampled minimum over :meth:`SpaceHandle.sample_ball` when
    the space registers no analytic backend.
    """
    t = space.coerce_radius(t)
    if t <= 0:
        raise ValueError("ball_distance requires t > 0")
    x = space.validate(x)
    y = space.validate(y)
    if space.metadata.translation_invariant:
        y = space.sub(y, x)
        x = space.zero
    if space._distance(x, y) <= t + _tol(space):
        return CertifiedInterval.exact(type(t)(0))
    result = space._ball_backend(x, t, y)
    if result is not None:
        return result
    sample = space.sample_ball(x, t, 64, None)
    if sample is None:
        raise NoBackend(f"space {space.name!r} has neither a ball backend nor a sampler")
    best = min(space._distance(y, z) for z in sample)
    if sample.certified:
        lower = max(best - sample.covering_radius, 0)
        return CertifiedInterval(lower, best, BoundKind.SAMPLED, BoundKind.WITNESS)
    return CertifiedInterval(0 * best, best, BoundKind.SAMPLED, BoundKind.WITNESS)


@dataclass
class ProbeReport:
    """Generic structured report; serialized by :mod:`corona_lab.report`."""

    probe: str
    space: str
    params: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    verdict: str = ""
    gap: Any = None
    seed: int = 0


def check_metric_axioms(space: SpaceHandle, sample: Sequence) -> ProbeReport:
    """Check identity, symmetry and the triangle inequality over all pairs/triples."""
    points = [space.validate(p) for p in sample]
    if not points:
        raise ValueError("sample must be nonempty")
    tol = _tol(space)
    n = len(points)
    keys = [space.point_key(p) for p in points]
    dist = [[space._distance(p, q) for q in points] for p in points]
    failures = []
    for i in range(n):
        for j in range(n):
            dij = dist[i][j]
            same = keys[i] == keys[j]
            if dij < 0 or (same and dij > tol) or (not same and dij <= 0):
                failures.append({"axiom": "identity", "i": i, "j": j})
            if abs(dij - dist[j][i]) > tol:
                failures.append({"axiom": "symmetry", "i": i, "j": j})
    for i, j, k in itertools.product(range(n), repeat=3):
        if dist[i][k] > dist[i][j] + dist[j][k] + tol:
            failures.append({"axiom": "triangle", "i": i, "j": j, "k": k})
    return ProbeReport(
        probe="metric_axioms",
        space=space.name,
        params={"points": n},
        rows=failures,
        verdict="PASS" if not failures else "FAIL",
        gap=None,
    )
