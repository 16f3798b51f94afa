"""Registry of the builtin metric spaces."""

from __future__ import annotations

from ..core import SpaceHandle, UnknownSpace
from .discrete import DiscreteSpace
from .line import BoundedLine
from .planar import ClosedPuncturedX2, EuclideanPlane, PuncturedX1
from .plfunc import PLFunction
from .seminorm import SeminormFunctionSpace, SeminormMetricConfig
from .sequence import PhiSequenceSpace, SparseSeq

_REGISTRY: dict[str, type[SpaceHandle]] = {
    cls.name: cls
    for cls in (
        EuclideanPlane,
        PuncturedX1,
        ClosedPuncturedX2,
        DiscreteSpace,
        BoundedLine,
        PhiSequenceSpace,
        SeminormFunctionSpace,
    )
}

SPACE_NAMES = tuple(_REGISTRY)


def make_builtin_space(name: str, params: dict | None = None) -> SpaceHandle:
    try:
        cls = _REGISTRY[name]
    except KeyError:
        raise UnknownSpace(f"unknown space {name!r}; choose from {', '.join(SPACE_NAMES)}") from None
    return cls(params)


def space_from_spec(spec: dict) -> SpaceHandle:
    """Build a space from ``{"space": name, "params": {...}}``."""
    if "space" not in spec:
        raise UnknownSpace("space spec lacks a 'space' field")
    return make_builtin_space(spec["space"], spec.get("params"))


__all__ = [
    "SPACE_NAMES",
    "make_builtin_space",
    "space_from_spec",
    "PLFunction",
    "SparseSeq",
    "SeminormMetricConfig",
]
