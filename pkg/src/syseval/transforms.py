"""Scale transformation operators.

Covers quantitative remapping, threshold quantization, ordinal mapping
tables, weighted-utility reduction of vector estimates, and the reductions
of vector/poset point sets to ordinal layer indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum
from typing import Optional, Sequence

from . import poset
from .scales import Estimate, OrdinalScale, QuantScale, VectorScale, estimate_key


def linear_map(x: float, src: QuantScale, dst: QuantScale) -> float:
    """Affine remap sending ``src.worst -> dst.worst`` and ``src.best -> dst.best``.

    Exact at the endpoints; ``x`` outside the source range is an error.
    """
    if not src.contains(x):
        raise ValueError(f"value {x} outside source range [{src.lo}, {src.hi}]")
    if x == src.worst:
        return dst.worst
    if x == src.best:
        return dst.best
    t = (x - src.worst) / (src.best - src.worst)
    return dst.worst + t * (dst.best - dst.worst)


@dataclass(frozen=True)
class ThresholdSpec:
    """Interval thresholds quantizing a quantitative scale to ordinal levels.

    Thresholds are ordered from the best side to the worst side of the
    source scale; `target.size - 1` of them cut the range into one interval
    per ordinal level.
    """

    thresholds: tuple[float, ...]
    target: OrdinalScale

    def __post_init__(self):
        object.__setattr__(self, "thresholds", tuple(self.thresholds))
        if len(self.thresholds) != self.target.size - 1:
            raise ValueError(
                f"need {self.target.size - 1} thresholds for {self.target.size} levels, "
                f"got {len(self.thresholds)}"
            )
        t = self.thresholds
        if len(t) > 1 and not (
            all(a > b for a, b in zip(t, t[1:])) or all(a < b for a, b in zip(t, t[1:]))
        ):
            raise ValueError(f"thresholds not strictly monotone: {t}")


def quantize(x: float, spec: ThresholdSpec, src: QuantScale) -> int:
    """Ordinal level of ``x``: the interval index counted from the best end.

    A value exactly on a threshold goes to the better (lower-index) level.
    """
    if not src.contains(x):
        raise ValueError(f"value {x} outside source range [{src.lo}, {src.hi}]")
    for t in spec.thresholds:
        if not src.lo < t < src.hi:
            raise ValueError(f"threshold {t} not strictly inside ({src.lo}, {src.hi})")
    if src.higher_is_better:
        if any(a <= b for a, b in zip(spec.thresholds, spec.thresholds[1:])):
            raise ValueError("thresholds must decrease from best side for this scale")
        for k, t in enumerate(spec.thresholds, start=1):
            if x >= t:
                return k
    else:
        if any(a >= b for a, b in zip(spec.thresholds, spec.thresholds[1:])):
            raise ValueError("thresholds must increase from best side for this scale")
        for k, t in enumerate(spec.thresholds, start=1):
            if x <= t:
                return k
    return spec.target.size


@dataclass(frozen=True)
class OrdinalMap:
    """Level-to-level mapping table between two ordinal scales.

    The table must be total on the source levels, order-preserving
    (or order-reversing with ``reverse=True``) and surjective onto the
    target levels.
    """

    source: OrdinalScale
    target: OrdinalScale
    table: tuple[int, ...]
    reverse: bool = False

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.source.size:
            raise ValueError(f"table must map all {self.source.size} source levels")
        if not all(self.target.contains(v) for v in self.table):
            raise ValueError(f"table values outside target 1..{self.target.size}: {self.table}")
        pairs = zip(self.table, self.table[1:])
        if self.reverse:
            if any(a < b for a, b in pairs):
                raise ValueError(f"reverse map must be monotone non-increasing: {self.table}")
        elif any(a > b for a, b in pairs):
            raise ValueError(f"map must be monotone non-decreasing: {self.table}")
        if set(self.table) != set(range(1, self.target.size + 1)):
            raise ValueError(f"table not surjective onto 1..{self.target.size}: {self.table}")


def ordinal_remap(level: int, mapping: OrdinalMap) -> int:
    """Look up a source level in an :class:`OrdinalMap`."""
    if not mapping.source.contains(level):
        raise ValueError(f"level {level!r} outside source 1..{mapping.source.size}")
    return mapping.table[level - 1]


@dataclass(frozen=True)
class UtilityResult:
    """Weighted sums plus the orientation they inherit from the criteria.

    ``orientation`` is "lower" when every criterion prefers lower values,
    "higher" when every criterion prefers higher ones, else ``None``.
    """

    values: tuple[float, ...]
    orientation: Optional[str]


def utility_reduce(
    vectors: Sequence[Sequence[float]],
    weights: Sequence[float],
    scale: Optional[VectorScale] = None,
) -> UtilityResult:
    """Weighted sum per vector; ordinal levels are used as plain numbers."""
    weights = tuple(weights)
    values = []
    for vec in vectors:
        vec = tuple(vec)
        if len(vec) != len(weights):
            raise ValueError(f"vector {vec} has {len(vec)} components, expected {len(weights)}")
        values.append(fsum(w * x for w, x in zip(weights, vec)))
    orientation = None
    if scale is not None:
        if len(scale.criteria) != len(weights):
            raise ValueError(f"scale has {len(scale.criteria)} criteria, expected {len(weights)}")
        lowers = [
            isinstance(c, OrdinalScale) or not c.higher_is_better for c in scale.criteria
        ]
        if all(lowers):
            orientation = "lower"
        elif not any(lowers):
            orientation = "higher"
    return UtilityResult(tuple(values), orientation)


def vectors_to_ordinal(estimates: Sequence[Estimate]) -> list[int]:
    """Peel layers of vector estimates; the layer index is the ordinal result.

    Componentwise dominance respects each criterion's own orientation.
    """
    estimates = list(estimates)
    if not estimates:
        return []
    scale = estimates[0].scale
    if not isinstance(scale, VectorScale):
        raise ValueError("vectors_to_ordinal expects estimates on a VectorScale")
    if any(e.scale != scale for e in estimates):
        raise ValueError("estimates must share one VectorScale")
    dominance = poset.KeyedDominance(estimate_key, "vector")
    return poset.peel_layers(estimates, dominance)


def poset_to_ordinal(points: Sequence, dominance) -> list[int]:
    """Layer assignment for poset points; alias of nondominated peeling."""
    return poset.peel_layers(points, dominance)
