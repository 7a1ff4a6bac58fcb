"""Dominance, Pareto layers, cover edges and quality-layer labelling.

The machinery here is shared by vector estimates, count profiles and quality
vectors. Every relation used by the library reduces to componentwise
comparison of numeric keys (larger is better); such relations are wrapped in
:class:`KeyedDominance` so the layer/cover computations can run through the
compiled kernel. Arbitrary dominance callables are also supported via a
generic pairwise path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import ScaleMismatchError
from .scales import QualityVector, cumulative_key, quality_key


def dominates_keys(ka: Sequence[float], kb: Sequence[float]) -> bool:
    """Componentwise strict dominance on larger-is-better keys."""
    return all(x >= y for x, y in zip(ka, kb)) and any(x > y for x, y in zip(ka, kb))


class KeyedDominance:
    """A strict dominance relation defined by componentwise numeric keys."""

    def __init__(self, key: Callable[[object], Sequence[float]], name: str = "keyed"):
        self.key = key
        self.name = name

    def __call__(self, a, b) -> bool:
        return dominates_keys(self.key(a), self.key(b))

    def key_matrix(self, points: Sequence) -> np.ndarray:
        return np.asarray([self.key(p) for p in points], dtype=np.float64)

    def __repr__(self) -> str:
        return f"KeyedDominance({self.name})"


def _counts_key(counts) -> tuple[float, ...]:
    return cumulative_key(counts)


def _quality_check(a: QualityVector, b: QualityVector) -> None:
    if not isinstance(a, QualityVector) or not isinstance(b, QualityVector):
        raise ScaleMismatchError("quality dominance needs QualityVector operands")
    if a.nu != b.nu or len(a.counts) != len(b.counts) or sum(a.counts) != sum(b.counts):
        raise ScaleMismatchError(f"quality vectors on different scales: {a} vs {b}")


#: Cumulative dominance over count vectors (level 1 best).
COUNT_DOMINANCE = KeyedDominance(_counts_key, "counts")

#: Componentwise dominance over (compatibility; counts) quality vectors.
QUALITY_DOMINANCE = KeyedDominance(quality_key, "quality")


def dominates_counts(a, b) -> bool:
    """Cumulative-prefix dominance between equal-length, equal-sum tallies.

    ``a`` dominates ``b`` iff every prefix total of ``a`` is >= the matching
    prefix total of ``b``, with at least one strict inequality. Equivalently:
    ``a`` is reachable from ``b`` by moving units to better levels.
    """
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise ScaleMismatchError(f"count vectors differ in length: {a} vs {b}")
    if sum(a) != sum(b):
        raise ScaleMismatchError(f"count vectors differ in total: {a} vs {b}")
    return dominates_keys(cumulative_key(a), cumulative_key(b))


def dominates_quality(a: QualityVector, b: QualityVector) -> bool:
    """Quality-vector dominance: compatibility and count profile jointly.

    True iff ``a.w >= b.w``, the count profiles are equal or ``a``'s
    dominates, and the vectors are not identical.
    """
    _quality_check(a, b)
    return dominates_keys(quality_key(a), quality_key(b))


def _dominance_matrix(points: Sequence, dominance) -> np.ndarray:
    if isinstance(dominance, KeyedDominance):
        return _kernels.dominance_matrix(dominance.key_matrix(points))
    n = len(points)
    out = np.zeros((n, n), dtype=np.uint8)
    for i, p in enumerate(points):
        for j, q in enumerate(points):
            if i != j and dominance(p, q):
                out[i, j] = 1
    return out


def pareto_layer(points: Sequence, dominance) -> list:
    """All points not strictly dominated by any other point.

    Duplicates of a nondominated key are all returned; input order is kept.
    """
    points = list(points)
    if isinstance(dominance, KeyedDominance):
        mask = _kernels.nondominated_mask(dominance.key_matrix(points))
        return [p for p, m in zip(points, mask) if m]
    dom = _dominance_matrix(points, dominance)
    return [p for j, p in enumerate(points) if not dom[:, j].any()]


def peel_layers(points: Sequence, dominance) -> list[int]:
    """1-based nondominated-sorting layer per point (standard peeling).

    Layer 1 is the Pareto layer; layer k the Pareto layer of what remains
    after removing layers below k. Equal points share a layer.
    """
    points = list(points)
    if not points:
        return []
    if isinstance(dominance, KeyedDominance):
        layers = _kernels.peel_layers(dominance.key_matrix(points))
        return [int(k) for k in layers]
    dom = _dominance_matrix(points, dominance)
    counts = dom.sum(axis=0, dtype=np.int64)
    layers = np.zeros(len(points), dtype=np.int64)
    current = np.flatnonzero(counts == 0)
    k = 1
    while current.size:
        layers[current] = k
        counts[current] = -1
        counts -= dom[current].sum(axis=0, dtype=np.int64)
        current = np.flatnonzero(counts == 0)
        k += 1
    return [int(k) for k in layers]


def cover_edges(points: Sequence, dominance) -> list[tuple]:
    """Hasse edges ``(a, b)``: a dominates b with nothing strictly between.

    Points must have pairwise distinct keys.
    """
    points = list(points)
    dom = _dominance_matrix(points, dominance)
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            if not dom[i, j] and not dom[j, i] and _same_point(points[i], points[j], dominance):
                raise ValueError(f"duplicate point key: {points[i]!r}")
    reach = dom.astype(np.int64)
    through = (reach @ reach) > 0
    covers = dom.astype(bool) & ~through
    return [(points[i], points[j]) for i, j in zip(*np.nonzero(covers))]


def _same_point(p, q, dominance) -> bool:
    if isinstance(dominance, KeyedDominance):
        return tuple(dominance.key(p)) == tuple(dominance.key(q))
    return p == q


@dataclass(frozen=True)
class PosetView:
    """Explicit finite poset: elements, dominance, Hasse edges, layer indices."""

    elements: tuple
    dominance: Callable[[object, object], bool]
    covers: tuple[tuple, ...]
    layers: tuple[int, ...]

    def layer_of(self, element) -> int:
        for el, k in zip(self.elements, self.layers):
            if el == element:
                return k
        raise KeyError(f"element not in poset: {element!r}")

    def dominates(self, a, b) -> bool:
        return self.dominance(a, b)


def build_poset_view(elements: Sequence, dominance) -> PosetView:
    """Assemble a :class:`PosetView` with covers and peel layers."""
    elements = tuple(elements)
    return PosetView(
        elements=elements,
        dominance=dominance,
        covers=tuple(cover_edges(elements, dominance)),
        layers=tuple(peel_layers(elements, dominance)),
    )


@dataclass(frozen=True)
class DLabel:
    """A rung of the ordinal quality ladder: ideal, k-th layer, or worst."""

    kind: str  # "ideal" | "layer" | "worst"
    index: int = 0

    def __str__(self) -> str:
        return f"layer {self.index}" if self.kind == "layer" else self.kind


IDEAL = DLabel("ideal")
WORST = DLabel("worst")


def layer_label(k: int) -> DLabel:
    return DLabel("layer", k)


def label_D(points: Sequence, dominance, best_corner, worst_corner) -> list[DLabel]:
    """Label points on the quality ladder anchored at the scale corners.

    Points equal to ``best_corner`` get the ideal label, points equal to
    ``worst_corner`` the worst label; everything else gets its peel-layer
    index computed after the corner points are removed.
    """
    points = list(points)
    inner = [p for p in points if p != best_corner and p != worst_corner]
    inner_layers = peel_layers(inner, dominance)
    by_pos = iter(inner_layers)
    labels = []
    for p in points:
        if p == best_corner:
            labels.append(IDEAL)
        elif p == worst_corner:
            labels.append(WORST)
        else:
            labels.append(layer_label(next(by_pos)))
    return labels


def near_pareto_by_swap(
    compositions: Sequence,
    evaluate: Callable,
    dominance,
    neighbors: Callable[[object], Iterable],
) -> list:
    """Non-Pareto compositions one swap away from the Pareto layer.

    ``neighbors(c)`` yields every composition reachable from ``c`` by
    changing exactly one selected alternative. A swapped composition reaches
    the Pareto layer when its evaluation is not strictly dominated by any of
    the input compositions' evaluations.
    """
    compositions = list(compositions)
    points = [evaluate(c) for c in compositions]

    def beats(p) -> bool:
        return any(dominance(q, p) for q in points)

    result = []
    for c, p in zip(compositions, points):
        if not beats(p):
            continue  # already Pareto-efficient
        if any(not beats(evaluate(c2)) for c2 in neighbors(c)):
            result.append(c)
    return result
