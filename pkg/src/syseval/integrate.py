"""Integration of component estimates into total system estimates.

Implements the integration families: additive utility over quantitative
estimates, hierarchical lookup tables over ordinal estimates, componentwise
vector summation, count profiles over ordinal quality levels, quality
vectors with minimum pairwise compatibility, TOPSIS-like ranking against
best/worst reference points, and median-like multiset integration.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import fsum
from typing import Mapping, Optional, Sequence

from .errors import (
    MissingCellError,
    MissingEstimateError,
    ModelError,
    ScaleMismatchError,
)
from .multiset import CUM_L1, MedianResult, enumerate_estimates, median_like
from .poset import QUALITY_DOMINANCE, PosetView, build_poset_view
from .scales import (
    CountPosetScale,
    Estimate,
    MultisetScale,
    OrdinalScale,
    QualityVector,
    QuantScale,
    VectorScale,
)


def _require(selected: Sequence[str], estimates: Mapping[str, Estimate], kind: str):
    out = []
    for da in selected:
        e = estimates.get(da)
        if e is None:
            raise MissingEstimateError(f"DA {da!r} has no {kind} estimate")
        out.append(e)
    return out


def _common_scale(estimates: Sequence[Estimate], kind):
    scale = estimates[0].scale
    if not isinstance(scale, kind):
        raise ScaleMismatchError(f"expected {kind.__name__}, got {type(scale).__name__}")
    for e in estimates[1:]:
        if e.scale != scale:
            raise ScaleMismatchError(f"estimates mix scales {scale!r} and {e.scale!r}")
    return scale


def _scaled_quant(scale: QuantScale, m: int) -> QuantScale:
    return QuantScale(worst=m * scale.worst, best=m * scale.best, id=f"sum{m}({scale.id})")


def _scaled_criterion(criterion, m: int) -> QuantScale:
    if isinstance(criterion, OrdinalScale):
        return QuantScale(worst=float(m * criterion.size), best=float(m), id=f"sum{m}({criterion.id})")
    return _scaled_quant(criterion, m)


def additive_utility(selected: Sequence[str], estimates: Mapping[str, Estimate]) -> Estimate:
    """Sum of the selected alternatives' quantitative estimates.

    The result lives on the derived scale whose endpoints are the summed
    endpoints of the component scale, so orientation carries over.
    """
    values = _require(selected, estimates, "quantitative")
    scale = _common_scale(values, QuantScale)
    total = fsum(e.value for e in values)
    return Estimate(_scaled_quant(scale, len(values)), total)


def vector_sum(selected: Sequence[str], estimates: Mapping[str, Estimate]) -> Estimate:
    """Componentwise sum of the selected alternatives' vector estimates."""
    values = _require(selected, estimates, "vector")
    scale = _common_scale(values, VectorScale)
    m = len(values)
    sums = tuple(
        sum(vec) if all(isinstance(x, int) for x in vec) else fsum(vec)
        for vec in zip(*(e.value for e in values))
    )
    derived = VectorScale(
        tuple(_scaled_criterion(c, m) for c in scale.criteria), id=f"sum{m}({scale.id})"
    )
    return Estimate(derived, sums)


def count_profile(
    selected: Sequence[str],
    estimates: Mapping[str, Estimate],
    k: Optional[int] = None,
) -> Estimate:
    """Tally of selected alternatives per ordinal quality level.

    ``k`` defaults to the largest ordinal scale among the estimates.
    """
    values = _require(selected, estimates, "ordinal")
    for e in values:
        if not isinstance(e.scale, OrdinalScale):
            raise ScaleMismatchError(f"count profile needs ordinal estimates, got {e.scale!r}")
    if k is None:
        k = max(e.scale.size for e in values)
    counts = [0] * k
    for e in values:
        if not 1 <= e.value <= k:
            raise ValueError(f"ordinal level {e.value} outside 1..{k}")
        counts[e.value - 1] += 1
    return Estimate(CountPosetScale(k, len(values), id=f"counts{k}x{len(values)}"), tuple(counts))


def min_compatibility(selection: Mapping[str, str], compat) -> int:
    """Minimum pairwise compatibility over selected alternatives.

    Pairs range over alternatives from distinct leaves; a single-leaf
    selection has the vacuous minimum, the best level ``nu``.
    """
    leaves = sorted(selection)
    w = compat.nu
    for la, lb in combinations(leaves, 2):
        w = min(w, compat.lookup(selection[la], selection[lb]))
    return w


def quality_vector(
    selection: Mapping[str, str],
    estimates: Mapping[str, Estimate],
    compat,
    k: Optional[int] = None,
) -> QualityVector:
    """Pair minimum compatibility with the count profile of the selection."""
    profile = count_profile(tuple(selection.values()), estimates, k)
    return QualityVector(min_compatibility(selection, compat), profile.value, compat.nu)


@dataclass(frozen=True)
class TableInput:
    """One input axis of an integration table.

    ``levels`` lists the distinguished levels of the input scale in
    ascending order; by default the full ``1..size`` range. ``name`` names
    the tree node feeding this axis.
    """

    scale: OrdinalScale
    levels: tuple[int, ...] = ()
    name: str = ""

    def __post_init__(self):
        levels = tuple(self.levels) or tuple(range(1, self.scale.size + 1))
        object.__setattr__(self, "levels", levels)
        if not levels or any(not self.scale.contains(v) for v in levels):
            raise ValueError(f"input levels {levels} outside 1..{self.scale.size}")
        if any(a >= b for a, b in zip(levels, levels[1:])):
            raise ValueError(f"input levels must be strictly increasing: {levels}")


@dataclass(frozen=True)
class IntegrationTable:
    """Dense monotone lookup from input level tuples to an output level."""

    inputs: tuple[TableInput, ...]
    output: OrdinalScale
    cells: dict
    id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "cells", {tuple(k): v for k, v in self.cells.items()})

    def lookup(self, levels: Sequence[int]) -> int:
        key = tuple(levels)
        if key not in self.cells:
            raise MissingCellError(f"table {self.id!r}: no cell for inputs {key}")
        return self.cells[key]

    def check_dense(self) -> list[str]:
        """Missing tuples, stray tuples, and out-of-range outputs."""
        problems = []
        expected = set(product(*(inp.levels for inp in self.inputs)))
        for key in sorted(expected - set(self.cells)):
            problems.append(f"missing cell for inputs {key}")
        for key in sorted(set(self.cells) - expected):
            problems.append(f"cell {key} outside the declared input grid")
        for key in sorted(expected & set(self.cells)):
            v = self.cells[key]
            if not self.output.contains(v):
                problems.append(f"cell {key}: output {v!r} outside 1..{self.output.size}")
        return problems

    def check_monotone(self) -> list[str]:
        """Cells where improving one input level worsens the output."""
        problems = []
        for key in sorted(self.cells):
            for axis, inp in enumerate(self.inputs):
                pos = inp.levels.index(key[axis]) if key[axis] in inp.levels else -1
                if pos <= 0:
                    continue
                better = key[:axis] + (inp.levels[pos - 1],) + key[axis + 1 :]
                if better in self.cells and self.cells[better] > self.cells[key]:
                    problems.append(
                        f"improving input {axis + 1} from {key[axis]} to {better[axis]} "
                        f"worsens output {self.cells[key]} -> {self.cells[better]} at {key}"
                    )
        return problems

    def check(self, strict_monotone: bool = True) -> list[str]:
        problems = self.check_dense()
        if strict_monotone:
            problems.extend(self.check_monotone())
        return problems


def table_eval(node, leaf_levels: Mapping[str, int], tables: Mapping[str, IntegrationTable], path: str = "") -> int:
    """Recursive bottom-up table lookup; returns the node's output level.

    Leaves read their level from ``leaf_levels``; each internal node must
    bind an integration table whose inputs match its children in order.
    """
    path = f"{path}/{node.id}" if path else node.id
    if node.is_leaf:
        if node.id not in leaf_levels:
            raise ModelError(path, "no ordinal level for leaf")
        return leaf_levels[node.id]
    if node.table is None:
        raise ModelError(path, "internal node has no integration table")
    table = tables.get(node.table)
    if table is None:
        raise ModelError(path, f"unknown integration table {node.table!r}")
    child_levels = tuple(table_eval(c, leaf_levels, tables, path) for c in node.children)
    if len(table.inputs) != len(child_levels):
        raise ModelError(path, f"table {node.table!r} has {len(table.inputs)} inputs for {len(child_levels)} children")
    try:
        return table.lookup(child_levels)
    except MissingCellError as exc:
        raise MissingCellError(f"{path}: {exc}") from None


@dataclass(frozen=True)
class TopsisConfig:
    """Reference points for TOPSIS-like ranking.

    Distances use the Minkowski exponent (1 or 2); distance to a point SET
    is the minimum over its members.
    """

    best_points: tuple[tuple[float, ...], ...]
    worst_points: tuple[tuple[float, ...], ...]
    metric_exponent: int = 2

    def __post_init__(self):
        object.__setattr__(self, "best_points", tuple(tuple(p) for p in self.best_points))
        object.__setattr__(self, "worst_points", tuple(tuple(p) for p in self.worst_points))
        if not self.best_points or not self.worst_points:
            raise ValueError("need at least one best point and one worst point")
        if self.metric_exponent not in (1, 2):
            raise ValueError(f"metric exponent must be 1 or 2, got {self.metric_exponent}")


@dataclass(frozen=True)
class TopsisResult:
    """Distances to the nearest best / worst points and relative closeness."""

    rho_plus: float
    rho_minus: float
    closeness: float


@dataclass(frozen=True)
class TopsisRanking:
    results: tuple[TopsisResult, ...]
    order: tuple[int, ...]  # indices by descending closeness, ties by input order
    outranks: tuple[tuple[int, int], ...]  # (i, j): i outranks j under the rho vector


def _minkowski(a: Sequence[float], b: Sequence[float], p: int) -> float:
    if len(a) != len(b):
        raise ValueError(f"points of different arity: {tuple(a)} vs {tuple(b)}")
    if p == 1:
        return float(sum(abs(x - y) for x, y in zip(a, b)))
    return float(sum((x - y) ** 2 for x, y in zip(a, b)) ** 0.5)


def topsis_rank(points: Sequence[Sequence[float]], config: TopsisConfig) -> TopsisRanking:
    """Closeness-coefficient ranking plus the rho-vector partial order.

    ``rho_plus`` is the distance to the nearest best point, ``rho_minus`` to
    the nearest worst point; closeness is ``rho_minus / (rho_plus +
    rho_minus)``. A point at distance zero from both reference sets has no
    defined closeness and raises.
    """
    results = []
    for pt in points:
        rp = min(_minkowski(pt, b, config.metric_exponent) for b in config.best_points)
        rm = min(_minkowski(pt, w, config.metric_exponent) for w in config.worst_points)
        if rp + rm == 0:
            raise ValueError(f"point {tuple(pt)} is both a best and a worst point")
        results.append(TopsisResult(rp, rm, rm / (rp + rm)))
    order = tuple(sorted(range(len(results)), key=lambda i: (-results[i].closeness, i)))
    outranks = []
    for i, a in enumerate(results):
        for j, b in enumerate(results):
            if i == j:
                continue
            if a.rho_plus <= b.rho_plus and a.rho_minus >= b.rho_minus and (
                a.rho_plus < b.rho_plus or a.rho_minus > b.rho_minus
            ):
                outranks.append((i, j))
    return TopsisRanking(tuple(results), order, tuple(outranks))


def multiset_integrate(
    selected: Sequence[str],
    estimates: Mapping[str, Estimate],
    metric: str = CUM_L1,
) -> MedianResult:
    """Median-like integration of the selected alternatives' multiset estimates."""
    values = _require(selected, estimates, "multiset")
    scale = _common_scale(values, MultisetScale)
    return median_like([e.value for e in values], scale, metric)


def compat_extended_poset(scale: MultisetScale, nu: int) -> PosetView:
    """Product poset of compatibility levels with the multiset scale-poset.

    Elements are quality vectors ``(w; counts)`` for ``w`` in ``nu..1`` and
    counts over the valid estimates; dominance is componentwise.
    """
    if nu < 1:
        raise ValueError(f"compatibility range must be positive, got {nu}")
    elements = [
        QualityVector(w, counts, nu)
        for w in range(nu, 0, -1)
        for counts in enumerate_estimates(scale)
    ]
    return build_poset_view(elements, QUALITY_DOMINANCE)
