"""Interval multiset estimates: enumeration, scale-poset, distances, medians.

An assessment problem over ``levels`` quality grades with ``elements``
assessed items admits exactly the count vectors whose sum is ``elements``
and whose nonzero entries are contiguous. The set of valid estimates forms
a poset under cumulative dominance with a unique top ``(n, 0, ..)`` and
bottom ``(0, .., n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import ScaleMismatchError
from .poset import COUNT_DOMINANCE, PosetView, build_poset_view
from .scales import MultisetScale, contiguous_support, cumulative_key

MultisetEstimate = tuple[int, ...]

#: Distance metric names (also the CLI flag values).
CUM_L1 = "cumL1"
HASSE = "hasse"
METRICS = (CUM_L1, HASSE)

_METRIC_ALIASES = {
    "cumL1": CUM_L1,
    "cumulative-L1": CUM_L1,
    "hasse": HASSE,
    "hasse-path": HASSE,
}


class NonContiguousError(ValueError):
    """Raised when level multiplicities leave a gap; carries the raw counts."""

    def __init__(self, counts: MultisetEstimate):
        self.counts = tuple(counts)
        support = {i + 1 for i, c in enumerate(counts) if c != 0}
        super().__init__(f"support {sorted(support)} not contiguous (counts {self.counts})")


def _compositions(total: int, parts: int):
    """All tuples of `parts` non-negative ints summing to `total`."""
    for bars in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        counts = []
        for b in bars:
            counts.append(b - prev - 1)
            prev = b
        counts.append(total + parts - 2 - prev)
        yield tuple(counts)


def _support_width(counts: MultisetEstimate) -> int:
    nz = [i for i, c in enumerate(counts) if c != 0]
    return nz[-1] - nz[0] + 1 if nz else 0


def _canonical_sort_key(counts: MultisetEstimate):
    # Main spine (support width <= 2, totally ordered by dominance) first,
    # then branch estimates; both halves from best to worst.
    return (_support_width(counts) > 2, tuple(-x for x in cumulative_key(counts)))


def enumerate_estimates(scale: MultisetScale) -> list[MultisetEstimate]:
    """All valid estimates of the scale in canonical order.

    Canonical order lists the main spine (estimates spanning at most two
    adjacent levels, a dominance chain) from best to worst, then the
    remaining estimates from best to worst.
    """
    valid = [c for c in _compositions(scale.elements, scale.levels) if contiguous_support(c)]
    valid.sort(key=_canonical_sort_key)
    return valid


def enumerate_count_vectors(levels: int, elements: int) -> list[tuple[int, ...]]:
    """All tallies of `elements` items over `levels` (no contiguity), best first."""
    vectors = list(_compositions(elements, levels))
    vectors.sort(key=lambda c: tuple(-x for x in cumulative_key(c)))
    return vectors


@dataclass(frozen=True)
class ScalePoset:
    """The poset of all valid estimates of one multiset scale."""

    scale: MultisetScale
    view: PosetView

    @property
    def elements(self) -> tuple[MultisetEstimate, ...]:
        return self.view.elements


def build_scale_poset(scale: MultisetScale) -> ScalePoset:
    """Scale-poset with cumulative dominance, cover edges and layer indices."""
    return _cached_poset(scale.levels, scale.elements, scale.id)


@lru_cache(maxsize=None)
def _cached_poset(levels: int, elements: int, scale_id: str) -> ScalePoset:
    scale = MultisetScale(levels, elements, scale_id)
    return ScalePoset(scale, build_poset_view(enumerate_estimates(scale), COUNT_DOMINANCE))


@lru_cache(maxsize=None)
def _hasse_distances(levels: int, elements: int) -> dict:
    """All-pairs shortest path lengths on the undirected cover graph."""
    poset = _cached_poset(levels, elements, "")
    adjacency: dict[MultisetEstimate, list[MultisetEstimate]] = {e: [] for e in poset.elements}
    for a, b in poset.view.covers:
        adjacency[a].append(b)
        adjacency[b].append(a)
    dist = {}
    for src in poset.elements:
        seen = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adjacency[u]:
                    if v not in seen:
                        seen[v] = seen[u] + 1
                        nxt.append(v)
            frontier = nxt
        for dst, d in seen.items():
            dist[(src, dst)] = d
    return dist


def _check_estimate(counts, scale: MultisetScale) -> MultisetEstimate:
    counts = tuple(counts)
    if len(counts) != scale.levels or sum(counts) != scale.elements:
        raise ScaleMismatchError(f"estimate {counts} not on scale ({scale.levels},{scale.elements})")
    if not contiguous_support(counts):
        raise NonContiguousError(counts)
    return counts


def canonical_metric(metric: str) -> str:
    try:
        return _METRIC_ALIASES[metric]
    except KeyError:
        raise ValueError(f"unknown metric {metric!r}, expected one of {METRICS}") from None


def multiset_distance(a, b, scale: MultisetScale, metric: str = CUM_L1) -> int:
    """Distance between two valid estimates of one scale.

    ``cumL1`` sums the absolute differences of cumulative prefix totals;
    ``hasse`` is the shortest undirected path length on the scale-poset
    cover graph. Both are metrics on the valid-estimate set.
    """
    a = _check_estimate(a, scale)
    b = _check_estimate(b, scale)
    metric = canonical_metric(metric)
    if metric == CUM_L1:
        return int(sum(abs(x - y) for x, y in zip(cumulative_key(a), cumulative_key(b))))
    return _hasse_distances(scale.levels, scale.elements)[(a, b)]


@dataclass(frozen=True)
class MedianResult:
    """Median-like aggregation outcome.

    ``argmin_set`` is the full set of total-distance minimizers; downstream
    code must treat it as the answer. ``representative`` is the argmin-set
    member earliest in canonical enumeration order, provided only for
    deterministic ordering, and is tie-broken whenever the set has more
    than one member.
    """

    argmin_set: tuple[MultisetEstimate, ...]
    representative: MultisetEstimate
    total_distance: int
    metric: str

    @property
    def tie_broken(self) -> bool:
        return len(self.argmin_set) > 1


def median_like(estimates, scale: MultisetScale, metric: str = CUM_L1) -> MedianResult:
    """Valid estimates minimizing the total distance to the given ones.

    The argmin set is searched over every valid estimate of the scale, not
    just the inputs.
    """
    estimates = [_check_estimate(e, scale) for e in estimates]
    if not estimates:
        raise ValueError("median of an empty estimate list")
    metric = canonical_metric(metric)
    best_total = None
    argmin: list[MultisetEstimate] = []
    for candidate in enumerate_estimates(scale):
        total = sum(multiset_distance(candidate, e, scale, metric) for e in estimates)
        if best_total is None or total < best_total:
            best_total = total
            argmin = [candidate]
        elif total == best_total:
            argmin.append(candidate)
    return MedianResult(tuple(argmin), argmin[0], int(best_total), metric)


def counts_from_ordinals(levels, l: int) -> MultisetEstimate:
    """Level multiplicities of an ordinal assessment list.

    Raises :class:`NonContiguousError` (carrying the raw counts) when the
    occupied levels leave a gap, and ``ValueError`` for out-of-range levels.
    """
    counts = [0] * l
    for level in levels:
        if not isinstance(level, int) or isinstance(level, bool) or not 1 <= level <= l:
            raise ValueError(f"ordinal level {level!r} outside 1..{l}")
        counts[level - 1] += 1
    if not contiguous_support(counts):
        raise NonContiguousError(tuple(counts))
    return tuple(counts)
