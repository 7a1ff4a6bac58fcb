"""Assessment scales and their estimates.

Five scale kinds are supported:

* quantitative interval with explicit worst/best endpoints,
* ordinal levels ``1..size`` with ``1`` best,
* vector (multicriteria) over quantitative/ordinal criteria,
* count poset over quality-level tallies ``(eta_1, ..., eta_k)``,
* interval multiset: count vectors whose occupied levels form one
  contiguous run.

Every type is immutable; comparison semantics live in :func:`better_of`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import ScaleMismatchError, UnknownScaleError


@dataclass(frozen=True)
class QuantScale:
    """Real-valued interval scale; orientation follows the endpoints.

    ``best < worst`` means lower values are better (and the reverse).
    """

    worst: float
    best: float
    id: str = ""

    def __post_init__(self):
        if self.worst == self.best:
            raise ValueError(f"quantitative scale {self.id!r}: worst == best == {self.worst}")

    @property
    def higher_is_better(self) -> bool:
        return self.best > self.worst

    @property
    def lo(self) -> float:
        return min(self.worst, self.best)

    @property
    def hi(self) -> float:
        return max(self.worst, self.best)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class OrdinalScale:
    """Levels ``1..size``; level 1 is best and each level dominates the next."""

    size: int
    id: str = ""

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"ordinal scale {self.id!r}: size must be positive")

    def contains(self, level) -> bool:
        return isinstance(level, int) and not isinstance(level, bool) and 1 <= level <= self.size


Criterion = Union[QuantScale, OrdinalScale]


@dataclass(frozen=True)
class VectorScale:
    """Ordered multicriteria description; criterion order is significant."""

    criteria: tuple[Criterion, ...]
    id: str = ""

    def __post_init__(self):
        if not self.criteria:
            raise ValueError(f"vector scale {self.id!r}: needs at least one criterion")
        object.__setattr__(self, "criteria", tuple(self.criteria))


@dataclass(frozen=True)
class CountPosetScale:
    """Tallies of `elements` items over quality levels ``1..levels``.

    Houses vectors ``(eta_1, ..., eta_k)`` with ``sum == elements``; no
    contiguity constraint (contrast :class:`MultisetScale`).
    """

    levels: int
    elements: int
    id: str = ""

    def __post_init__(self):
        if self.levels < 1 or self.elements < 1:
            raise ValueError(f"count scale {self.id!r}: levels and elements must be positive")


@dataclass(frozen=True)
class MultisetScale:
    """Interval multiset estimates: `elements` assessments over ``1..levels``.

    Valid estimates are count vectors with ``sum == elements`` whose nonzero
    entries occupy one contiguous block of levels.
    """

    levels: int
    elements: int
    id: str = ""

    def __post_init__(self):
        if self.levels < 1 or self.elements < 1:
            raise ValueError(f"multiset scale {self.id!r}: levels and elements must be positive")


Scale = Union[QuantScale, OrdinalScale, VectorScale, CountPosetScale, MultisetScale]

SCALE_KINDS = (QuantScale, OrdinalScale, VectorScale, CountPosetScale, MultisetScale)


@dataclass(frozen=True)
class Estimate:
    """A value on exactly one scale.

    ``value`` is a float (quantitative), int level (ordinal), tuple of
    numbers (vector) or tuple of counts (count poset / multiset).
    """

    scale: Scale
    value: object

    def __post_init__(self):
        if isinstance(self.value, list):
            object.__setattr__(self, "value", tuple(self.value))


@dataclass(frozen=True)
class QualityVector:
    """Compatibility level paired with a count profile: ``(w; eta_1..eta_k)``.

    ``w`` is the minimum pairwise compatibility (higher is better, best
    ``nu``); ``counts`` tallies selected alternatives per quality level.
    """

    w: int
    counts: tuple[int, ...]
    nu: int

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(self.counts))

    def __str__(self) -> str:
        return "(%d;%s)" % (self.w, ",".join(str(c) for c in self.counts))


@dataclass(frozen=True)
class Validation:
    """Outcome of estimate or model validation."""

    violations: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "violations", tuple(self.violations))

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def contiguous_support(counts) -> bool:
    """True when the nonzero entries of ``counts`` form one contiguous run."""
    nz = [i for i, c in enumerate(counts) if c != 0]
    return not nz or nz[-1] - nz[0] + 1 == len(nz)


def _check_counts(counts, levels: int, elements: int, contiguous: bool) -> list[str]:
    problems = []
    if not isinstance(counts, tuple) or len(counts) != levels:
        return [f"count vector must have {levels} entries"]
    if not all(_is_int(c) and c >= 0 for c in counts):
        return ["counts must be non-negative integers"]
    if sum(counts) != elements:
        problems.append(f"counts must sum to {elements}, got {sum(counts)}")
    if contiguous and not contiguous_support(counts):
        support = tuple(i + 1 for i, c in enumerate(counts) if c != 0)
        problems.append(f"non-contiguous support {set(support)}")
    return problems


def validate_estimate(e: Estimate) -> Validation:
    """Check that ``e.value`` is well-formed for its scale kind.

    Returns a :class:`Validation` listing every violated invariant; raises
    :class:`UnknownScaleError` when the scale reference is not a scale at all.
    """
    scale = e.scale
    if not isinstance(scale, SCALE_KINDS):
        raise UnknownScaleError(f"estimate does not reference a known scale kind: {scale!r}")
    v = e.value
    if isinstance(scale, QuantScale):
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            return Validation(("quantitative value must be a real number",))
        if not scale.contains(v):
            return Validation(
                (f"value {v} outside [{scale.lo}, {scale.hi}]",)
            )
        return Validation()
    if isinstance(scale, OrdinalScale):
        if not scale.contains(v):
            return Validation((f"level {v!r} outside 1..{scale.size}",))
        return Validation()
    if isinstance(scale, VectorScale):
        if not isinstance(v, tuple) or len(v) != len(scale.criteria):
            return Validation((f"vector must have {len(scale.criteria)} components",))
        problems = []
        for i, (comp, crit) in enumerate(zip(v, scale.criteria)):
            sub = validate_estimate(Estimate(crit, comp))
            problems.extend(f"criterion {i + 1}: {p}" for p in sub.violations)
        return Validation(tuple(problems))
    if isinstance(scale, CountPosetScale):
        return Validation(tuple(_check_counts(v, scale.levels, scale.elements, contiguous=False)))
    # MultisetScale
    return Validation(tuple(_check_counts(v, scale.levels, scale.elements, contiguous=True)))


class _ComparisonOutcome:
    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name


#: ``better_of`` outcomes for equal and order-incomparable estimates.
TIE = _ComparisonOutcome("TIE")
INCOMPARABLE = _ComparisonOutcome("INCOMPARABLE")


def criterion_key(crit: Criterion, value) -> float:
    """Map one criterion value to its larger-is-better numeric key."""
    if isinstance(crit, OrdinalScale):
        return -float(value)
    return float(value) if crit.higher_is_better else -float(value)


def estimate_key(e: Estimate) -> tuple[float, ...]:
    """Numeric dominance key for an estimate: componentwise larger is better.

    Count vectors map to their cumulative prefix totals, which makes the
    cumulative dominance rule of the count posets a componentwise comparison.
    """
    scale = e.scale
    if isinstance(scale, QuantScale):
        return (criterion_key(scale, e.value),)
    if isinstance(scale, OrdinalScale):
        return (-float(e.value),)
    if isinstance(scale, VectorScale):
        return tuple(criterion_key(c, v) for c, v in zip(scale.criteria, e.value))
    if isinstance(scale, (CountPosetScale, MultisetScale)):
        return cumulative_key(e.value)
    raise UnknownScaleError(f"no dominance key for scale {scale!r}")


def cumulative_key(counts) -> tuple[float, ...]:
    """Cumulative prefix totals of a count vector (level 1 best)."""
    total = 0
    out = []
    for c in counts:
        total += c
        out.append(float(total))
    return tuple(out)


def quality_key(q: QualityVector) -> tuple[float, ...]:
    """Dominance key for a quality vector: compatibility then count prefixes."""
    return (float(q.w),) + cumulative_key(q.counts)


def better_of(a: Estimate, b: Estimate):
    """Compare two estimates on the same scale.

    Returns the better estimate (``a`` or ``b``), :data:`TIE` for equal
    values, or :data:`INCOMPARABLE` when neither dominates (possible only on
    vector and count scales). Raises :class:`ScaleMismatchError` when the
    scales differ.
    """
    if a.scale != b.scale:
        raise ScaleMismatchError(f"cannot compare estimates on {a.scale!r} and {b.scale!r}")
    ka, kb = estimate_key(a), estimate_key(b)
    if ka == kb:
        return TIE
    if all(x >= y for x, y in zip(ka, kb)):
        return a
    if all(x <= y for x, y in zip(ka, kb)):
        return b
    return INCOMPARABLE
