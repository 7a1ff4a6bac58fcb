"""Hierarchical system structure and evaluation orchestration.

A model is a component tree whose leaves carry design alternatives (DAs),
plus the scales, estimates, compatibility entries, integration tables,
reference-point configs and named compositions needed to evaluate and rank
complete selections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Optional, Sequence

from . import integrate
from .errors import MissingPairError, ModelError
from .integrate import TopsisConfig, TopsisRanking
from .multiset import CUM_L1, median_like
from .poset import (
    COUNT_DOMINANCE,
    DLabel,
    KeyedDominance,
    label_D,
    peel_layers,
    QUALITY_DOMINANCE,
)
from .scales import (
    Estimate,
    QualityVector,
    QuantScale,
    Validation,
    estimate_key,
    validate_estimate,
)

#: Estimate kinds a DA may carry (one per kind at most).
ESTIMATE_KINDS = ("quantitative", "vector", "ordinal", "multiset")

#: Integration methods accepted by evaluate/rank and the CLI.
METHODS = (
    "additive",
    "tables",
    "vector-sum",
    "count-profile",
    "quality-vector",
    "multiset-median",
)

#: Estimate kind each method consumes at the leaves.
METHOD_KIND = {
    "additive": "quantitative",
    "tables": "ordinal",
    "vector-sum": "vector",
    "count-profile": "ordinal",
    "quality-vector": "ordinal",
    "multiset-median": "multiset",
}

REDUCTIONS = ("layers", "labelD", "closeness")


@dataclass(frozen=True)
class SystemNode:
    """One component of the system tree.

    Leaves hold DA ids and per-kind scale bindings; internal nodes hold
    children and, for the tables method, an integration-table id.
    """

    id: str
    children: tuple["SystemNode", ...] = ()
    das: tuple[str, ...] = ()
    table: Optional[str] = None
    estimate_scales: tuple[tuple[str, str], ...] = ()  # (kind, scale id), leaves only

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list["SystemNode"]:
        if self.is_leaf:
            return [self]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def walk(self, path: str = "") -> list[tuple[str, "SystemNode"]]:
        path = f"{path}/{self.id}" if path else self.id
        out = [(path, self)]
        for c in self.children:
            out.extend(c.walk(path))
        return out


@dataclass(frozen=True)
class DA:
    """A design alternative with its per-kind estimates."""

    id: str
    estimates: dict  # kind -> Estimate


@dataclass
class CompatTable:
    """Ordinal compatibility levels for unordered cross-leaf DA pairs."""

    nu: int
    entries: dict  # (da_a, da_b) sorted tuple -> level
    zero_allowed: bool = False

    def __post_init__(self):
        self.entries = {tuple(sorted(k)): v for k, v in self.entries.items()}

    @property
    def min_level(self) -> int:
        return 0 if self.zero_allowed else 1

    def lookup(self, a: str, b: str) -> int:
        key = tuple(sorted((a, b)))
        if key not in self.entries:
            raise MissingPairError(f"no compatibility entry for pair {key}")
        return self.entries[key]


@dataclass(frozen=True)
class Composition:
    """A complete selection: exactly one DA per leaf, in tree leaf order."""

    selection: tuple[tuple[str, str], ...]  # (leaf id, da id)
    name: str = ""

    @property
    def mapping(self) -> dict:
        return dict(self.selection)

    @property
    def da_ids(self) -> tuple[str, ...]:
        return tuple(da for _, da in self.selection)

    def label(self) -> str:
        return self.name or "*".join(self.da_ids)


@dataclass
class SystemModel:
    """A parsed model: tree, DAs, scales and every declared artifact."""

    scales: dict = field(default_factory=dict)  # id -> Scale
    tree: SystemNode = None
    das: dict = field(default_factory=dict)  # id -> DA
    compat: Optional[CompatTable] = None
    tables: dict = field(default_factory=dict)  # id -> IntegrationTable
    thresholds: dict = field(default_factory=dict)  # id -> (source scale id, ThresholdSpec)
    ordinal_maps: dict = field(default_factory=dict)  # id -> OrdinalMap
    topsis: dict = field(default_factory=dict)  # id -> (method, TopsisConfig)
    compositions: dict = field(default_factory=dict)  # name -> Composition
    notes: dict = field(default_factory=dict)  # method -> list of note lines

    def leaf(self, leaf_id: str) -> SystemNode:
        for node in self.tree.leaves():
            if node.id == leaf_id:
                return node
        raise KeyError(f"no leaf {leaf_id!r}")

    def estimates_of_kind(self, kind: str) -> dict:
        return {
            da.id: da.estimates[kind] for da in self.das.values() if kind in da.estimates
        }

    def topsis_for(self, method: str) -> Optional[TopsisConfig]:
        for bound_method, config in self.topsis.values():
            if bound_method == method:
                return config
        return None


def validate_model(model: SystemModel) -> Validation:
    """Structural and data validation; every violation is reported with a path."""
    problems: list[str] = []
    if model.tree is None:
        return Validation(("tree: missing",))

    seen_nodes: set[str] = set()
    da_home: dict[str, str] = {}
    for path, node in model.tree.walk():
        if node.id in seen_nodes:
            problems.append(f"{path}: duplicate node id {node.id!r}")
        seen_nodes.add(node.id)
        if node.is_leaf:
            if not node.das:
                problems.append(f"{path}: leaf has no DAs")
            for da_id in node.das:
                if da_id in da_home:
                    problems.append(f"{path}: DA {da_id!r} already belongs to leaf {da_home[da_id]!r}")
                da_home[da_id] = node.id
                if da_id not in model.das:
                    problems.append(f"{path}: unknown DA {da_id!r}")
            for kind, scale_id in node.estimate_scales:
                if kind not in ESTIMATE_KINDS:
                    problems.append(f"{path}: unknown estimate kind {kind!r}")
                if scale_id not in model.scales:
                    problems.append(f"{path}: unknown scale {scale_id!r}")
        elif not node.children:
            problems.append(f"{path}: internal node has no children")

    for da_id, da in sorted(model.das.items()):
        if da_id not in da_home:
            problems.append(f"das/{da_id}: not attached to any leaf")
        for kind, e in sorted(da.estimates.items()):
            report = validate_estimate(e)
            problems.extend(f"das/{da_id}/{kind}: {p}" for p in report.violations)

    for table_id, table in sorted(model.tables.items()):
        problems.extend(f"tables/{table_id}: {p}" for p in table.check_dense())
        problems.extend(f"tables/{table_id}: {p}" for p in table.check_monotone())

    if model.compat is not None:
        compat = model.compat
        for (a, b), level in sorted(compat.entries.items()):
            where = f"compat/{a}-{b}"
            for da_id in (a, b):
                if da_id not in da_home:
                    problems.append(f"{where}: unknown DA {da_id!r}")
            if a in da_home and b in da_home and da_home[a] == da_home[b]:
                problems.append(f"{where}: both DAs belong to leaf {da_home[a]!r}")
            if not compat.min_level <= level <= compat.nu:
                problems.append(f"{where}: level {level} outside {compat.min_level}..{compat.nu}")
        leaves = model.tree.leaves()
        for i, la in enumerate(leaves):
            for lb in leaves[i + 1 :]:
                for da_a in la.das:
                    for da_b in lb.das:
                        if tuple(sorted((da_a, da_b))) not in compat.entries:
                            problems.append(f"compat: missing entry for pair ({da_a!r}, {da_b!r})")

    leaf_ids = [n.id for n in model.tree.leaves()]
    for name, comp in model.compositions.items():
        mapping = comp.mapping
        if sorted(mapping) != sorted(leaf_ids):
            problems.append(f"compositions/{name}: must select exactly one DA per leaf")
            continue
        for leaf_id, da_id in comp.selection:
            if da_id not in model.leaf(leaf_id).das:
                problems.append(f"compositions/{name}: DA {da_id!r} not in leaf {leaf_id!r}")

    return Validation(tuple(problems))


@dataclass(frozen=True)
class EnumerationResult:
    compositions: tuple[Composition, ...]
    truncated: bool


def enumerate_compositions(model: SystemModel, limit: int = 10**6) -> EnumerationResult:
    """Cartesian product of leaf DA lists in lexicographic DA-index order.

    Stops after ``limit`` compositions, flagging truncation explicitly.
    """
    leaves = model.tree.leaves()
    out = []
    truncated = False
    for pick in product(*(leaf.das for leaf in leaves)):
        if len(out) >= limit:
            truncated = True
            break
        out.append(Composition(tuple(zip((l.id for l in leaves), pick))))
    return EnumerationResult(tuple(out), truncated)


def swap_neighbors(model: SystemModel, composition: Composition):
    """Compositions differing from the given one in exactly one leaf's DA."""
    leaves = model.tree.leaves()
    selection = composition.mapping
    for leaf in leaves:
        for da in leaf.das:
            if da == selection[leaf.id]:
                continue
            changed = dict(selection, **{leaf.id: da})
            yield Composition(tuple((l.id, changed[l.id]) for l in leaves))


def _leaf_k(model: SystemModel) -> int:
    sizes = []
    for leaf in model.tree.leaves():
        bindings = dict(leaf.estimate_scales)
        scale_id = bindings.get("ordinal")
        if scale_id is not None and scale_id in model.scales:
            sizes.append(model.scales[scale_id].size)
    if not sizes:
        raise ModelError(model.tree.id, "no ordinal scales bound to leaves")
    return max(sizes)


def _median_eval(model: SystemModel, node: SystemNode, selection: Mapping[str, str], metric: str):
    """Recursive median-like evaluation; internal children feed their representative up."""
    estimates = model.estimates_of_kind("multiset")
    child_values = {}
    scale = None
    for child in node.children:
        if child.is_leaf:
            selected = selection[child.id]
            e = estimates.get(selected)
            if e is None:
                raise ModelError(f"{node.id}/{child.id}", f"DA {selected!r} has no multiset estimate")
            child_values[child.id] = e.value
            scale = e.scale
        else:
            child_values[child.id] = _median_eval(model, child, selection, metric).representative
    if scale is None:
        first = next(iter(estimates.values()), None)
        if first is None:
            raise ModelError(node.id, "model has no multiset estimates")
        scale = first.scale
    return median_like(list(child_values.values()), scale, metric)


def evaluate(model: SystemModel, composition: Composition, method: str, metric: str = CUM_L1):
    """Evaluate one composition under an integration method.

    ``tables`` recurses through per-node integration tables and
    ``multiset-median`` aggregates level by level; the remaining methods
    consume the leaf estimates of the whole tree directly. Pure function of
    its arguments: repeated calls return equal results.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {METHODS}")
    selection = composition.mapping
    selected = composition.da_ids
    kind = METHOD_KIND[method]
    estimates = model.estimates_of_kind(kind)

    if method == "additive":
        return integrate.additive_utility(selected, estimates)
    if method == "vector-sum":
        return integrate.vector_sum(selected, estimates)
    if method == "count-profile":
        return integrate.count_profile(selected, estimates, _leaf_k(model))
    if method == "quality-vector":
        if model.compat is None:
            raise ModelError(model.tree.id, "quality-vector needs a compatibility table")
        return integrate.quality_vector(selection, estimates, model.compat, _leaf_k(model))
    if method == "multiset-median":
        if model.tree.is_leaf:
            raise ModelError(model.tree.id, "tree root cannot be a leaf for multiset-median")
        return _median_eval(model, model.tree, selection, metric)
    # tables
    leaf_levels = {}
    for leaf in model.tree.leaves():
        if leaf.id not in selection:
            raise ModelError(leaf.id, "composition selects no DA for this leaf")
        da_id = selection[leaf.id]
        e = estimates.get(da_id)
        if e is None:
            raise ModelError(leaf.id, f"DA {da_id!r} has no ordinal estimate")
        leaf_levels[leaf.id] = e.value
    return integrate.table_eval(model.tree, leaf_levels, model.tables)


def _result_point(method: str, result):
    """Numeric point for TOPSIS reductions (raw values, not oriented keys)."""
    if method == "additive":
        return (float(result.value),)
    if method == "vector-sum":
        return tuple(float(v) for v in result.value)
    raise ModelError(method, "closeness reduction needs quantitative or vector results")


def _result_dominance(method: str):
    if method in ("vector-sum", "additive", "count-profile"):
        return KeyedDominance(estimate_key, method)
    if method == "quality-vector":
        return QUALITY_DOMINANCE
    if method == "multiset-median":
        return COUNT_DOMINANCE
    if method == "tables":
        return KeyedDominance(lambda level: (-float(level),), "level")
    raise ValueError(f"unknown method {method!r}")


def _corners(model: SystemModel, method: str, results):
    """Best/worst corner payloads of the ambient result scale for label_D."""
    if method == "tables":
        root_table = model.tables.get(model.tree.table) if model.tree.table else None
        size = root_table.output.size if root_table else max(results)
        return 1, size
    sample = results[0]
    if method in ("additive", "vector-sum"):
        scale = sample.scale
        if isinstance(scale, QuantScale):
            return Estimate(scale, scale.best), Estimate(scale, scale.worst)
        best = tuple(c.best for c in scale.criteria)
        worst = tuple(c.worst for c in scale.criteria)
        return Estimate(scale, best), Estimate(scale, worst)
    if method == "count-profile":
        scale = sample.scale
        best = (scale.elements,) + (0,) * (scale.levels - 1)
        worst = (0,) * (scale.levels - 1) + (scale.elements,)
        return Estimate(scale, best), Estimate(scale, worst)
    if method == "multiset-median":
        counts = sample.representative
        n = sum(counts)
        best = (n,) + (0,) * (len(counts) - 1)
        worst = (0,) * (len(counts) - 1) + (n,)
        return best, worst
    # quality-vector
    nu = model.compat.nu
    counts = sample.counts
    m, k = sum(counts), len(counts)
    best = QualityVector(nu, (m,) + (0,) * (k - 1), nu)
    worst = QualityVector(model.compat.min_level, (0,) * (k - 1) + (m,), nu)
    return best, worst


@dataclass(frozen=True)
class RankEntry:
    name: str
    result: object
    rank: Optional[int] = None
    label: Optional[DLabel] = None
    closeness: Optional[float] = None


@dataclass(frozen=True)
class RankReport:
    method: str
    reduction: str
    entries: tuple[RankEntry, ...]
    notes: tuple[str, ...] = ()


def _rank_points(method: str, results):
    """Comparable payloads fed to peeling / labelling for each method."""
    if method == "multiset-median":
        return [r.representative for r in results]
    return list(results)


def rank(
    model: SystemModel,
    method: str,
    reduction: str = "layers",
    compositions: Optional[Sequence[Composition]] = None,
    metric: str = CUM_L1,
    limit: int = 10**6,
) -> RankReport:
    """Evaluate compositions and reduce the results to priorities.

    Uses the model's named compositions by default (model order), else the
    full enumeration up to ``limit``. Output order follows input order.
    """
    if reduction not in REDUCTIONS:
        raise ValueError(f"unknown reduction {reduction!r}, expected one of {REDUCTIONS}")
    if compositions is None:
        compositions = list(model.compositions.values())
        if not compositions:
            compositions = list(enumerate_compositions(model, limit).compositions)
    results = [evaluate(model, c, method, metric) for c in compositions]
    names = [c.label() for c in compositions]
    notes = tuple(model.notes.get(method, ()))

    if reduction == "closeness":
        config = model.topsis_for(method)
        if config is None:
            raise ModelError(method, "no TOPSIS config bound to this method")
        ranking: TopsisRanking = integrate.topsis_rank(
            [_result_point(method, r) for r in results], config
        )
        position = {i: p + 1 for p, i in enumerate(ranking.order)}
        entries = tuple(
            RankEntry(n, r, rank=position[i], closeness=ranking.results[i].closeness)
            for i, (n, r) in enumerate(zip(names, results))
        )
        return RankReport(method, reduction, entries, notes)

    points = _rank_points(method, results)
    dominance = _result_dominance(method)
    if reduction == "labelD":
        best, worst = _corners(model, method, points)
        labels = label_D(points, dominance, best, worst)
        entries = tuple(RankEntry(n, r, label=l) for n, r, l in zip(names, results, labels))
        return RankReport(method, reduction, entries, notes)

    ranks = peel_layers(points, dominance)
    entries = tuple(RankEntry(n, r, rank=k) for n, r, k in zip(names, results, ranks))
    return RankReport(method, reduction, entries, notes)
