"""Model-file parsing, serialization, DOT export and report formatting.

The model format is JSON with the sections ``scales``, ``tree``, ``das``
and optionally ``compat``, ``tables``, ``thresholds``, ``ordinal_maps``,
``topsis``, ``compositions`` and ``notes``; see ``docs/model-schema.md``.
Parsing collects every error and never returns a partial model.
"""

from __future__ import annotations

import json
from typing import Optional

from .errors import ModelParseError
from .integrate import IntegrationTable, TableInput, TopsisConfig
from .model import (
    DA,
    CompatTable,
    Composition,
    ESTIMATE_KINDS,
    METHODS,
    SystemModel,
    SystemNode,
)
from .multiset import MedianResult
from .poset import PosetView
from .scales import (
    CountPosetScale,
    Estimate,
    MultisetScale,
    OrdinalScale,
    QualityVector,
    QuantScale,
    VectorScale,
)
from .transforms import OrdinalMap, ThresholdSpec

_SECTIONS = (
    "scales",
    "tree",
    "das",
    "compat",
    "tables",
    "thresholds",
    "ordinal_maps",
    "topsis",
    "compositions",
    "notes",
)


def _parse_scales(raw: dict, errors: list) -> dict:
    scales: dict = {}
    section = raw.get("scales", {})
    if not isinstance(section, dict):
        errors.append("scales: must be an object")
        return scales
    deferred = []
    for sid, sd in section.items():
        where = f"scales/{sid}"
        if not isinstance(sd, dict):
            errors.append(f"{where}: must be an object")
            continue
        kind = sd.get("kind")
        try:
            if kind == "quantitative":
                scales[sid] = QuantScale(float(sd["worst"]), float(sd["best"]), id=sid)
            elif kind == "ordinal":
                scales[sid] = OrdinalScale(int(sd["size"]), id=sid)
            elif kind == "count-poset":
                scales[sid] = CountPosetScale(int(sd["levels"]), int(sd["elements"]), id=sid)
            elif kind == "multiset":
                scales[sid] = MultisetScale(int(sd["levels"]), int(sd["elements"]), id=sid)
            elif kind == "vector":
                deferred.append((sid, sd))
            else:
                errors.append(f"{where}: unknown scale kind {kind!r}")
        except KeyError as exc:
            errors.append(f"{where}: missing field {exc.args[0]!r}")
        except (TypeError, ValueError) as exc:
            errors.append(f"{where}: {exc}")
    for sid, sd in deferred:
        where = f"scales/{sid}"
        criteria = []
        for ref in sd.get("criteria", []):
            crit = scales.get(ref)
            if crit is None:
                errors.append(f"{where}: unknown criterion scale {ref!r}")
            elif not isinstance(crit, (QuantScale, OrdinalScale)):
                errors.append(f"{where}: criterion {ref!r} must be quantitative or ordinal")
            else:
                criteria.append(crit)
        if len(criteria) == len(sd.get("criteria", [])):
            try:
                scales[sid] = VectorScale(tuple(criteria), id=sid)
            except ValueError as exc:
                errors.append(f"{where}: {exc}")
    return scales


def _parse_node(nd: dict, where: str, errors: list) -> Optional[SystemNode]:
    if not isinstance(nd, dict) or "id" not in nd:
        errors.append(f"{where}: node needs an 'id'")
        return None
    node_id = nd["id"]
    where = f"{where}/{node_id}"
    if "children" in nd:
        children = []
        for i, child in enumerate(nd["children"]):
            parsed = _parse_node(child, where, errors)
            if parsed is not None:
                children.append(parsed)
        return SystemNode(node_id, children=tuple(children), table=nd.get("table"))
    das = nd.get("das", [])
    bindings = nd.get("scales", {})
    if not isinstance(bindings, dict):
        errors.append(f"{where}: 'scales' must map estimate kinds to scale ids")
        bindings = {}
    return SystemNode(
        node_id,
        das=tuple(das),
        estimate_scales=tuple(sorted(bindings.items())),
    )


def _parse_das(raw: dict, tree: Optional[SystemNode], scales: dict, errors: list) -> dict:
    das: dict = {}
    section = raw.get("das", {})
    if not isinstance(section, dict):
        errors.append("das: must be an object")
        return das
    leaf_of = {}
    if tree is not None:
        for leaf in tree.leaves():
            for da_id in leaf.das:
                leaf_of[da_id] = leaf
    for da_id, dd in section.items():
        where = f"das/{da_id}"
        estimates = {}
        for kind, value in (dd.get("estimates") or {}).items():
            if kind not in ESTIMATE_KINDS:
                errors.append(f"{where}: unknown estimate kind {kind!r}")
                continue
            leaf = leaf_of.get(da_id)
            if leaf is None:
                errors.append(f"{where}: DA is not attached to any leaf")
                continue
            scale_id = dict(leaf.estimate_scales).get(kind)
            if scale_id is None:
                errors.append(f"{where}: leaf {leaf.id!r} binds no scale for kind {kind!r}")
                continue
            scale = scales.get(scale_id)
            if scale is None:
                errors.append(f"{where}: unknown scale {scale_id!r}")
                continue
            if isinstance(value, list):
                value = tuple(value)
            estimates[kind] = Estimate(scale, value)
        das[da_id] = DA(da_id, estimates)
    return das


def _node_output_size(node_id: str, tree: SystemNode, raw: dict, scales: dict) -> Optional[int]:
    """Size of the ordinal scale a tree node emits (leaf scale or table output)."""
    for path, node in tree.walk():
        if node.id != node_id:
            continue
        if node.is_leaf:
            scale_id = dict(node.estimate_scales).get("ordinal")
            scale = scales.get(scale_id)
            return scale.size if isinstance(scale, OrdinalScale) else None
        table = (raw.get("tables") or {}).get(node.table or "")
        if isinstance(table, dict) and "output_size" in table:
            return int(table["output_size"])
        return None
    return None


def _parse_tables(raw: dict, tree: Optional[SystemNode], scales: dict, errors: list) -> dict:
    tables: dict = {}
    section = raw.get("tables", {})
    if not isinstance(section, dict):
        errors.append("tables: must be an object")
        return tables
    for tid, td in section.items():
        where = f"tables/{tid}"
        try:
            inputs = []
            for i, inp in enumerate(td.get("inputs", [])):
                child = inp.get("child", "")
                size = None
                if tree is not None:
                    size = _node_output_size(child, tree, raw, scales)
                if size is None:
                    errors.append(f"{where}/inputs[{i}]: cannot resolve ordinal scale of node {child!r}")
                    raise _Skip()
                scale = OrdinalScale(size, id=f"{tid}.in.{child}")
                inputs.append(TableInput(scale, tuple(inp.get("levels", ())), name=child))
            output = OrdinalScale(int(td["output_size"]), id=f"{tid}.out")
            cells = {}
            for row in td.get("cells", []):
                cells[tuple(row[:-1])] = row[-1]
            tables[tid] = IntegrationTable(tuple(inputs), output, cells, id=tid)
        except _Skip:
            continue
        except KeyError as exc:
            errors.append(f"{where}: missing field {exc.args[0]!r}")
        except (TypeError, ValueError) as exc:
            errors.append(f"{where}: {exc}")
    return tables


class _Skip(Exception):
    pass


def _ordinal_ref(scales: dict, ref, where: str, errors: list) -> Optional[OrdinalScale]:
    scale = scales.get(ref)
    if not isinstance(scale, OrdinalScale):
        errors.append(f"{where}: {ref!r} is not a known ordinal scale")
        return None
    return scale


def parse_model(text: str) -> SystemModel:
    """Parse model JSON into a :class:`SystemModel`.

    Raises :class:`ModelParseError` carrying every positioned parse or
    reference error; never returns a partial model.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError([f"syntax error at {exc.lineno}:{exc.colno}: {exc.msg}"]) from None
    if not isinstance(raw, dict):
        raise ModelParseError(["top level must be a JSON object"])

    errors: list[str] = []
    for key in raw:
        if key not in _SECTIONS:
            errors.append(f"{key}: unknown section")

    scales = _parse_scales(raw, errors)
    tree = None
    if "tree" not in raw:
        errors.append("tree: missing")
    else:
        tree = _parse_node(raw["tree"], "tree", errors)
    das = _parse_das(raw, tree, scales, errors)
    tables = _parse_tables(raw, tree, scales, errors)

    compat = None
    if "compat" in raw:
        cd = raw["compat"]
        try:
            entries = {}
            for row in cd.get("entries", []):
                a, b, level = row
                entries[tuple(sorted((a, b)))] = int(level)
            compat = CompatTable(int(cd["nu"]), entries, bool(cd.get("zero_allowed", False)))
        except (KeyError, TypeError, ValueError) as exc:
            errors.append(f"compat: {exc}")

    thresholds = {}
    for tid, td in (raw.get("thresholds") or {}).items():
        where = f"thresholds/{tid}"
        source = scales.get(td.get("source"))
        target = _ordinal_ref(scales, td.get("target"), where, errors)
        if not isinstance(source, QuantScale):
            errors.append(f"{where}: source {td.get('source')!r} is not a quantitative scale")
            continue
        if target is None:
            continue
        try:
            thresholds[tid] = (source.id, ThresholdSpec(tuple(td.get("values", ())), target))
        except (TypeError, ValueError) as exc:
            errors.append(f"{where}: {exc}")

    ordinal_maps = {}
    for mid, md in (raw.get("ordinal_maps") or {}).items():
        where = f"ordinal_maps/{mid}"
        source = _ordinal_ref(scales, md.get("source"), where, errors)
        target = _ordinal_ref(scales, md.get("target"), where, errors)
        if source is None or target is None:
            continue
        try:
            ordinal_maps[mid] = OrdinalMap(
                source, target, tuple(md.get("table", ())), bool(md.get("reverse", False))
            )
        except (TypeError, ValueError) as exc:
            errors.append(f"{where}: {exc}")

    topsis = {}
    for cid, cd in (raw.get("topsis") or {}).items():
        where = f"topsis/{cid}"
        method = cd.get("for")
        if method not in METHODS:
            errors.append(f"{where}: 'for' must name a method, got {method!r}")
            continue
        try:
            config = TopsisConfig(
                tuple(tuple(p) for p in cd.get("best", ())),
                tuple(tuple(p) for p in cd.get("worst", ())),
                int(cd.get("exponent", 2)),
            )
            topsis[cid] = (method, config)
        except (TypeError, ValueError) as exc:
            errors.append(f"{where}: {exc}")

    compositions = {}
    leaf_order = [leaf.id for leaf in tree.leaves()] if tree is not None else []
    for name, sel in (raw.get("compositions") or {}).items():
        where = f"compositions/{name}"
        if not isinstance(sel, dict):
            errors.append(f"{where}: must map leaf ids to DA ids")
            continue
        unknown = [l for l in sel if l not in leaf_order]
        missing = [l for l in leaf_order if l not in sel]
        for l in unknown:
            errors.append(f"{where}: unknown leaf {l!r}")
        for l in missing:
            errors.append(f"{where}: no DA selected for leaf {l!r}")
        if not unknown and not missing:
            compositions[name] = Composition(
                tuple((l, sel[l]) for l in leaf_order), name=name
            )

    notes = {}
    for key, lines in (raw.get("notes") or {}).items():
        notes[key] = [str(line) for line in lines]

    if errors:
        raise ModelParseError(errors)
    return SystemModel(
        scales=scales,
        tree=tree,
        das=das,
        compat=compat,
        tables=tables,
        thresholds=thresholds,
        ordinal_maps=ordinal_maps,
        topsis=topsis,
        compositions=compositions,
        notes=notes,
    )


def _scale_doc(scale) -> dict:
    if isinstance(scale, QuantScale):
        return {"kind": "quantitative", "worst": scale.worst, "best": scale.best}
    if isinstance(scale, OrdinalScale):
        return {"kind": "ordinal", "size": scale.size}
    if isinstance(scale, VectorScale):
        return {"kind": "vector", "criteria": [c.id for c in scale.criteria]}
    if isinstance(scale, CountPosetScale):
        return {"kind": "count-poset", "levels": scale.levels, "elements": scale.elements}
    return {"kind": "multiset", "levels": scale.levels, "elements": scale.elements}


def _node_doc(node: SystemNode) -> dict:
    if node.is_leaf:
        doc = {"id": node.id, "das": list(node.das)}
        if node.estimate_scales:
            doc["scales"] = dict(node.estimate_scales)
        return doc
    doc = {"id": node.id}
    if node.table is not None:
        doc["table"] = node.table
    doc["children"] = [_node_doc(c) for c in node.children]
    return doc


def _estimate_doc(e: Estimate):
    return list(e.value) if isinstance(e.value, tuple) else e.value


def serialize_model(model: SystemModel) -> str:
    """Deterministic JSON text; parsing it back yields an identical model."""
    doc: dict = {}
    doc["scales"] = {sid: _scale_doc(s) for sid, s in sorted(model.scales.items())}
    doc["tree"] = _node_doc(model.tree)
    doc["das"] = {
        da_id: {
            "estimates": {
                kind: _estimate_doc(da.estimates[kind])
                for kind in ESTIMATE_KINDS
                if kind in da.estimates
            }
        }
        for da_id, da in sorted(model.das.items())
    }
    if model.compat is not None:
        compat_doc = {"nu": model.compat.nu}
        if model.compat.zero_allowed:
            compat_doc["zero_allowed"] = True
        compat_doc["entries"] = [
            [a, b, level] for (a, b), level in sorted(model.compat.entries.items())
        ]
        doc["compat"] = compat_doc
    if model.tables:
        doc["tables"] = {
            tid: {
                "inputs": [
                    {"child": inp.name, "levels": list(inp.levels)} for inp in table.inputs
                ],
                "output_size": table.output.size,
                "cells": [list(k) + [v] for k, v in sorted(table.cells.items())],
            }
            for tid, table in sorted(model.tables.items())
        }
    if model.thresholds:
        doc["thresholds"] = {
            tid: {"source": source_id, "target": spec.target.id, "values": list(spec.thresholds)}
            for tid, (source_id, spec) in sorted(model.thresholds.items())
        }
    if model.ordinal_maps:
        doc["ordinal_maps"] = {
            mid: {
                "source": m.source.id,
                "target": m.target.id,
                "table": list(m.table),
                "reverse": m.reverse,
            }
            for mid, m in sorted(model.ordinal_maps.items())
        }
    if model.topsis:
        doc["topsis"] = {
            cid: {
                "for": method,
                "best": [list(p) for p in config.best_points],
                "worst": [list(p) for p in config.worst_points],
                "exponent": config.metric_exponent,
            }
            for cid, (method, config) in sorted(model.topsis.items())
        }
    if model.compositions:
        doc["compositions"] = {
            name: dict(comp.selection) for name, comp in model.compositions.items()
        }
    if model.notes:
        doc["notes"] = {k: list(v) for k, v in sorted(model.notes.items())}
    return json.dumps(doc, indent=2) + "\n"


def _node_text(element) -> str:
    if isinstance(element, QualityVector):
        return str(element)
    if isinstance(element, Estimate):
        return _node_text(element.value)
    if isinstance(element, tuple):
        return "(%s)" % ",".join(str(x) for x in element)
    return str(element)


def export_dot(view: PosetView, name: str = "poset") -> str:
    """Graphviz digraph of a poset: one node per element, one edge per cover.

    The text is deterministic: nodes in element order, edges sorted by
    endpoint indices, so repeated exports are byte-identical.
    """
    index = {el: i for i, el in enumerate(view.elements)}
    lines = [f"digraph {name} {{"]
    for i, el in enumerate(view.elements):
        lines.append(f'  n{i} [label="{_node_text(el)}"];')
    edges = sorted((index[a], index[b]) for a, b in view.covers)
    for a, b in edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_value(value) -> str:
    """Render a result value: exact ints, 17-significant-digit floats."""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, tuple):
        return "(%s)" % ",".join(format_value(v) for v in value)
    if isinstance(value, Estimate):
        return format_value(value.value)
    if isinstance(value, QualityVector):
        return str(value)
    if isinstance(value, MedianResult):
        members = ",".join(format_value(e) for e in value.argmin_set)
        text = (
            f"{format_value(value.representative)} argmin={{{members}}} "
            f"metric={value.metric} total={value.total_distance}"
        )
        return text + " tie-broken" if value.tie_broken else text
    return str(value)


def jsonable_value(value):
    """JSON-serializable rendering of a result value for ``--json`` output."""
    if isinstance(value, Estimate):
        return jsonable_value(value.value)
    if isinstance(value, tuple):
        return [jsonable_value(v) for v in value]
    if isinstance(value, QualityVector):
        return {"w": value.w, "counts": list(value.counts)}
    if isinstance(value, MedianResult):
        return {
            "representative": list(value.representative),
            "argmin_set": [list(e) for e in value.argmin_set],
            "metric": value.metric,
            "total_distance": value.total_distance,
            "tie_broken": value.tie_broken,
        }
    return value
