"""Command-line surface: validate, evaluate, rank, poset export, table checks.

Exit codes: 0 success, 1 validation/evaluation error, 2 usage error.
Every error path prints a single ``error:``-prefixed line first.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import io as model_io
from .errors import SysevalError
from .model import METHODS, REDUCTIONS, rank, evaluate, validate_model
from .multiset import METRICS, build_scale_poset, enumerate_count_vectors
from .poset import COUNT_DOMINANCE, build_poset_view
from .scales import CountPosetScale, MultisetScale


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syseval",
        description="Evaluate and rank hierarchical modular systems from a JSON model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model(p):
        p.add_argument("model", help="model file path or bundled fixture name")
        p.add_argument("--json", action="store_true", help="emit structured JSON records")

    p = sub.add_parser("validate", help="check a model file")
    add_model(p)

    p = sub.add_parser("evaluate", help="evaluate one named composition")
    add_model(p)
    p.add_argument("--composition", required=True, help="named composition to evaluate")
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--metric", choices=METRICS, default="cumL1")

    p = sub.add_parser("rank", help="evaluate and rank compositions")
    add_model(p)
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--reduce", choices=REDUCTIONS, default="layers")
    p.add_argument("--metric", choices=METRICS, default="cumL1")
    p.add_argument("--all", action="store_true", help="enumerate all compositions")
    p.add_argument("--limit", type=int, default=10**6)

    p = sub.add_parser("poset", help="export a scale poset as DOT")
    add_model(p)
    p.add_argument("--scale", required=True, help="multiset or count-poset scale id")
    p.add_argument("--dot", help="write DOT here instead of stdout")

    p = sub.add_parser("tables", help="integration-table utilities")
    tsub = p.add_subparsers(dest="subcommand", required=True)
    p = tsub.add_parser("check", help="density and monotonicity checks")
    add_model(p)
    mono = p.add_mutually_exclusive_group()
    mono.add_argument("--strict-monotone", dest="strict", action="store_true", default=True)
    mono.add_argument("--warn-monotone", dest="strict", action="store_false")
    return parser


def _load_model_text(spec: str) -> str:
    path = Path(spec)
    if path.exists():
        return path.read_text(encoding="utf-8")
    name = spec if spec.endswith(".json") else f"{spec}.model.json"
    ref = resources.files("syseval.fixtures").joinpath(name)
    if ref.is_file():
        return ref.read_text(encoding="utf-8")
    raise SysevalError(f"model not found: {spec}")


def _load_model(spec: str):
    return model_io.parse_model(_load_model_text(spec))


def _cmd_validate(args, out) -> int:
    model = _load_model(args.model)
    report = validate_model(model)
    if args.json:
        print(json.dumps({"ok": report.ok, "violations": list(report.violations)}), file=out)
        return 0 if report.ok else 1
    if report.ok:
        print(
            f"ok: {len(model.scales)} scales, {len(model.das)} DAs, "
            f"{len(model.compositions)} compositions",
            file=out,
        )
        return 0
    n = len(report.violations)
    print(f"error: model invalid ({n} violation{'s' if n != 1 else ''})", file=out)
    for line in report.violations:
        print(f"violation: {line}", file=out)
    return 1


def _cmd_evaluate(args, out) -> int:
    model = _load_model(args.model)
    comp = model.compositions.get(args.composition)
    if comp is None:
        raise SysevalError(f"unknown composition {args.composition!r}")
    result = evaluate(model, comp, args.method, metric=args.metric)
    if args.json:
        record = {
            "composition": args.composition,
            "method": args.method,
            "result": model_io.jsonable_value(result),
        }
        print(json.dumps(record, sort_keys=True), file=out)
    else:
        print(model_io.format_value(result), file=out)
    return 0


def _cmd_rank(args, out) -> int:
    model = _load_model(args.model)
    compositions = None
    if args.all:
        from .model import enumerate_compositions

        enum = enumerate_compositions(model, args.limit)
        compositions = list(enum.compositions)
    report = rank(
        model,
        args.method,
        reduction=args.reduce,
        compositions=compositions,
        metric=args.metric,
        limit=args.limit,
    )
    if args.json:
        entries = []
        for e in report.entries:
            record = {"name": e.name, "value": model_io.jsonable_value(e.result)}
            if e.rank is not None:
                record["rank"] = e.rank
            if e.label is not None:
                record["label"] = str(e.label)
            if e.closeness is not None:
                record["closeness"] = e.closeness
            entries.append(record)
        print(
            json.dumps(
                {
                    "method": report.method,
                    "reduction": report.reduction,
                    "entries": entries,
                    "notes": list(report.notes),
                },
                sort_keys=True,
            ),
            file=out,
        )
        return 0
    for e in report.entries:
        value = model_io.format_value(e.result)
        if report.reduction == "labelD":
            print(f"D({e.name})={e.label} value={value}", file=out)
        elif report.reduction == "closeness":
            closeness = format(e.closeness, ".17g")
            print(f"r({e.name})={e.rank} closeness={closeness} value={value}", file=out)
        else:
            print(f"r({e.name})={e.rank} value={value}", file=out)
    for note in report.notes:
        print(f"# note: {note}", file=out)
    return 0


def _cmd_poset(args, out) -> int:
    model = _load_model(args.model)
    scale = model.scales.get(args.scale)
    if scale is None:
        raise SysevalError(f"unknown scale {args.scale!r}")
    if isinstance(scale, MultisetScale):
        view = build_scale_poset(scale).view
    elif isinstance(scale, CountPosetScale):
        view = build_poset_view(
            enumerate_count_vectors(scale.levels, scale.elements), COUNT_DOMINANCE
        )
    else:
        raise SysevalError(f"scale {args.scale!r} is not a poset-like scale")
    dot = model_io.export_dot(view, name="poset")
    if args.dot:
        Path(args.dot).write_text(dot, encoding="utf-8")
        print(
            f"poset {args.scale}: {len(view.elements)} nodes, "
            f"{len(view.covers)} edges -> {args.dot}",
            file=out,
        )
    else:
        out.write(dot)
    return 0


def _cmd_tables_check(args, out) -> int:
    model = _load_model(args.model)
    if not model.tables:
        print("ok: no tables declared", file=out)
        return 0
    failed = False
    for tid, table in sorted(model.tables.items()):
        dense_problems = table.check_dense()
        mono_problems = table.check_monotone()
        if not dense_problems and not mono_problems:
            print(f"table {tid}: ok ({len(table.cells)} cells)", file=out)
            continue
        for line in dense_problems:
            failed = True
            print(f"error: table {tid}: {line}", file=out)
        for line in mono_problems:
            if args.strict:
                failed = True
                print(f"error: table {tid}: {line}", file=out)
            else:
                print(f"warning: table {tid}: {line}", file=out)
    return 1 if failed else 0


def run_cli(argv=None, out=None, err=None) -> int:
    """Run one CLI invocation; returns the process exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors (exit code 2)
        return int(exc.code or 0)
    try:
        if args.command == "validate":
            return _cmd_validate(args, out)
        if args.command == "evaluate":
            return _cmd_evaluate(args, out)
        if args.command == "rank":
            return _cmd_rank(args, out)
        if args.command == "poset":
            return _cmd_poset(args, out)
        if args.command == "tables":
            return _cmd_tables_check(args, out)
    except SysevalError as exc:
        if getattr(exc, "errors", None):
            print(f"error: {exc.errors[0]}", file=err)
            for line in exc.errors[1:]:
                print(f"error: {line}", file=err)
        else:
            print(f"error: {exc}", file=err)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    return 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
