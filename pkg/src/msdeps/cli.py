"""Command-line entry point: ``msdeps analyze|diff|hotspots|ir``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .config import load_config
from .errors import EmptySystemError, MsdepsError
from .ir import load_ir, save_ir
from .matrix import diff as diff_matrices
from .model import TOOL_VERSION, SDMCell
from .pipeline import analyze_ir, analyze_source, extract_ir
from .render import diff_to_json, emit_hotspots_csv, matrix_from_json

logger = logging.getLogger("msdeps")

EXIT_OK, EXIT_ERROR, EXIT_EMPTY, EXIT_CHANGED = 0, 1, 2, 3
KINDS = ("edm", "ddm", "sdm")


class CliError(MsdepsError):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="TOML or YAML configuration file")
    p.add_argument("--jobs", type=int, help="worker threads for source scanning (default: logical CPUs)")
    p.add_argument("--strict", action="store_true", default=None, help="leave ambiguous matches out of the EDM")
    p.add_argument("--rev", help="git tag or commit to analyze")
    p.add_argument("--format", dest="formats", help="comma list drawn from json,csv,svg")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="msdeps", description="Endpoint, data and service dependency matrices.")
    parser.add_argument("--version", action="version", version=f"msdeps {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="run the full pipeline and write all outputs")
    a.add_argument("source", nargs="?", help="directory or git URL (omit with --ir-in)")
    a.add_argument("--out", default="out", help="output directory (default: out)")
    a.add_argument("--ir-in", help="analyze this IR file instead of scanning sources")
    a.add_argument("--ir-out", help="also write the extracted IR here")
    a.add_argument("--min-calls", type=int, help="hotspot threshold (default: 3)")

    d = sub.add_parser("diff", parents=[common], help="compare one matrix across two versions")
    d.add_argument("old", help="directory, git URL, IR file or analysis.json")
    d.add_argument("new", help="directory, git URL, IR file or analysis.json")
    d.add_argument("--kind", default="edm", help="matrix to compare: edm, ddm or sdm")
    d.add_argument("--new-kind", help="matrix kind for NEW when it differs from --kind (rejected)")
    d.add_argument("--old-rev", help="revision for OLD (default: --rev)")
    d.add_argument("--new-rev", help="revision for NEW (default: --rev)")
    d.add_argument("--out", default="out", help="directory for diff.json (default: out)")

    h = sub.add_parser("hotspots", parents=[common], help="list heavily called endpoints")
    h.add_argument("source", nargs="?")
    h.add_argument("--ir-in")
    h.add_argument("--min-calls", type=int, help="report endpoints with more calls than this (default: 3)")

    ir = sub.add_parser("ir", help="IR utilities")
    irsub = ir.add_subparsers(dest="ir_command", required=True)
    e = irsub.add_parser("export", parents=[common], help="scan sources and write the IR file")
    e.add_argument("source")
    e.add_argument("path", nargs="?", help="output file (or use --ir-out)")
    e.add_argument("--ir-out")
    v = irsub.add_parser("validate", parents=[common], help="load and check an IR file")
    v.add_argument("path")
    return parser


def _run_config(args):
    cfg = load_config(args.config)
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    return cfg.with_flags(
        jobs=jobs,
        strict=args.strict,
        formats=args.formats,
        min_calls=getattr(args, "min_calls", None),
    )


def _print_summary(analysis, out) -> None:
    s = analysis.summary()
    print(f"services: {s['services']} analyzed, {s['skipped']} skipped", file=out)
    for key in ("endpoints", "calls", "matched", "unmatched", "ambiguous", "entities"):
        print(f"{key}: {s[key]}", file=out)
    print(f"entity classes: {s['entityClasses']}", file=out)
    if analysis.skipped:
        print("skipped: " + ", ".join(analysis.skipped), file=out)


def cmd_analyze(args, out=sys.stdout) -> int:
    cfg = _run_config(args)
    if args.ir_in:
        if args.source:
            raise CliError("give either SOURCE or --ir-in, not both")
        analysis = analyze_ir(load_ir(args.ir_in), cfg)
    else:
        if not args.source:
            raise CliError("analyze needs SOURCE or --ir-in")
        ir, warnings, skipped = extract_ir(args.source, cfg, args.rev)
        analysis = analyze_ir(ir, cfg, warnings, skipped)
    if args.ir_out:
        save_ir(analysis.ir, args.ir_out)
    analysis.write(args.out, cfg.formats, cfg.colors)
    _print_summary(analysis, out)
    return EXIT_OK


def _load_matrix(spec: str, kind: str, cfg, revision):
    """A matrix from a pre-analyzed JSON document, an IR file or a source tree."""
    path = Path(spec)
    if path.is_file() and path.suffix == ".json":
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read {spec}: {exc}") from None
        if isinstance(doc, dict) and "matrices" in doc:
            return matrix_from_json(doc, kind)
        analysis = analyze_ir(load_ir(path), cfg)
    else:
        analysis = analyze_source(spec, cfg, revision)
    return getattr(analysis, kind)


def _cell_text(v) -> str:
    return v.display if isinstance(v, SDMCell) else str(v)


def format_diff(d) -> str:
    lines = [f"{d.kind.upper()} diff"]
    for name in d.services_added:
        lines.append(f"+ service {name}")
    for name in d.services_removed:
        lines.append(f"- service {name}")
    for (a, b), v in d.added:
        lines.append(f"+ {a} -> {b}: {_cell_text(v)}")
    for (a, b), v in d.removed:
        lines.append(f"- {a} -> {b}: {_cell_text(v)}")
    for (a, b), old, new in d.changed:
        lines.append(f"~ {a} -> {b}: {_cell_text(old)} => {_cell_text(new)}")
    if d.is_empty():
        lines.append("no changes")
    return "\n".join(lines)


def cmd_diff(args, out=sys.stdout) -> int:
    old_kind = args.kind.lower()
    new_kind = (args.new_kind or args.kind).lower()
    for k in (old_kind, new_kind):
        if k not in KINDS:
            raise CliError(f"unknown matrix kind {k!r}; expected one of {', '.join(KINDS)}")
    cfg = _run_config(args)
    old = _load_matrix(args.old, old_kind, cfg, args.old_rev or args.rev)
    new = _load_matrix(args.new, new_kind, cfg, args.new_rev or args.rev)
    d = diff_matrices(old, new)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "diff.json").write_text(diff_to_json(d), encoding="utf-8")
    print(format_diff(d), file=out)
    return EXIT_OK if d.is_empty() else EXIT_CHANGED


def cmd_hotspots(args, out=sys.stdout) -> int:
    cfg = _run_config(args)
    if args.ir_in:
        analysis = analyze_ir(load_ir(args.ir_in), cfg)
    elif args.source:
        analysis = analyze_source(args.source, cfg, args.rev)
    else:
        raise CliError("hotspots needs SOURCE or --ir-in")
    if args.formats and "csv" in cfg.formats and "json" not in cfg.formats:
        out.write(emit_hotspots_csv(analysis.hotspots))
        return EXIT_OK
    if args.formats and "json" in cfg.formats:
        rows = [
            {
                "service": r.endpoint.service,
                "path": r.endpoint.path.render(),
                "method": r.endpoint.method,
                "calls": r.call_count,
                "distinctCallers": r.distinct_callers,
            }
            for r in analysis.hotspots
        ]
        print(json.dumps(rows, indent=2), file=out)
        return EXIT_OK
    print(f"{'calls':>5}  {'callers':>7}  endpoint", file=out)
    for r in analysis.hotspots:
        print(f"{r.call_count:>5}  {r.distinct_callers:>7}  {r.endpoint.method} {r.endpoint.display_path}", file=out)
    if not analysis.hotspots:
        print(f"no endpoint has more than {cfg.min_calls} calls", file=out)
    return EXIT_OK


def cmd_ir(args, out=sys.stdout) -> int:
    if args.ir_command == "validate":
        ir = load_ir(args.path)
        print(
            f"valid: {len(ir.services)} services, {len(ir.endpoints)} endpoints, "
            f"{len(ir.calls)} calls, {len(ir.entities)} entities",
            file=out,
        )
        return EXIT_OK
    target = args.path or args.ir_out
    if not target:
        raise CliError("ir export needs an output path")
    cfg = _run_config(args)
    ir, _, _ = extract_ir(args.source, cfg, args.rev)
    save_ir(ir, target)
    print(f"wrote {target}", file=out)
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "diff": cmd_diff, "hotspots": cmd_hotspots, "ir": cmd_ir}


def _error(message: str) -> None:
    print("error: " + " ".join(str(message).split()), file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage; keep the greppable prefix
        if exc.code not in (0, None):
            _error("invalid command line")
            return EXIT_ERROR
        return EXIT_OK
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args, sys.stdout)
    except EmptySystemError as exc:
        _error(exc)
        return EXIT_EMPTY if args.command in ("analyze", "hotspots") else EXIT_ERROR
    except (MsdepsError, OSError) as exc:
        _error(exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
