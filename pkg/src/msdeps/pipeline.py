"""End-to-end analysis: source tree or IR in, matrices and rendered files out."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from .config import RunConfig
from .diagnostics import sort_diagnostics
from .frontend import build_ir
from .ingest import discover_services, fetch_repository, skipped_directories
from .match import match_entities, resolve_calls
from .match.paths import PatternTable
from .matrix import build_ddm, build_edm, build_sdm, hotspots, prune
from .model import IRMeta, SystemIR
from .render import emit_csv, emit_heatmap, emit_hotspots_csv, emit_json, heatmap_spec

logger = logging.getLogger(__name__)

OUTPUT_FILES = {
    "json": ("analysis.json",),
    "svg": ("edm.svg", "ddm.svg", "sdm.svg"),
    "csv": ("edm.csv", "ddm.csv", "sdm.csv", "hotspots.csv"),
}


@dataclass
class Analysis:
    ir: SystemIR
    matches: list
    unmatched: list
    ambiguities: list
    entity_matches: list
    equivalence: object
    edm: object
    ddm: object
    sdm: object
    hotspots: list
    diagnostics: list = field(default_factory=list)
    skipped: tuple = ()

    def summary(self) -> dict:
        return {
            "services": len(self.ir.services),
            "skipped": len(self.skipped),
            "endpoints": len(self.ir.endpoints),
            "calls": len(self.ir.calls),
            "matched": len(self.matches),
            "unmatched": len(self.unmatched),
            "ambiguous": sum(1 for m in self.matches if m.ambiguous),
            "entities": len(self.ir.entities),
            "entityClasses": len(self.equivalence.classes),
        }

    def to_json(self) -> str:
        return emit_json(
            self.ir,
            self.edm,
            self.ddm,
            self.sdm,
            self.matches,
            self.equivalence,
            self.diagnostics,
            unmatched=self.unmatched,
            ambiguities=self.ambiguities,
            hotspot_rows=self.hotspots,
            skipped=self.skipped,
        )

    def render(self, formats=("json", "csv", "svg"), colors=None) -> dict[str, str]:
        """File name -> content for every requested output format."""
        out = {}
        if "json" in formats:
            out["analysis.json"] = self.to_json()
        for m in (self.edm, self.ddm, self.sdm):
            view = prune(m)
            if "svg" in formats:
                out[f"{m.kind}.svg"] = emit_heatmap(view, heatmap_spec(view, colors=colors))
            if "csv" in formats:
                out[f"{m.kind}.csv"] = emit_csv(view)
        if "csv" in formats:
            out["hotspots.csv"] = emit_hotspots_csv(self.hotspots)
        return out

    def write(self, out_dir, formats=("json", "csv", "svg"), colors=None) -> list[Path]:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        written = []
        for name, text in self.render(formats, colors).items():
            path = out_dir / name
            # newline="" keeps the CSV CRLF terminators intact
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            written.append(path)
        return written


def analyze_ir(ir: SystemIR, cfg: RunConfig | None = None, diagnostics=(), skipped=()) -> Analysis:
    """Match, build the matrices and collect hotspots for a system IR."""
    cfg = cfg or RunConfig()
    resolution = resolve_calls(ir, PatternTable(overrides=cfg.type_patterns))
    entity_matches, equivalence = match_entities(ir, cfg.similarity)
    matches = [m for m in resolution.matches if not (cfg.strict and m.ambiguous)]
    edm = build_edm(resolution.matches, ir.services, strict=cfg.strict)
    ddm = build_ddm(equivalence, ir.services)
    sdm = build_sdm(edm, ddm)
    return Analysis(
        ir=ir,
        matches=matches,
        unmatched=list(resolution.unmatched),
        ambiguities=list(resolution.ambiguous),
        entity_matches=entity_matches,
        equivalence=equivalence,
        edm=edm,
        ddm=ddm,
        sdm=sdm,
        hotspots=hotspots(matches, cfg.min_calls),
        diagnostics=sort_diagnostics([*diagnostics, *resolution.diagnostics]),
        skipped=tuple(skipped),
    )


def extract_ir(source, cfg: RunConfig | None = None, revision: str | None = None):
    """Fetch, discover and scan ``source``; return ``(ir, warnings, skipped)``.

    A temporary clone is removed on success and kept (with its path logged)
    when scanning fails.
    """
    cfg = cfg or RunConfig()
    fetched = fetch_repository(str(source), revision)
    try:
        roots = discover_services(fetched.path, cfg.discovery)
        skipped = skipped_directories(fetched.path, roots, cfg.discovery)
        warnings = []
        meta = IRMeta(source_root=str(fetched.label or source), revision=fetched.revision)
        ir = build_ir(roots, cfg.frontend, base=fetched.path, meta=meta, jobs=cfg.jobs, diagnostics=warnings)
    except Exception:
        if fetched.temporary:
            logger.error("checkout retained for inspection at %s", fetched.path)
        raise
    fetched.cleanup()
    return ir, warnings, skipped


def analyze_source(source, cfg: RunConfig | None = None, revision: str | None = None) -> Analysis:
    cfg = cfg or RunConfig()
    ir, warnings, skipped = extract_ir(source, cfg, revision)
    return analyze_ir(ir, cfg, warnings, skipped)
