"""Source frontend: scan annotation-based services into a SystemIR."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from ..diagnostics import Diagnostic, sort_diagnostics
from ..errors import EmptySystemError
from ..ir import load_ir
from ..model import IRMeta, SystemIR
from .calls import extract_calls
from .config import FrontendConfig
from .endpoints import extract_endpoints
from .entities import filter_entities
from .scanner import AnnotationSite, ClassDecl, scan_classes, scan_source

__all__ = [
    "AnnotationSite",
    "ClassDecl",
    "FrontendConfig",
    "build_ir",
    "extract_calls",
    "extract_endpoints",
    "filter_entities",
    "load_ir",
    "scan_classes",
    "scan_source",
]


def extract_service(service_root, config: FrontendConfig, base=None):
    """Run every extraction phase for one service; return (endpoints, calls, entities, warnings)."""
    warnings: list[Diagnostic] = []
    classes = scan_classes(service_root, config, base=base, diagnostics=warnings)
    endpoints = extract_endpoints(classes, config, diagnostics=warnings)
    calls = extract_calls(classes, service_root, config, diagnostics=warnings)
    mapping = set(config.endpoint_annotations)
    controllers = {
        (c.service, c.name) for c in classes if any(a.name in mapping for m in c.methods for a in m.annotations)
    }
    entities = filter_entities(classes, config, exclude=controllers)
    seen = {}
    unique = []
    for e in sorted(entities, key=lambda e: e.source_loc):
        if e.key in seen:
            warnings.append(
                Diagnostic("duplicateEntity", f"{e.name} also declared at {seen[e.key]}", *e.source_loc)
            )
            continue
        seen[e.key] = e.source_loc.file
        unique.append(e)
    return endpoints, calls, unique, warnings


def build_ir(service_roots, config: FrontendConfig | None = None, *, base=None, meta: IRMeta | None = None,
             jobs: int = 1, diagnostics=None) -> SystemIR:
    """Scan every service and assemble the system IR.

    Services are scanned concurrently when ``jobs > 1``; the merged result
    is sorted, so it does not depend on scheduling.
    """
    service_roots = list(service_roots)
    if not service_roots:
        raise EmptySystemError("no service roots to scan")
    config = config or FrontendConfig()
    if base is None:
        base = Path(service_roots[0].root_dir).parent
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda r: extract_service(r, config, base), service_roots))
    else:
        results = [extract_service(r, config, base) for r in service_roots]
    endpoints, calls, entities, warnings = [], [], [], []
    for eps, cs, ens, ws in results:
        endpoints += eps
        calls += cs
        entities += ens
        warnings += ws
    if diagnostics is not None:
        diagnostics.extend(sort_diagnostics(warnings))
    return SystemIR.build([r.name for r in service_roots], endpoints, calls, entities, meta)
