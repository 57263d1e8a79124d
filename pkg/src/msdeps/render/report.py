"""The ``analysis.json`` document and its matrix round-trip helpers."""

from __future__ import annotations

import json
from collections import Counter, defaultdict

from ..errors import InvalidDiffError, MsdepsError
from ..model import DDM, EDM, SDM, SDMCell, make_services


def matrix_to_json(matrix) -> dict:
    names = list(matrix.service_names)
    if isinstance(matrix, EDM):
        cells = [{"from": a, "to": b, "count": n} for (a, b), n in matrix.cells.items()]
    elif isinstance(matrix, DDM):
        cells = [{"a": a, "b": b, "count": n} for (a, b), n in matrix.cells.items()]
    else:
        cells = [
            {
                "from": a,
                "to": b,
                "endpoint": c.endpoint,
                "data": c.data,
                "display": c.display,
                "classification": c.classification,
            }
            for (a, b), c in matrix.cells.items()
        ]
    return {"services": names, "cells": cells}


def matrix_from_json(doc: dict, kind: str):
    """Rebuild a matrix from an ``analysis.json`` document."""
    try:
        section = doc["matrices"][kind]
        services = make_services(section["services"])
        if kind == "edm":
            return EDM(services, {(c["from"], c["to"]): c["count"] for c in section["cells"]})
        if kind == "ddm":
            return DDM(services, {(c["a"], c["b"]): c["count"] for c in section["cells"]})
        if kind == "sdm":
            return SDM(services, {(c["from"], c["to"]): SDMCell(c["endpoint"], c["data"]) for c in section["cells"]})
    except (KeyError, TypeError) as exc:
        raise MsdepsError(f"malformed analysis document: missing {exc}") from None
    raise InvalidDiffError(f"unknown matrix kind {kind!r}")


def _endpoint_calls(matches):
    counts = Counter((m.endpoint.path.render(), m.endpoint.method) for m in matches)
    return [{"path": p, "method": meth, "count": n} for (p, meth), n in sorted(counts.items())]


def _call_json(call) -> dict:
    return {
        "caller": call.caller,
        "method": call.method,
        "url": call.url_text(),
        "file": call.source_loc.file,
        "line": call.source_loc.line,
        "unresolvable": call.unresolvable,
    }


def emit_json(
    ir,
    edm,
    ddm,
    sdm,
    matches,
    equivalence,
    diagnostics=(),
    *,
    unmatched=(),
    ambiguities=(),
    hotspot_rows=(),
    skipped=(),
) -> str:
    """Serialize a complete analysis; identical inputs give identical bytes."""
    outgoing = defaultdict(lambda: defaultdict(list))
    incoming = defaultdict(lambda: defaultdict(list))
    for m in matches:
        outgoing[m.call.caller][m.endpoint.service].append(m)
        incoming[m.endpoint.service][m.call.caller].append(m)
    entities_by_service = defaultdict(list)
    for e in ir.entities:
        entities_by_service[e.service].append(e)

    services = {}
    for s in ir.services:
        services[s.name] = {
            "id": s.ordinal,
            "dependencies": [
                {"target": t, "endpointCalls": _endpoint_calls(ms)} for t, ms in sorted(outgoing[s.name].items())
            ],
            "dependants": [
                {"source": c, "endpointCalls": _endpoint_calls(ms)} for c, ms in sorted(incoming[s.name].items())
            ],
            "entities": [
                {
                    "name": e.name,
                    "kind": e.kind,
                    "fields": [{"name": f.name, "typeName": f.type_name} for f in e.fields],
                }
                for e in entities_by_service[s.name]
            ],
        }

    # shared classes plus every unmatched entity as its own singleton
    grouped = {e.key for cls in equivalence.classes for e in cls}
    classes = list(equivalence.classes) + [(e,) for e in ir.entities if e.key not in grouped]
    context_map = [
        {
            "representative": {"service": cls[0].service, "name": cls[0].name},
            "members": [{"service": e.service, "name": e.name} for e in cls],
            "services": sorted({e.service for e in cls}),
            "shared": len(cls) > 1,
        }
        for cls in sorted(classes, key=lambda c: c[0].key)
    ]

    doc = {
        "meta": {
            "sourceRoot": ir.meta.source_root,
            "revision": ir.meta.revision,
            "toolVersion": ir.meta.tool_version,
            "skippedServices": list(skipped),
        },
        "summary": {
            "services": len(ir.services),
            "endpoints": len(ir.endpoints),
            "calls": len(ir.calls),
            "matched": len(matches),
            "unmatched": len(unmatched),
            "ambiguous": sum(1 for m in matches if m.ambiguous),
            "entities": len(ir.entities),
            "entityClasses": len(equivalence.classes),
        },
        "services": services,
        "contextMap": context_map,
        "matrices": {"edm": matrix_to_json(edm), "ddm": matrix_to_json(ddm), "sdm": matrix_to_json(sdm)},
        "hotspots": [
            {
                "service": r.endpoint.service,
                "path": r.endpoint.path.render(),
                "method": r.endpoint.method,
                "calls": r.call_count,
                "distinctCallers": r.distinct_callers,
            }
            for r in hotspot_rows
        ],
        "diagnostics": {
            "unmatchedCalls": [_call_json(c) for c in unmatched],
            "ambiguities": [d.to_dict() for d in ambiguities],
            "warnings": [d.to_dict() for d in diagnostics],
        },
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def diff_to_json(d) -> str:
    def cell(v):
        if isinstance(v, SDMCell):
            return {"endpoint": v.endpoint, "data": v.data, "display": v.display}
        return v

    doc = {
        "kind": d.kind,
        "servicesAdded": list(d.services_added),
        "servicesRemoved": list(d.services_removed),
        "added": [{"pair": list(p), "new": cell(v)} for p, v in d.added],
        "removed": [{"pair": list(p), "old": cell(v)} for p, v in d.removed],
        "changed": [{"pair": list(p), "old": cell(o), "new": cell(n)} for p, o, n in d.changed],
    }
    return json.dumps(doc, indent=2) + "\n"
