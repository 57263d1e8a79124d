from __future__ import annotations

import csv
import io

from ..model import SDMCell


def emit_csv(view) -> str:
    """Matrix view as RFC-4180 CSV: column names across, row names down."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow([""] + [s.name for s in view.cols])
    for r in view.rows:
        row = [r.name]
        for c in view.cols:
            v = view.cells.get((r.name, c.name))
            row.append("" if v is None else (v.display if isinstance(v, SDMCell) else str(v)))
        w.writerow(row)
    return buf.getvalue()


def emit_hotspots_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["service", "path", "method", "calls", "distinctCallers"])
    for r in rows:
        w.writerow([r.endpoint.service, r.endpoint.path.render(), r.endpoint.method, r.call_count, r.distinct_callers])
    return buf.getvalue()
