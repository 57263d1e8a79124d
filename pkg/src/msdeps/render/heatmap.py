"""SVG heatmaps of pruned matrix views."""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from ..model import BOTH, DATA_ONLY, ENDPOINTS_ONLY, SDMCell

DEFAULT_COLORS = {
    "rampLow": "#ffffff",
    "rampHigh": "#08306b",
    ENDPOINTS_ONLY: "#3b7dd8",
    DATA_ONLY: "#f28e2b",
    BOTH: "#d62728",
    "mark": "#e00000",
    "grid": "#cccccc",
}
TITLES = {
    "edm": "Endpoint Dependency Matrix (EDM)",
    "ddm": "Data Dependency Matrix (DDM)",
    "sdm": "Service Dependency Matrix (SDM)",
}
SCALES = {"edm": "edm-heat", "ddm": "ddm-heat", "sdm": "sdm-threeclass"}

CELL = 28
LABEL = 36
TITLE_H = 30
LEGEND_W = 300
FONT = 11


@dataclass(frozen=True)
class HeatmapCell:
    row: int
    col: int
    display: str
    value: int
    classification: str = ""


@dataclass(frozen=True)
class HeatmapSpec:
    title: str
    row_labels: tuple  # (ordinal, name) pairs
    col_labels: tuple
    cells: tuple = ()
    color_scale: str = "edm-heat"
    mark_extremes: bool = True
    colors: dict = field(default_factory=lambda: dict(DEFAULT_COLORS))


def heatmap_spec(view, title=None, mark_extremes=True, colors=None) -> HeatmapSpec:
    ri = {s.name: i for i, s in enumerate(view.rows)}
    ci = {s.name: j for j, s in enumerate(view.cols)}
    cells = []
    for (a, b), v in view.cells.items():
        if isinstance(v, SDMCell):
            cells.append(HeatmapCell(ri[a], ci[b], v.display, v.endpoint + v.data, v.classification))
        else:
            cells.append(HeatmapCell(ri[a], ci[b], str(v), int(v)))
    palette = dict(DEFAULT_COLORS)
    palette.update(colors or {})
    return HeatmapSpec(
        title=title or TITLES.get(view.kind, view.kind),
        row_labels=tuple((s.ordinal, s.name) for s in view.rows),
        col_labels=tuple((s.ordinal, s.name) for s in view.cols),
        cells=tuple(sorted(cells, key=lambda c: (c.row, c.col))),
        color_scale=SCALES.get(view.kind, "edm-heat"),
        mark_extremes=mark_extremes,
        colors=palette,
    )


def _hex(c):
    c = c.lstrip("#")
    return tuple(int(c[i : i + 2], 16) for i in (0, 2, 4))


def ramp(low: str, high: str, t: float) -> str:
    lo, hi = _hex(low), _hex(high)
    return "#%02x%02x%02x" % tuple(round(a + (b - a) * t) for a, b in zip(lo, hi))


def _longest(counts: dict) -> set:
    if not counts or max(counts.values()) == 0:
        return set()
    top = max(counts.values())
    return {k for k, v in counts.items() if v == top}


def emit_heatmap(view, spec: HeatmapSpec | None = None) -> str:
    """Render a display view as a standalone SVG document."""
    spec = spec or heatmap_spec(view)
    nr, nc = len(spec.row_labels), len(spec.col_labels)
    grid_x, grid_y = LABEL, TITLE_H + LABEL
    width = grid_x + nc * CELL + 20 + LEGEND_W
    names = sorted({*spec.row_labels, *spec.col_labels})
    height = max(grid_y + nr * CELL + 10, grid_y + 16 * (len(names) + 1))
    colors = spec.colors
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="{FONT}">',
        f'<title>{escape(spec.title)}</title>',
        f'<text x="{grid_x}" y="20" font-size="14" font-weight="bold">{escape(spec.title)}</text>',
    ]
    out.append('<g class="col-headers">')
    for j, (ordinal, name) in enumerate(spec.col_labels):
        x = grid_x + j * CELL + CELL / 2
        out.append(f'<text x="{x:.1f}" y="{grid_y - 8}" text-anchor="middle"><title>{escape(name)}</title>{ordinal}</text>')
    out.append("</g>")
    out.append('<g class="row-headers">')
    for i, (ordinal, name) in enumerate(spec.row_labels):
        y = grid_y + i * CELL + CELL / 2 + FONT / 3
        out.append(f'<text x="{grid_x - 6}" y="{y:.1f}" text-anchor="end"><title>{escape(name)}</title>{ordinal}</text>')
    out.append("</g>")
    out.append(f'<g class="grid" stroke="{colors["grid"]}" fill="none">')
    for i in range(nr):
        for j in range(nc):
            out.append(f'<rect x="{grid_x + j * CELL}" y="{grid_y + i * CELL}" width="{CELL}" height="{CELL}"/>')
    out.append("</g>")
    peak = max((c.value for c in spec.cells), default=1) or 1
    out.append('<g class="cells">')
    for c in spec.cells:
        x, y = grid_x + c.col * CELL, grid_y + c.row * CELL
        if spec.color_scale == "sdm-threeclass":
            fill, dark = colors[c.classification], True
        else:
            t = 0.15 + 0.85 * c.value / peak
            fill, dark = ramp(colors["rampLow"], colors["rampHigh"], t), t > 0.5
        text_fill = "#ffffff" if dark else "#000000"
        label = escape(f"{spec.row_labels[c.row][1]} -> {spec.col_labels[c.col][1]}: {c.display}")
        out.append(
            f'<g class="cell"><title>{label}</title>'
            f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}"/>'
            f'<text x="{x + CELL / 2:.1f}" y="{y + CELL / 2 + FONT / 3:.1f}" text-anchor="middle" '
            f'fill="{text_fill}">{escape(c.display)}</text></g>'
        )
    out.append("</g>")
    if spec.mark_extremes and spec.cells:
        rows = _longest({i: sum(1 for c in spec.cells if c.row == i) for i in range(nr)})
        cols = _longest({j: sum(1 for c in spec.cells if c.col == j) for j in range(nc)})
        out.append(f'<g class="marks" fill="none" stroke="{colors["mark"]}" stroke-width="2">')
        for i in sorted(rows):
            out.append(f'<rect class="mark-row" x="{grid_x}" y="{grid_y + i * CELL}" width="{nc * CELL}" height="{CELL}"/>')
        for j in sorted(cols):
            out.append(f'<rect class="mark-col" x="{grid_x + j * CELL}" y="{grid_y}" width="{CELL}" height="{nr * CELL}"/>')
        out.append("</g>")
    lx = grid_x + nc * CELL + 20
    out.append(f'<g class="legend" transform="translate({lx},{grid_y})">')
    for k, (ordinal, name) in enumerate(names):
        out.append(f'<text x="0" y="{16 * k + 12}">{ordinal}: {escape(name)}</text>')
    if spec.color_scale == "sdm-threeclass":
        base = 16 * len(names) + 8
        for k, cls in enumerate((ENDPOINTS_ONLY, DATA_ONLY, BOTH)):
            y = base + 16 * k
            out.append(f'<rect x="0" y="{y}" width="12" height="12" fill="{colors[cls]}"/>')
            out.append(f'<text x="18" y="{y + 10}">{cls}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
