from .heatmap import DEFAULT_COLORS, HeatmapSpec, emit_heatmap, heatmap_spec
from .report import diff_to_json, emit_json, matrix_from_json, matrix_to_json
from .tables import emit_csv, emit_hotspots_csv

__all__ = [
    "DEFAULT_COLORS",
    "HeatmapSpec",
    "diff_to_json",
    "emit_csv",
    "emit_heatmap",
    "emit_hotspots_csv",
    "emit_json",
    "heatmap_spec",
    "matrix_from_json",
    "matrix_to_json",
]
