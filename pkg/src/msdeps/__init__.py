"""Static extraction of microservice dependencies into EDM, DDM and SDM matrices."""

from .config import RunConfig, load_config
from .errors import MsdepsError
from .frontend import FrontendConfig, build_ir
from .ingest import DiscoveryConfig, discover_services, fetch_repository
from .ir import load_ir, save_ir
from .match import SimilarityConfig, match_entities, match_signature, name_similarity, normalize_path, resolve_calls
from .matrix import MatrixDiff, build_ddm, build_edm, build_sdm, diff, hotspots, prune
from .model import DDM, EDM, SDM, TOOL_VERSION, SDMCell, SystemIR, parse_sdm_display, sdm_display
from .pipeline import Analysis, analyze_ir, analyze_source

__version__ = TOOL_VERSION

__all__ = [
    "DDM",
    "EDM",
    "SDM",
    "Analysis",
    "DiscoveryConfig",
    "FrontendConfig",
    "MatrixDiff",
    "MsdepsError",
    "RunConfig",
    "SDMCell",
    "SimilarityConfig",
    "SystemIR",
    "analyze_ir",
    "analyze_source",
    "build_ddm",
    "build_edm",
    "build_ir",
    "build_sdm",
    "diff",
    "discover_services",
    "fetch_repository",
    "hotspots",
    "load_config",
    "load_ir",
    "match_entities",
    "match_signature",
    "name_similarity",
    "normalize_path",
    "parse_sdm_display",
    "prune",
    "resolve_calls",
    "save_ir",
    "sdm_display",
]
