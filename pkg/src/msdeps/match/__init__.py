"""Call-to-endpoint signature matching and cross-service entity matching."""

from .entities import EntityEquivalence, erase_type, match_entities, matched_field_count
from .paths import DEFAULT_PATTERNS, NormalizedPath, PatternTable, TypePattern, normalize_path
from .signature import Resolution, match_signature, resolve_calls
from .similarity import SimilarityConfig, Synonyms, levenshtein, name_similarity, name_tokens

__all__ = [
    "DEFAULT_PATTERNS",
    "EntityEquivalence",
    "NormalizedPath",
    "PatternTable",
    "Resolution",
    "SimilarityConfig",
    "Synonyms",
    "TypePattern",
    "erase_type",
    "levenshtein",
    "match_entities",
    "match_signature",
    "matched_field_count",
    "name_similarity",
    "name_tokens",
    "normalize_path",
    "resolve_calls",
]
