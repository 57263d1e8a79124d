"""Run configuration: defaults, then a TOML/YAML file, then CLI flags."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path

import yaml

from .errors import ConfigError
from .frontend.config import FrontendConfig
from .ingest import DiscoveryConfig
from .match.similarity import SimilarityConfig
from .render.heatmap import DEFAULT_COLORS

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

# file key -> dataclass attribute, per section
DISCOVERY_KEYS = {"manifests": "manifests", "excludeGlobs": "exclude_globs", "maxDepth": "max_depth"}
FRONTEND_KEYS = {
    "controllerMarkers": "controller_markers",
    "endpointAnnotations": "endpoint_annotations",
    "clientMethods": "client_methods",
    "persistenceAnnotations": "persistence_annotations",
    "dataAnnotations": "data_annotations",
    "dtoSuffixes": "dto_suffixes",
    "sourceExtensions": "source_extensions",
}
MATCH_KEYS = ("typePatterns", "threshold", "synonymDictPath", "minFieldMatches")
RENDER_KEYS = ("colors",)
SECTIONS = {
    "discovery": tuple(DISCOVERY_KEYS),
    "frontend": tuple(FRONTEND_KEYS),
    "match": MATCH_KEYS,
    "render": RENDER_KEYS,
}
FORMATS = ("json", "csv", "svg")


@dataclass(frozen=True)
class RunConfig:
    discovery: DiscoveryConfig = field(default_factory=DiscoveryConfig)
    frontend: FrontendConfig = field(default_factory=FrontendConfig)
    similarity: SimilarityConfig = field(default_factory=SimilarityConfig)
    type_patterns: dict = field(default_factory=dict)
    colors: dict = field(default_factory=dict)
    jobs: int = 1
    strict: bool = False
    formats: tuple[str, ...] = FORMATS
    min_calls: int = 3

    def with_flags(self, **flags) -> "RunConfig":
        """Apply CLI flags; ``None`` means the flag was not given."""
        given = {k: v for k, v in flags.items() if v is not None}
        if "formats" in given:
            given["formats"] = parse_formats(given["formats"])
        cfg = replace(self, **given)
        if cfg.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        if cfg.min_calls < 0:
            raise ConfigError("--min-calls must be >= 0")
        return cfg


def parse_formats(value) -> tuple[str, ...]:
    items = value.split(",") if isinstance(value, str) else list(value)
    items = [i.strip().lower() for i in items if i.strip()]
    bad = [i for i in items if i not in FORMATS]
    if bad or not items:
        raise ConfigError(f"unknown format(s) {bad or items!r}; expected a subset of {','.join(FORMATS)}")
    return tuple(f for f in FORMATS if f in items)


def _string_list(section, key, value) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ConfigError(f"{section}.{key} must be a list of strings")
    return tuple(value)


def _read(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None
    try:
        if path.suffix.lower() == ".toml":
            data = tomllib.loads(text)
        else:
            data = yaml.safe_load(text)
    except (tomllib.TOMLDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a mapping at top level")
    return data


def config_from_mapping(data: dict, base_dir: Path | None = None) -> RunConfig:
    """Validate a parsed config document; unknown sections or keys are errors."""
    for section, body in data.items():
        if section not in SECTIONS:
            raise ConfigError(f"unknown config section {section!r}")
        if not isinstance(body, dict):
            raise ConfigError(f"config section {section!r} must be a mapping")
        for key in body:
            if key not in SECTIONS[section]:
                raise ConfigError(f"unknown config key {section}.{key}")

    disc = data.get("discovery", {})
    dkw = {}
    for key, attr in DISCOVERY_KEYS.items():
        if key in disc:
            if key == "maxDepth":
                if not isinstance(disc[key], int) or isinstance(disc[key], bool) or disc[key] < 0:
                    raise ConfigError("discovery.maxDepth must be a non-negative integer")
                dkw[attr] = disc[key]
            else:
                dkw[attr] = _string_list("discovery", key, disc[key])

    front = data.get("frontend", {})
    fkw = {attr: _string_list("frontend", key, front[key]) for key, attr in FRONTEND_KEYS.items() if key in front}

    match = data.get("match", {})
    skw = {}
    if "threshold" in match:
        if not isinstance(match["threshold"], (int, float)) or isinstance(match["threshold"], bool):
            raise ConfigError("match.threshold must be a number")
        skw["threshold"] = float(match["threshold"])
    if "minFieldMatches" in match:
        if not isinstance(match["minFieldMatches"], int) or isinstance(match["minFieldMatches"], bool):
            raise ConfigError("match.minFieldMatches must be an integer")
        skw["min_field_matches"] = match["minFieldMatches"]
    if "synonymDictPath" in match:
        p = Path(str(match["synonymDictPath"]))
        if base_dir is not None and not p.is_absolute():
            p = base_dir / p
        skw["synonym_dict_path"] = str(p)
    patterns = match.get("typePatterns", {})
    if not isinstance(patterns, dict):
        raise ConfigError("match.typePatterns must map type names to regexes")
    for t, rx in patterns.items():
        try:
            re.compile(str(rx))
        except re.error as exc:
            raise ConfigError(f"match.typePatterns.{t}: invalid regex: {exc}") from None

    colors = data.get("render", {}).get("colors", {})
    if not isinstance(colors, dict):
        raise ConfigError("render.colors must be a mapping")
    for k, v in colors.items():
        if k not in DEFAULT_COLORS:
            raise ConfigError(f"unknown color key render.colors.{k}; expected one of {sorted(DEFAULT_COLORS)}")
        if not re.fullmatch(r"#[0-9a-fA-F]{6}", str(v)):
            raise ConfigError(f"render.colors.{k} must be a #rrggbb color")

    try:
        similarity = SimilarityConfig(**skw)
    except OSError as exc:
        raise ConfigError(f"cannot read synonym dictionary: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"match: {exc}") from None
    return RunConfig(
        discovery=DiscoveryConfig(**dkw),
        frontend=FrontendConfig(**fkw),
        similarity=similarity,
        type_patterns={str(k): str(v) for k, v in patterns.items()},
        colors={str(k): str(v) for k, v in colors.items()},
    )


def load_config(path=None) -> RunConfig:
    if path is None:
        return RunConfig()
    path = Path(path)
    return config_from_mapping(_read(path), base_dir=path.parent)
