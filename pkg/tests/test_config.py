from __future__ import annotations

import pytest

from msdeps.config import RunConfig, config_from_mapping, load_config, parse_formats
from msdeps.errors import ConfigError

TOML = """
[discovery]
manifests = ["pom.xml"]
maxDepth = 2

[frontend]
dtoSuffixes = ["Dto", "Vo"]

[match]
threshold = 0.9
minFieldMatches = 2
synonymDictPath = "syn.txt"

[match.typePatterns]
String = "[a-z]+"

[render.colors]
both = "#112233"
"""

YAML = """
discovery:
  manifests: [pom.xml]
  maxDepth: 2
frontend:
  dtoSuffixes: [Dto, Vo]
match:
  threshold: 0.9
  minFieldMatches: 2
  synonymDictPath: syn.txt
  typePatterns:
    String: "[a-z]+"
render:
  colors:
    both: "#112233"
"""


@pytest.mark.parametrize("name,text", [("c.toml", TOML), ("c.yaml", YAML)])
def test_toml_and_yaml_load_the_same(tmp_path, name, text):
    (tmp_path / "syn.txt").write_text("trip,journey\n")
    p = tmp_path / name
    p.write_text(text)
    cfg = load_config(p)
    assert cfg.discovery.manifests == ("pom.xml",) and cfg.discovery.max_depth == 2
    assert cfg.frontend.dto_suffixes == ("Dto", "Vo")
    assert cfg.similarity.threshold == 0.9 and cfg.similarity.min_field_matches == 2
    assert cfg.similarity.synonym_dict_path == str(tmp_path / "syn.txt")
    assert cfg.type_patterns == {"String": "[a-z]+"}
    assert cfg.colors == {"both": "#112233"}


def test_defaults_without_file():
    cfg = load_config(None)
    assert cfg == RunConfig()
    assert cfg.formats == ("json", "csv", "svg") and cfg.min_calls == 3


@pytest.mark.parametrize(
    "doc",
    [
        {"nope": {}},
        {"match": {"thresh": 0.5}},
        {"render": {"colors": {"purple": "#000000"}}},
        {"render": {"colors": {"both": "red"}}},
        {"match": {"typePatterns": {"Long": "[0-9"}}},
        {"match": {"threshold": "high"}},
        {"match": {"threshold": 1.5}},
        {"discovery": {"maxDepth": -1}},
        {"frontend": {"dtoSuffixes": "Dto"}},
        {"discovery": []},
    ],
)
def test_invalid_documents(doc):
    with pytest.raises(ConfigError):
        config_from_mapping(doc)


def test_flags_override_file(tmp_path):
    p = tmp_path / "c.yaml"
    p.write_text("match:\n  threshold: 0.7\n")
    cfg = load_config(p).with_flags(jobs=3, strict=True, formats="svg,json", min_calls=None)
    assert cfg.similarity.threshold == 0.7
    assert (cfg.jobs, cfg.strict, cfg.formats, cfg.min_calls) == (3, True, ("json", "svg"), 3)
    with pytest.raises(ConfigError):
        cfg.with_flags(jobs=0)
    with pytest.raises(ConfigError):
        cfg.with_flags(min_calls=-2)


def test_parse_formats():
    assert parse_formats("CSV, svg") == ("csv", "svg")
    with pytest.raises(ConfigError):
        parse_formats("pdf")
    with pytest.raises(ConfigError):
        parse_formats("")


def test_unreadable_and_unparsable(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.toml")
    bad = tmp_path / "bad.toml"
    bad.write_text("[match\n")
    with pytest.raises(ConfigError):
        load_config(bad)
    top = tmp_path / "list.yaml"
    top.write_text("- a\n")
    with pytest.raises(ConfigError):
        load_config(top)
    assert load_config(_touch(tmp_path / "empty.yaml")) == RunConfig()


def _touch(p):
    p.write_text("")
    return p
