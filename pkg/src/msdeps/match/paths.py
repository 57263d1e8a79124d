"""Path normalization and per-type value patterns."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from ..errors import InvalidPathError
from ..model import Hole, Lit, Literal, PathTemplate, Variable

_HOLE = "\x00"
_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*://")


class NormalizedPath(NamedTuple):
    template: PathTemplate
    host: str | None


def _flatten(raw):
    if isinstance(raw, str):
        return raw, []
    text, holes = [], []
    for part in raw:
        if isinstance(part, Lit):
            text.append(part.text.replace(_HOLE, ""))
        elif isinstance(part, Hole):
            text.append(_HOLE)
            holes.append(part.type)
        else:
            raise TypeError(f"unexpected url part {part!r}")
    return "".join(text), holes


def _split(text: str) -> list[str]:
    segs, cur, depth = [], [], 0
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth = max(0, depth - 1)
        if ch == "/" and depth == 0:
            segs.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    segs.append("".join(cur))
    return [s for s in segs if s]


def normalize_path(raw) -> NormalizedPath:
    """Normalize an endpoint path string or a call's URL parts.

    Strips ``scheme://host[:port]`` (returning the lowercased host), query
    strings and fragments; collapses empty segments; turns ``{name}`` /
    ``{name:type}`` placeholders and call holes into Variable segments. A
    hole that opens the URL right before a ``/`` is taken as an unknown base
    URL and dropped.
    """
    text, holes = _flatten(raw)
    hole_index = 0
    host = None
    # leading base-URL holes
    while text.startswith(_HOLE) and text[1:2] in ("/", _HOLE):
        text = text[1:]
        hole_index += 1
    m = _SCHEME.match(text)
    if m:
        rest = text[m.end():]
        cut = rest.find("/")
        authority, text = (rest, "") if cut < 0 else (rest[:cut], rest[cut:])
        hole_index += authority.count(_HOLE)
        if _HOLE not in authority:
            authority = authority.rsplit("@", 1)[-1]
            host = re.sub(r":\d*$", "", authority).lower() or None
    for stop in ("?", "#"):
        cut = text.find(stop)
        if cut >= 0:
            text = text[:cut]
    segments = []
    wildcard = False
    parts = _split(text)
    for k, seg in enumerate(parts):
        n_holes = seg.count(_HOLE)
        if n_holes:
            tag = holes[hole_index] if seg == _HOLE and hole_index < len(holes) else "unknown"
            hole_index += n_holes
            segments.append(Variable(tag))
        elif seg.startswith("{") and seg.endswith("}") and seg.count("{") >= 1:
            tag = seg[1:-1]
            if ":" in tag:
                tag = tag.split(":", 1)[1]
            segments.append(Variable(tag.strip() or "unknown"))
        elif "{" in seg and "}" in seg:
            segments.append(Variable("unknown"))
        elif seg == "**" and k == len(parts) - 1:
            wildcard = True
        else:
            segments.append(Literal(seg))
    if not segments and not wildcard:
        raise InvalidPathError(f"path {raw!r} is empty after normalization")
    return NormalizedPath(PathTemplate(tuple(segments), wildcard), host)


# -- value patterns ----------------------------------------------------------

_INT = r"[0-9]+"
_UUID = r"[0-9a-fA-F]{8}-[0-9a-fA-F]{4}-[0-9a-fA-F]{4}-[0-9a-fA-F]{4}-[0-9a-fA-F]{12}"
_BOOL = r"true|false"
_ANY = r"[^/]+"


@dataclass(frozen=True)
class TypePattern:
    type_name: str
    value_regex: str

    def __post_init__(self):
        re.compile(self.value_regex)

    def matches(self, value: str) -> bool:
        return re.fullmatch(self.value_regex, value) is not None


DEFAULT_PATTERNS = tuple(
    [TypePattern(t, _INT) for t in ("int", "Integer", "long", "Long", "short", "Short", "byte", "Byte", "BigInteger")]
    + [TypePattern("UUID", _UUID)]
    + [TypePattern(t, _BOOL) for t in ("boolean", "Boolean")]
    + [TypePattern(t, _ANY) for t in ("String", "unknown")]
)


class PatternTable:
    """Compiled, anchored value regexes keyed by (simple) type name."""

    def __init__(self, patterns=DEFAULT_PATTERNS, overrides: Mapping[str, str] | None = None):
        table = {p.type_name: p.value_regex for p in patterns}
        table.update(overrides or {})
        self._compiled = {t: re.compile(rx) for t, rx in table.items()}
        self._fallback = re.compile(_ANY)

    def regex_for(self, type_name: str):
        base = type_name.split("<", 1)[0].rsplit(".", 1)[-1].strip()
        return self._compiled.get(base, self._fallback)

    def accepts(self, type_name: str, value: str) -> bool:
        return self.regex_for(type_name).fullmatch(value) is not None


def pattern_table(patterns=None) -> PatternTable:
    if patterns is None:
        return PatternTable()
    if isinstance(patterns, PatternTable):
        return patterns
    return PatternTable(tuple(DEFAULT_PATTERNS) + tuple(patterns))
