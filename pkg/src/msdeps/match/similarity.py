"""Identifier similarity: token normalization, synonyms, edit distance."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from rapidfuzz.distance import Levenshtein

from ..errors import ConfigError, InvalidNameError

_TOKEN = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")


def name_tokens(name: str) -> tuple[str, ...]:
    """Split on camelCase, snake_case and digit boundaries; lowercase.

    >>> name_tokens("HTTPServerDTO_v2")
    ('http', 'server', 'dto', 'v', '2')
    """
    return tuple(t.lower() for t in _TOKEN.findall(name))


def levenshtein(a: str, b: str) -> int:
    """Unit-cost insert/delete/substitute edit distance."""
    return Levenshtein.distance(a, b)


class Synonyms:
    """Token synonym sets; two tokens are synonyms when they share a set."""

    def __init__(self, sets=()):
        self._groups: dict[str, set[int]] = {}
        for gid, group in enumerate(sets):
            for token in group:
                token = token.strip().lower()
                if token:
                    self._groups.setdefault(token, set()).add(gid)

    def same(self, a: str, b: str) -> bool:
        if a == b:
            return True
        ga, gb = self._groups.get(a), self._groups.get(b)
        return bool(ga and gb and ga & gb)

    def __bool__(self):
        return bool(self._groups)

    @classmethod
    def load(cls, path) -> "Synonyms":
        """One synonym set per line, comma-separated lowercase tokens."""
        try:
            lines = Path(path).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise ConfigError(f"cannot read synonym dictionary {path}: {exc}") from None
        sets = []
        for line in lines:
            line = line.strip()
            if line and not line.startswith("#"):
                sets.append([t for t in line.split(",") if t.strip()])
        return cls(sets)


@dataclass(frozen=True)
class SimilarityConfig:
    threshold: float = 0.80
    synonym_dict_path: str | None = None
    min_field_matches: int = 1
    synonyms: Synonyms = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold {self.threshold} outside [0, 1]")
        if self.min_field_matches < 0:
            raise ConfigError("minFieldMatches must be >= 0")
        if self.synonyms is None:
            syn = Synonyms.load(self.synonym_dict_path) if self.synonym_dict_path else Synonyms()
            object.__setattr__(self, "synonyms", syn)


_DEFAULT = SimilarityConfig()


def name_similarity(a: str, b: str, cfg: SimilarityConfig | None = None) -> float:
    """Similarity in [0, 1] of two identifiers.

    1.0 when the token sequences agree (directly or through the synonym
    dictionary); otherwise ``1 - lev(a', b') / max(|a'|, |b'|)`` over the
    lowercased, concatenated tokens.
    """
    cfg = cfg or _DEFAULT
    if not a or not b:
        raise InvalidNameError("names must be non-empty")
    ta, tb = name_tokens(a), name_tokens(b)
    if not ta or not tb:
        ta = ta or (a.lower(),)
        tb = tb or (b.lower(),)
    if ta == tb:
        return 1.0
    ja, jb = "".join(ta), "".join(tb)
    syn = cfg.synonyms
    if syn:
        if syn.same(ja, jb):
            return 1.0
        if len(ta) == len(tb) and all(syn.same(x, y) for x, y in zip(ta, tb)):
            return 1.0
    return 1.0 - levenshtein(ja, jb) / max(len(ja), len(jb))
