"""Cross-service entity matching and the resulting context map."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..model import EntityDef, EntityMatch, SystemIR
from .similarity import SimilarityConfig, name_similarity


def erase_type(type_name: str) -> str:
    """``java.util.List<Foo>`` -> ``List``."""
    base = re.sub(r"<.*>", "", type_name.replace(" ", ""))
    return base.rsplit(".", 1)[-1]


def matched_field_count(a: EntityDef, b: EntityDef, cfg: SimilarityConfig) -> int:
    """Size of a maximum one-to-one pairing of compatible fields.

    Fields pair when their erased types are equal and their names are at
    least ``cfg.threshold`` similar.
    """
    if not a.fields or not b.fields:
        return 0
    ok = np.zeros((len(a.fields), len(b.fields)), dtype=bool)
    for i, fa in enumerate(a.fields):
        ta = erase_type(fa.type_name)
        for j, fb in enumerate(b.fields):
            if ta == erase_type(fb.type_name) and name_similarity(fa.name, fb.name, cfg) >= cfg.threshold:
                ok[i, j] = True
    if not ok.any():
        return 0
    rows, cols = linear_sum_assignment(ok, maximize=True)
    return int(ok[rows, cols].sum())


def entity_match(a: EntityDef, b: EntityDef, cfg: SimilarityConfig) -> EntityMatch | None:
    if a.service == b.service:
        return None
    score = name_similarity(a.name, b.name, cfg)
    if score < cfg.threshold:
        return None
    count = matched_field_count(a, b, cfg)
    if a.fields and b.fields and count < cfg.min_field_matches:
        return None
    return EntityMatch(a, b, score, count)


@dataclass(frozen=True)
class EntityEquivalence:
    """Equivalence classes of matched entities (the system context map).

    Each class is a sorted tuple of entities; ``representatives[i]`` is the
    minimal (service, name) member of ``classes[i]``.
    """

    classes: tuple[tuple[EntityDef, ...], ...] = ()

    @property
    def representatives(self) -> tuple[EntityDef, ...]:
        return tuple(c[0] for c in self.classes)

    def services_of(self, index: int) -> set[str]:
        return {e.service for e in self.classes[index]}

    @classmethod
    def from_matches(cls, matches) -> "EntityEquivalence":
        parent: dict = {}

        def find(k):
            parent.setdefault(k, k)
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        entities = {}
        for m in matches:
            entities[m.a.key] = m.a
            entities[m.b.key] = m.b
            ra, rb = find(m.a.key), find(m.b.key)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict = {}
        for key in entities:
            groups.setdefault(find(key), []).append(entities[key])
        classes = sorted((tuple(sorted(g, key=lambda e: e.key)) for g in groups.values()), key=lambda c: c[0].key)
        return cls(tuple(classes))


def match_entities(ir: SystemIR, cfg: SimilarityConfig | None = None):
    """Match entities across services; return (matches, equivalence)."""
    cfg = cfg or SimilarityConfig()
    ordered = sorted(ir.entities, key=lambda e: e.key)
    matches = []
    for a, b in combinations(ordered, 2):
        m = entity_match(a, b, cfg)
        if m is not None:
            matches.append(m)
    matches.sort(key=lambda m: (m.a.key, m.b.key))
    return matches, EntityEquivalence.from_matches(matches)
