"""Build, prune and compare the endpoint, data and service dependency matrices."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import InvalidDiffError, InvalidMergeError
from .model import DDM, EDM, SDM, EndpointDef, SDMCell, ServiceId, make_services


def _services(services) -> tuple[ServiceId, ...]:
    items = list(services)
    if items and isinstance(items[0], ServiceId):
        return tuple(sorted(items, key=lambda s: s.name))
    return make_services(items)


def build_edm(matches, services, strict: bool = False) -> EDM:
    """Count matched calls per (caller, callee); ``strict`` drops ambiguous matches."""
    counts = Counter(
        (m.call.caller, m.endpoint.service) for m in matches if not (strict and m.ambiguous)
    )
    return EDM(_services(services), dict(counts))


def build_ddm(equivalence, services) -> DDM:
    """Count, per unordered service pair, the entity classes both services hold."""
    counts: Counter = Counter()
    for cls in equivalence.classes:
        owners = sorted({e.service for e in cls})
        for a, b in combinations(owners, 2):
            counts[(a, b)] += 1
    return DDM(_services(services), dict(counts))


def build_sdm(edm: EDM, ddm: DDM) -> SDM:
    if edm.service_names != ddm.service_names:
        raise InvalidMergeError("EDM and DDM cover different services")
    cells = {pair: SDMCell(n, 0) for pair, n in edm.cells.items()}
    for (a, b), n in ddm.cells.items():
        for pair in ((a, b), (b, a)):
            cells[pair] = SDMCell(cells.get(pair, SDMCell(0, 0)).endpoint, n)
    return SDM(edm.services, cells)


# -- display views --------------------------------------------------------------


@dataclass(frozen=True)
class DisplayView:
    """A pruned matrix ready for rendering.

    ``cells`` maps (row name, column name) to an int (EDM/DDM) or an
    :class:`SDMCell`. DDM views carry both symmetric halves.
    """

    kind: str
    rows: tuple[ServiceId, ...]
    cols: tuple[ServiceId, ...]
    cells: dict = field(default_factory=dict)

    def to_array(self, component: str | None = None) -> np.ndarray:
        """Dense numeric array; SDM views need ``component`` ('endpoint' or 'data')."""
        ri = {s.name: i for i, s in enumerate(self.rows)}
        ci = {s.name: j for j, s in enumerate(self.cols)}
        arr = np.zeros((len(self.rows), len(self.cols)), dtype=int)
        for (a, b), v in self.cells.items():
            if isinstance(v, SDMCell):
                v = getattr(v, component or "endpoint")
            arr[ri[a], ci[b]] = v
        return arr

    def row_lengths(self) -> dict[str, int]:
        counts = Counter(a for a, _ in self.cells)
        return {s.name: counts.get(s.name, 0) for s in self.rows}

    def col_lengths(self) -> dict[str, int]:
        counts = Counter(b for _, b in self.cells)
        return {s.name: counts.get(s.name, 0) for s in self.cols}


def full_cells(matrix) -> dict:
    """Ordered-pair view of a matrix's nonzero cells (DDM expanded to both halves)."""
    if isinstance(matrix, DDM):
        out = {}
        for (a, b), v in matrix.cells.items():
            out[(a, b)] = v
            out[(b, a)] = v
        return dict(sorted(out.items()))
    return dict(matrix.cells)


def prune(matrix) -> DisplayView:
    """Drop rows and columns that hold no nonzero cell.

    DDM keeps the same service set on both axes.
    """
    cells = full_cells(matrix)
    row_names = {a for a, _ in cells}
    col_names = {b for _, b in cells}
    if isinstance(matrix, DDM):
        row_names = col_names = row_names | col_names
    rows = tuple(s for s in matrix.services if s.name in row_names)
    cols = tuple(s for s in matrix.services if s.name in col_names)
    return DisplayView(matrix.kind, rows, cols, cells)


def unpruned(matrix) -> DisplayView:
    return DisplayView(matrix.kind, matrix.services, matrix.services, full_cells(matrix))


# -- hotspots -----------------------------------------------------------------------


@dataclass(frozen=True)
class HotspotRow:
    endpoint: EndpointDef
    call_count: int
    distinct_callers: int


def hotspots(matches, min_calls: int = 3) -> list[HotspotRow]:
    """Endpoints receiving strictly more than ``min_calls`` matched calls."""
    if min_calls < 0:
        raise ValueError("min_calls must be >= 0")
    calls: Counter = Counter()
    callers: dict = defaultdict(set)
    endpoints = {}
    for m in matches:
        key = m.endpoint.sort_key()
        endpoints[key] = m.endpoint
        calls[key] += 1
        callers[key].add(m.call.caller)
    rows = [HotspotRow(endpoints[k], calls[k], len(callers[k])) for k in calls if calls[k] > min_calls]
    rows.sort(key=lambda r: (-r.call_count, r.endpoint.service, r.endpoint.path.render(), r.endpoint.method))
    return rows


# -- diff ------------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixDiff:
    kind: str
    added: tuple = ()
    removed: tuple = ()
    changed: tuple = ()
    services_added: tuple[str, ...] = ()
    services_removed: tuple[str, ...] = ()

    def is_empty(self) -> bool:
        return not (self.added or self.removed or self.changed or self.services_added or self.services_removed)

    def mirror(self) -> "MatrixDiff":
        return MatrixDiff(
            self.kind,
            added=self.removed,
            removed=self.added,
            changed=tuple((p, new, old) for p, old, new in self.changed),
            services_added=self.services_removed,
            services_removed=self.services_added,
        )


def diff(old, new) -> MatrixDiff:
    """Cell-wise comparison keyed by service-name pairs."""
    if type(old) is not type(new):
        raise InvalidDiffError(f"cannot diff {old.kind} against {new.kind}")
    oc, nc = dict(old.cells), dict(new.cells)
    added = tuple((p, nc[p]) for p in sorted(nc.keys() - oc.keys()))
    removed = tuple((p, oc[p]) for p in sorted(oc.keys() - nc.keys()))
    changed = tuple((p, oc[p], nc[p]) for p in sorted(oc.keys() & nc.keys()) if oc[p] != nc[p])
    on, nn = set(old.service_names), set(new.service_names)
    return MatrixDiff(old.kind, added, removed, changed, tuple(sorted(nn - on)), tuple(sorted(on - nn)))

