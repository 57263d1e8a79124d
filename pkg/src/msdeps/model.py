"""Core domain types: IR facts, match records and dependency matrices.

Facts refer to their owning service by name; :class:`ServiceId` objects with
display ordinals live on the containers (:class:`SystemIR` and the matrices).
Everything here is immutable once built.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import InvalidPairError, InvalidPathError, NoDependencyError

TOOL_VERSION = "0.1.0"

HTTP_METHODS = ("GET", "POST", "PUT", "DELETE", "PATCH", "HEAD", "OPTIONS")
PARAM_KINDS = ("path", "query", "body")
ENTITY_KINDS = ("persistent", "dto")

ENDPOINTS_ONLY = "endpoints-only"
DATA_ONLY = "data-only"
BOTH = "both"


class SourceLoc(NamedTuple):
    file: str
    line: int


@dataclass(frozen=True, order=True)
class ServiceId:
    name: str
    ordinal: int


def make_services(names: Iterable[str]) -> tuple[ServiceId, ...]:
    """Assign ordinals 1..N by lexicographic name order."""
    unique = sorted(set(names))
    return tuple(ServiceId(n, i) for i, n in enumerate(unique, start=1))


# -- paths -------------------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    text: str

    def __post_init__(self):
        if not self.text or "/" in self.text:
            raise InvalidPathError(f"bad literal segment {self.text!r}")


@dataclass(frozen=True)
class Variable:
    type: str = "unknown"


Segment = Union[Literal, Variable]

_PLACEHOLDER = re.compile(r"^\{([^{}]*)\}$")


@dataclass(frozen=True)
class PathTemplate:
    segments: tuple[Segment, ...]
    trailing_wildcard: bool = False

    def render(self) -> str:
        parts = [s.text if isinstance(s, Literal) else "{%s}" % s.type for s in self.segments]
        if self.trailing_wildcard:
            parts.append("**")
        return "/" + "/".join(parts)

    @property
    def variable_count(self) -> int:
        return sum(isinstance(s, Variable) for s in self.segments)

    @classmethod
    def parse(cls, text: str) -> "PathTemplate":
        """Parse the rendered form produced by :meth:`render`."""
        raw = [p for p in text.split("/") if p]
        wildcard = bool(raw) and raw[-1] == "**"
        if wildcard:
            raw = raw[:-1]
        segments: list[Segment] = []
        for part in raw:
            m = _PLACEHOLDER.match(part)
            if m:
                tag = m.group(1)
                if ":" in tag:
                    tag = tag.split(":", 1)[1].strip()
                segments.append(Variable(tag.strip() or "unknown"))
            else:
                segments.append(Literal(part))
        if not segments and not wildcard:
            raise InvalidPathError(f"empty path {text!r}")
        return cls(tuple(segments), wildcard)

    def __str__(self) -> str:
        return self.render()


# -- extracted facts -----------------------------------------------------------


class Param(NamedTuple):
    name: str
    declared_type: str
    kind: str  # one of PARAM_KINDS


@dataclass(frozen=True)
class EndpointDef:
    service: str
    path: PathTemplate
    method: str
    params: tuple[Param, ...] = ()
    return_type: str = "unknown"
    source_loc: SourceLoc = SourceLoc("", 0)

    @property
    def path_params(self) -> tuple[Param, ...]:
        return tuple(p for p in self.params if p.kind == "path")

    @property
    def display_path(self) -> str:
        """``service/path`` as shown in hotspot tables."""
        return self.service + self.path.render()

    def sort_key(self) -> tuple:
        return (self.service, self.path.render(), self.method, self.source_loc)


@dataclass(frozen=True)
class Lit:
    text: str


@dataclass(frozen=True)
class Hole:
    type: str = "unknown"


UrlPart = Union[Lit, Hole]


@dataclass(frozen=True)
class RestCall:
    caller: str
    url: tuple[UrlPart, ...]
    method: str
    arg_count: int = 0
    expected_return_type: str = "unknown"
    source_loc: SourceLoc = SourceLoc("", 0)
    unresolvable: bool = False

    def url_text(self) -> str:
        return "".join(p.text if isinstance(p, Lit) else "{%s}" % p.type for p in self.url)

    def sort_key(self) -> tuple:
        return (self.caller, self.source_loc, self.method, self.url_text())


class EntityField(NamedTuple):
    name: str
    type_name: str


@dataclass(frozen=True)
class EntityDef:
    service: str
    name: str
    fields: tuple[EntityField, ...] = ()
    kind: str = "dto"
    annotations: tuple[str, ...] = ()
    source_loc: SourceLoc = SourceLoc("", 0)

    @property
    def key(self) -> tuple[str, str]:
        return (self.service, self.name)


@dataclass(frozen=True)
class IRMeta:
    source_root: str = ""
    revision: str = "unversioned"
    tool_version: str = TOOL_VERSION


@dataclass(frozen=True)
class SystemIR:
    services: tuple[ServiceId, ...]
    endpoints: tuple[EndpointDef, ...] = ()
    calls: tuple[RestCall, ...] = ()
    entities: tuple[EntityDef, ...] = ()
    meta: IRMeta = IRMeta()

    @classmethod
    def build(cls, service_names, endpoints=(), calls=(), entities=(), meta=None) -> "SystemIR":
        """Assemble an IR with ordinals assigned and facts in canonical order."""
        return cls(
            services=make_services(service_names),
            endpoints=tuple(sorted(endpoints, key=EndpointDef.sort_key)),
            calls=tuple(sorted(calls, key=RestCall.sort_key)),
            entities=tuple(sorted(entities, key=lambda e: (e.service, e.name, e.source_loc))),
            meta=meta or IRMeta(),
        )

    @property
    def service_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.services)

    def service(self, name: str) -> ServiceId:
        for s in self.services:
            if s.name == name:
                return s
        raise KeyError(name)


# -- match records ---------------------------------------------------------------


@dataclass(frozen=True)
class EndpointMatch:
    call: RestCall
    endpoint: EndpointDef
    specificity: int
    ambiguous: bool = False

    def __post_init__(self):
        if self.call.caller == self.endpoint.service:
            raise InvalidPairError("self-calls are never matches")


@dataclass(frozen=True)
class EntityMatch:
    a: EntityDef
    b: EntityDef
    name_score: float
    matched_field_count: int

    def __post_init__(self):
        if self.a.service == self.b.service:
            raise InvalidPairError("entity matches must cross services")
        if self.a.key > self.b.key:
            # store under canonical order
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)


# -- matrices -----------------------------------------------------------------------


def canonical_pair(a, b):
    """Order two services (names or ServiceIds) lexicographically by name."""
    na = a.name if isinstance(a, ServiceId) else a
    nb = b.name if isinstance(b, ServiceId) else b
    if na == nb:
        raise InvalidPairError(f"diagonal pair ({na}, {nb})")
    return (a, b) if na < nb else (b, a)


class SDMCell(NamedTuple):
    endpoint: int
    data: int

    @property
    def classification(self) -> str:
        if self.endpoint and self.data:
            return BOTH
        return ENDPOINTS_ONLY if self.endpoint else DATA_ONLY

    @property
    def display(self) -> str:
        return sdm_display(self)


def sdm_display(cell) -> str:
    """Render an ``(endpoint, data)`` degree pair as ``"E.D"``.

    >>> sdm_display((4, 1))
    '4.1'
    >>> sdm_display((3, 0))
    '3'
    >>> sdm_display((0, 12))
    '0.12'
    """
    e, d = int(cell[0]), int(cell[1])
    if e < 0 or d < 0:
        raise ValueError(f"negative degree in {cell!r}")
    if e == 0 and d == 0:
        raise NoDependencyError("(0, 0) is not a dependency; the cell should be absent")
    return f"{e}.{d}" if d else str(e)


def parse_sdm_display(text: str) -> SDMCell:
    """Inverse of :func:`sdm_display`."""
    m = re.fullmatch(r"(\d+)(?:\.(\d+))?", text.strip())
    if not m:
        raise ValueError(f"not an SDM display string: {text!r}")
    e = int(m.group(1))
    d = int(m.group(2)) if m.group(2) is not None else 0
    if e == 0 and d == 0:
        raise NoDependencyError(text)
    return SDMCell(e, d)


def _frozen(cells: Mapping) -> Mapping:
    return MappingProxyType(dict(sorted(cells.items())))


@dataclass(frozen=True, eq=False)
class _Matrix:
    services: tuple[ServiceId, ...]
    cells: Mapping = field(default_factory=dict)

    kind = ""

    def __post_init__(self):
        names = {s.name for s in self.services}
        for (a, b), value in self.cells.items():
            if a == b:
                raise InvalidPairError(f"diagonal cell ({a}, {b})")
            if a not in names or b not in names:
                raise InvalidPairError(f"cell ({a}, {b}) outside the service universe")
            self._check_value((a, b), value)
        object.__setattr__(self, "cells", _frozen(self.cells))

    def _check_value(self, pair, value):
        if int(value) < 1:
            raise ValueError(f"zero-valued cell {pair}")

    @property
    def service_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.services)

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.services == other.services
            and dict(self.cells) == dict(other.cells)
        )

    def __len__(self):
        return len(self.cells)


class EDM(_Matrix):
    """Directed call counts: ``cells[(caller, callee)] = n``."""

    kind = "edm"

    def get(self, a: str, b: str) -> int:
        return self.cells.get((a, b), 0)


class DDM(_Matrix):
    """Undirected shared-entity counts, stored once per canonical pair."""

    kind = "ddm"

    def _check_value(self, pair, value):
        super()._check_value(pair, value)
        if pair[0] > pair[1]:
            raise InvalidPairError(f"DDM cell {pair} not in canonical order")

    def get(self, a: str, b: str) -> int:
        if a == b:
            return 0
        return self.cells.get(canonical_pair(a, b), 0)


class SDM(_Matrix):
    """Merged matrix; each ordered cell carries an :class:`SDMCell`."""

    kind = "sdm"

    def _check_value(self, pair, value):
        e, d = value
        if e < 0 or d < 0 or (e == 0 and d == 0):
            raise ValueError(f"invalid SDM cell {pair}={value}")

    def __post_init__(self):
        object.__setattr__(self, "cells", {k: SDMCell(*v) for k, v in self.cells.items()})
        super().__post_init__()

    def get(self, a: str, b: str) -> SDMCell:
        return self.cells.get((a, b), SDMCell(0, 0))

    def classification(self, a: str, b: str) -> str:
        return self.cells[(a, b)].classification
