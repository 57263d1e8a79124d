"""Planted-truth fixtures and a seeded generator of synthetic systems.

The generator builds every call *from* a chosen endpoint, so the expected
resolution is known by construction. It is meant for tests.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .model import (
    EndpointDef,
    EntityDef,
    EntityField,
    Hole,
    IRMeta,
    Lit,
    Literal,
    Param,
    PathTemplate,
    RestCall,
    SourceLoc,
    SystemIR,
    Variable,
)

FIXTURES_DIR = Path(__file__).resolve().parents[2] / "fixtures"


@dataclass(frozen=True)
class PlantedTruth:
    edm_cells: dict
    ddm_cells: dict
    hotspot_rows: tuple = ()  # (service, path, method, calls, distinct callers)
    unmatched: int = 0
    ambiguous: int = 0
    # generated systems only: call -> expected endpoint (None when unmatched)
    matches: dict = field(default_factory=dict)
    ambiguous_calls: frozenset = frozenset()
    min_calls: int = 3


# Hand-counted from the sources under fixtures/minimart.
MINIMART_TRUTH = PlantedTruth(
    edm_cells={
        ("mm-cart-service", "mm-catalog-service"): 1,
        ("mm-cart-service", "mm-order-service"): 1,
        ("mm-cart-service", "mm-user-service"): 1,
        ("mm-order-service", "mm-catalog-service"): 2,
        ("mm-order-service", "mm-user-service"): 1,
    },
    ddm_cells={
        ("mm-catalog-service", "mm-order-service"): 1,
        ("mm-order-service", "mm-user-service"): 1,
    },
    hotspot_rows=(),
    unmatched=1,
    ambiguous=1,
)

# -- generator ------------------------------------------------------------------

WORDS = (
    "items", "list", "detail", "search", "status", "admin", "query", "batch",
    "export", "latest", "summary", "history", "config", "stats", "archive",
)
TYPES = ("Long", "Integer", "String", "UUID", "boolean")
VERBS = ("GET", "POST", "PUT", "DELETE", "PATCH")
DECOY_VERBS = ("HEAD", "OPTIONS")  # never declared by generated endpoints
SERVICE_WORDS = (
    "alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel",
    "india", "juliet", "kilo", "lima", "mike", "november", "oscar", "papa",
)
# pairwise name similarity is below the default 0.80 threshold
ENTITY_NAMES = (
    "Order", "Customer", "Invoice", "Shipment", "Ticket", "Station", "Payment",
    "Voucher", "Account", "Route", "Contact", "Seat", "Train", "Warehouse",
    "Coupon", "Refund", "Address", "Supplier", "Basket", "Review", "Schedule",
    "Carriage", "Notification", "Profile", "Category", "Discount", "Delivery",
    "Receipt", "Ledger", "Insurance", "Journey", "Menu", "Employee", "Vehicle",
    "Booking", "Region", "Tariff", "Passenger", "Platform", "Parcel",
)


def _value(rng: random.Random, type_name: str) -> str:
    if type_name in ("Long", "Integer"):
        return str(rng.randint(0, 99999))
    if type_name == "UUID":
        h = "".join(rng.choice("0123456789abcdef") for _ in range(32))
        return f"{h[:8]}-{h[8:12]}-{h[12:16]}-{h[16:20]}-{h[20:]}"
    if type_name == "boolean":
        return rng.choice(("true", "false"))
    return f"v{rng.randint(0, 9999)}"


def _segments(rng: random.Random, prefix: tuple[str, ...]):
    segs = [Literal(p) for p in prefix]
    for _ in range(rng.randint(1, 3)):
        if rng.random() < 0.45:
            segs.append(Variable(rng.choice(TYPES)))
        else:
            segs.append(Literal(rng.choice(WORDS)))
    return tuple(segs)


def _skeleton(segs) -> tuple:
    return tuple(s.text if isinstance(s, Literal) else "{}" for s in segs)


def _endpoint(service: str, segs, method: str, line: int) -> EndpointDef:
    params = tuple(Param(f"p{i}", s.type, "path") for i, s in enumerate(x for x in segs if isinstance(x, Variable)))
    return EndpointDef(
        service=service,
        path=PathTemplate(segs),
        method=method,
        params=params,
        return_type="String",
        source_loc=SourceLoc(f"{service}/Api.java", line),
    )


def _call_url(rng: random.Random, endpoint: EndpointDef, host: str | None, lead: str = "") -> tuple:
    """URL parts that reach ``endpoint``: literal values, holes or ``{x}`` placeholders."""
    text = (f"http://{host}:8080" if host else "") + lead
    parts = []
    for s in endpoint.path.segments:
        text += "/"
        if isinstance(s, Literal):
            text += s.text
            continue
        mode = rng.random()
        if mode < 0.4:
            text += _value(rng, s.type)
        elif mode < 0.7:
            parts.append(Lit(text))
            parts.append(Hole(rng.choice((s.type, "unknown"))))
            text = ""
        else:
            text += "{x}"
    if text:
        parts.append(Lit(text))
    return tuple(parts)


def generate_ir_system(seed: int, sizes=(3, 6, 10, 5)) -> tuple[SystemIR, PlantedTruth]:
    """Deterministic synthetic system of ``sizes = (services, endpoints, calls, entities)``.

    Plants ambiguous endpoint pairs (identical path and verb in two services,
    called without a host from a third) and near-miss decoys that must stay
    unmatched.
    """
    n_services, n_endpoints, n_calls, n_entities = sizes
    if n_services < 1:
        raise ValueError("a generated system needs at least one service")
    if min(n_endpoints, n_calls, n_entities) < 0:
        raise ValueError("sizes must be non-negative")
    if n_services > len(SERVICE_WORDS) * 10:
        raise ValueError("too many services")
    rng = random.Random(seed)

    names = sorted(f"s{i:02d}-{SERVICE_WORDS[i % len(SERVICE_WORDS)]}" for i in range(n_services))
    token = {s: f"t{i}{s.split('-')[1]}" for i, s in enumerate(names)}

    # endpoints; skeletons are unique per (service, verb)
    n_pairs = min(rng.randint(0, 2), n_endpoints // 4) if n_services >= 3 else 0
    endpoints: list[EndpointDef] = []
    taken = set()
    line = 0
    for _ in range(n_endpoints - 2 * n_pairs):
        svc = rng.choice(names)
        while True:
            segs = _segments(rng, ("api", token[svc]))
            method = rng.choice(VERBS)
            key = (svc, method, _skeleton(segs))
            if key not in taken:
                taken.add(key)
                break
        line += 1
        endpoints.append(_endpoint(svc, segs, method, line))
    pairs = []
    for k in range(n_pairs):
        a, b = sorted(rng.sample(names, 2))
        segs = _segments(rng, ("shared", f"dup{k}"))
        method = rng.choice(VERBS)
        line += 1
        ea = _endpoint(a, segs, method, line)
        line += 1
        eb = _endpoint(b, segs, method, line)
        endpoints += [ea, eb]
        pairs.append((ea, eb))

    # calls
    calls, expected, ambiguous_calls = [], {}, set()
    targets = endpoints[: len(endpoints) - 2 * n_pairs]
    for i in range(n_calls):
        loc_line = i + 1
        roll = rng.random()
        if pairs and roll < 0.12:
            ea, eb = rng.choice(pairs)
            callers = [s for s in names if s not in (ea.service, eb.service)]
            caller = rng.choice(callers)
            url = _call_url(rng, ea, None)
            call = RestCall(caller, url, ea.method, 1, "String", SourceLoc(f"{caller}/Client.java", loc_line))
            expected[call] = ea  # smaller service name wins the tie
            ambiguous_calls.add(call)
        elif n_services < 2 or not targets or roll < 0.25:
            caller = rng.choice(names)
            kind = rng.randrange(3)
            if kind == 0 or not endpoints:
                call = RestCall(caller, (Hole("unknown"),), "UNKNOWN", 1, "unknown",
                                SourceLoc(f"{caller}/Client.java", loc_line), unresolvable=True)
            elif kind == 1:
                e = rng.choice(endpoints)
                url = _call_url(rng, e, e.service)
                call = RestCall(caller, url, rng.choice(DECOY_VERBS), 1, "String",
                                SourceLoc(f"{caller}/Client.java", loc_line))
            else:
                # a hole in the always-literal second segment
                e = rng.choice(endpoints)
                rest = "/".join(s.text if isinstance(s, Literal) else _value(rng, s.type) for s in e.path.segments[2:])
                url = (Lit(f"http://{e.service}:8080/{e.path.segments[0].text}/"), Hole("String"), Lit("/" + rest))
                call = RestCall(caller, url, e.method, 1, "String", SourceLoc(f"{caller}/Client.java", loc_line))
            expected[call] = None
        else:
            e = rng.choice(targets)
            caller = rng.choice([s for s in names if s != e.service])
            style = rng.random()
            if style < 0.7:
                url = _call_url(rng, e, e.service)
            elif style < 0.85:
                url = _call_url(rng, e, None)
            else:
                url = _call_url(rng, e, None, lead="/" + e.service)
            call = RestCall(caller, url, e.method, 1, "String", SourceLoc(f"{caller}/Client.java", loc_line))
            expected[call] = e
        calls.append(call)

    # entities: same-named groups across distinct services, unrelated names otherwise
    entities = []
    ddm_cells = Counter()
    remaining, g = n_entities, 0
    while remaining > 0:
        if g == len(ENTITY_NAMES):
            raise ValueError("too many entities for the available names")
        size = min(remaining, rng.randint(1, min(n_services, 4)))
        owners = sorted(rng.sample(names, size))
        name = ENTITY_NAMES[g]
        for svc in owners:
            extra = {f"f{rng.randint(0, 5)}": rng.choice(TYPES) for _ in range(rng.randint(0, 3))}
            fields = (EntityField("id", "UUID"),) + tuple(EntityField(n, t) for n, t in sorted(extra.items()))
            kind = rng.choice(("persistent", "dto"))
            entities.append(EntityDef(svc, name, fields, kind, (), SourceLoc(f"{svc}/{name}.java", 1)))
        for a, b in combinations(owners, 2):
            ddm_cells[(a, b)] += 1
        remaining -= size
        g += 1

    edm_cells = Counter((c.caller, e.service) for c, e in expected.items() if e is not None)
    per_endpoint = defaultdict(list)
    for c, e in expected.items():
        if e is not None:
            per_endpoint[e].append(c.caller)
    hot = sorted(
        ((e.service, e.path.render(), e.method, len(cs), len(set(cs))) for e, cs in per_endpoint.items() if len(cs) > 3),
        key=lambda r: (-r[3], r[0], r[1], r[2]),
    )
    ir = SystemIR.build(names, endpoints, calls, entities, IRMeta(source_root=f"generated:{seed}"))
    truth = PlantedTruth(
        edm_cells=dict(edm_cells),
        ddm_cells=dict(ddm_cells),
        hotspot_rows=tuple(hot),
        unmatched=sum(1 for e in expected.values() if e is None),
        ambiguous=len(ambiguous_calls),
        matches=expected,
        ambiguous_calls=frozenset(ambiguous_calls),
    )
    return ir, truth
