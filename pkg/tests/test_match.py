from __future__ import annotations

import csv
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msdeps.errors import InvalidNameError, InvalidPathError
from msdeps.fixtures import generate_ir_system
from msdeps.match import (
    PatternTable,
    SimilarityConfig,
    levenshtein,
    match_entities,
    match_signature,
    name_similarity,
    name_tokens,
    normalize_path,
    resolve_calls,
)
from msdeps.match.entities import matched_field_count
from msdeps.model import (
    EndpointDef,
    EntityDef,
    EntityField,
    Hole,
    Lit,
    Literal,
    Param,
    PathTemplate,
    RestCall,
    SourceLoc,
    SystemIR,
    Variable,
)
from oracles import exhaustive_resolve, lev

DATA = Path(__file__).parent / "data"


def load_pairs():
    with open(DATA / "levenshtein_pairs.csv", encoding="utf-8") as fh:
        rows = csv.reader(line for line in fh if not line.startswith("#"))
        return [(a, b, na, nb, int(d), float(s)) for a, b, na, nb, d, s in rows]


def ep(service, path, method="GET", types=None):
    t = PathTemplate.parse(path)
    types = types or [s.type for s in t.segments if isinstance(s, Variable)]
    params = tuple(Param(f"p{i}", ty, "path") for i, ty in enumerate(types))
    return EndpointDef(service, t, method, params, "String", SourceLoc(f"{service}/C.java", 1))


def call(caller, *parts, method="GET", line=1):
    url = tuple(Lit(p) if isinstance(p, str) else p for p in parts)
    return RestCall(caller, url, method, 1, "String", SourceLoc(f"{caller}/K.java", line))


# -- normalize_path -----------------------------------------------------------------------


def test_normalize_absolute_url():
    n = normalize_path("http://ts-user-service/api/v1/userservice/users/{id}")
    assert n.host == "ts-user-service"
    segs = n.template.segments
    assert segs[:4] == (Literal("api"), Literal("v1"), Literal("userservice"), Literal("users"))
    assert len(segs) == 5 and isinstance(segs[4], Variable)


def test_normalize_call_parts():
    n = normalize_path((Lit("/api/v1/routeservice/routes"),))
    assert n.host is None
    assert [s.text for s in n.template.segments] == ["api", "v1", "routeservice", "routes"]


def test_normalize_empty_is_error():
    with pytest.raises(InvalidPathError):
        normalize_path("///")


def test_normalize_strips_query_port_and_case():
    n = normalize_path((Lit("HTTP://Svc-A:8080/x//y/?q=1#f"),))
    assert n.host == "svc-a"
    assert n.template.render() == "/x/y"


def test_normalize_holes_become_typed_variables():
    n = normalize_path((Lit("http://b/items/"), Hole("Long"), Lit("/parts/"), Hole("unknown")))
    assert n.template.render() == "/items/{Long}/parts/{unknown}"


def test_normalize_leading_base_url_hole_is_dropped():
    n = normalize_path((Hole("String"), Lit("/api/v1/info")))
    assert n.host is None and n.template.render() == "/api/v1/info"


@given(st.lists(st.one_of(st.sampled_from(["api", "v1", "users", "x-y", "a.b"]), st.just("{Long}")), min_size=1))
def test_normalize_is_idempotent(parts):
    once = normalize_path("/" + "/".join(parts)).template
    assert normalize_path(once.render()).template == once


# -- match_signature ------------------------------------------------------------------------

USERS = ep("ts-user-service", "/api/v1/userservice/users/{String}")


def test_append_id_idiom_matches():
    c = call("ts-admin", "http://ts-user-service/api/v1/userservice/users/", Hole("unknown"))
    m = match_signature(c, USERS)
    assert m is not None and m.specificity == 4


def test_method_mismatch():
    c = call("ts-admin", "http://ts-user-service/api/v1/userservice/users/", Hole("unknown"), method="POST")
    assert match_signature(c, USERS) is None


def test_value_regex_by_type():
    # hand evaluation: "abc" is not [0-9]+ but is [^/]+
    c = call("x", "/api/v1/userservice/users/abc")
    assert match_signature(c, ep("s", "/api/v1/userservice/users/{Integer}")) is None
    assert match_signature(c, ep("s", "/api/v1/userservice/users/{String}")) is not None
    c42 = call("x", "/api/v1/userservice/users/42")
    assert match_signature(c42, ep("s", "/api/v1/userservice/users/{Integer}")) is not None


def test_uuid_and_boolean_patterns():
    u = ep("s", "/t/{UUID}")
    assert match_signature(call("x", "/t/123e4567-e89b-12d3-a456-426614174000"), u)
    assert not match_signature(call("x", "/t/123e4567"), u)
    b = ep("s", "/flag/{boolean}")
    assert match_signature(call("x", "/flag/true"), b)
    assert not match_signature(call("x", "/flag/yes"), b)


def test_hole_never_meets_literal():
    assert match_signature(call("x", "/a/", Hole("String")), ep("s", "/a/b")) is None


def test_segment_count_and_param_count():
    assert match_signature(call("x", "/a/b/c"), ep("s", "/a/b")) is None
    # a variable without a declared path param cannot be bound
    broken = EndpointDef("s", PathTemplate.parse("/a/{String}"), "GET", (), "String", SourceLoc("f", 1))
    assert match_signature(call("x", "/a/", Hole("String")), broken) is None


def test_self_calls_never_match():
    assert match_signature(call("s", "/a/b"), ep("s", "/a/b")) is None


def test_unknown_verb_never_matches():
    assert match_signature(call("x", "/a", method="FETCH"), ep("s", "/a", method="FETCH")) is None


def test_type_pattern_override():
    table = PatternTable(overrides={"String": "[a-z]+"})
    c = call("x", "/a/ABC")
    assert match_signature(c, ep("s", "/a/{String}"), table) is None


# -- resolve_calls ---------------------------------------------------------------------------


def system(endpoints, calls):
    names = sorted({e.service for e in endpoints} | {c.caller for c in calls})
    return SystemIR.build(names, endpoints, calls)


def test_single_call_single_endpoint():
    r = resolve_calls(system([USERS], [call("ts-admin", "http://ts-user-service/api/v1/userservice/users/", Hole("x"))]))
    assert len(r.matches) == 1 and not r.unmatched


def test_most_specific_endpoint_wins():
    # candidates enumerated by hand:
    #   /api/v1/things/{String}/detail -> literals api, v1, things, detail = 4
    #   /api/v1/{String}/{String}/detail -> literals api, v1, detail = 3
    a = ep("svc", "/api/v1/things/{String}/detail")
    b = ep("svc", "/api/v1/{String}/{String}/detail")
    c = call("cli", "http://svc/api/v1/things/", Hole("String"), "/detail")
    r = resolve_calls(system([a, b], [c]))
    assert [(m.endpoint, m.specificity, m.ambiguous) for m in r.matches] == [(a, 4, False)]


def test_ties_are_flagged_and_broken_lexicographically():
    a = ep("svc-b", "/shared/info")
    b = ep("svc-a", "/shared/info")
    c = call("svc-c", "/shared/info")
    r = resolve_calls(system([a, b], [c]))
    assert r.matches[0].endpoint.service == "svc-a" and r.matches[0].ambiguous
    assert len(r.ambiguous) == 1


def test_host_restricts_candidates_and_fallback_segment():
    a = ep("svc-a", "/x")
    b = ep("svc-b", "/x")
    r = resolve_calls(system([a, b], [call("svc-c", "http://svc-b:80/x")]))
    assert r.matches[0].endpoint is b and not r.matches[0].ambiguous
    r = resolve_calls(system([a, b], [call("svc-c", "/svc-a/x")]))
    assert r.matches[0].endpoint is a
    assert [d.code for d in r.diagnostics] == ["hostFallback"]


def test_call_to_itself_by_host_is_unmatched():
    a = ep("svc-a", "/x")
    b = ep("svc-b", "/x")
    r = resolve_calls(system([a, b], [call("svc-a", "http://svc-a/x")]))
    assert not r.matches and len(r.unmatched) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000), st.integers(1, 10), st.integers(0, 50), st.integers(0, 100))
def test_resolve_equals_exhaustive_oracle(seed, s, e, c):
    ir, truth = generate_ir_system(seed, (s, e, c, 0))
    r = resolve_calls(ir)
    oracle = exhaustive_resolve(ir)
    got = {m.call: (m.endpoint, m.ambiguous) for m in r.matches}
    assert got == {k: v for k, v in oracle.items() if v is not None}
    assert set(r.unmatched) == {k for k, v in oracle.items() if v is None}
    assert {k: v[0] for k, v in got.items()} == {k: v for k, v in truth.matches.items() if v is not None}
    for m in r.matches:
        path, host = normalize_path(m.call.url)
        if host is None and path.segments[0] == Literal(m.endpoint.service):
            path = PathTemplate(path.segments[1:], path.trailing_wildcard)
        assert match_signature(m.call, m.endpoint, call_path=path) is not None


# -- similarity ---------------------------------------------------------------------------------


@pytest.mark.parametrize("a,b,na,nb,dist,score", load_pairs())
def test_similarity_table(a, b, na, nb, dist, score):
    assert "".join(name_tokens(a)) == na and "".join(name_tokens(b)) == nb
    assert lev(na, nb) == dist
    assert levenshtein(na, nb) == dist
    assert name_similarity(a, b) == pytest.approx(score, abs=1e-9)


def test_tokens():
    assert name_tokens("OrderAlterInfo") == ("order", "alter", "info")
    assert name_tokens("HTTPRequest") == ("http", "request")
    assert name_tokens("user_dto") == ("user", "dto")
    assert name_tokens("route2") == ("route", "2")


def test_synonyms(tmp_path):
    d = tmp_path / "syn.txt"
    d.write_text("# travel words\ntrip,journey\nseat,place\n")
    cfg = SimilarityConfig(synonym_dict_path=str(d))
    assert name_similarity("Trip", "Journey", cfg) == 1.0
    assert name_similarity("TripSeat", "JourneyPlace", cfg) == 1.0
    assert name_similarity("Trip", "Journey") == pytest.approx(1 / 7)


def test_empty_name_rejected():
    with pytest.raises(InvalidNameError):
        name_similarity("", "x")


def test_bad_threshold():
    with pytest.raises(ValueError):
        SimilarityConfig(threshold=1.5)


names = st.text(alphabet="abcdefgABCDEFG_0123", min_size=1, max_size=12).filter(lambda s: s.strip("_"))


@given(names, names)
def test_similarity_symmetric_and_bounded(a, b):
    s = name_similarity(a, b)
    assert s == name_similarity(b, a)
    assert 0.0 <= s <= 1.0
    assert name_similarity(a, a) == 1.0


@given(st.text(max_size=8), st.text(max_size=8))
def test_levenshtein_matches_oracle(a, b):
    assert levenshtein(a, b) == lev(a, b)


# -- entities ---------------------------------------------------------------------------------


def ent(service, name, *fields, kind="dto"):
    fs = tuple(EntityField(n, t) for n, t in fields)
    return EntityDef(service, name, fs, kind, (), SourceLoc(f"{service}/{name}.java", 1))


def entity_system(entities):
    return SystemIR.build(sorted({e.service for e in entities}), entities=entities)


def test_entity_match_example():
    a = ent("svc-a", "Order", ("id", "UUID"), ("trainNumber", "String"))
    b = ent("svc-b", "Order", ("id", "UUID"), ("price", "Double"))
    matches, eq = match_entities(entity_system([a, b]))
    assert [(m.a.service, m.b.service, m.matched_field_count) for m in matches] == [("svc-a", "svc-b", 1)]
    assert len(eq.classes) == 1


def test_near_names_do_not_match():
    a = ent("svc-a", "Order", ("id", "UUID"))
    b = ent("svc-b", "OrderAlterInfo", ("id", "UUID"))
    assert match_entities(entity_system([a, b]))[0] == []


def test_fields_need_same_erased_type():
    a = ent("a", "Cart", ("items", "List<Item>"))
    b = ent("b", "Cart", ("items", "List<String>"))
    c = ent("c", "Cart", ("items", "Set<Item>"))
    assert matched_field_count(a, b, SimilarityConfig()) == 1
    assert matched_field_count(a, c, SimilarityConfig()) == 0


def test_zero_field_entities_match_on_name():
    a, b = ent("a", "Marker"), ent("b", "Marker")
    assert len(match_entities(entity_system([a, b]))[0]) == 1


def test_min_field_matches_zero_disables_field_check():
    a = ent("a", "Order", ("x", "Long"))
    b = ent("b", "Order", ("y", "String"))
    assert match_entities(entity_system([a, b]))[0] == []
    assert len(match_entities(entity_system([a, b]), SimilarityConfig(min_field_matches=0))[0]) == 1


def test_same_service_pairs_are_never_matched():
    a = ent("a", "Order", ("id", "UUID"))
    b = ent("a", "OrderDto", ("id", "UUID"))
    assert match_entities(entity_system([a, b]))[0] == []


def test_transitive_closure():
    xs = [ent(s, "Ticket", ("id", "UUID")) for s in ("a", "b", "c")]
    _, eq = match_entities(entity_system(xs))
    assert len(eq.classes) == 1 and eq.services_of(0) == {"a", "b", "c"}
    assert eq.representatives[0].service == "a"


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_entity_matching_is_order_independent_and_partitions(seed):
    ir, _ = generate_ir_system(seed, (5, 0, 0, 14))
    matches, eq = match_entities(ir)
    shuffled = list(ir.entities)
    random.Random(seed).shuffle(shuffled)
    ir2 = SystemIR(ir.services, (), (), tuple(shuffled), ir.meta)
    assert match_entities(ir2) == (matches, eq)
    members = [e.key for cls in eq.classes for e in cls]
    assert len(members) == len(set(members))
    assert set(members) == {m.a.key for m in matches} | {m.b.key for m in matches}
    where = {e.key: i for i, cls in enumerate(eq.classes) for e in cls}
    assert all(where[m.a.key] == where[m.b.key] for m in matches)
