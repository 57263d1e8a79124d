"""Signature matching of client calls against declared endpoints."""

from __future__ import annotations

from typing import NamedTuple

from ..diagnostics import Diagnostic
from ..errors import InvalidPathError
from ..model import HTTP_METHODS, EndpointDef, EndpointMatch, Literal, PathTemplate, RestCall, SystemIR, Variable
from .paths import PatternTable, normalize_path, pattern_table


def specificity_of(call_path: PathTemplate, endpoint: EndpointDef, table: PatternTable) -> int | None:
    """Literal-agreement count if the paths are compatible, else None."""
    ep_segs = endpoint.path.segments
    call_segs = call_path.segments
    if endpoint.path.trailing_wildcard:
        if len(call_segs) < len(ep_segs):
            return None
    elif len(call_segs) != len(ep_segs) or call_path.trailing_wildcard:
        return None
    literal_hits = 0
    consumed = 0
    for c, e in zip(call_segs, ep_segs):
        if isinstance(e, Literal):
            if not isinstance(c, Literal) or c.text != e.text:
                return None
            literal_hits += 1
        else:
            if isinstance(c, Literal) and not table.accepts(e.type, c.text):
                return None
            consumed += 1
    if consumed != len(endpoint.path_params):
        return None
    return literal_hits


def match_signature(call: RestCall, endpoint: EndpointDef, patterns=None, call_path: PathTemplate | None = None):
    """Return an :class:`EndpointMatch` when ``call`` can invoke ``endpoint``.

    Methods must agree (and be a standard verb), segment counts must agree,
    literals must be equal, literal values must fit the endpoint variable's
    type pattern, holes may only meet variables, and the number of
    variable-bound segments must equal the endpoint's path-parameter count.
    """
    if call.unresolvable or call.caller == endpoint.service:
        return None
    if call.method != endpoint.method or call.method not in HTTP_METHODS:
        return None
    if call_path is None:
        try:
            call_path = normalize_path(call.url).template
        except InvalidPathError:
            return None
    spec = specificity_of(call_path, endpoint, pattern_table(patterns))
    if spec is None:
        return None
    return EndpointMatch(call, endpoint, spec, False)


class Resolution(NamedTuple):
    matches: list
    unmatched: list
    ambiguous: list
    diagnostics: list


def _endpoint_key(e: EndpointDef):
    return (e.service, e.path.render(), e.method, e.source_loc)


def resolve_target(call: RestCall, path: PathTemplate, host, services) -> tuple[str | None, PathTemplate, bool]:
    """Pick the callee service: hostname first, then a leading path segment.

    Returns (target or None, path to match, used_fallback).
    """
    if host is not None and host in services:
        return host, path, False
    first = path.segments[0] if path.segments else None
    if isinstance(first, Literal) and first.text in services and len(path.segments) > 1:
        return first.text, PathTemplate(path.segments[1:], path.trailing_wildcard), True
    return None, path, False


def resolve_calls(ir: SystemIR, patterns=None) -> Resolution:
    """Resolve every call in the system to its best-matching endpoint.

    Each candidate endpoint is checked with :func:`match_signature`; the
    highest specificity wins and ties go to the lexicographically smallest
    (service, path), flagged ambiguous.
    """
    table = pattern_table(patterns)
    services = set(ir.service_names)
    by_service: dict[str, list[EndpointDef]] = {}
    for e in ir.endpoints:
        by_service.setdefault(e.service, []).append(e)
    matches, unmatched, ambiguous, notes = [], [], [], []
    for call in ir.calls:
        loc = call.source_loc
        if call.unresolvable:
            unmatched.append(call)
            continue
        try:
            path, host = normalize_path(call.url)
        except InvalidPathError:
            notes.append(Diagnostic("invalidCallPath", f"cannot normalize {call.url_text()!r}", *loc))
            unmatched.append(call)
            continue
        target, path, fallback = resolve_target(call, path, host, services)
        if fallback:
            notes.append(Diagnostic("hostFallback", f"target {target} taken from the first path segment", *loc))
        if target is not None:
            candidates = by_service.get(target, []) if target != call.caller else []
        else:
            candidates = [e for e in ir.endpoints if e.service != call.caller]
        found = []
        for e in candidates:
            m = match_signature(call, e, table, call_path=path)
            if m is not None:
                found.append(m)
        if not found:
            unmatched.append(call)
            continue
        best_spec = max(m.specificity for m in found)
        top = sorted((m for m in found if m.specificity == best_spec), key=lambda m: _endpoint_key(m.endpoint))
        chosen = top[0]
        if len(top) > 1:
            chosen = EndpointMatch(call, chosen.endpoint, best_spec, True)
            alts = ", ".join(m.endpoint.display_path for m in top)
            ambiguous.append(
                Diagnostic("ambiguousMatch", f"{call.method} {call.url_text()} ties between {alts}", *loc)
            )
        matches.append(chosen)
    return Resolution(matches, unmatched, ambiguous, notes)
