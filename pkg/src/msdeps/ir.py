"""JSON serialization of :class:`~msdeps.model.SystemIR`.

Document layout::

    {"services": ["svc-a", ...],
     "endpoints": [{"service", "path", "method", "params", "returnType", "sourceLoc"}],
     "calls": [{"caller", "url", "method", "argCount", "expectedReturnType",
                "sourceLoc", "unresolvable"}],
     "entities": [{"service", "name", "fields", "kind", "annotations", "sourceLoc"}],
     "meta": {"sourceRoot", "revision", "toolVersion"}}

Paths are rendered templates (``/api/users/{String}``); call URLs are lists of
``{"lit": ...}`` / ``{"hole": ...}`` objects.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import EmptySystemError, InvalidPathError, IRLoadError, IRValidationError
from .model import (
    ENTITY_KINDS,
    PARAM_KINDS,
    EndpointDef,
    EntityDef,
    EntityField,
    Hole,
    IRMeta,
    Lit,
    Param,
    PathTemplate,
    RestCall,
    SourceLoc,
    SystemIR,
    make_services,
)


def _loc(loc: SourceLoc) -> dict:
    return {"file": loc.file, "line": loc.line}


def to_dict(ir: SystemIR) -> dict:
    return {
        "services": [s.name for s in ir.services],
        "endpoints": [
            {
                "service": e.service,
                "path": e.path.render(),
                "method": e.method,
                "params": [
                    {"name": p.name, "declaredType": p.declared_type, "kind": p.kind}
                    for p in e.params
                ],
                "returnType": e.return_type,
                "sourceLoc": _loc(e.source_loc),
            }
            for e in ir.endpoints
        ],
        "calls": [
            {
                "caller": c.caller,
                "url": [{"lit": p.text} if isinstance(p, Lit) else {"hole": p.type} for p in c.url],
                "method": c.method,
                "argCount": c.arg_count,
                "expectedReturnType": c.expected_return_type,
                "sourceLoc": _loc(c.source_loc),
                "unresolvable": c.unresolvable,
            }
            for c in ir.calls
        ],
        "entities": [
            {
                "service": e.service,
                "name": e.name,
                "fields": [{"name": f.name, "typeName": f.type_name} for f in e.fields],
                "kind": e.kind,
                "annotations": list(e.annotations),
                "sourceLoc": _loc(e.source_loc),
            }
            for e in ir.entities
        ],
        "meta": {
            "sourceRoot": ir.meta.source_root,
            "revision": ir.meta.revision,
            "toolVersion": ir.meta.tool_version,
        },
    }


def dumps(ir: SystemIR) -> str:
    return json.dumps(to_dict(ir), indent=2, ensure_ascii=False) + "\n"


def save_ir(ir: SystemIR, path) -> None:
    Path(path).write_text(dumps(ir), encoding="utf-8")


# -- loading -------------------------------------------------------------------


def _get(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise IRLoadError(where, "expected an object")
    if key not in obj:
        raise IRLoadError(f"{where}.{key}" if where else key, "missing")
    value = obj[key]
    ok = {
        "str": isinstance(value, str),
        "int": isinstance(value, int) and not isinstance(value, bool),
        "bool": isinstance(value, bool),
        "list": isinstance(value, list),
        "dict": isinstance(value, dict),
    }[kind]
    if not ok:
        raise IRLoadError(f"{where}.{key}" if where else key, f"expected {kind}")
    return value


def _opt(obj, key, kind, where, default):
    if isinstance(obj, dict) and key not in obj:
        return default
    return _get(obj, key, kind, where)


def _parse_loc(obj, where) -> SourceLoc:
    loc = _opt(obj, "sourceLoc", "dict", where, None)
    if loc is None:
        return SourceLoc("", 0)
    w = f"{where}.sourceLoc"
    return SourceLoc(_get(loc, "file", "str", w), _get(loc, "line", "int", w))


def from_dict(doc) -> SystemIR:
    """Build and validate a SystemIR from a parsed IR document."""
    if not isinstance(doc, dict):
        raise IRLoadError("$", "top level must be an object")
    services = _get(doc, "services", "list", "")
    for i, s in enumerate(services):
        if not isinstance(s, str):
            raise IRLoadError(f"services[{i}]", "expected str")

    endpoints = []
    for i, e in enumerate(_opt(doc, "endpoints", "list", "", [])):
        w = f"endpoints[{i}]"
        try:
            path = PathTemplate.parse(_get(e, "path", "str", w))
        except InvalidPathError as exc:
            raise IRLoadError(f"{w}.path", str(exc)) from None
        params = []
        for j, p in enumerate(_opt(e, "params", "list", w, [])):
            pw = f"{w}.params[{j}]"
            params.append(
                Param(_get(p, "name", "str", pw), _get(p, "declaredType", "str", pw), _get(p, "kind", "str", pw))
            )
        endpoints.append(
            EndpointDef(
                service=_get(e, "service", "str", w),
                path=path,
                method=_get(e, "method", "str", w),
                params=tuple(params),
                return_type=_opt(e, "returnType", "str", w, "unknown"),
                source_loc=_parse_loc(e, w),
            )
        )

    calls = []
    for i, c in enumerate(_opt(doc, "calls", "list", "", [])):
        w = f"calls[{i}]"
        url = []
        for j, part in enumerate(_get(c, "url", "list", w)):
            pw = f"{w}.url[{j}]"
            if isinstance(part, dict) and "lit" in part:
                url.append(Lit(_get(part, "lit", "str", pw)))
            elif isinstance(part, dict) and "hole" in part:
                url.append(Hole(_get(part, "hole", "str", pw)))
            else:
                raise IRLoadError(pw, 'expected {"lit": ...} or {"hole": ...}')
        calls.append(
            RestCall(
                caller=_get(c, "caller", "str", w),
                url=tuple(url),
                method=_get(c, "method", "str", w),
                arg_count=_opt(c, "argCount", "int", w, 0),
                expected_return_type=_opt(c, "expectedReturnType", "str", w, "unknown"),
                source_loc=_parse_loc(c, w),
                unresolvable=_opt(c, "unresolvable", "bool", w, False),
            )
        )

    entities = []
    for i, e in enumerate(_opt(doc, "entities", "list", "", [])):
        w = f"entities[{i}]"
        fields = []
        for j, f in enumerate(_opt(e, "fields", "list", w, [])):
            fw = f"{w}.fields[{j}]"
            fields.append(EntityField(_get(f, "name", "str", fw), _get(f, "typeName", "str", fw)))
        annotations = _opt(e, "annotations", "list", w, [])
        for j, a in enumerate(annotations):
            if not isinstance(a, str):
                raise IRLoadError(f"{w}.annotations[{j}]", "expected str")
        entities.append(
            EntityDef(
                service=_get(e, "service", "str", w),
                name=_get(e, "name", "str", w),
                fields=tuple(fields),
                kind=_opt(e, "kind", "str", w, "dto"),
                annotations=tuple(annotations),
                source_loc=_parse_loc(e, w),
            )
        )

    meta_doc = _opt(doc, "meta", "dict", "", {})
    meta = IRMeta(
        source_root=_opt(meta_doc, "sourceRoot", "str", "meta", ""),
        revision=_opt(meta_doc, "revision", "str", "meta", "unversioned"),
        tool_version=_opt(meta_doc, "toolVersion", "str", "meta", IRMeta().tool_version),
    )
    _validate_raw(services, endpoints, calls, entities)
    return SystemIR(
        services=make_services(services),
        endpoints=tuple(endpoints),
        calls=tuple(calls),
        entities=tuple(entities),
        meta=meta,
    )


def _validate_raw(services, endpoints, calls, entities) -> None:
    if not services:
        raise EmptySystemError("IR declares no services")
    seen = set()
    for i, s in enumerate(services):
        if not s:
            raise IRValidationError(f"services[{i}]", "empty service name")
        if s in seen:
            raise IRValidationError(f"services[{i}]", f"duplicate service {s!r}")
        seen.add(s)
    for i, e in enumerate(endpoints):
        w = f"endpoints[{i}]"
        if e.service not in seen:
            raise IRValidationError(f"{w}.service", f"unknown service {e.service!r}")
        for j, p in enumerate(e.params):
            if p.kind not in PARAM_KINDS:
                raise IRValidationError(f"{w}.params[{j}].kind", f"unknown kind {p.kind!r}")
        if e.path.variable_count != len(e.path_params):
            raise IRValidationError(
                f"{w}.params",
                f"{e.path.variable_count} path variables but {len(e.path_params)} path params",
            )
    for i, c in enumerate(calls):
        w = f"calls[{i}]"
        if c.caller not in seen:
            raise IRValidationError(f"{w}.caller", f"unknown service {c.caller!r}")
        if not c.url:
            raise IRValidationError(f"{w}.url", "empty url")
        if c.arg_count < 0:
            raise IRValidationError(f"{w}.argCount", "negative")
        if not c.unresolvable and not any(isinstance(p, Lit) and p.text for p in c.url):
            raise IRValidationError(f"{w}.url", "no literal part; mark the call unresolvable")
    keys = set()
    for i, e in enumerate(entities):
        w = f"entities[{i}]"
        if e.service not in seen:
            raise IRValidationError(f"{w}.service", f"unknown service {e.service!r}")
        if not e.name:
            raise IRValidationError(f"{w}.name", "empty entity name")
        if e.key in keys:
            raise IRValidationError(f"{w}.name", f"duplicate entity {e.key}")
        keys.add(e.key)
        if e.kind not in ENTITY_KINDS:
            raise IRValidationError(f"{w}.kind", f"unknown kind {e.kind!r}")
        for j, f in enumerate(e.fields):
            if not f.name:
                raise IRValidationError(f"{w}.fields[{j}].name", "empty field name")


def validate_ir(ir: SystemIR) -> None:
    """Check every model invariant on an in-memory IR."""
    _validate_raw(list(ir.service_names), ir.endpoints, ir.calls, ir.entities)


def loads(text: str) -> SystemIR:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IRLoadError("$", f"invalid JSON: {exc}") from None
    return from_dict(doc)


def load_ir(path) -> SystemIR:
    """Read and validate an IR file written by :func:`save_ir` or a foreign frontend."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IRLoadError("$", f"cannot read {path}: {exc}") from None
    return loads(text)
