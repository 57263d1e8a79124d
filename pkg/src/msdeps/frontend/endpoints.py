"""Endpoint extraction: merge class-level and method-level mapping annotations."""

from __future__ import annotations

from itertools import product

from ..diagnostics import Diagnostic
from ..model import HTTP_METHODS, EndpointDef, Lit, Literal, Param, PathTemplate, SourceLoc, Variable
from .config import FrontendConfig
from .expr import Scope, alternatives, evaluate_text, simple_type

SPRING_SHORTCUTS = {
    "GetMapping": "GET",
    "PostMapping": "POST",
    "PutMapping": "PUT",
    "DeleteMapping": "DELETE",
    "PatchMapping": "PATCH",
}
PATH_PARAM_ANNOTATIONS = ("PathVariable", "PathParam")
QUERY_PARAM_ANNOTATIONS = ("RequestParam", "QueryParam")
BODY_ANNOTATIONS = ("RequestBody",)


def file_scopes(classes) -> dict:
    """One constant scope per source file, shared by the classes in it."""
    scopes: dict[str, Scope] = {}
    for c in classes:
        scope = scopes.setdefault(c.source_loc.file, Scope())
        for f in c.field_decls:
            if f.init and ("final" in f.modifiers or f.is_static):
                scope.values.setdefault(f.name, f.init)
    return scopes


def class_scope(cls, file_scope: Scope | None) -> Scope:
    values = {f.name: f.init for f in cls.field_decls if f.init and "final" in f.modifiers}
    types = {f.name: f.type_name for f in cls.field_decls}
    return Scope(values, types, file_scope)


def _path_values(site, scope, keys=("value", "path", "")) -> list[str | None]:
    """All literal path strings in an annotation; ``None`` for unresolved ones."""
    raw = site.arg(*keys)
    if raw is None:
        return [""]
    out = []
    for alt in alternatives(raw):
        parts = evaluate_text(alt, scope)
        if all(isinstance(p, Lit) for p in parts):
            out.append("".join(p.text for p in parts))
        else:
            out.append(None)
    return out or [""]


def _methods_of(site) -> list[str]:
    name = site.name
    if name in SPRING_SHORTCUTS:
        return [SPRING_SHORTCUTS[name]]
    if name == "RequestMapping":
        raw = site.arg("method")
        if raw is None:
            return []
        found = [tok for tok in raw.replace("{", " ").replace("}", " ").replace(",", " ").split()]
        return [f.rsplit(".", 1)[-1] for f in found if f.rsplit(".", 1)[-1]]
    if name.upper() in HTTP_METHODS:
        return [name.upper()]
    if name.endswith("Mapping") and name[:-7].upper() in HTTP_METHODS:
        return [name[:-7].upper()]
    return [name]


def split_template(raw: str) -> list[str]:
    """Split on '/' outside of ``{...}`` placeholders (which may hold regexes)."""
    segs, cur, depth = [], [], 0
    for ch in raw:
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


def _placeholders(segment: str) -> list[str]:
    names, depth, start = [], 0, None
    for k, ch in enumerate(segment):
        if ch == "{":
            if depth == 0:
                start = k + 1
            depth += 1
        elif ch == "}" and depth:
            depth -= 1
            if depth == 0:
                names.append(segment[start:k].split(":", 1)[0].strip())
    return names


def _param_name(site, default):
    raw = site.arg("value", "name", "")
    if raw:
        parts = evaluate_text(raw)
        if len(parts) == 1 and isinstance(parts[0], Lit):
            return parts[0].text
    return default


def build_endpoint(service, raw_path, http_method, method, loc, warn) -> EndpointDef | None:
    """Turn a merged raw path and a method declaration into an EndpointDef."""
    path_decls, other = [], []
    for p in method.params:
        names = {a.name for a in p.annotations}
        site = next((a for a in p.annotations if a.name in PATH_PARAM_ANNOTATIONS), None)
        if site is not None:
            path_decls.append(Param(_param_name(site, p.name), simple_type(p.type_name), "path"))
            continue
        site = next((a for a in p.annotations if a.name in QUERY_PARAM_ANNOTATIONS), None)
        if site is not None:
            other.append(Param(_param_name(site, p.name), simple_type(p.type_name), "query"))
        elif names & set(BODY_ANNOTATIONS):
            other.append(Param(p.name, simple_type(p.type_name), "body"))

    segments = []
    ordered_path: list[Param] = []
    unused = list(path_decls)
    raw_segments = split_template(raw_path)
    wildcard = bool(raw_segments) and raw_segments[-1] == "**"
    if wildcard:
        raw_segments = raw_segments[:-1]
    template_names = {n for seg in raw_segments for n in _placeholders(seg)}
    for seg in raw_segments:
        names = _placeholders(seg)
        if not names:
            segments.append(Literal(seg))
            continue
        if len(names) > 1:
            warn("multiPlaceholderSegment", f"segment {seg!r} holds {len(names)} variables; using the first")
        name = names[0]
        param = next((p for p in unused if p.name == name), None)
        if param is None:
            # positional fallback for parameters whose names match no placeholder
            param = next((p for p in unused if p.name not in template_names), None)
        if param is None:
            warn("missingPathParam", f"no parameter bound to path variable {name!r}")
            param = Param(name, "unknown", "path")
        else:
            unused.remove(param)
        ordered_path.append(param)
        segments.append(Variable(param.declared_type))
    for p in unused:
        warn("unusedPathParam", f"path parameter {p.name!r} does not appear in {raw_path!r}")
    if not segments and not wildcard:
        warn("emptyPath", f"endpoint path {raw_path!r} is empty")
        return None
    return EndpointDef(
        service=service,
        path=PathTemplate(tuple(segments), wildcard),
        method=http_method,
        params=tuple(ordered_path) + tuple(other),
        return_type=simple_type(method.return_type) if method.return_type else "unknown",
        source_loc=loc,
    )


def extract_endpoints(classes, config: FrontendConfig | None = None, diagnostics=None) -> list[EndpointDef]:
    config = config or FrontendConfig()
    scopes = file_scopes(classes)
    endpoint_annotations = set(config.endpoint_annotations)
    out = []
    for cls in classes:
        scope = class_scope(cls, scopes.get(cls.source_loc.file))
        class_names = cls.annotation_names()
        is_controller = bool(class_names & set(config.controller_markers))
        prefixes = [""]
        class_site = cls.annotation("RequestMapping") or cls.annotation("Path")
        if class_site is not None:
            prefixes = [p for p in _path_values(class_site, scope) if p is not None] or [""]
        for method in cls.methods:
            loc = SourceLoc(cls.source_loc.file, method.line)

            def warn(code, message, loc=loc):
                if diagnostics is not None:
                    diagnostics.append(Diagnostic(code, message, loc.file, loc.line))

            sites = [a for a in method.annotations if a.name in endpoint_annotations]
            if not sites:
                continue
            path_site = next((a for a in method.annotations if a.name == "Path"), None)
            for site in sites:
                verbs = _methods_of(site)
                if not verbs:
                    warn("requestMappingWithoutMethod", f"{cls.name}.{method.name} maps no HTTP method")
                    continue
                if site.name in SPRING_SHORTCUTS or site.name == "RequestMapping":
                    suffixes = _path_values(site, scope)
                elif path_site is not None:
                    suffixes = _path_values(path_site, scope)
                else:
                    suffixes = [""]
                if not is_controller:
                    warn("orphanController", f"{cls.name} declares endpoints without a controller marker")
                for prefix, suffix, verb in product(prefixes, suffixes, verbs):
                    if suffix is None:
                        warn("unresolvedPath", f"{cls.name}.{method.name} path is not a static string")
                        continue
                    ep = build_endpoint(cls.service, prefix + "/" + suffix, verb, method, loc, warn)
                    if ep is not None:
                        out.append(ep)
    return out
