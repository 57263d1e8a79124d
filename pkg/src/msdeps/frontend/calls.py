"""Call extraction: find HTTP client invocations in method bodies."""

from __future__ import annotations

import re

from ..diagnostics import Diagnostic
from ..model import HTTP_METHODS, Hole, Lit, RestCall, SourceLoc
from .config import FrontendConfig
from .endpoints import class_scope, file_scopes
from .expr import Scope, evaluate, simple_type
from .lexer import join, match_close, split_top

CLIENT_VERBS = {
    "getForObject": "GET",
    "getForEntity": "GET",
    "postForObject": "POST",
    "postForEntity": "POST",
    "postForLocation": "POST",
    "put": "PUT",
    "delete": "DELETE",
    "patchForObject": "PATCH",
    "headForHeaders": "HEAD",
    "optionsForAllow": "OPTIONS",
    "exchange": None,  # verb is the second argument
}
CLIENT_TYPES = re.compile(r"(RestTemplate|RestOperations)$")
CLIENT_NAMES = re.compile(r"rest|template|client", re.IGNORECASE)
_NOT_TYPES = frozenset("return new throw else case do yield assert".split())
_ASSIGN_BLOCKERS = frozenset("= ! < > + - * / & | ^ %".split())


def _local_type(body, k):
    """Declared type of the name at ``body[k]`` if it is being declared."""
    prev = body[k - 1] if k > 0 else None
    if prev is None:
        return None
    if prev.kind == "ident" and prev.text not in _NOT_TYPES:
        return prev.text
    if prev.text == ">":
        depth = 0
        for j in range(k - 1, -1, -1):
            if body[j].text == ">":
                depth += 1
            elif body[j].text == "<":
                depth -= 1
                if depth == 0:
                    if j > 0 and body[j - 1].kind == "ident":
                        return join(body[j - 1 : k])
                    return None
    if prev.text == "]" and k >= 3 and body[k - 2].text == "[" and body[k - 3].kind == "ident":
        return body[k - 3].text + "[]"
    return None


def method_scope(method, parent: Scope) -> Scope:
    """Single-assignment locals and declared types visible inside a method."""
    scope = Scope(parent=parent)
    for p in method.params:
        scope.types[p.name] = p.type_name
    body = method.body
    assigns: dict[str, list] = {}
    spoiled = set()
    n = len(body)
    for k, t in enumerate(body):
        if t.kind != "ident" or k + 1 >= n:
            continue
        nxt = body[k + 1].text
        declared = _local_type(body, k)
        if declared and nxt in (";", ",", "=", ":"):
            scope.types[t.text] = declared
        if nxt == "=" and not (k + 2 < n and body[k + 2].text == "="):
            if k > 0 and body[k - 1].text == ".":
                continue
            end = k + 2
            depth = 0
            while end < n:
                x = body[end].text
                if x in "({[":
                    depth += 1
                elif x in ")}]":
                    if depth == 0:
                        break
                    depth -= 1
                elif x in (";", ",") and depth == 0:
                    break
                end += 1
            assigns.setdefault(t.text, []).append(tuple(body[k + 2 : end]))
        elif nxt in _ASSIGN_BLOCKERS and k + 2 < n and body[k + 2].text == "=":
            spoiled.add(t.text)
        elif nxt in ("+", "-") and k + 2 < n and body[k + 2].text == nxt:
            spoiled.add(t.text)
    for name, inits in assigns.items():
        if len(inits) == 1 and name not in spoiled:
            scope.values[name] = inits[0]
        else:
            # reassigned: shadow any same-named constant
            scope.values.pop(name, None)
            scope.types.setdefault(name, scope.type_of(name) or "unknown")
            scope.values[name] = None
    return scope


def _return_type(args) -> str:
    for arg in args:
        if len(arg) >= 3 and arg[-1].text == "class" and arg[-2].text == ".":
            return simple_type(join(arg[:-2]))
        texts = [t.text for t in arg]
        if "ParameterizedTypeReference" in texts:
            i = texts.index("ParameterizedTypeReference")
            if i + 1 < len(arg) and arg[i + 1].text == "<":
                depth = 0
                for j in range(i + 1, len(arg)):
                    if arg[j].text == "<":
                        depth += 1
                    elif arg[j].text == ">":
                        depth -= 1
                        if depth == 0:
                            return join(arg[i + 2 : j])
    return "unknown"


def _verb(method_name, args):
    if method_name in CLIENT_VERBS and CLIENT_VERBS[method_name]:
        return CLIENT_VERBS[method_name]
    if method_name == "exchange" and len(args) >= 2:
        arg = args[1]
        if arg and arg[-1].kind == "ident" and arg[-1].text.upper() in HTTP_METHODS:
            if all(t.kind == "ident" or t.text == "." for t in arg):
                return arg[-1].text.upper()
    return None


def _receiver(body, k):
    """Name of the receiver variable before ``.method`` at ``body[k]``, if simple."""
    if k >= 2 and body[k - 1].text == "." and body[k - 2].kind == "ident":
        return body[k - 2].text
    return None


def calls_in_method(method, cls, scope: Scope, config: FrontendConfig, diagnostics=None) -> list[RestCall]:
    body = method.body
    clients = set(config.client_methods)
    out = []
    for k, t in enumerate(body):
        if t.kind != "ident" or t.text not in clients:
            continue
        if k < 1 or body[k - 1].text != "." or k + 1 >= len(body) or body[k + 1].text != "(":
            continue
        close = match_close(body, k + 1)
        args = split_top(list(body[k + 2 : close]))
        if not args:
            continue
        receiver = _receiver(body, k)
        rtype = scope.type_of(receiver) if receiver else None
        url = evaluate(args[0], scope, templates=True)
        urlish = any(isinstance(p, Lit) and "/" in p.text for p in url)
        if rtype and rtype != "unknown":
            if not CLIENT_TYPES.search(simple_type(rtype).split("<")[0]):
                continue
        elif not (receiver and CLIENT_NAMES.search(receiver)) and not urlish:
            continue
        loc = SourceLoc(cls.source_loc.file, t.line)
        verb = _verb(t.text, args)
        has_literal = any(isinstance(p, Lit) and p.text for p in url)
        unresolvable = verb is None or not has_literal
        if unresolvable and diagnostics is not None:
            why = "HTTP method not readable" if verb is None else "URL has no literal part"
            diagnostics.append(Diagnostic("unresolvableCall", f"{cls.name}.{method.name}: {why}", loc.file, loc.line))
        out.append(
            RestCall(
                caller=cls.service,
                url=url or (Hole("unknown"),),
                method=verb or "UNKNOWN",
                arg_count=len(args) - 1,
                expected_return_type=_return_type(args[1:]),
                source_loc=loc,
                unresolvable=unresolvable,
            )
        )
    return out


def extract_calls(classes, service_root=None, config: FrontendConfig | None = None, diagnostics=None) -> list[RestCall]:
    """Every recognized client call in the given classes.

    ``service_root`` is accepted for interface symmetry; callers are taken
    from the classes themselves.
    """
    config = config or FrontendConfig()
    scopes = file_scopes(classes)
    out = []
    for cls in classes:
        cscope = class_scope(cls, scopes.get(cls.source_loc.file))
        for method in cls.methods:
            if not method.body:
                continue
            scope = method_scope(method, cscope)
            out.extend(calls_in_method(method, cls, scope, config, diagnostics))
    return out
