"""Evaluate string-valued expressions as far as static text allows.

Operands of ``+`` become :class:`Lit` parts when they are literals or
resolvable same-file constants / single-assignment locals, and
:class:`Hole` parts otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..model import Hole, Lit
from .lexer import join, match_close, split_top, string_value, tokenize

_TEMPLATE_VAR = re.compile(r"\{[^{}/]*\}")
_MAX_DEPTH = 8


@dataclass
class Scope:
    """Names visible to an expression.

    ``values`` maps a name to the tokens of its initializer (only names whose
    value is fixed); ``types`` maps a name to its declared type.
    """

    values: dict = field(default_factory=dict)
    types: dict = field(default_factory=dict)
    parent: "Scope | None" = None

    def value(self, name):
        if name in self.values:
            return self.values[name]
        return self.parent.value(name) if self.parent else None

    def type_of(self, name):
        if name in self.types:
            return self.types[name]
        return self.parent.type_of(name) if self.parent else None


def merge_parts(parts) -> tuple:
    out = []
    for p in parts:
        if isinstance(p, Lit):
            if not p.text:
                continue
            if out and isinstance(out[-1], Lit):
                out[-1] = Lit(out[-1].text + p.text)
                continue
        out.append(p)
    return tuple(out)


def _literal_parts(text: str, templates: bool):
    if not templates:
        return [Lit(text)]
    parts = []
    pos = 0
    for m in _TEMPLATE_VAR.finditer(text):
        parts.append(Lit(text[pos : m.start()]))
        parts.append(Hole("unknown"))
        pos = m.end()
    parts.append(Lit(text[pos:]))
    return parts


def _strip_parens(tokens):
    while tokens and tokens[0].text == "(" and match_close(tokens, 0) == len(tokens) - 1:
        tokens = tokens[1:-1]
    return tokens


def _dotted_name(tokens):
    """Return the final identifier of ``a.b.C`` / ``this.x`` chains, else None."""
    if not tokens or len(tokens) % 2 == 0:
        return None
    for k, t in enumerate(tokens):
        if k % 2 == 0 and t.kind != "ident":
            return None
        if k % 2 == 1 and t.text != ".":
            return None
    return tokens[-1].text


def evaluate(tokens, scope: Scope | None = None, templates: bool = False, _depth: int = 0) -> tuple:
    """Decompose an expression into literal and hole parts.

    With ``templates`` set, ``{name}`` placeholders inside literals become
    holes (URI-template style calls).
    """
    scope = scope or Scope()
    parts = []
    for operand in split_top(list(tokens), "+"):
        operand = _strip_parens(operand)
        if not operand:
            continue
        if len(operand) == 1 and operand[0].kind == "string":
            parts.extend(_literal_parts(string_value(operand[0].text), templates))
            continue
        if len(operand) == 1 and operand[0].kind == "number":
            parts.append(Lit(operand[0].text))
            continue
        if split_top(operand, "+") != [operand]:
            parts.extend(evaluate(operand, scope, templates, _depth + 1))
            continue
        name = _dotted_name(operand)
        if name is not None:
            init = scope.value(name)
            if init is not None and _depth < _MAX_DEPTH:
                parts.extend(evaluate(init, scope, templates, _depth + 1))
            else:
                parts.append(Hole(simple_type(scope.type_of(name)) if scope.type_of(name) else "unknown"))
            continue
        parts.append(Hole("unknown"))
    return merge_parts(parts)


def evaluate_text(text: str, scope: Scope | None = None, templates: bool = False) -> tuple:
    return evaluate(tokenize(text), scope, templates)


def alternatives(text: str) -> list[str]:
    """Split an annotation value like ``{"/a", "/b"}`` into element sources."""
    toks = tokenize(text)
    if toks and toks[0].text == "{" and match_close(toks, 0) == len(toks) - 1:
        return [join(p) for p in split_top(toks[1:-1])]
    return [text]


def simple_type(type_name: str) -> str:
    """Drop package qualifiers: ``java.util.UUID`` -> ``UUID``."""
    base, sep, rest = type_name.partition("<")
    return base.rsplit(".", 1)[-1] + sep + rest
