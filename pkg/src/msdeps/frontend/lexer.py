"""A forgiving tokenizer for Java-like sources.

Comments are dropped; string and char literals are kept whole so braces
inside them never disturb structure. Anything unrecognized becomes a
one-character ``punct`` token, so tokenizing never fails.
"""

from __future__ import annotations

import re
from typing import NamedTuple


class Token(NamedTuple):
    kind: str  # ident | string | char | number | punct
    text: str
    line: int


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\f\n]+)
  | (?P<lcomment>//[^\n]*)
  | (?P<bcomment>/\*.*?(?:\*/|\Z))
  | (?P<textblock>\"\"\".*?(?:\"\"\"|\Z))
  | (?P<string>"(?:\\.|[^"\\\n])*"?)
  | (?P<char>'(?:\\.|[^'\\\n])*'?)
  | (?P<ident>[A-Za-z_$][\w$]*)
  | (?P<number>\d[\w.]*)
  | (?P<punct>\.\.\.|::|->|.)
    """,
    re.VERBOSE | re.DOTALL,
)

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "b": "\b", "f": "\f", "0": "\0", "s": " "}


def tokenize(source: str) -> list[Token]:
    tokens = []
    line = 1
    for m in _TOKEN.finditer(source):
        kind = m.lastgroup
        text = m.group()
        if kind == "textblock":
            tokens.append(Token("string", text, line))
        elif kind not in ("ws", "lcomment", "bcomment"):
            tokens.append(Token(kind, text, line))
        line += text.count("\n")
    return tokens


def string_value(token_text: str) -> str:
    """Unquote a string literal token (plain or text block)."""
    if token_text.startswith('"""'):
        body = token_text[3:]
        if body.endswith('"""'):
            body = body[:-3]
        body = "\n".join(part.strip() for part in body.strip("\n").split("\n"))
    else:
        body = token_text[1:-1] if token_text.endswith('"') and len(token_text) > 1 else token_text[1:]
    return re.sub(r"\\(.)", lambda m: _ESCAPES.get(m.group(1), m.group(1)), body)


OPEN = {"(": ")", "{": "}", "[": "]"}
CLOSE = {")", "}", "]"}


def match_close(tokens, i: int) -> int:
    """Index of the token closing the bracket at ``tokens[i]``.

    Returns ``len(tokens)`` when the bracket is never closed.
    """
    depth = 0
    for j in range(i, len(tokens)):
        t = tokens[j]
        if t.kind != "punct":
            continue
        if t.text in OPEN:
            depth += 1
        elif t.text in CLOSE:
            depth -= 1
            if depth == 0:
                return j
    return len(tokens)


def split_top(tokens, sep: str = ",", angle: bool = False) -> list[list[Token]]:
    """Split a token run on ``sep`` at bracket depth zero.

    With ``angle`` set, ``<``/``>`` also nest (for declarations, where they
    are generic brackets rather than comparisons).
    """
    parts: list[list[Token]] = [[]]
    depth = 0
    for t in tokens:
        if t.kind == "punct":
            if t.text in OPEN or (angle and t.text == "<"):
                depth += 1
            elif t.text in CLOSE or (angle and t.text == ">"):
                depth = max(0, depth - 1)
            elif t.text == sep and depth == 0:
                parts.append([])
                continue
        parts[-1].append(t)
    if parts == [[]]:
        return []
    return parts


def join(tokens) -> str:
    """Compact source text for a type or expression token run."""
    out = []
    prev = None
    for t in tokens:
        if prev is not None and prev.kind in ("ident", "number") and t.kind in ("ident", "number"):
            out.append(" ")
        out.append(t.text)
        prev = t
    return "".join(out)
