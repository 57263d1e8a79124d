"""Structural scan of annotation-based sources into class declarations.

This is not a parser for the full language. It recognizes annotation
sites, type/field/method declaration shapes and balanced brackets, and
skips whatever it cannot classify.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from ..diagnostics import Diagnostic
from ..model import EntityField, SourceLoc
from .lexer import Token, join, match_close, split_top, tokenize

logger = logging.getLogger(__name__)

MODIFIERS = frozenset(
    "public private protected static final abstract synchronized native transient "
    "volatile default strictfp sealed non-sealed".split()
)
TYPE_KEYWORDS = frozenset({"class", "interface", "enum", "record"})


@dataclass(frozen=True)
class AnnotationSite:
    name: str
    args: Mapping[str, str] = field(default_factory=dict)
    attached_to: str = "class"  # class | method | parameter | field
    source_loc: SourceLoc = SourceLoc("", 0)

    def arg(self, *keys: str) -> str | None:
        for k in keys:
            if k in self.args:
                return self.args[k]
        return None


@dataclass(frozen=True)
class ParamDecl:
    name: str
    type_name: str
    annotations: tuple[AnnotationSite, ...] = ()


@dataclass(frozen=True)
class FieldDecl:
    name: str
    type_name: str
    modifiers: frozenset = frozenset()
    init: tuple[Token, ...] = ()
    annotations: tuple[AnnotationSite, ...] = ()
    line: int = 0

    @property
    def is_static(self) -> bool:
        return "static" in self.modifiers


@dataclass(frozen=True)
class MethodDecl:
    name: str
    annotations: tuple[AnnotationSite, ...]
    params: tuple[ParamDecl, ...]
    return_type: str
    body: tuple[Token, ...] = ()
    line: int = 0


@dataclass(frozen=True)
class ClassDecl:
    service: str
    name: str
    kind: str = "class"
    annotations: tuple[AnnotationSite, ...] = ()
    fields: tuple[EntityField, ...] = ()
    methods: tuple[MethodDecl, ...] = ()
    source_loc: SourceLoc = SourceLoc("", 0)
    field_decls: tuple[FieldDecl, ...] = ()

    def annotation_names(self) -> set[str]:
        return {a.name for a in self.annotations}

    def annotation(self, name: str) -> AnnotationSite | None:
        return next((a for a in self.annotations if a.name == name), None)

    @property
    def constants(self) -> Mapping[str, tuple[Token, ...]]:
        return MappingProxyType({f.name: f.init for f in self.field_decls if f.init})

    @property
    def field_types(self) -> Mapping[str, str]:
        return MappingProxyType({f.name: f.type_name for f in self.field_decls})


class _FileScanner:
    def __init__(self, tokens, service: str, file: str):
        self.tokens = tokens
        self.service = service
        self.file = file
        self.warnings: list[Diagnostic] = []

    def warn(self, code, message, line):
        self.warnings.append(Diagnostic(code, message, self.file, line))

    # -- shared pieces ---------------------------------------------------

    def annotation(self, toks, i, attached_to):
        """Parse ``@Name(args)`` at ``toks[i]``; return (site, next index)."""
        line = toks[i].line
        j = i + 1
        parts = [toks[j].text]
        j += 1
        while j + 1 < len(toks) and toks[j].text == "." and toks[j + 1].kind == "ident":
            parts.append(toks[j + 1].text)
            j += 2
        args: dict[str, str] = {}
        if j < len(toks) and toks[j].text == "(":
            close = match_close(toks, j)
            inner = list(toks[j + 1 : close])
            pieces = split_top(inner)
            keyed = bool(pieces) and all(
                len(p) >= 2 and p[0].kind == "ident" and p[1].text == "=" for p in pieces
            )
            if keyed:
                for p in pieces:
                    args[p[0].text] = join(p[2:])
            elif inner:
                args[""] = join(inner)
            j = close + 1
        site = AnnotationSite(parts[-1], MappingProxyType(args), attached_to, SourceLoc(self.file, line))
        return site, j

    @staticmethod
    def is_annotation(toks, i):
        return (
            toks[i].text == "@"
            and i + 1 < len(toks)
            and toks[i + 1].kind == "ident"
            and toks[i + 1].text != "interface"
        )

    def prefix(self, toks, i, attached_to):
        """Consume interleaved annotations and modifiers."""
        anns, mods = [], set()
        while i < len(toks):
            if self.is_annotation(toks, i):
                site, i = self.annotation(toks, i, attached_to)
                anns.append(site)
            elif toks[i].kind == "ident" and toks[i].text in MODIFIERS:
                mods.add(toks[i].text)
                i += 1
            else:
                break
        return anns, mods, i

    def params(self, toks) -> list[ParamDecl]:
        out = []
        for part in split_top(toks, angle=True):
            anns, _, k = self.prefix(part, 0, "parameter")
            rest = part[k:]
            if len(rest) < 2 or rest[-1].kind != "ident":
                continue
            out.append(ParamDecl(rest[-1].text, join(rest[:-1]), tuple(anns)))
        return out

    # -- top level -----------------------------------------------------------

    def scan(self) -> list[ClassDecl]:
        toks = self.tokens
        classes = []
        i = 0
        pending: list[AnnotationSite] = []
        while i < len(toks):
            t = toks[i]
            if self.is_annotation(toks, i):
                site, i = self.annotation(toks, i, "class")
                pending.append(site)
            elif t.kind == "ident" and t.text in ("package", "import"):
                while i < len(toks) and toks[i].text != ";":
                    i += 1
                i += 1
                pending = []
            elif t.kind == "ident" and t.text in MODIFIERS:
                i += 1
            elif (t.kind == "ident" and t.text in TYPE_KEYWORDS) or (
                t.text == "@" and i + 1 < len(toks) and toks[i + 1].text == "interface"
            ):
                decl, i = self.type_decl(toks, i, pending)
                if decl is not None:
                    classes.append(decl)
                pending = []
            elif t.text == "{":
                i = match_close(toks, i) + 1
            else:
                i += 1
        return classes

    def type_decl(self, toks, i, annotations):
        """Parse a type declaration starting at its keyword; return (decl, next)."""
        if toks[i].text == "@":
            kind, i = "annotation", i + 1
        else:
            kind = toks[i].text
        line = toks[i].line
        if i + 1 >= len(toks) or toks[i + 1].kind != "ident":
            self.warn("unparseable", f"{kind} keyword without a name", line)
            return None, i + 1
        name = toks[i + 1].text
        j = i + 2
        header_params: list[Token] = []
        while j < len(toks) and toks[j].text not in ("{", ";"):
            if toks[j].text == "(":
                close = match_close(toks, j)
                if kind == "record" and not header_params:
                    header_params = list(toks[j + 1 : close])
                j = close
            j += 1
        if j >= len(toks) or toks[j].text == ";":
            self.warn("unparseable", f"{kind} {name} has no body", line)
            return None, j + 1
        close = match_close(toks, j)
        if close >= len(toks):
            self.warn("unbalancedBraces", f"{kind} {name} body is never closed", line)
        body = toks[j + 1 : close]
        fields, methods = self.members(body, kind)
        if kind == "record":
            fields = [
                FieldDecl(p.name, p.type_name, frozenset(), (), p.annotations, line)
                for p in self.params(header_params)
            ] + fields
        decl = ClassDecl(
            service=self.service,
            name=name,
            kind=kind,
            annotations=tuple(annotations),
            fields=tuple(EntityField(f.name, f.type_name) for f in fields if not f.is_static),
            methods=tuple(methods),
            source_loc=SourceLoc(self.file, line),
            field_decls=tuple(fields),
        )
        return decl, close + 1

    # -- class bodies ------------------------------------------------------------

    def members(self, toks, kind):
        fields: list[FieldDecl] = []
        methods: list[MethodDecl] = []
        i = 0
        n = len(toks)
        if kind == "enum":
            depth = 0
            while i < n:
                t = toks[i].text
                if t in "({[":
                    depth += 1
                elif t in ")}]":
                    depth -= 1
                elif t == ";" and depth == 0:
                    break
                i += 1
            i += 1
        while i < n:
            anns, mods, i = self.prefix(toks, i, "method")
            if i >= n:
                break
            t = toks[i]
            if t.text == ";":
                i += 1
                continue
            if t.text == "{":
                i = match_close(toks, i) + 1
                continue
            if (t.kind == "ident" and t.text in TYPE_KEYWORDS) or t.text == "@":
                # nested type: skip its body entirely
                j = i
                while j < n and toks[j].text not in ("{", ";"):
                    j = match_close(toks, j) if toks[j].text == "(" else j
                    j += 1
                i = (match_close(toks, j) + 1) if j < n and toks[j].text == "{" else j + 1
                continue
            if t.text == "<":
                depth = 0
                while i < n:
                    if toks[i].text == "<":
                        depth += 1
                    elif toks[i].text == ">":
                        depth -= 1
                        if depth == 0:
                            i += 1
                            break
                    i += 1
            # scan the declaration head
            j = i
            angle = 0
            while j < n:
                x = toks[j].text
                if x == "<":
                    angle += 1
                elif x == ">":
                    angle = max(0, angle - 1)
                elif angle == 0 and x in ("(", "=", ";", ",", "{", "}"):
                    break
                j += 1
            head = toks[i:j]
            if j >= n or toks[j].text in ("{", "}") or not head or head[-1].kind != "ident":
                line = toks[i].line if i < n else 0
                self.warn("unparseable", "skipped unrecognized member", line)
                i = self._skip_statement(toks, i)
                continue
            if toks[j].text == "(":
                close = match_close(toks, j)
                params = self.params(toks[j + 1 : close])
                k = close + 1
                while k < n and toks[k].text not in ("{", ";"):
                    k += 1
                body: tuple[Token, ...] = ()
                if k < n and toks[k].text == "{":
                    bclose = match_close(toks, k)
                    body = tuple(toks[k + 1 : bclose])
                    k = bclose
                methods.append(
                    MethodDecl(
                        name=head[-1].text,
                        annotations=tuple(anns),
                        params=tuple(params),
                        return_type=join(head[:-1]),
                        body=body,
                        line=head[-1].line,
                    )
                )
                i = k + 1
                continue
            # field declaration, possibly with several declarators
            end = i
            depth = 0
            while end < n:
                x = toks[end].text
                if x in "({[":
                    depth += 1
                elif x in ")}]":
                    depth -= 1
                elif x == ";" and depth <= 0:
                    break
                end += 1
            fanns = tuple(AnnotationSite(a.name, a.args, "field", a.source_loc) for a in anns)
            type_name = join(head[:-1])
            for decl in split_top(toks[i:end], angle=True):
                eq = next((k for k, x in enumerate(decl) if x.text == "="), len(decl))
                names = [x for x in decl[:eq] if x.kind == "ident"]
                if not names:
                    continue
                fields.append(
                    FieldDecl(names[-1].text, type_name, frozenset(mods), tuple(decl[eq + 1 :]), fanns, names[-1].line)
                )
            i = end + 1
        return fields, methods

    @staticmethod
    def _skip_statement(toks, i):
        n = len(toks)
        while i < n:
            x = toks[i].text
            if x == ";":
                return i + 1
            if x in ("{", "(", "["):
                close = match_close(toks, i)
                if x == "{":
                    return close + 1
                i = close
            i += 1
        return i


def scan_source(source: str, service: str = "", file: str = "") -> tuple[list[ClassDecl], list[Diagnostic]]:
    """Scan one source text; return its top-level classes and any warnings."""
    scanner = _FileScanner(tokenize(source), service, file)
    classes = scanner.scan()
    return classes, scanner.warnings


def source_files(root: Path, extensions, exclude_globs=()) -> list[Path]:
    import fnmatch

    out = []
    for path in sorted(root.rglob("*")):
        rel_parts = path.relative_to(root).parts
        if any(fnmatch.fnmatch(p, g) for p in rel_parts[:-1] for g in exclude_globs):
            continue
        if path.is_file() and path.suffix in extensions:
            out.append(path)
    return out


def scan_classes(service_root, config=None, base=None, diagnostics=None) -> list[ClassDecl]:
    """Scan every source file under a service root.

    ``base`` is the directory source locations are reported relative to
    (defaults to the parent of the service directory). Files that cannot be
    read are skipped with an ``unreadableFile`` warning.
    """
    from .config import FrontendConfig

    config = config or FrontendConfig()
    root = Path(service_root.root_dir)
    base = Path(base) if base is not None else root.parent
    classes: list[ClassDecl] = []
    warnings: list[Diagnostic] = []
    for path in source_files(root, config.source_extensions, config.exclude_globs):
        try:
            rel = path.relative_to(base).as_posix()
        except ValueError:
            rel = path.as_posix()
        try:
            text = path.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            warnings.append(Diagnostic("unreadableFile", str(exc), rel, 0))
            continue
        found, warns = scan_source(text, service_root.name, rel)
        classes.extend(found)
        warnings.extend(warns)
    for w in warnings:
        logger.debug("%s:%d %s %s", w.file, w.line, w.code, w.message)
    if diagnostics is not None:
        diagnostics.extend(warnings)
    return classes
