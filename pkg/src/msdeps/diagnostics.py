from __future__ import annotations

from typing import NamedTuple


class Diagnostic(NamedTuple):
    """A structured, non-fatal finding (skipped file, ambiguous match, ...)."""

    code: str
    message: str
    file: str = ""
    line: int = 0

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "file": self.file, "line": self.line}


def sort_diagnostics(items) -> list[Diagnostic]:
    return sorted(set(items), key=lambda d: (d.file, d.line, d.code, d.message))
