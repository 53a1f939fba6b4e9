"""Parsers and writers for DIMACS CNF, WCNF (MaxSAT), and OPB files.

Parsers are total: any byte stream either parses or raises
:class:`ParseError` carrying a 1-based line number; they never crash.
Header counts are advisory (mismatches produce warning diagnostics).
Input must be ASCII outside comment lines.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class ParseDiagnostics:
    line: int
    column: int
    message: str
    severity: str = "error"  # "error" | "warning"

    def __str__(self) -> str:
        return f"{self.severity}:{self.line}:{self.column}: {self.message}"


class ParseError(ValueError):
    def __init__(self, line: int, message: str, column: int = 1) -> None:
        self.diagnostics = ParseDiagnostics(line, column, message, "error")
        super().__init__(str(self.diagnostics))


def decode_lines(source) -> list[str]:
    """Split str/bytes input into lines without validating the encoding;
    per-line ASCII checks happen in the parsers (comments are exempt)."""
    if isinstance(source, bytes):
        text = source.decode("latin-1")
    else:
        text = source
    return text.split("\n")


def require_ascii(line: str, lineno: int) -> None:
    if not line.isascii():
        col = next(i + 1 for i, ch in enumerate(line) if ord(ch) > 127)
        raise ParseError(lineno, "non-ASCII byte outside a comment", col)


from . import dimacs, opb  # noqa: E402,F401

__all__ = ["ParseDiagnostics", "ParseError", "dimacs", "opb",
           "decode_lines", "require_ascii"]
