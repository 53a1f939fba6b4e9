"""DIMACS CNF and WCNF parsing and writing.

Clause parsing is token-based: 0 terminates a clause, clauses may span
lines, and several clauses may share a line. WCNF supports the current
MaxSAT-evaluation format ("h <lits> 0" hard, "<weight> <lits> 0" soft) and
auto-detects the legacy format by its "p wcnf <vars> <clauses> <top>"
header, where weight = top marks a clause hard.
"""

from __future__ import annotations

import re
from typing import TextIO

from ..instances import Cnf, OptInstance, SatInstance
from ..types import Lit, Var
from . import ParseDiagnostics, ParseError, decode_lines, require_ascii

_TOKEN = re.compile(r"\S+")
_MAX_MAG = 2**31 - 1


def _warn(diagnostics, lineno, message) -> None:
    if diagnostics is not None:
        diagnostics.append(ParseDiagnostics(lineno, 1, message, "warning"))


def _parse_int(tok: str, lineno: int, col: int, what: str = "literal") -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"{what} token {tok!r} is not an integer", col) from None


def _lit_from_token(tok: str, lineno: int, col: int) -> int:
    i = _parse_int(tok, lineno, col)
    if abs(i) > _MAX_MAG:
        raise ParseError(lineno, f"literal magnitude {abs(i)} out of range", col)
    return i


def parse_cnf(source, diagnostics: list | None = None) -> SatInstance:
    """Parse DIMACS CNF; the "p cnf <vars> <clauses>" header is optional and
    its counts advisory."""
    inst = SatInstance()
    declared = None
    header_line = 0
    n_clauses = 0
    cur: list[Lit] = []
    last_line = 1
    for lineno, line in enumerate(decode_lines(source), start=1):
        if line.startswith("c") or not line.strip():
            continue
        require_ascii(line, lineno)
        last_line = lineno
        if line.startswith("p"):
            if declared is not None:
                raise ParseError(lineno, "duplicate header line")
            if n_clauses or cur:
                raise ParseError(lineno, "header after clause data")
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError(lineno, f"malformed header {line.strip()!r}")
            nv = _parse_int(fields[2], lineno, 1, "header")
            nc = _parse_int(fields[3], lineno, 1, "header")
            if nv < 0 or nc < 0:
                raise ParseError(lineno, "negative header count")
            declared = (nv, nc)
            header_line = lineno
            if nv:
                inst.var_manager.mark_used(Var(nv - 1))
            continue
        for m in _TOKEN.finditer(line):
            i = _lit_from_token(m.group(), lineno, m.start() + 1)
            if i == 0:
                inst.add_clause(cur)
                n_clauses += 1
                cur = []
            else:
                cur.append(Lit.from_ipasir(i))
    if cur:
        raise ParseError(last_line, "missing 0 terminator at end of input")
    if declared is not None:
        nv, nc = declared
        if nc != n_clauses:
            _warn(diagnostics, header_line,
                  f"header declares {nc} clauses, found {n_clauses}")
        if inst.n_vars > nv:
            _warn(diagnostics, header_line,
                  f"header declares {nv} variables, found {inst.n_vars}")
    return inst


def parse_wcnf(source, diagnostics: list | None = None) -> OptInstance:
    """Parse WCNF, auto-detecting the legacy top-weight format."""
    inst = OptInstance()
    top = None
    declared = None
    header_line = 0
    n_clauses = 0
    new_format_seen = False
    state_weight: int | str | None = None  # None = expecting marker
    cur: list[Lit] = []
    last_line = 1
    for lineno, line in enumerate(decode_lines(source), start=1):
        if line.startswith("c") or not line.strip():
            continue
        require_ascii(line, lineno)
        last_line = lineno
        if line.startswith("p"):
            if declared is not None:
                raise ParseError(lineno, "duplicate header line")
            if n_clauses or cur or new_format_seen:
                raise ParseError(lineno, "header after clause data (mixed formats)")
            fields = line.split()
            if len(fields) != 5 or fields[1] != "wcnf":
                raise ParseError(lineno, f"malformed header {line.strip()!r}")
            nv = _parse_int(fields[2], lineno, 1, "header")
            nc = _parse_int(fields[3], lineno, 1, "header")
            top = _parse_int(fields[4], lineno, 1, "header")
            if nv < 0 or nc < 0 or top <= 0:
                raise ParseError(lineno, "invalid header count")
            declared = (nv, nc)
            header_line = lineno
            if nv:
                inst.var_manager.mark_used(Var(nv - 1))
            continue
        for m in _TOKEN.finditer(line):
            tok = m.group()
            col = m.start() + 1
            if state_weight is None:
                if tok == "h":
                    if top is not None:
                        raise ParseError(lineno, "'h' marker in legacy format "
                                         "(mixed formats)", col)
                    new_format_seen = True
                    state_weight = "h"
                    continue
                w = _parse_int(tok, lineno, col, "weight")
                if top is None:
                    new_format_seen = True
                    if w <= 0:
                        raise ParseError(lineno, f"soft weight must be positive, got {w}", col)
                else:
                    if w <= 0:
                        raise ParseError(lineno, f"weight must be positive, got {w}", col)
                    if w > top:
                        raise ParseError(lineno, f"weight {w} exceeds top {top}", col)
                state_weight = w
                continue
            i = _lit_from_token(tok, lineno, col)
            if i == 0:
                if state_weight == "h" or (top is not None and state_weight == top):
                    inst.add_hard_clause(cur)
                else:
                    inst.add_soft_clause(cur, state_weight)
                n_clauses += 1
                cur = []
                state_weight = None
            else:
                cur.append(Lit.from_ipasir(i))
    if cur or state_weight is not None:
        raise ParseError(last_line, "missing 0 terminator at end of input")
    if declared is not None:
        nv, nc = declared
        if nc != n_clauses:
            _warn(diagnostics, header_line,
                  f"header declares {nc} clauses, found {n_clauses}")
        if inst.n_vars > nv:
            _warn(diagnostics, header_line,
                  f"header declares {nv} variables, found {inst.n_vars}")
    return inst


def _clause_line(cl) -> str:
    parts = [str(l.to_ipasir()) for l in cl]
    parts.append("0")
    return " ".join(parts)


def write_cnf(obj, out: TextIO | None = None) -> str:
    """Serialize a clause-only instance (or a Cnf) with exact header counts."""
    if isinstance(obj, SatInstance):
        if obj.cards or obj.pbs:
            raise ValueError("instance has non-clausal constraints; "
                             "lower them with into_cnf first")
        cnf, n_vars = obj.cnf, obj.n_vars
    elif isinstance(obj, Cnf):
        mx = obj.max_var_index()
        cnf, n_vars = obj, 0 if mx is None else mx + 1
    else:
        raise TypeError(f"cannot write {type(obj).__name__} as CNF")
    lines = [f"p cnf {n_vars} {len(cnf)}"]
    lines.extend(_clause_line(cl) for cl in cnf)
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text


def write_wcnf(opt: OptInstance, out: TextIO | None = None) -> str:
    """Serialize in the current MaxSAT-evaluation format (hard lines first)."""
    if opt.constraints.cards or opt.constraints.pbs:
        raise ValueError("instance has non-clausal constraints; "
                         "lower them with into_cnf first")
    if opt.objective.offset:
        raise ValueError("objective offset is not expressible in WCNF")
    lines = []
    for cl in opt.constraints.cnf:
        lines.append("h " + _clause_line(cl))
    for cl, w in opt.objective.as_soft_clauses():
        lines.append(f"{w} " + _clause_line(cl))
    text = "\n".join(lines) + ("\n" if lines else "")
    if out is not None:
        out.write(text)
    return text
