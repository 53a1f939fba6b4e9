"""OPB (pseudo-Boolean competition format) parsing and writing.

Constraint lines look like ``+2 x1 -3 x2 >= -1 ;`` and an optional leading
``min: +1 x1 ... ;`` objective makes the result an optimization instance.
Variable name ``x<i>`` maps to index ``i - first_var_index``. Negated
literals ``~x<i>`` are accepted on input; the writer always emits plain
variables, folding negations into coefficient signs, and records a nonzero
objective offset in a ``* #offset=`` comment so its own output re-parses
exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TextIO

from ..instances import OptInstance, SatInstance
from ..types import CardConstraint, Clause, Lit, PbConstraint, Rel, Var
from . import ParseError, decode_lines, require_ascii

_VAR_TOKEN = re.compile(r"^(~?)x(\d+)$")
_OFFSET_COMMENT = re.compile(r"^\* #offset= (-?\d+)\s*$")
_SIZE_COMMENT = re.compile(r"^\* #variable= (\d+)")
_RELS = {">=": Rel.GE, "<=": Rel.LE, "=": Rel.EQ}


@dataclass
class OpbOptions:
    """OPB dialect switches; ``first_var_index`` is the index "x1" maps to."""

    first_var_index: int = 1


def _parse_var(tok: str, opts: OpbOptions, lineno: int) -> Lit:
    m = _VAR_TOKEN.match(tok)
    if m is None:
        raise ParseError(lineno, f"expected a variable, got {tok!r}")
    idx = int(m.group(2))
    if idx < opts.first_var_index:
        raise ParseError(
            lineno, f"variable index {idx} below first_var_index {opts.first_var_index}")
    return Lit(idx - opts.first_var_index, negated=bool(m.group(1)))


def _parse_terms(tokens: list[str], opts: OpbOptions, lineno: int):
    """Parse alternating weight/literal tokens; returns (terms, rest)."""
    terms: list[tuple[Lit, int]] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok == ";" or tok[0] in "<>=":
            break
        try:
            w = int(tok)
        except ValueError:
            raise ParseError(lineno, f"coefficient {tok!r} is not an integer") from None
        if i + 1 >= len(tokens):
            raise ParseError(lineno, "coefficient without a variable")
        l = _parse_var(tokens[i + 1], opts, lineno)
        terms.append((l, w))
        i += 2
    return terms, tokens[i:]


def parse_opb(source, opts: OpbOptions | None = None,
              diagnostics: list | None = None):
    """Parse OPB text; returns OptInstance iff an objective line is present."""
    opts = opts if opts is not None else OpbOptions()
    sat = SatInstance()
    objective_terms = None
    offset = 0
    pending: list[str] = []
    pending_line = 0
    statements: list[tuple[int, list[str]]] = []
    for lineno, line in enumerate(decode_lines(source), start=1):
        if line.startswith("*"):
            m = _OFFSET_COMMENT.match(line)
            if m is not None:
                offset += int(m.group(1))
            m = _SIZE_COMMENT.match(line)
            if m is not None and int(m.group(1)) > 0:
                sat.var_manager.mark_used(Var(int(m.group(1)) - 1))
            continue
        if not line.strip():
            continue
        require_ascii(line, lineno)
        for tok in line.replace(";", " ; ").split():
            if not pending:
                pending_line = lineno
            pending.append(tok)
            if tok == ";":
                statements.append((pending_line, pending[:-1]))
                pending = []
    if pending:
        raise ParseError(pending_line, "statement not terminated by ';'")

    for lineno, tokens in statements:
        if tokens and tokens[0] == "min:":
            if objective_terms is not None:
                raise ParseError(lineno, "multiple objective lines")
            terms, rest = _parse_terms(tokens[1:], opts, lineno)
            if rest:
                raise ParseError(lineno, f"unexpected token {rest[0]!r} in objective")
            objective_terms = terms
            continue
        terms, rest = _parse_terms(tokens, opts, lineno)
        if not rest:
            raise ParseError(lineno, "constraint without relational operator")
        if rest[0] not in _RELS:
            raise ParseError(lineno, f"unknown relational operator {rest[0]!r}")
        rel = _RELS[rest[0]]
        if len(rest) < 2:
            raise ParseError(lineno, "constraint without degree")
        try:
            bound = int(rest[1])
        except ValueError:
            raise ParseError(lineno, f"degree {rest[1]!r} is not an integer") from None
        if len(rest) > 2:
            raise ParseError(lineno, f"unexpected token {rest[2]!r} after degree")
        sat.add_pb_constr(PbConstraint(terms, rel, bound))

    if objective_terms is None:
        if offset:
            raise ParseError(1, "offset comment without an objective")
        return sat
    opt = OptInstance(sat.var_manager)
    opt.constraints = sat
    opt.objective.offset = offset
    for l, w in objective_terms:
        if w > 0:
            opt.objective.add_soft_lit(-l, w)
        elif w < 0:
            opt.objective.offset += w
            opt.objective.add_soft_lit(l, -w)
    return opt


def _format_terms(parts: list[tuple[int, int]], opts: OpbOptions) -> str:
    """Each part is (coefficient, var_index)."""
    return " ".join(f"{w:+d} x{v + opts.first_var_index}" for w, v in parts)


def _clause_parts(cl: Clause):
    parts = []
    degree = 1
    for l in cl:
        if l.is_neg():
            parts.append((-1, l.var_index))
            degree -= 1
        else:
            parts.append((1, l.var_index))
    return parts, degree


def write_opb(inst, opts: OpbOptions | None = None, out: TextIO | None = None) -> str:
    """Serialize an instance; clauses and cardinality constraints become
    unit-coefficient lines, negated literals fold into coefficient signs."""
    opts = opts if opts is not None else OpbOptions()
    if isinstance(inst, OptInstance):
        sat, objective = inst.constraints, inst.objective
    elif isinstance(inst, SatInstance):
        sat, objective = inst, None
    else:
        raise TypeError(f"cannot write {type(inst).__name__} as OPB")
    lines = [f"* #variable= {sat.n_vars} #constraint= {sat.n_constraints()}"]
    if objective is not None:
        if objective.soft_clauses():
            raise ValueError("non-unit soft clauses are not expressible in OPB; "
                             "convert them with into_soft_lits first")
        parts = []
        written_offset = objective.offset
        for l, w in objective.soft_lits():
            if l.is_neg():
                parts.append((w, l.var_index))
            else:
                parts.append((-w, l.var_index))
                written_offset += w
        if written_offset:
            lines.append(f"* #offset= {written_offset}")
        lines.append(("min: " + _format_terms(parts, opts) + " ;").replace("  ", " "))
    for cl in sat.cnf:
        parts, degree = _clause_parts(cl)
        lines.append(f"{_format_terms(parts, opts)} >= {degree} ;".lstrip())
    for card in sat.cards:
        parts = []
        degree = card.bound
        for l in card.lits:
            if l.is_neg():
                parts.append((-1, l.var_index))
                degree -= 1
            else:
                parts.append((1, l.var_index))
        lines.append(f"{_format_terms(parts, opts)} {card.rel.value} {degree} ;".lstrip())
    for pb in sat.pbs:
        parts = []
        degree = pb.bound
        for l, w in pb.terms:
            if l.is_neg():
                parts.append((-w, l.var_index))
                degree -= w
            else:
                parts.append((w, l.var_index))
        lines.append(f"{_format_terms(parts, opts)} {pb.rel.value} {degree} ;".lstrip())
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text
