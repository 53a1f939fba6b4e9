"""Adapter that runs an executable solver binary on DIMACS input and parses
SAT-competition output ("s"/"v" lines, exit codes 10/20/0).

Non-incremental and stateless per call: every solve serializes the full
clause set. The argument template names where the input path goes via the
``{input}`` placeholder; alternatively the instance is piped to stdin.
"""

from __future__ import annotations

import os
import subprocess
import tempfile
from typing import Iterable

from ..types import Assignment, Lit, TernaryVal
from .base import Solve, SolverError, SolverResult, StateError

_RESULT_BY_S_LINE = {
    "SATISFIABLE": (SolverResult.SAT, 10),
    "UNSATISFIABLE": (SolverResult.UNSAT, 20),
    "UNKNOWN": (SolverResult.INTERRUPTED, 0),
}


class ExternalSolver(Solve):
    def __init__(self, executable: str, args_template: Iterable[str] = ("{input}",),
                 via_stdin: bool = False) -> None:
        self._exe = executable
        self._args = list(args_template)
        self._via_stdin = via_stdin
        self._clauses: list[list[Lit]] = []
        self._max_var = -1
        self._model: Assignment | None = None

    def signature(self) -> str:
        return f"external:{os.path.basename(self._exe)}"

    def add_clause(self, clause) -> None:
        lits = [l for l in clause]
        for l in lits:
            if l.var_index > self._max_var:
                self._max_var = l.var_index
        self._clauses.append(lits)
        self._model = None

    def _dimacs(self) -> str:
        lines = [f"p cnf {self._max_var + 1} {len(self._clauses)}"]
        for cl in self._clauses:
            lines.append(" ".join(str(l.to_ipasir()) for l in cl) + (" 0" if cl else "0"))
        return "\n".join(lines) + "\n"

    def solve(self) -> SolverResult:
        text = self._dimacs()
        path = None
        try:
            if self._via_stdin:
                argv = [self._exe] + self._args
                stdin_data = text
            else:
                fd, path = tempfile.mkstemp(suffix=".cnf", prefix="satkit-")
                with os.fdopen(fd, "w") as f:
                    f.write(text)
                argv = [self._exe] + [a.replace("{input}", path) for a in self._args]
                stdin_data = None
            try:
                proc = subprocess.run(argv, input=stdin_data, capture_output=True,
                                      text=True)
            except OSError as e:
                raise SolverError(f"failed to spawn solver binary: {e}") from e
        finally:
            if path is not None:
                try:
                    os.unlink(path)
                except OSError:
                    pass
        return self._parse_output(proc.stdout, proc.returncode)

    def _parse_output(self, stdout: str, returncode: int) -> SolverResult:
        s_value = None
        model_ints: list[int] = []
        model_terminated = False
        for line in stdout.splitlines():
            if line.startswith("s ") or line == "s":
                s_value = line[2:].strip()
            elif line.startswith("v ") or line == "v":
                if model_terminated:
                    continue
                for tok in line[1:].split():
                    try:
                        i = int(tok)
                    except ValueError as e:
                        raise SolverError(f"malformed model token {tok!r}") from e
                    if i == 0:
                        model_terminated = True
                        break
                    if abs(i) > self._max_var + 1:
                        raise SolverError(
                            f"model literal {i} outside declared range "
                            f"(instance has {self._max_var + 1} variables)")
                    model_ints.append(i)
        if s_value is None:
            raise SolverError("solver output contains no 's' result line")
        if s_value not in _RESULT_BY_S_LINE:
            raise SolverError(f"unrecognized result line: s {s_value}")
        result, expected_code = _RESULT_BY_S_LINE[s_value]
        if returncode != expected_code:
            raise SolverError(
                f"result line 's {s_value}' does not match exit code {returncode}")
        if result is SolverResult.SAT and model_ints and not model_terminated:
            raise SolverError("model ('v' lines) not terminated by 0")
        if result is SolverResult.SAT and (model_ints or model_terminated):
            self._model = Assignment.from_ipasir(model_ints)
        else:
            self._model = None
        return result

    def lit_val(self, l: Lit) -> TernaryVal:
        if self._model is None:
            raise StateError("no model available")
        return self._model.lit_value(l)

    def full_solution(self) -> Assignment:
        if self._model is None:
            raise StateError("no model available")
        out = Assignment(self._model.values)
        out._grow(self._max_var)
        return out
