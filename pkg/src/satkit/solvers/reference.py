"""Bundled reference solver: DPLL with two-watched-literal unit propagation,
chronological backtracking, and assumption handling as forced first decisions.

Complete and correct rather than performance-competitive; it makes the
toolkit self-contained for testing and for the bundled tools. Implements the
incremental tier plus the terminate-callback, phase-setting, and statistics
capabilities.
"""

from __future__ import annotations

from typing import Callable, Iterable

from ..types import Assignment, Lit, TernaryVal
from .base import (PhaseLit, SolveIncremental, SolveStats, SolverResult,
                   SolverStats, StateError, Terminate)

_TERMINATE_POLL_MASK = 0xFFF  # poll at least once per 2^12 propagations


class _Terminated(Exception):
    pass


class ReferenceSolver(SolveIncremental, Terminate, PhaseLit, SolveStats):
    def __init__(self) -> None:
        self._clauses: list[list[int]] = []   # raw literal codes, len >= 2
        self._units: list[int] = []
        self._has_empty = False
        self._watches: list[list[int]] = []   # per raw code -> clause indices
        self._n_vars = 0
        self._values: list[int] = []          # per var: -1 unassigned, 0/1
        self._phases: dict[int, int] = {}
        self._trail: list[int] = []
        self._qhead = 0
        self._trail_lim: list[int] = []
        self._levels: list[tuple[int | None, bool]] = []  # (decision raw | None=assumption, flipped)
        self._search_cursor = 0
        self._model: list[int] | None = None
        self._core: list[Lit] | None = None
        self._terminate_cb: Callable[[], int] | None = None
        self._stats = SolverStats()

    # -- Solve -------------------------------------------------------------

    def signature(self) -> str:
        return "satkit-reference-dpll 0.1.0"

    def add_clause(self, clause) -> None:
        raws: list[int] = []
        seen: set[int] = set()
        for l in clause:
            if l.raw not in seen:
                seen.add(l.raw)
                raws.append(l.raw)
        self._model = None
        self._stats.n_clauses += 1
        if not raws:
            self._has_empty = True
            return
        for raw in raws:
            self._ensure_var(raw >> 1)
        if len(raws) == 1:
            self._units.append(raws[0])
            return
        ci = len(self._clauses)
        self._clauses.append(raws)
        self._watches[raws[0]].append(ci)
        self._watches[raws[1]].append(ci)

    def solve(self) -> SolverResult:
        return self.solve_assumps([])

    def lit_val(self, l: Lit) -> TernaryVal:
        if self._model is None:
            raise StateError("no model available (no SAT result since last change)")
        v = l.var_index
        if v >= len(self._model):
            return TernaryVal.DONT_CARE
        val = self._model[v]
        if val < 0:
            return TernaryVal.DONT_CARE
        return TernaryVal.from_bool(bool(val) != l.is_neg())

    def full_solution(self) -> Assignment:
        if self._model is None:
            raise StateError("no model available (no SAT result since last change)")
        out = Assignment()
        for v, val in enumerate(self._model):
            out.assign_var(v, TernaryVal.DONT_CARE if val < 0
                           else TernaryVal.from_bool(bool(val)))
        return out

    # -- SolveIncremental ----------------------------------------------------

    def solve_assumps(self, assumps: Iterable[Lit]) -> SolverResult:
        assumps = list(assumps)
        self._model = None
        self._core = None
        for a in assumps:
            self._ensure_var(a.var_index)
        self._reset_search()
        try:
            return self._search(assumps)
        except _Terminated:
            self._stats.n_terminated += 1
            self._backtrack_to(0)
            return SolverResult.INTERRUPTED

    def core(self) -> list[Lit]:
        if self._core is None:
            raise StateError("no core available (last result was not UNSAT)")
        return list(self._core)

    # -- capabilities --------------------------------------------------------

    def set_terminate(self, cb: Callable[[], int] | None) -> None:
        self._terminate_cb = cb

    def phase_lit(self, l: Lit) -> None:
        self._phases[l.var_index] = 0 if l.is_neg() else 1

    def unphase_var(self, var_index: int) -> None:
        self._phases.pop(var_index, None)

    def stats(self) -> SolverStats:
        self._stats.n_vars = self._n_vars
        return self._stats

    # -- internals -------------------------------------------------------------

    def _ensure_var(self, var_index: int) -> None:
        while self._n_vars <= var_index:
            self._n_vars += 1
            self._values.append(-1)
            self._watches.append([])
            self._watches.append([])

    def _reset_search(self) -> None:
        for i in range(len(self._values)):
            self._values[i] = -1
        self._trail = []
        self._qhead = 0
        self._trail_lim = []
        self._levels = []
        self._search_cursor = 0

    def _lit_true(self, raw: int) -> bool:
        return self._values[raw >> 1] == 1 - (raw & 1)

    def _lit_false(self, raw: int) -> bool:
        return self._values[raw >> 1] == (raw & 1)

    def _enqueue(self, raw: int) -> None:
        self._values[raw >> 1] = 1 - (raw & 1)
        self._trail.append(raw)

    def _poll_terminate(self) -> None:
        if self._terminate_cb is not None and self._terminate_cb():
            raise _Terminated

    def _propagate(self) -> int:
        """Two-watched-literal propagation; returns a conflict clause index or -1."""
        values = self._values
        clauses = self._clauses
        while self._qhead < len(self._trail):
            p = self._trail[self._qhead]
            self._qhead += 1
            self._stats.n_propagations += 1
            if self._stats.n_propagations & _TERMINATE_POLL_MASK == 0:
                self._poll_terminate()
            fl = p ^ 1
            wl = self._watches[fl]
            i = j = 0
            conflict = -1
            while i < len(wl):
                ci = wl[i]
                i += 1
                cl = clauses[ci]
                if cl[0] == fl:
                    cl[0], cl[1] = cl[1], cl[0]
                w0 = cl[0]
                if values[w0 >> 1] == 1 - (w0 & 1):
                    wl[j] = ci
                    j += 1
                    continue
                for k in range(2, len(cl)):
                    lk = cl[k]
                    if values[lk >> 1] != (lk & 1):
                        cl[1], cl[k] = cl[k], cl[1]
                        self._watches[cl[1]].append(ci)
                        break
                else:
                    wl[j] = ci
                    j += 1
                    if values[w0 >> 1] == (w0 & 1):
                        conflict = ci
                        break
                    self._enqueue(w0)
            if conflict >= 0:
                while i < len(wl):
                    wl[j] = wl[i]
                    i += 1
                    j += 1
                del wl[j:]
                return conflict
            del wl[j:]
        return -1

    def _backtrack_to(self, level: int) -> None:
        if level >= len(self._trail_lim):
            return
        lim = self._trail_lim[level]
        lowest = self._n_vars
        for raw in self._trail[lim:]:
            self._values[raw >> 1] = -1
            if raw >> 1 < lowest:
                lowest = raw >> 1
        del self._trail[lim:]
        del self._trail_lim[level:]
        del self._levels[level:]
        self._qhead = min(self._qhead, len(self._trail))
        self._search_cursor = min(self._search_cursor, lowest)

    def _unsat(self, core: list[Lit]) -> SolverResult:
        seen: set[int] = set()
        deduped = []
        for l in core:
            if l.raw not in seen:
                seen.add(l.raw)
                deduped.append(l)
        self._core = deduped
        self._backtrack_to(0)
        self._stats.n_unsat += 1
        return SolverResult.UNSAT

    def _search(self, assumps: list[Lit]) -> SolverResult:
        if self._has_empty:
            return self._unsat([])
        for raw in self._units:
            if self._lit_false(raw):
                return self._unsat([])
            if not self._lit_true(raw):
                self._enqueue(raw)
        if self._propagate() >= 0:
            return self._unsat([])

        placed: list[Lit] = []
        for a in assumps:
            placed.append(a)
            if self._lit_true(a.raw):
                continue
            if self._lit_false(a.raw):
                return self._unsat(placed)
            self._trail_lim.append(len(self._trail))
            self._levels.append((None, False))
            self._enqueue(a.raw)
            if self._propagate() >= 0:
                self._stats.n_conflicts += 1
                return self._unsat(placed)
        n_assump_levels = len(self._levels)

        values = self._values
        while True:
            v = self._search_cursor
            while v < self._n_vars and values[v] >= 0:
                v += 1
            self._search_cursor = v
            if v >= self._n_vars:
                self._model = list(values)
                self._stats.n_sat += 1
                self._backtrack_to(0)
                return SolverResult.SAT
            raw = (v << 1) | (1 - self._phases.get(v, 0))
            self._stats.n_decisions += 1
            self._trail_lim.append(len(self._trail))
            self._levels.append((raw, False))
            self._enqueue(raw)
            while self._propagate() >= 0:
                self._stats.n_conflicts += 1
                self._poll_terminate()
                lvl = len(self._levels) - 1
                while lvl >= n_assump_levels and self._levels[lvl][1]:
                    lvl -= 1
                if lvl < n_assump_levels:
                    return self._unsat(list(placed))
                dec = self._levels[lvl][0]
                self._backtrack_to(lvl)
                self._trail_lim.append(len(self._trail))
                self._levels.append((dec ^ 1, True))
                self._enqueue(dec ^ 1)
