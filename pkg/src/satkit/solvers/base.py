"""Solver capability contracts.

The basic tier (:class:`Solve`) is what every backend offers; incremental
solving adds assumptions and cores. The remaining capabilities are each
advertised individually by inheriting the corresponding class; calling a
capability a backend does not advertise is simply not possible (the method
does not exist), never a runtime surprise. Capability checks are ordinary
``isinstance`` tests.
"""

from __future__ import annotations

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Iterable

from ..types import Assignment, Clause, Lit, TernaryVal


class SolverResult(enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    INTERRUPTED = "interrupted"


class SolverError(RuntimeError):
    """Backend failure (process errors, protocol violations)."""


class StateError(RuntimeError):
    """Operation invalid in the solver's current state (e.g. core after SAT)."""


@dataclass
class SolverStats:
    n_sat: int = 0
    n_unsat: int = 0
    n_terminated: int = 0
    n_clauses: int = 0
    n_vars: int = 0
    n_decisions: int = 0
    n_propagations: int = 0
    n_conflicts: int = 0


class Solve(ABC):
    """Most basic tier: clause ingestion, solving, and value queries."""

    @abstractmethod
    def signature(self) -> str:
        """Solver name/version text."""

    @abstractmethod
    def add_clause(self, clause) -> None:
        """Ingest a clause (any iterable of literals)."""

    @abstractmethod
    def solve(self) -> SolverResult:
        ...

    @abstractmethod
    def lit_val(self, l: Lit) -> TernaryVal:
        """Value of a literal in the last model; only valid after a SAT
        result and before the next clause addition."""

    @abstractmethod
    def full_solution(self) -> Assignment:
        """The last model over all known variables."""

    def add_cnf(self, clauses: Iterable) -> None:
        for cl in clauses:
            self.add_clause(cl)


class SolveIncremental(Solve):
    """Assumption-based solving with unsatisfiable-core extraction."""

    @abstractmethod
    def solve_assumps(self, assumps: Iterable[Lit]) -> SolverResult:
        ...

    @abstractmethod
    def core(self) -> list[Lit]:
        """Subset of the last assumptions that is jointly unsatisfiable with
        the clause set. Valid only after an UNSAT ``solve_assumps`` result;
        no minimality guarantee."""


class Terminate(ABC):
    """Callback polled during search; a nonzero return aborts the solve."""

    @abstractmethod
    def set_terminate(self, cb: Callable[[], int] | None) -> None:
        ...


class Interrupt(ABC):
    """Hands out a token that can abort a running solve from another thread."""

    @abstractmethod
    def interrupter(self) -> Callable[[], None]:
        ...


class Learn(ABC):
    """Callback receiving learned clauses up to a length limit."""

    @abstractmethod
    def set_learn(self, cb: Callable[[list[Lit]], None] | None, max_len: int) -> None:
        ...


class PhaseLit(ABC):
    """Set or forget the preferred polarity of a variable."""

    @abstractmethod
    def phase_lit(self, l: Lit) -> None:
        ...

    @abstractmethod
    def unphase_var(self, var_index: int) -> None:
        ...


class FreezeVar(ABC):
    @abstractmethod
    def freeze_var(self, var_index: int) -> None:
        ...

    @abstractmethod
    def melt_var(self, var_index: int) -> None:
        ...


class FlipLit(ABC):
    @abstractmethod
    def flip_lit(self, l: Lit) -> bool:
        ...


class Propagate(ABC):
    @abstractmethod
    def propagate(self, assumps: Iterable[Lit]) -> tuple[bool, list[Lit]]:
        ...


class LimitConflicts(ABC):
    @abstractmethod
    def limit_conflicts(self, limit: int | None) -> None:
        ...


class LimitDecisions(ABC):
    @abstractmethod
    def limit_decisions(self, limit: int | None) -> None:
        ...


class LimitPropagations(ABC):
    @abstractmethod
    def limit_propagations(self, limit: int | None) -> None:
        ...


class SolveStats(ABC):
    @abstractmethod
    def stats(self) -> SolverStats:
        ...


class GetInternalStats(ABC):
    @abstractmethod
    def internal_stats(self) -> dict:
        ...
