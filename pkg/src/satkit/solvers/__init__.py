"""Solver interfaces: capability contracts, the bundled reference solver,
and the external-binary adapter."""

from .base import (FlipLit, FreezeVar, GetInternalStats, Interrupt, Learn,
                   LimitConflicts, LimitDecisions, LimitPropagations,
                   PhaseLit, Propagate, Solve, SolveIncremental, SolveStats,
                   SolverError, SolverResult, SolverStats, StateError,
                   Terminate)
from .external import ExternalSolver
from .reference import ReferenceSolver

__all__ = [
    "ExternalSolver",
    "FlipLit",
    "FreezeVar",
    "GetInternalStats",
    "Interrupt",
    "Learn",
    "LimitConflicts",
    "LimitDecisions",
    "LimitPropagations",
    "PhaseLit",
    "Propagate",
    "ReferenceSolver",
    "Solve",
    "SolveIncremental",
    "SolveStats",
    "SolverError",
    "SolverResult",
    "SolverStats",
    "StateError",
    "Terminate",
]
