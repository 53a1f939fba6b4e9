"""CNF encodings for at-most-one, cardinality, and pseudo-Boolean constraints.

All encoders emit clauses into a *clause collector*: any object with an
``add_clause(clause)`` method (a :class:`satkit.instances.Cnf`, a
:class:`satkit.instances.SatInstance`, a solver, or the counter below).
Emission is deterministic: identical inputs, requested ranges, and variable
manager state produce the identical clause sequence.

Bound enforcement is assumption-based and retractable: ``enforce_*`` returns
literals to pass as solver assumptions. To assert a bound permanently, add
each returned literal as a unit clause.
"""

from __future__ import annotations

from ..types import Clause


class NotEncodedError(RuntimeError):
    """Enforcing a bound that no previous encode call covered."""


class UnsupportedOperationError(RuntimeError):
    """Operation outside the encoding's capability (e.g. restructuring a
    frozen watchdog encoding)."""


class IncompatibleInputError(ValueError):
    """Complementary input literals handed to a counting encoder."""


class ClauseCounter:
    """Clause collector that only counts; useful for sizing encodings."""

    def __init__(self) -> None:
        self.n_clauses = 0
        self.n_lits = 0

    def add_clause(self, cl: Clause) -> None:
        self.n_clauses += 1
        self.n_lits += len(cl)


from .am1 import Bimander, Bitwise, Commander, Ladder, Pairwise  # noqa: E402
from .card import Totalizer  # noqa: E402
from .pb import BinaryAdder, DynamicPolyWatchdog, GeneralizedTotalizer  # noqa: E402
from .simulators import Double, ExpandedCard, Inverted  # noqa: E402

__all__ = [
    "Bimander",
    "BinaryAdder",
    "Bitwise",
    "ClauseCounter",
    "Commander",
    "Double",
    "DynamicPolyWatchdog",
    "ExpandedCard",
    "GeneralizedTotalizer",
    "IncompatibleInputError",
    "Inverted",
    "Ladder",
    "NotEncodedError",
    "Pairwise",
    "Totalizer",
    "UnsupportedOperationError",
]
