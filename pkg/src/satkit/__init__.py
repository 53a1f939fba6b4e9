"""satkit: a SAT/MaxSAT toolkit.

Typed propositional data structures, DIMACS/WCNF/OPB parsing and writing,
incremental CNF encodings for at-most-one, cardinality, and pseudo-Boolean
constraints, a unified solver interface with a bundled reference solver and
an external-binary adapter, and a small CLI tool suite.
"""

from . import encodings, formats, solvers
from .instances import Cnf, EncodingConfig, Objective, OptInstance, SatInstance
from .manager import BasicVarManager, ObjectVarManager, VarManager
from .types import (Assignment, CardConstraint, Clause, Lit, PbConstraint,
                    Rel, TernaryVal, Trivial, Var, clause_sanitize, lit,
                    pb_normalize)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BasicVarManager",
    "CardConstraint",
    "Clause",
    "Cnf",
    "EncodingConfig",
    "Lit",
    "Objective",
    "ObjectVarManager",
    "OptInstance",
    "PbConstraint",
    "Rel",
    "SatInstance",
    "TernaryVal",
    "Trivial",
    "Var",
    "VarManager",
    "clause_sanitize",
    "encodings",
    "formats",
    "lit",
    "pb_normalize",
    "solvers",
]
