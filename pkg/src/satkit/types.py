"""Fundamental value types: variables, literals, clauses, assignments, constraints.

Variables are 0-based. Literals pack the variable index shifted left by one
bit, with the lowest bit signaling negation, so ``lit.raw ^ 1`` negates.
IPASIR-style integers (1-based, sign = polarity) are the interchange format
used by the DIMACS/WCNF parsers and the solver interfaces.
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator, Sequence, Union

#: Largest legal variable index (the packed literal must fit 32 bits).
MAX_VAR_INDEX = 2**31 - 1


class InvalidLiteralError(ValueError):
    """Raised for 0 where a nonzero IPASIR literal integer is required."""


class OutOfRangeError(ValueError):
    """Raised when a variable index or IPASIR magnitude exceeds the 31-bit space."""


class Var:
    """A propositional variable, identified by a 0-based index."""

    __slots__ = ("index",)

    def __init__(self, index: int) -> None:
        if not 0 <= index <= MAX_VAR_INDEX:
            raise OutOfRangeError(f"variable index {index} out of range [0, {MAX_VAR_INDEX}]")
        self.index = index

    def pos_lit(self) -> "Lit":
        return Lit(self.index, False)

    def neg_lit(self) -> "Lit":
        return Lit(self.index, True)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Var) and other.index == self.index

    def __lt__(self, other: "Var") -> bool:
        return self.index < other.index

    def __hash__(self) -> int:
        return hash(("Var", self.index))

    def __repr__(self) -> str:
        return f"x{self.index}"


class Lit:
    """A literal: a variable or its negation, packed into a single integer."""

    __slots__ = ("raw",)

    def __init__(self, var_index: int, negated: bool = False) -> None:
        if not 0 <= var_index <= MAX_VAR_INDEX:
            raise OutOfRangeError(f"variable index {var_index} out of range [0, {MAX_VAR_INDEX}]")
        self.raw = (var_index << 1) | (1 if negated else 0)

    @classmethod
    def from_raw(cls, raw: int) -> "Lit":
        lit = cls.__new__(cls)
        lit.raw = raw
        return lit

    @classmethod
    def from_ipasir(cls, i: int) -> "Lit":
        """Build a literal from an IPASIR integer: sign = polarity, |i| = index + 1."""
        if i == 0:
            raise InvalidLiteralError("0 is not a valid IPASIR literal (reserved terminator)")
        mag = abs(i)
        if mag > 2**31 - 1:
            raise OutOfRangeError(f"IPASIR literal magnitude {mag} exceeds 2^31 - 1")
        return cls(mag - 1, i < 0)

    def to_ipasir(self) -> int:
        mag = (self.raw >> 1) + 1
        return -mag if self.raw & 1 else mag

    @property
    def var_index(self) -> int:
        return self.raw >> 1

    def var(self) -> Var:
        return Var(self.raw >> 1)

    def is_neg(self) -> bool:
        return bool(self.raw & 1)

    def is_pos(self) -> bool:
        return not self.raw & 1

    def __neg__(self) -> "Lit":
        return Lit.from_raw(self.raw ^ 1)

    __invert__ = __neg__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lit) and other.raw == self.raw

    def __lt__(self, other: "Lit") -> bool:
        return self.raw < other.raw

    def __hash__(self) -> int:
        return hash(("Lit", self.raw))

    def __repr__(self) -> str:
        return f"{'~' if self.raw & 1 else ''}x{self.raw >> 1}"


def lit(i: int) -> Lit:
    """Shorthand for :meth:`Lit.from_ipasir`."""
    return Lit.from_ipasir(i)


LitLike = Union["Clause", Sequence[Lit], Iterable[Lit]]


class Tautology:
    """Marker result for a clause containing a literal and its negation."""

    _instance: "Tautology | None" = None

    def __new__(cls) -> "Tautology":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Tautology"


TAUTOLOGY = Tautology()


class Clause:
    """A disjunction of literals; iteration order equals insertion order.

    Anywhere the toolkit consumes a clause it accepts any iterable of
    literals, so using this wrapper is optional.
    """

    __slots__ = ("lits",)

    def __init__(self, lits: Iterable[Lit] = ()) -> None:
        self.lits: list[Lit] = list(lits)

    def add(self, l: Lit) -> None:
        self.lits.append(l)

    def extend(self, lits: Iterable[Lit]) -> None:
        self.lits.extend(lits)

    def sanitize(self) -> "Clause | Tautology":
        """Drop duplicate literals (keeping first occurrence); detect tautologies."""
        seen: set[int] = set()
        out: list[Lit] = []
        for l in self.lits:
            if l.raw ^ 1 in seen:
                return TAUTOLOGY
            if l.raw not in seen:
                seen.add(l.raw)
                out.append(l)
        return Clause(out)

    def is_satisfied_by(self, assignment: "Assignment") -> bool:
        return any(assignment.lit_value(l) is TernaryVal.TRUE for l in self.lits)

    def __iter__(self) -> Iterator[Lit]:
        return iter(self.lits)

    def __len__(self) -> int:
        return len(self.lits)

    def __getitem__(self, idx):
        return self.lits[idx]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Clause):
            return self.lits == other.lits
        if isinstance(other, (list, tuple)):
            return self.lits == list(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(l.raw for l in self.lits))

    def __repr__(self) -> str:
        return f"Clause({self.lits!r})"


def as_clause(obj: LitLike) -> Clause:
    return obj if isinstance(obj, Clause) else Clause(obj)


class TernaryVal(enum.Enum):
    """Three-valued truth: true, false, or unassigned/don't-care."""

    TRUE = "true"
    FALSE = "false"
    DONT_CARE = "dont-care"

    def negate(self) -> "TernaryVal":
        if self is TernaryVal.TRUE:
            return TernaryVal.FALSE
        if self is TernaryVal.FALSE:
            return TernaryVal.TRUE
        return TernaryVal.DONT_CARE

    @classmethod
    def from_bool(cls, b: bool) -> "TernaryVal":
        return cls.TRUE if b else cls.FALSE


class Assignment:
    """A dense map from variables to ternary values, indexed by variable index."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable[TernaryVal] = ()) -> None:
        self.values: list[TernaryVal] = list(values)

    @classmethod
    def from_ipasir(cls, ints: Iterable[int]) -> "Assignment":
        """Build from IPASIR integers; unmentioned variables stay don't-care."""
        a = cls()
        for i in ints:
            l = Lit.from_ipasir(i)
            a.assign_lit(l)
        return a

    def _grow(self, var_index: int) -> None:
        while len(self.values) <= var_index:
            self.values.append(TernaryVal.DONT_CARE)

    def assign_var(self, var_index: int, val: TernaryVal) -> None:
        self._grow(var_index)
        self.values[var_index] = val

    def assign_lit(self, l: Lit) -> None:
        self.assign_var(l.var_index, TernaryVal.from_bool(l.is_pos()))

    def var_value(self, var_index: int) -> TernaryVal:
        if var_index < len(self.values):
            return self.values[var_index]
        return TernaryVal.DONT_CARE

    def lit_value(self, l: Lit) -> TernaryVal:
        v = self.var_value(l.var_index)
        return v.negate() if l.is_neg() else v

    def completed(self, n_vars: int | None = None,
                  default: TernaryVal = TernaryVal.FALSE) -> "Assignment":
        """Copy with don't-cares replaced by ``default`` (enumeration wants total models)."""
        n = len(self.values) if n_vars is None else max(n_vars, len(self.values))
        out = Assignment()
        out._grow(n - 1) if n else None
        for i in range(n):
            v = self.var_value(i)
            out.values[i] = default if v is TernaryVal.DONT_CARE else v
        return out

    def to_ipasir(self) -> list[int]:
        """IPASIR integers for all assigned variables, ascending; don't-cares skipped."""
        out = []
        for i, v in enumerate(self.values):
            if v is TernaryVal.TRUE:
                out.append(i + 1)
            elif v is TernaryVal.FALSE:
                out.append(-(i + 1))
        return out

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Assignment) and self.values == other.values

    def __repr__(self) -> str:
        return f"Assignment({self.to_ipasir()})"


class Rel(enum.Enum):
    """Relation of a cardinality or pseudo-Boolean constraint to its bound."""

    LE = "<="
    GE = ">="
    EQ = "="


class Trivial(enum.Enum):
    """Normalization outcome for constraints decided without encoding."""

    TRUE = "trivially-true"
    FALSE = "trivially-false"


class CardConstraint:
    """A bound on the number of true literals in a set."""

    __slots__ = ("lits", "rel", "bound")

    def __init__(self, lits: Iterable[Lit], rel: Rel, bound: int) -> None:
        if bound < 0:
            raise ValueError("cardinality bound must be non-negative")
        self.lits: list[Lit] = list(lits)
        self.rel = rel
        self.bound = bound

    @classmethod
    def at_most(cls, lits: Iterable[Lit], bound: int) -> "CardConstraint":
        return cls(lits, Rel.LE, bound)

    @classmethod
    def at_least(cls, lits: Iterable[Lit], bound: int) -> "CardConstraint":
        return cls(lits, Rel.GE, bound)

    @classmethod
    def exactly(cls, lits: Iterable[Lit], bound: int) -> "CardConstraint":
        return cls(lits, Rel.EQ, bound)

    def is_satisfied_by(self, assignment: Assignment) -> bool:
        count = sum(1 for l in self.lits if assignment.lit_value(l) is TernaryVal.TRUE)
        if self.rel is Rel.LE:
            return count <= self.bound
        if self.rel is Rel.GE:
            return count >= self.bound
        return count == self.bound

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, CardConstraint) and self.lits == other.lits
                and self.rel is other.rel and self.bound == other.bound)

    def __repr__(self) -> str:
        return f"CardConstraint({self.lits!r} {self.rel.value} {self.bound})"


class PbConstraint:
    """A bound on a weighted sum of literals.

    Construction does not normalize; see :meth:`normalize`, which all
    encoders require (positive weights, merged duplicates).
    """

    __slots__ = ("terms", "rel", "bound")

    def __init__(self, terms: Iterable[tuple[Lit, int]], rel: Rel, bound: int) -> None:
        self.terms: list[tuple[Lit, int]] = [(l, int(w)) for l, w in terms]
        self.rel = rel
        self.bound = int(bound)

    @classmethod
    def at_most(cls, terms, bound: int) -> "PbConstraint":
        return cls(terms, Rel.LE, bound)

    @classmethod
    def at_least(cls, terms, bound: int) -> "PbConstraint":
        return cls(terms, Rel.GE, bound)

    @classmethod
    def exactly(cls, terms, bound: int) -> "PbConstraint":
        return cls(terms, Rel.EQ, bound)

    def weight_sum(self) -> int:
        return sum(w for _, w in self.terms)

    def normalize(self) -> "PbConstraint | Trivial":
        """Rewrite to positive merged weights; detect trivial outcomes.

        Negative-weight terms flip their literal and shift the bound; a
        literal and its negation cancel against the bound. Idempotent.
        """
        bound = self.bound
        # weight per variable, signed toward the positive literal
        signed: dict[int, int] = {}
        order: list[int] = []
        for l, w in self.terms:
            if w == 0:
                continue
            v = l.var_index
            if v not in signed:
                signed[v] = 0
                order.append(v)
            if l.is_neg():
                # w * ~x == w - w * x
                bound -= w
                signed[v] -= w
            else:
                signed[v] += w
        terms: list[tuple[Lit, int]] = []
        for v in order:
            w = signed[v]
            if w > 0:
                terms.append((Lit(v, False), w))
            elif w < 0:
                # -w * x == -w - (-w) * ~x with -w < 0, so flip to ~x
                terms.append((Lit(v, True), -w))
                bound -= w
        total = sum(w for _, w in terms)
        if self.rel is Rel.LE:
            if bound < 0:
                return Trivial.FALSE
            if bound >= total:
                return Trivial.TRUE
        elif self.rel is Rel.GE:
            if bound <= 0:
                return Trivial.TRUE
            if bound > total:
                return Trivial.FALSE
        else:
            if bound < 0 or bound > total:
                return Trivial.FALSE
            if not terms and bound == 0:
                return Trivial.TRUE
        return PbConstraint(terms, self.rel, bound)

    def is_satisfied_by(self, assignment: Assignment) -> bool:
        total = sum(w for l, w in self.terms
                    if assignment.lit_value(l) is TernaryVal.TRUE)
        if self.rel is Rel.LE:
            return total <= self.bound
        if self.rel is Rel.GE:
            return total >= self.bound
        return total == self.bound

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PbConstraint) and self.terms == other.terms
                and self.rel is other.rel and self.bound == other.bound)

    def __repr__(self) -> str:
        body = " + ".join(f"{w}*{l!r}" for l, w in self.terms)
        return f"PbConstraint({body} {self.rel.value} {self.bound})"


def pb_normalize(c: PbConstraint) -> PbConstraint | Trivial:
    return c.normalize()


def clause_sanitize(c: Clause) -> Clause | Tautology:
    return c.sanitize()
