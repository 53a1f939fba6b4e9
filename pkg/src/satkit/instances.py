"""Satisfiability and optimization instance containers.

``SatInstance`` holds clauses plus higher-level cardinality and
pseudo-Boolean constraints; ``into_cnf`` lowers the latter through the
configured encodings. Constraints are lightly normalized on insertion
(pseudo-Boolean normalization, trivially-true constraints dropped,
trivially-false ones turned into the empty clause, unit-weight PB
constraints stored as cardinality constraints, at-least-one stored as a
clause), which keeps the file writers and parsers mutually inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .encodings import (Bimander, BinaryAdder, Bitwise, Commander,
                        DynamicPolyWatchdog, ExpandedCard,
                        GeneralizedTotalizer, Inverted, Ladder, Pairwise,
                        Totalizer)
from .manager import BasicVarManager, VarManager
from .types import (Assignment, CardConstraint, Clause, Lit, PbConstraint,
                    Rel, TernaryVal, Trivial, as_clause)

_AM1_CLASSES = {
    "pairwise": Pairwise,
    "ladder": Ladder,
    "bitwise": Bitwise,
    "commander": Commander,
    "bimander": Bimander,
}

#: Threshold up to which the automatic at-most-one choice stays pairwise.
AUTO_AM1_PAIRWISE_MAX = 5


@dataclass
class EncodingConfig:
    """Encoder selection for ``into_cnf``.

    am1: pairwise | ladder | bitwise | commander | bimander | auto
    card: totalizer
    pb: gte | adder | dpw | card
    """

    am1: str = "auto"
    card: str = "totalizer"
    pb: str = "gte"


class Cnf:
    """A conjunction of clauses; also usable as a clause collector."""

    def __init__(self, clauses: Iterable[Clause] = ()) -> None:
        self.clauses: list[Clause] = [as_clause(c) for c in clauses]

    def add_clause(self, cl) -> None:
        self.clauses.append(as_clause(cl))

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    def max_var_index(self) -> int | None:
        out = None
        for cl in self.clauses:
            for l in cl:
                if out is None or l.var_index > out:
                    out = l.var_index
        return out

    def is_satisfied_by(self, assignment: Assignment) -> bool:
        return all(cl.is_satisfied_by(assignment) for cl in self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def __getitem__(self, idx):
        return self.clauses[idx]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Cnf) and self.clauses == other.clauses

    def __repr__(self) -> str:
        return f"Cnf({self.clauses!r})"


class SatInstance:
    def __init__(self, var_manager: VarManager | None = None) -> None:
        self.cnf = Cnf()
        self.cards: list[CardConstraint] = []
        self.pbs: list[PbConstraint] = []
        self.var_manager = var_manager if var_manager is not None else BasicVarManager()

    # -- building ----------------------------------------------------------

    def add_clause(self, cl) -> None:
        cl = as_clause(cl)
        for l in cl:
            self.var_manager.mark_used_lit(l)
        self.cnf.add_clause(cl)

    def add_lit_impl_clause(self, a: Lit, b: Iterable[Lit]) -> None:
        """Add the clause encoding a -> (b1 | ... | bn)."""
        self.add_clause([-a, *b])

    def add_card_constr(self, card: CardConstraint) -> None:
        for l in card.lits:
            self.var_manager.mark_used_lit(l)
        raws = {l.raw for l in card.lits}
        if len(raws) != len(card.lits) or any(r ^ 1 in raws for r in raws):
            # duplicates become weights, complementary pairs cancel
            self.add_pb_constr(
                PbConstraint([(l, 1) for l in card.lits], card.rel, card.bound))
            return
        n = len(card.lits)
        if card.rel is Rel.LE:
            if card.bound >= n:
                return
        elif card.rel is Rel.GE:
            if card.bound == 0:
                return
            if card.bound > n:
                self.cnf.add_clause(Clause())
                return
            if card.bound == 1:
                self.cnf.add_clause(Clause(card.lits))
                return
        else:
            if card.bound > n:
                self.cnf.add_clause(Clause())
                return
        self.cards.append(card)

    def add_pb_constr(self, pb: PbConstraint) -> None:
        for l, _ in pb.terms:
            self.var_manager.mark_used_lit(l)
        norm = pb.normalize()
        if norm is Trivial.TRUE:
            return
        if norm is Trivial.FALSE:
            self.cnf.add_clause(Clause())
            return
        if all(w == 1 for _, w in norm.terms):
            self.add_card_constr(
                CardConstraint([l for l, _ in norm.terms], norm.rel, norm.bound))
            return
        self.pbs.append(norm)

    # -- queries -----------------------------------------------------------

    @property
    def n_vars(self) -> int:
        return self.var_manager.n_used()

    def n_constraints(self) -> int:
        return len(self.cnf) + len(self.cards) + len(self.pbs)

    def is_satisfied_by(self, assignment: Assignment) -> bool:
        return (self.cnf.is_satisfied_by(assignment)
                and all(c.is_satisfied_by(assignment) for c in self.cards)
                and all(p.is_satisfied_by(assignment) for p in self.pbs))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SatInstance) and self.cnf == other.cnf
                and self.cards == other.cards and self.pbs == other.pbs
                and self.n_vars == other.n_vars)

    # -- file construction ---------------------------------------------------

    @classmethod
    def from_dimacs_path(cls, path) -> "SatInstance":
        from .formats import dimacs
        with open(path, "r", encoding="ascii") as f:
            return dimacs.parse_cnf(f.read())

    @classmethod
    def from_opb_path(cls, path, opts=None) -> "SatInstance":
        from .formats import opb
        with open(path, "r", encoding="ascii") as f:
            inst = opb.parse_opb(f.read(), opts)
        if isinstance(inst, OptInstance):
            raise ValueError("file has an objective; use OptInstance.from_opb_path")
        return inst

    # -- lowering ------------------------------------------------------------

    def into_cnf(self, config: EncodingConfig | None = None) -> tuple[Cnf, VarManager]:
        """Replace every higher-level constraint by a CNF encoding.

        The result is equisatisfiable with the instance and agrees with it
        on the original variables; auxiliaries come from the returned
        manager. Clauses are not deduplicated across constraints.
        """
        config = config if config is not None else EncodingConfig()
        cnf = Cnf(self.cnf.clauses)
        vm = self.var_manager
        for card in self.cards:
            _encode_card(card, config, vm, cnf)
        for pb in self.pbs:
            _encode_pb(pb, config, vm, cnf)
        return cnf, vm


def _assert_bound(enc, direction: str, bound: int, vm, cnf) -> None:
    enc_fn = getattr(enc, "encode_" + direction)
    enf_fn = getattr(enc, "enforce_" + direction)
    enc_fn(bound, bound, vm, cnf)
    for a in enf_fn(bound):
        cnf.add_clause(Clause([a]))


def _encode_card(card: CardConstraint, config: EncodingConfig, vm, cnf) -> None:
    lits, b, n = card.lits, card.bound, len(card.lits)
    if card.rel is Rel.EQ:
        _encode_card(CardConstraint(lits, Rel.LE, b), config, vm, cnf)
        _encode_card(CardConstraint(lits, Rel.GE, b), config, vm, cnf)
        return
    if card.rel is Rel.LE:
        if b >= n:
            return
        if b == 0:
            for l in lits:
                cnf.add_clause(Clause([-l]))
            return
        if b == n - 1:
            cnf.add_clause(Clause([-l for l in lits]))
            return
        if b == 1:
            name = config.am1
            if name == "auto":
                name = "pairwise" if n <= AUTO_AM1_PAIRWISE_MAX else "commander"
            _AM1_CLASSES[name](lits).encode(vm, cnf)
            return
        if config.card != "totalizer":
            raise ValueError(f"unknown cardinality encoding {config.card!r}")
        _assert_bound(Totalizer(lits), "ub", b, vm, cnf)
        return
    # Rel.GE
    if b == 0:
        return
    if b > n:
        cnf.add_clause(Clause())
        return
    if b == n:
        for l in lits:
            cnf.add_clause(Clause([l]))
        return
    if b == 1:
        cnf.add_clause(Clause(lits))
        return
    if config.card != "totalizer":
        raise ValueError(f"unknown cardinality encoding {config.card!r}")
    _assert_bound(Totalizer(lits), "lb", b, vm, cnf)


def _pb_ub_encoder(terms, config: EncodingConfig):
    if config.pb == "gte":
        return GeneralizedTotalizer(terms)
    if config.pb == "adder":
        return BinaryAdder(terms)
    if config.pb == "dpw":
        return DynamicPolyWatchdog(terms)
    if config.pb == "card":
        return ExpandedCard(terms)
    raise ValueError(f"unknown pseudo-Boolean encoding {config.pb!r}")


def _pb_lb_encoder(terms, config: EncodingConfig):
    if config.pb == "gte":
        return Inverted(GeneralizedTotalizer, terms)
    if config.pb == "adder":
        return BinaryAdder(terms)
    if config.pb == "dpw":
        return Inverted(DynamicPolyWatchdog, terms)
    if config.pb == "card":
        return ExpandedCard(terms)
    raise ValueError(f"unknown pseudo-Boolean encoding {config.pb!r}")


def _encode_pb(pb: PbConstraint, config: EncodingConfig, vm, cnf) -> None:
    terms, b = pb.terms, pb.bound
    total = pb.weight_sum()
    if pb.rel is Rel.EQ:
        _encode_pb(PbConstraint(terms, Rel.LE, b), config, vm, cnf)
        _encode_pb(PbConstraint(terms, Rel.GE, b), config, vm, cnf)
        return
    if pb.rel is Rel.LE:
        if b >= total:
            return
        if b == 0:
            for l, _ in terms:
                cnf.add_clause(Clause([-l]))
            return
        _assert_bound(_pb_ub_encoder(terms, config), "ub", b, vm, cnf)
        return
    # Rel.GE
    if b <= 0:
        return
    if b > total:
        cnf.add_clause(Clause())
        return
    if b == total:
        for l, _ in terms:
            cnf.add_clause(Clause([l]))
        return
    _assert_bound(_pb_lb_encoder(terms, config), "lb", b, vm, cnf)


class Objective:
    """Weighted soft constraints: soft literals and soft clauses.

    A soft literal (l, w) means "pay w unless l is true" and is exactly a
    unit soft clause [l]; unit soft clauses are stored as soft literals.
    ``offset`` is a constant added to every cost (negative-coefficient
    objective terms normalize into it).
    """

    def __init__(self) -> None:
        self._soft_lits: dict[Lit, int] = {}
        self._soft_clauses: dict[tuple, tuple[Clause, int]] = {}
        self.offset = 0

    def add_soft_lit(self, l: Lit, weight: int) -> None:
        if weight <= 0:
            raise ValueError("soft weights must be strictly positive")
        self._soft_lits[l] = self._soft_lits.get(l, 0) + weight

    def add_soft_clause(self, cl, weight: int) -> None:
        if weight <= 0:
            raise ValueError("soft weights must be strictly positive")
        cl = as_clause(cl)
        if len(cl) == 1:
            self.add_soft_lit(cl[0], weight)
            return
        key = tuple(l.raw for l in cl)
        if key in self._soft_clauses:
            old_cl, old_w = self._soft_clauses[key]
            self._soft_clauses[key] = (old_cl, old_w + weight)
        else:
            self._soft_clauses[key] = (cl, weight)

    def soft_lits(self) -> list[tuple[Lit, int]]:
        return list(self._soft_lits.items())

    def soft_clauses(self) -> list[tuple[Clause, int]]:
        return list(self._soft_clauses.values())

    @property
    def n_softs(self) -> int:
        return len(self._soft_lits) + len(self._soft_clauses)

    def iter_vars(self):
        for l in self._soft_lits:
            yield l.var()
        for cl, _ in self._soft_clauses.values():
            for l in cl:
                yield l.var()

    def as_soft_clauses(self) -> list[tuple[Clause, int]]:
        """Uniform soft-clause view (soft literals become unit clauses)."""
        out = [(Clause([l]), w) for l, w in self._soft_lits.items()]
        out.extend(self._soft_clauses.values())
        return out

    def into_soft_lits(self, vm: VarManager) -> tuple[list[tuple[Lit, int]], Cnf]:
        """Purely literal-weighted view; non-unit soft clauses get a fresh
        relaxation variable r, a hard clause (C | r), and the soft literal
        ~r, so r true pays for violating C."""
        lits = list(self._soft_lits.items())
        hard = Cnf()
        for cl, w in self._soft_clauses.values():
            r = vm.new_lit()
            hard.add_clause(Clause(list(cl) + [r]))
            lits.append((-r, w))
        return lits, hard

    def evaluate(self, assignment: Assignment) -> int:
        """Total cost of falsified softs under a (total) assignment."""
        cost = self.offset
        for l, w in self._soft_lits.items():
            if assignment.lit_value(l) is not TernaryVal.TRUE:
                cost += w
        for cl, w in self._soft_clauses.values():
            if not cl.is_satisfied_by(assignment):
                cost += w
        return cost

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Objective)
                and self._soft_lits == other._soft_lits
                and self._soft_clauses == other._soft_clauses
                and self.offset == other.offset)

    def __repr__(self) -> str:
        return (f"Objective(lits={self._soft_lits!r}, "
                f"clauses={list(self._soft_clauses.values())!r}, offset={self.offset})")


class OptInstance:
    """An optimization instance: hard constraints plus an objective sharing
    one variable manager."""

    def __init__(self, var_manager: VarManager | None = None) -> None:
        self.constraints = SatInstance(var_manager)
        self.objective = Objective()

    @property
    def var_manager(self) -> VarManager:
        return self.constraints.var_manager

    def add_hard_clause(self, cl) -> None:
        self.constraints.add_clause(cl)

    def add_soft_clause(self, cl, weight: int) -> None:
        cl = as_clause(cl)
        for l in cl:
            self.var_manager.mark_used_lit(l)
        self.objective.add_soft_clause(cl, weight)

    def add_soft_lit(self, l: Lit, weight: int) -> None:
        self.var_manager.mark_used_lit(l)
        self.objective.add_soft_lit(l, weight)

    @property
    def n_vars(self) -> int:
        return self.var_manager.n_used()

    def evaluate(self, assignment: Assignment) -> int | None:
        """Objective cost, or None if a hard constraint is violated."""
        if not self.constraints.is_satisfied_by(assignment):
            return None
        return self.objective.evaluate(assignment)

    @classmethod
    def from_wcnf_path(cls, path) -> "OptInstance":
        from .formats import dimacs
        with open(path, "r", encoding="ascii") as f:
            return dimacs.parse_wcnf(f.read())

    @classmethod
    def from_opb_path(cls, path, opts=None) -> "OptInstance":
        from .formats import opb
        with open(path, "r", encoding="ascii") as f:
            inst = opb.parse_opb(f.read(), opts)
        if not isinstance(inst, OptInstance):
            raise ValueError("file has no objective; use SatInstance.from_opb_path")
        return inst

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, OptInstance)
                and self.constraints == other.constraints
                and self.objective == other.objective)
