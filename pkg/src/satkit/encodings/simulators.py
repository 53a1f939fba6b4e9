"""Simulators composing encoders: bound inversion, both-bounds pairing, and
encoding a pseudo-Boolean constraint through a cardinality encoder.
"""

from __future__ import annotations

from ..manager import VarManager
from ..types import Clause, Lit
from . import NotEncodedError
from .card import Totalizer, _covers


def _split_items(items):
    """Accepts plain literals or (literal, weight) pairs; returns terms."""
    terms = []
    for it in items:
        if isinstance(it, Lit):
            terms.append((it, 1))
        else:
            l, w = it
            terms.append((l, int(w)))
    return terms


class Inverted:
    """Enforces each bound direction through the opposite direction of the
    inner encoder, built over the negated inputs: with total weight W,
    "sum <= k" holds exactly when the negated inputs sum to at least W - k.
    """

    def __init__(self, inner_factory, items=()) -> None:
        self._inner = inner_factory()
        self._weighted = not isinstance(self._inner, Totalizer)
        self._total = 0
        self._n_items = 0
        self._ranges: tuple[list, list] = ([], [])
        self._false_lit: Lit | None = None
        self._extra_clauses = 0
        self.extend(items)

    @property
    def weight_sum(self) -> int:
        return self._total

    @property
    def n_inputs(self) -> int:
        return self._n_items

    @property
    def n_clauses(self) -> int:
        return self._inner.n_clauses + self._extra_clauses

    @property
    def n_aux_vars(self) -> int:
        return self._inner.n_aux_vars + (1 if self._false_lit is not None else 0)

    def extend(self, items) -> None:
        terms = _split_items(items)
        if not terms:
            return
        self._total += sum(w for _, w in terms)
        self._n_items += len(terms)
        if self._weighted:
            self._inner.extend([(-l, w) for l, w in terms])
        else:
            inverted = []
            for l, w in terms:
                inverted.extend([-l] * w)
            self._inner.extend(inverted)
        self._ranges = ([], [])

    def _ensure_false_lit(self, vm, sink) -> None:
        if self._false_lit is None:
            self._false_lit = vm.new_lit()
            sink.add_clause(Clause([-self._false_lit]))
            self._extra_clauses += 1

    def encode_ub(self, k_lo: int, k_hi: int, vm: VarManager, sink) -> None:
        if not 0 <= k_lo <= k_hi:
            raise ValueError(f"invalid bound range [{k_lo}, {k_hi}]")
        w = self._total
        if k_lo < w:
            self._inner.encode_lb(max(0, w - k_hi), w - k_lo, vm, sink)
        self._ranges[0].append((k_lo, k_hi))

    def encode_lb(self, k_lo: int, k_hi: int, vm: VarManager, sink) -> None:
        if not 0 <= k_lo <= k_hi:
            raise ValueError(f"invalid bound range [{k_lo}, {k_hi}]")
        w = self._total
        lo_i = max(0, w - k_hi)
        hi_i = w - max(k_lo, 1)
        if lo_i <= hi_i:
            self._inner.encode_ub(lo_i, hi_i, vm, sink)
        if k_hi > w:
            self._ensure_false_lit(vm, sink)
        self._ranges[1].append((k_lo, k_hi))

    def enforce_ub(self, k: int) -> list[Lit]:
        if k < 0:
            raise ValueError("bound must be non-negative")
        if k >= self._total:
            return []
        if not _covers(self._ranges[0], k):
            raise NotEncodedError(f"upper bound {k} not covered by any encoded range")
        return self._inner.enforce_lb(self._total - k)

    def enforce_lb(self, k: int) -> list[Lit]:
        if k <= 0:
            return []
        if not _covers(self._ranges[1], k):
            raise NotEncodedError(f"lower bound {k} not covered by any encoded range")
        if k > self._total:
            return [self._false_lit]
        return self._inner.enforce_ub(self._total - k)


class Double:
    """Routes upper bounds to one inner encoder and lower bounds to another;
    both see the same inputs."""

    def __init__(self, ub_encoder, lb_encoder) -> None:
        self._ub = ub_encoder
        self._lb = lb_encoder

    @property
    def n_clauses(self) -> int:
        return self._ub.n_clauses + self._lb.n_clauses

    @property
    def n_aux_vars(self) -> int:
        return self._ub.n_aux_vars + self._lb.n_aux_vars

    def extend(self, items) -> None:
        items = list(items)
        self._ub.extend(items)
        self._lb.extend(items)

    def encode_ub(self, k_lo, k_hi, vm, sink) -> None:
        self._ub.encode_ub(k_lo, k_hi, vm, sink)

    def encode_lb(self, k_lo, k_hi, vm, sink) -> None:
        self._lb.encode_lb(k_lo, k_hi, vm, sink)

    def enforce_ub(self, k: int) -> list[Lit]:
        return self._ub.enforce_ub(k)

    def enforce_lb(self, k: int) -> list[Lit]:
        return self._lb.enforce_lb(k)


class ExpandedCard:
    """Encodes a pseudo-Boolean constraint by feeding each literal to a
    cardinality encoder as many times as its weight; bounds carry over."""

    def __init__(self, terms=(), card_factory=Totalizer) -> None:
        self._inner = card_factory()
        self._total = 0
        self.extend(terms)

    @property
    def weight_sum(self) -> int:
        return self._total

    @property
    def n_clauses(self) -> int:
        return self._inner.n_clauses

    @property
    def n_aux_vars(self) -> int:
        return self._inner.n_aux_vars

    def extend(self, terms) -> None:
        expanded = []
        for l, w in terms:
            if w < 1:
                raise ValueError(f"weight {w} must be >= 1")
            expanded.extend([l] * w)
        if not expanded:
            return
        self._total += len(expanded)
        self._inner.extend(expanded)

    def encode_ub(self, k_lo, k_hi, vm, sink) -> None:
        self._inner.encode_ub(k_lo, k_hi, vm, sink)

    def encode_lb(self, k_lo, k_hi, vm, sink) -> None:
        self._inner.encode_lb(k_lo, k_hi, vm, sink)

    def enforce_ub(self, k: int) -> list[Lit]:
        return self._inner.enforce_ub(k)

    def enforce_lb(self, k: int) -> list[Lit]:
        return self._inner.enforce_lb(k)
