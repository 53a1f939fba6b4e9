"""At-most-one encodings: pairwise, ladder, bitwise, commander, bimander.

These are one-shot (non-incremental): construct with the input literals and
call ``encode`` once. Zero or one input emits nothing.
"""

from __future__ import annotations

from ..manager import VarManager
from ..types import Clause, Lit

COMMANDER_GROUP_SIZE = 4
BIMANDER_GROUP_SIZE = 2


class _Am1Base:
    def __init__(self, lits=()):
        self.lits: list[Lit] = list(lits)
        self.n_clauses = 0
        self.n_aux_vars = 0

    def extend(self, lits) -> None:
        self.lits.extend(lits)

    @property
    def n_inputs(self) -> int:
        return len(self.lits)

    def _emit(self, sink, lits) -> None:
        sink.add_clause(Clause(lits))
        self.n_clauses += 1

    def _aux(self, vm: VarManager) -> Lit:
        self.n_aux_vars += 1
        return vm.new_lit()

    def encode(self, vm: VarManager, sink) -> None:
        raise NotImplementedError


class Pairwise(_Am1Base):
    """One binary clause per literal pair: n(n-1)/2 clauses, no auxiliaries."""

    def encode(self, vm, sink) -> None:
        lits = self.lits
        for i in range(len(lits)):
            for j in range(i + 1, len(lits)):
                self._emit(sink, [-lits[i], -lits[j]])


class Ladder(_Am1Base):
    """Prefix-variable chain: s_i is true once any of the first i inputs is."""

    def encode(self, vm, sink) -> None:
        lits = self.lits
        n = len(lits)
        if n <= 1:
            return
        prefix = [self._aux(vm) for _ in range(n - 1)]
        for i in range(1, n + 1):
            x = lits[i - 1]
            if i <= n - 1:
                self._emit(sink, [-x, prefix[i - 1]])
            if 2 <= i <= n - 1:
                self._emit(sink, [-prefix[i - 2], prefix[i - 1]])
            if i >= 2:
                self._emit(sink, [-x, -prefix[i - 2]])


class Bitwise(_Am1Base):
    """Each input implies the bit pattern of its index over ceil(log2 n) auxiliaries."""

    def encode(self, vm, sink) -> None:
        lits = self.lits
        n = len(lits)
        if n <= 1:
            return
        n_bits = (n - 1).bit_length()
        bits = [self._aux(vm) for _ in range(n_bits)]
        for idx, x in enumerate(lits):
            for j in range(n_bits):
                b = bits[j] if (idx >> j) & 1 else -bits[j]
                self._emit(sink, [-x, b])


class Commander(_Am1Base):
    """Groups of four with a commander variable each, recursing on commanders.

    Within a group the constraint is pairwise; any true group member forces
    the commander, and the commanders are again at-most-one.
    """

    def encode(self, vm, sink) -> None:
        self._encode_level(self.lits, vm, sink)

    def _encode_level(self, lits, vm, sink) -> None:
        n = len(lits)
        if n <= 1:
            return
        if n <= COMMANDER_GROUP_SIZE:
            for i in range(n):
                for j in range(i + 1, n):
                    self._emit(sink, [-lits[i], -lits[j]])
            return
        commanders = []
        for g in range(0, n, COMMANDER_GROUP_SIZE):
            group = lits[g:g + COMMANDER_GROUP_SIZE]
            if len(group) == 1:
                commanders.append(group[0])
                continue
            c = self._aux(vm)
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    self._emit(sink, [-group[i], -group[j]])
            for x in group:
                self._emit(sink, [-x, c])
            commanders.append(c)
        self._encode_level(commanders, vm, sink)


class Bimander(_Am1Base):
    """Pairwise inside groups of two, bitwise over the group indices."""

    def encode(self, vm, sink) -> None:
        lits = self.lits
        n = len(lits)
        if n <= 1:
            return
        groups = [lits[g:g + BIMANDER_GROUP_SIZE]
                  for g in range(0, n, BIMANDER_GROUP_SIZE)]
        m = len(groups)
        n_bits = (m - 1).bit_length() if m > 1 else 0
        bits = [self._aux(vm) for _ in range(n_bits)]
        for gi, group in enumerate(groups):
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    self._emit(sink, [-group[i], -group[j]])
            for x in group:
                for j in range(n_bits):
                    b = bits[j] if (gi >> j) & 1 else -bits[j]
                    self._emit(sink, [-x, b])
