"""Pseudo-Boolean constraint encodings over positive-weight literals.

All three encoders expect normalized terms (strictly positive weights; no
complementary literal pairs), as produced by ``PbConstraint.normalize``.
"""

from __future__ import annotations

from ..manager import VarManager
from ..types import Clause, Lit
from . import IncompatibleInputError, NotEncodedError, UnsupportedOperationError
from .card import Totalizer, _covers


def _check_terms(terms, input_raws: set[int]) -> list[tuple[Lit, int]]:
    out = []
    batch: set[int] = set()
    for l, w in terms:
        if w < 1:
            raise ValueError(f"weight {w} must be >= 1")
        if l.raw ^ 1 in input_raws or l.raw ^ 1 in batch:
            raise IncompatibleInputError(
                f"complementary input literals: {l!r} and {-l!r}")
        batch.add(l.raw)
        out.append((l, w))
    input_raws |= batch
    return out


class _GteNode:
    __slots__ = ("left", "right", "lit", "weight", "total", "outputs",
                 "emitted", "vals_cache")

    def __init__(self, left=None, right=None, lit=None, weight=0):
        self.left = left
        self.right = right
        self.lit = lit
        self.weight = weight
        self.total = weight if lit is not None else left.total + right.total
        self.outputs: dict[int, Lit] = {}
        # pair -> target value the pair was last emitted for (targets grow
        # finer when a later encode call raises the collapse cap)
        self.emitted: dict[tuple[int, int], int] = {}
        self.vals_cache: dict[int, list[int]] = {}


def _gte_build(terms: list[tuple[Lit, int]]) -> _GteNode:
    if len(terms) == 1:
        l, w = terms[0]
        return _GteNode(lit=l, weight=w)
    mid = (len(terms) + 1) // 2
    return _GteNode(left=_gte_build(terms[:mid]), right=_gte_build(terms[mid:]))


def _gte_values(node: _GteNode, cap: int) -> list[int]:
    """Reachable weight sums of the subtree, values above cap collapsed into cap."""
    cached = node.vals_cache.get(cap)
    if cached is not None:
        return cached
    if node.lit is not None:
        vals = [min(node.weight, cap)]
    else:
        acc: set[int] = set()
        left = [0] + _gte_values(node.left, cap)
        right = [0] + _gte_values(node.right, cap)
        for u in left:
            for v in right:
                t = u + v
                if t >= cap:
                    acc.add(cap)
                    break  # right values ascend; the rest collapse too
                acc.add(t)
        acc.discard(0)
        vals = sorted(acc)
    node.vals_cache[cap] = vals
    return vals


def _gte_output(node: _GteNode, v: int) -> Lit:
    if node.lit is not None:
        return node.lit
    return node.outputs[v]


class GeneralizedTotalizer:
    """Totalizer over weighted literals: node outputs per distinct reachable
    weight sum, truncated to one overflow output above the requested maximum.

    Upper bounds only; ``enforce_ub(k)`` assumes the negation of every root
    output for a sum value above k.
    """

    def __init__(self, terms=()) -> None:
        self._root: _GteNode | None = None
        self._terms: list[tuple[Lit, int]] = []
        self._input_raws: set[int] = set()
        self._ranges: list[tuple[int, int]] = []
        self.n_clauses = 0
        self.n_aux_vars = 0
        self.extend(terms)

    @property
    def weight_sum(self) -> int:
        return sum(w for _, w in self._terms)

    @property
    def n_inputs(self) -> int:
        return len(self._terms)

    def extend(self, terms) -> None:
        new = _check_terms(terms, self._input_raws)
        if not new:
            return
        self._terms.extend(new)
        sub = _gte_build(new)
        self._root = sub if self._root is None else _GteNode(left=self._root, right=sub)
        self._ranges = []

    def encode_ub(self, k_lo: int, k_hi: int, vm: VarManager, sink) -> None:
        if not 0 <= k_lo <= k_hi:
            raise ValueError(f"invalid bound range [{k_lo}, {k_hi}]")
        if self._root is not None and k_lo < self.weight_sum:
            self._request(self._root, k_lo + 1, k_hi + 1, vm, sink)
        self._ranges.append((k_lo, k_hi))

    def enforce_ub(self, k: int) -> list[Lit]:
        if k < 0:
            raise ValueError("bound must be non-negative")
        if k >= self.weight_sum:
            return []
        rng = next(((lo, hi) for lo, hi in self._ranges if lo <= k <= hi), None)
        if rng is None:
            raise NotEncodedError(f"upper bound {k} not covered by any encoded range")
        cap = rng[1] + 1
        return [-_gte_output(self._root, v)
                for v in _gte_values(self._root, cap) if v > k]

    def _aux(self, vm) -> Lit:
        self.n_aux_vars += 1
        return vm.new_lit()

    def _emit(self, sink, lits) -> None:
        sink.add_clause(Clause(lits))
        self.n_clauses += 1

    def _request(self, node: _GteNode, vlo: int, cap: int, vm, sink) -> None:
        """Define node outputs for collapsed sum values in [vlo, cap]."""
        if node.lit is not None:
            return
        left_vals = _gte_values(node.left, cap)
        right_vals = _gte_values(node.right, cap)
        max_l = left_vals[-1] if left_vals else 0
        max_r = right_vals[-1] if right_vals else 0
        self._request(node.left, max(1, vlo - max_r), cap, vm, sink)
        self._request(node.right, max(1, vlo - max_l), cap, vm, sink)
        for u in [0] + left_vals:
            for v in [0] + right_vals:
                if u == 0 and v == 0:
                    continue
                t = min(u + v, cap)
                if t < vlo or node.emitted.get((u, v)) == t:
                    continue
                node.emitted[(u, v)] = t
                o = node.outputs.get(t)
                if o is None:
                    o = self._aux(vm)
                    node.outputs[t] = o
                cl = []
                if u:
                    cl.append(-_gte_output(node.left, u))
                if v:
                    cl.append(-_gte_output(node.right, v))
                cl.append(o)
                self._emit(sink, cl)


def _full_adder(self, a, b, c, vm, sink):
    """Emit the 14 clauses fixing sum and carry under unit propagation."""
    s = self._aux(vm)
    t = self._aux(vm)
    self._emit(sink, [-a, -b, -c, s])
    self._emit(sink, [a, b, -c, s])
    self._emit(sink, [a, -b, c, s])
    self._emit(sink, [-a, b, c, s])
    self._emit(sink, [a, b, c, -s])
    self._emit(sink, [-a, -b, c, -s])
    self._emit(sink, [-a, b, -c, -s])
    self._emit(sink, [a, -b, -c, -s])
    self._emit(sink, [-a, -b, t])
    self._emit(sink, [-a, -c, t])
    self._emit(sink, [-b, -c, t])
    self._emit(sink, [a, b, -t])
    self._emit(sink, [a, c, -t])
    self._emit(sink, [b, c, -t])
    return s, t


def _half_adder(self, a, b, vm, sink):
    s = self._aux(vm)
    t = self._aux(vm)
    self._emit(sink, [-a, b, s])
    self._emit(sink, [a, -b, s])
    self._emit(sink, [-a, -b, -s])
    self._emit(sink, [a, b, -s])
    self._emit(sink, [-a, -b, t])
    self._emit(sink, [a, -t])
    self._emit(sink, [b, -t])
    return s, t


class BinaryAdder:
    """Binary adder circuit over weight-bit buckets, compared bitwise
    against each enforced bound.

    For every total input assignment, unit propagation fixes the sum bits to
    the binary representation of the weighted sum. Each enforced bound gets
    one comparator gated by a fresh assumption literal, so bounds are
    retractable; both directions are supported.
    """

    def __init__(self, terms=()) -> None:
        self._terms: list[tuple[Lit, int]] = []
        self._input_raws: set[int] = set()
        self._total = 0
        self._buckets: list[list[Lit]] = []
        self._sum_bits: list[Lit | None] = []
        self._dirty = False
        self._ub_assumps: dict[int, Lit] = {}
        self._lb_assumps: dict[int, Lit] = {}
        self._ranges: tuple[list, list] = ([], [])
        self._false_lit: Lit | None = None
        self.n_clauses = 0
        self.n_aux_vars = 0
        self.extend(terms)

    @property
    def weight_sum(self) -> int:
        return self._total

    def extend(self, terms) -> None:
        new = _check_terms(terms, self._input_raws)
        if not new:
            return
        for l, w in new:
            self._terms.append((l, w))
            self._total += w
            bit = 0
            while w:
                if bit >= len(self._buckets):
                    self._buckets.append([])
                if w & 1:
                    self._buckets[bit].append(l)
                w >>= 1
                bit += 1
        self._dirty = True
        self._ub_assumps = {}
        self._lb_assumps = {}
        self._ranges = ([], [])

    def _aux(self, vm) -> Lit:
        self.n_aux_vars += 1
        return vm.new_lit()

    def _emit(self, sink, lits) -> None:
        sink.add_clause(Clause(lits))
        self.n_clauses += 1

    def _settle(self, vm, sink) -> None:
        """Chain adders until every bit bucket holds at most one literal."""
        if not self._dirty:
            return
        i = 0
        while i < len(self._buckets):
            bucket = self._buckets[i]
            while len(bucket) >= 3:
                a, b, c = bucket.pop(0), bucket.pop(0), bucket.pop(0)
                s, t = _full_adder(self, a, b, c, vm, sink)
                bucket.append(s)
                if i + 1 >= len(self._buckets):
                    self._buckets.append([])
                self._buckets[i + 1].append(t)
            if len(bucket) == 2:
                a, b = bucket.pop(0), bucket.pop(0)
                s, t = _half_adder(self, a, b, vm, sink)
                bucket.append(s)
                if i + 1 >= len(self._buckets):
                    self._buckets.append([])
                self._buckets[i + 1].append(t)
            i += 1
        self._sum_bits = [b[0] if b else None for b in self._buckets]
        self._dirty = False

    def _ub_comparator(self, k: int, vm, sink) -> None:
        if k in self._ub_assumps:
            return
        a = self._aux(vm)
        self._ub_assumps[k] = a
        bits = self._sum_bits
        m = len(bits)
        for i in range(m):
            if (k >> i) & 1 or bits[i] is None:
                continue
            cl = [-a, -bits[i]]
            satisfied = False
            for j in range(i + 1, m):
                if not (k >> j) & 1:
                    continue
                if bits[j] is None:
                    satisfied = True  # that bit of the sum is constant zero
                    break
                cl.append(-bits[j])
            if not satisfied:
                self._emit(sink, cl)

    def _lb_comparator(self, k: int, vm, sink) -> None:
        if k in self._lb_assumps:
            return
        a = self._aux(vm)
        self._lb_assumps[k] = a
        bits = self._sum_bits
        m = len(bits)
        for i in range(m):
            if not (k >> i) & 1:
                continue
            cl = [-a]
            if bits[i] is not None:
                cl.append(bits[i])
            for j in range(i + 1, m):
                if (k >> j) & 1:
                    continue
                if bits[j] is not None:
                    cl.append(bits[j])
            self._emit(sink, cl)

    def encode_ub(self, k_lo: int, k_hi: int, vm: VarManager, sink) -> None:
        if not 0 <= k_lo <= k_hi:
            raise ValueError(f"invalid bound range [{k_lo}, {k_hi}]")
        self._settle(vm, sink)
        for k in range(k_lo, min(k_hi, self._total - 1) + 1):
            self._ub_comparator(k, vm, sink)
        self._ranges[0].append((k_lo, k_hi))

    def encode_lb(self, k_lo: int, k_hi: int, vm: VarManager, sink) -> None:
        if not 0 <= k_lo <= k_hi:
            raise ValueError(f"invalid bound range [{k_lo}, {k_hi}]")
        self._settle(vm, sink)
        for k in range(max(k_lo, 1), min(k_hi, self._total) + 1):
            self._lb_comparator(k, vm, sink)
        if k_hi > self._total and self._false_lit is None:
            self._false_lit = self._aux(vm)
            self._emit(sink, [-self._false_lit])
        self._ranges[1].append((k_lo, k_hi))

    def enforce_ub(self, k: int) -> list[Lit]:
        if k < 0:
            raise ValueError("bound must be non-negative")
        if k >= self._total:
            return []
        if not _covers(self._ranges[0], k):
            raise NotEncodedError(f"upper bound {k} not covered by any encoded range")
        return [self._ub_assumps[k]]

    def enforce_lb(self, k: int) -> list[Lit]:
        if k <= 0:
            return []
        if not _covers(self._ranges[1], k):
            raise NotEncodedError(f"lower bound {k} not covered by any encoded range")
        if k > self._total:
            return [self._false_lit]
        return [self._lb_assumps[k]]


class DynamicPolyWatchdog:
    """Watchdog encoding: per-weight-bit buckets counted by totalizers with
    halving carry links, and tare literals aligning the enforced bound to a
    multiple of the top bucket's power of two.

    Upper bounds only. The bucket structure is frozen after the first encode
    call: afterwards only the enforced bound may change; adding inputs raises
    :class:`UnsupportedOperationError`.
    """

    def __init__(self, terms=()) -> None:
        self._terms: list[tuple[Lit, int]] = []
        self._input_raws: set[int] = set()
        self._total = 0
        self._built = False
        self._power = 0
        self._tares: list[Lit] = []
        self._tots: list[Totalizer] = []
        self._ranges: list[tuple[int, int]] = []
        self.extend(terms)

    @property
    def weight_sum(self) -> int:
        return self._total

    @property
    def n_clauses(self) -> int:
        return sum(t.n_clauses for t in self._tots)

    @property
    def n_aux_vars(self) -> int:
        return len(self._tares) + sum(t.n_aux_vars for t in self._tots)

    def extend(self, terms) -> None:
        new = _check_terms(terms, self._input_raws)
        if not new:
            return
        if self._built:
            raise UnsupportedOperationError(
                "watchdog structure is frozen after the first encode call")
        self._terms.extend(new)
        self._total += sum(w for _, w in new)

    def _build(self, vm, sink) -> None:
        p = max(w for _, w in self._terms).bit_length() - 1
        self._power = p
        buckets: list[list[Lit]] = [[] for _ in range(p + 1)]
        for l, w in self._terms:
            for bit in range(w.bit_length()):
                if (w >> bit) & 1:
                    buckets[bit].append(l)
        self._tares = [vm.new_lit() for _ in range(p)]
        prev: Totalizer | None = None
        for i in range(p + 1):
            inputs = list(buckets[i])
            if i < p:
                inputs.append(self._tares[i])
            if prev is not None:
                # every second output of the lower totalizer carries upward
                for v in range(2, prev.n_inputs + 1, 2):
                    inputs.append(prev._output_lit(v))
            tot = Totalizer(inputs)
            self._tots.append(tot)
            if i < p:
                evens = [(v, v) for v in range(2, tot.n_inputs + 1, 2)]
                tot._request_output_values(evens, vm, sink)
            prev = tot
        self._built = True

    def encode_ub(self, k_lo: int, k_hi: int, vm: VarManager, sink) -> None:
        if not 0 <= k_lo <= k_hi:
            raise ValueError(f"invalid bound range [{k_lo}, {k_hi}]")
        if self._terms:
            if not self._built:
                self._build(vm, sink)
            hi_eff = min(k_hi, self._total - 1)
            if k_lo <= hi_eff:
                top = self._tots[-1]
                m_lo = (k_lo >> self._power) + 1
                m_hi = min((hi_eff >> self._power) + 1, top.n_inputs)
                if m_lo <= m_hi:
                    top._request_output_values([(m_lo, m_hi)], vm, sink)
        self._ranges.append((k_lo, k_hi))

    def enforce_ub(self, k: int) -> list[Lit]:
        if k < 0:
            raise ValueError("bound must be non-negative")
        if k >= self._total:
            return []
        if not _covers(self._ranges, k):
            raise NotEncodedError(f"upper bound {k} not covered by any encoded range")
        p = self._power
        tare = (-(k + 1)) % (1 << p)
        assumps = [self._tares[i] if (tare >> i) & 1 else -self._tares[i]
                   for i in range(p)]
        top = self._tots[-1]
        m = (k + 1 + tare) >> p
        if m <= top.n_inputs:
            assumps.append(-top._output_lit(m))
        return assumps
