"""Incremental totalizer encoding for cardinality constraints.

A balanced binary tree is built over the input literals (in the order
given, splitting each sequence at the middle, left half rounded up). Every
tree node has one output literal per count value v, meaning "at least v of
this node's inputs are true". Output values are allocated lazily: a node
only defines the values some requested bound range needs, and clauses are
only emitted for those values (restricting the encoding to the cone of
influence of the requested bounds, in both the upward and downward value
direction). Extending the inputs grafts a new subtree onto the root and
invalidates previously encoded ranges until re-encoded; already emitted
clauses stay valid and are never re-emitted.

Upper bounds use input-to-output forcing clauses, lower bounds the duals;
``enforce_ub(k)`` assumes the negated root output for value k+1,
``enforce_lb(k)`` assumes the root output for value k.
"""

from __future__ import annotations

from ..manager import VarManager
from ..types import Clause, Lit
from . import IncompatibleInputError, NotEncodedError

_UB = 0
_LB = 1


def _merge_intervals(intervals: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Sorted disjoint union of inclusive [lo, hi] intervals; empties dropped."""
    out: list[tuple[int, int]] = []
    for lo, hi in sorted(intervals):
        if lo > hi:
            continue
        if out and lo <= out[-1][1] + 1:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


def _covers(ranges: list[tuple[int, int]], k: int) -> bool:
    return any(lo <= k <= hi for lo, hi in ranges)


class _Node:
    __slots__ = ("left", "right", "n", "lit", "outputs", "done")

    def __init__(self, left: "_Node | None" = None, right: "_Node | None" = None,
                 lit: Lit | None = None) -> None:
        self.left = left
        self.right = right
        self.lit = lit
        self.n = 1 if lit is not None else left.n + right.n
        self.outputs: dict[int, Lit] = {}
        # emitted value sets per direction; a value's clauses are emitted atomically
        self.done: tuple[set[int], set[int]] = (set(), set())

    def output(self, v: int) -> Lit:
        if self.lit is not None:
            return self.lit
        return self.outputs[v]


def _build_tree(lits: list[Lit]) -> _Node:
    if len(lits) == 1:
        return _Node(lit=lits[0])
    mid = (len(lits) + 1) // 2
    return _Node(left=_build_tree(lits[:mid]), right=_build_tree(lits[mid:]))


class Totalizer:
    """Cardinality encoder supporting upper and lower bounds, incrementally."""

    def __init__(self, lits=()) -> None:
        self._root: _Node | None = None
        self._input_raws: set[int] = set()
        self._n = 0
        self._ranges: tuple[list, list] = ([], [])
        self._false_lit: Lit | None = None
        self.n_clauses = 0
        self.n_aux_vars = 0
        self.extend(lits)

    @property
    def n_inputs(self) -> int:
        return self._n

    def extend(self, lits) -> None:
        """Append input literals; previously encoded bound ranges become stale."""
        new = list(lits)
        if not new:
            return
        batch: set[int] = set()
        for l in new:
            if l.raw ^ 1 in self._input_raws or l.raw ^ 1 in batch:
                raise IncompatibleInputError(
                    f"complementary input literals: {l!r} and {-l!r}")
            batch.add(l.raw)
        self._input_raws |= batch
        sub = _build_tree(new)
        self._root = sub if self._root is None else _Node(left=self._root, right=sub)
        self._n += len(new)
        self._ranges = ([], [])

    # -- encoding ---------------------------------------------------------

    def encode_ub(self, k_lo: int, k_hi: int, vm: VarManager, sink) -> None:
        """Emit whatever is missing so every bound in [k_lo, k_hi] is enforceable."""
        if not 0 <= k_lo <= k_hi:
            raise ValueError(f"invalid bound range [{k_lo}, {k_hi}]")
        if self._root is not None:
            iv = (k_lo + 1, min(self._n, k_hi + 1))
            self._request(self._root, _merge_intervals([iv]), _UB, vm, sink)
        self._ranges[_UB].append((k_lo, k_hi))

    def encode_lb(self, k_lo: int, k_hi: int, vm: VarManager, sink) -> None:
        if not 0 <= k_lo <= k_hi:
            raise ValueError(f"invalid bound range [{k_lo}, {k_hi}]")
        if self._root is not None:
            iv = (max(1, k_lo), min(self._n, k_hi))
            self._request(self._root, _merge_intervals([iv]), _LB, vm, sink)
        if k_hi > self._n:
            self._ensure_false_lit(vm, sink)
        self._ranges[_LB].append((k_lo, k_hi))

    def enforce_ub(self, k: int) -> list[Lit]:
        """Assumptions under which at most k inputs may be true."""
        if k < 0:
            raise ValueError("cardinality bound must be non-negative")
        if k >= self._n:
            return []
        if not _covers(self._ranges[_UB], k):
            raise NotEncodedError(f"upper bound {k} not covered by any encoded range")
        return [-self._root.output(k + 1)]

    def enforce_lb(self, k: int) -> list[Lit]:
        """Assumptions under which at least k inputs must be true."""
        if k <= 0:
            return []
        if not _covers(self._ranges[_LB], k):
            raise NotEncodedError(f"lower bound {k} not covered by any encoded range")
        if k > self._n:
            return [self._false_lit]
        return [self._root.output(k)]

    # -- internals ---------------------------------------------------------

    def _aux(self, vm: VarManager) -> Lit:
        self.n_aux_vars += 1
        return vm.new_lit()

    def _emit(self, sink, lits) -> None:
        sink.add_clause(Clause(lits))
        self.n_clauses += 1

    def _ensure_false_lit(self, vm, sink) -> None:
        if self._false_lit is None:
            self._false_lit = self._aux(vm)
            self._emit(sink, [-self._false_lit])

    def _request(self, node: _Node, intervals, direction: int, vm, sink) -> None:
        """Make the node's outputs for the given value intervals defined."""
        if node.lit is not None or not intervals:
            return
        a, b = node.left.n, node.right.n
        left_req = _merge_intervals(
            [(max(1, lo - b), min(a, hi)) for lo, hi in intervals])
        right_req = _merge_intervals(
            [(max(1, lo - a), min(b, hi)) for lo, hi in intervals])
        self._request(node.left, left_req, direction, vm, sink)
        self._request(node.right, right_req, direction, vm, sink)
        done = node.done[direction]
        for lo, hi in intervals:
            for v in range(lo, hi + 1):
                if v in done:
                    continue
                done.add(v)
                o = node.outputs.get(v)
                if o is None:
                    o = self._aux(vm)
                    node.outputs[v] = o
                if direction == _UB:
                    # each way to reach count v forces the output
                    for i in range(max(0, v - b), min(a, v) + 1):
                        j = v - i
                        cl = []
                        if i:
                            cl.append(-node.left.output(i))
                        if j:
                            cl.append(-node.right.output(j))
                        cl.append(o)
                        self._emit(sink, cl)
                else:
                    # the output forces count v to be reachable under every split
                    for i in range(max(0, v - 1 - b), min(a, v - 1) + 1):
                        j = v - 1 - i
                        cl = []
                        if i < a:
                            cl.append(node.left.output(i + 1))
                        if j < b:
                            cl.append(node.right.output(j + 1))
                        cl.append(-o)
                        self._emit(sink, cl)

    # hooks for encoders built on top (weight buckets need specific values)

    def _request_output_values(self, values: list[tuple[int, int]], vm, sink) -> None:
        if self._root is not None:
            self._request(self._root, _merge_intervals(list(values)), _UB, vm, sink)

    def _output_lit(self, v: int) -> Lit:
        return self._root.output(v)
