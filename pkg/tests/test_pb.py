import random

import pytest

from satkit import BasicVarManager, Cnf, Var, lit
from satkit.encodings import (BinaryAdder, ClauseCounter, DynamicPolyWatchdog,
                              GeneralizedTotalizer, NotEncodedError,
                              UnsupportedOperationError)
from satkit.solvers import ReferenceSolver, SolverResult

from oracles import all_assignments, assumption_lits, pure_literal_removable


def _terms(weights):
    return [(Var(i).pos_lit(), w) for i, w in enumerate(weights)]


def _check_exhaustive(enc_cls, weights, direction="ub", bounds=None):
    n = len(weights)
    enc = enc_cls(_terms(weights))
    vm = BasicVarManager(n)
    s = ReferenceSolver()
    total = sum(weights)
    getattr(enc, "encode_" + direction)(0, total + 1, vm, s)
    for k in (bounds if bounds is not None else range(total + 2)):
        assumps = getattr(enc, "enforce_" + direction)(k)
        for bits in all_assignments(n):
            value = sum(w for w, b in zip(weights, bits) if b)
            expect = value <= k if direction == "ub" else value >= k
            res = s.solve_assumps(assumption_lits(bits) + assumps)
            assert (res is SolverResult.SAT) == expect, (enc_cls.__name__, weights,
                                                         direction, k, bits)


class TestGeneralizedTotalizer:
    def test_documented_example(self):
        # weights {2, 3, 4}, sum <= 5: exactly {}, {2}, {3}, {4}, {2,3} remain
        enc = GeneralizedTotalizer(_terms([2, 3, 4]))
        s = ReferenceSolver()
        enc.encode_ub(5, 5, BasicVarManager(3), s)
        assumps = enc.enforce_ub(5)
        sat_sets = [bits for bits in all_assignments(3)
                    if s.solve_assumps(assumption_lits(bits) + assumps)
                    is SolverResult.SAT]
        expected = [(False, False, False), (True, False, False),
                    (False, True, False), (False, False, True),
                    (True, True, False)]
        assert sorted(sat_sets) == sorted(expected)

    @pytest.mark.parametrize("weights", [[1], [5], [2, 3], [1, 1, 1], [2, 3, 4],
                                         [7, 1, 3], [4, 4, 4, 4]])
    def test_exhaustive(self, weights):
        _check_exhaustive(GeneralizedTotalizer, weights)

    def test_not_encoded_error(self):
        enc = GeneralizedTotalizer(_terms([2, 3]))
        enc.encode_ub(4, 4, BasicVarManager(2), Cnf())
        with pytest.raises(NotEncodedError):
            enc.enforce_ub(2)

    def test_incremental_cap_growth(self):
        # first a tight bound, then a wider one on the same encoder
        weights = [3, 4, 2]
        enc = GeneralizedTotalizer(_terms(weights))
        vm = BasicVarManager(3)
        s = ReferenceSolver()
        enc.encode_ub(3, 3, vm, s)
        enc.encode_ub(0, 9, vm, s)
        for k in range(10):
            assumps = enc.enforce_ub(k)
            for bits in all_assignments(3):
                value = sum(w for w, b in zip(weights, bits) if b)
                res = s.solve_assumps(assumption_lits(bits) + assumps)
                assert (res is SolverResult.SAT) == (value <= k)

    def test_outputs_monotone_canonical_model(self):
        # setting every output to "subtree sum >= value" satisfies the
        # encoding, and in that model a true output implies every
        # smaller-valued output of the same node
        weights = [2, 3, 4]
        enc = GeneralizedTotalizer(_terms(weights))
        cnf = Cnf()
        enc.encode_ub(0, 9, BasicVarManager(3), cnf)
        for bits in all_assignments(3):
            assign = {i: b for i, b in enumerate(bits)}

            def walk(node):
                if node.lit is not None:
                    on = bits[node.lit.var_index] != node.lit.is_neg()
                    return node.weight if on else 0
                sub = walk(node.left) + walk(node.right)
                for v, o in node.outputs.items():
                    assign[o.var_index] = sub >= v
                return sub

            walk(enc._root)
            for cl in cnf:
                assert any(assign[l.var_index] != l.is_neg() for l in cl)
            values = sorted(enc._root.outputs)
            truths = [assign[enc._root.outputs[v].var_index] for v in values]
            assert truths == sorted(truths, reverse=True)

    def test_monotone_clause_growth(self):
        weights = [3, 1, 4, 2, 5, 2, 7, 1]
        counts = []
        for k in range(1, sum(weights) + 1):
            enc = GeneralizedTotalizer(_terms(weights))
            sink = ClauseCounter()
            enc.encode_ub(1, k, BasicVarManager(8), sink)
            counts.append(sink.n_clauses)
        assert all(a <= b for a, b in zip(counts, counts[1:]))


class TestBinaryAdder:
    def test_documented_ub_example(self):
        # weights {1, 2, 3}, sum <= 3: subsets {},{1},{2},{3},{1,2}
        enc = BinaryAdder(_terms([1, 2, 3]))
        s = ReferenceSolver()
        enc.encode_ub(3, 3, BasicVarManager(3), s)
        assumps = enc.enforce_ub(3)
        sat_sets = [bits for bits in all_assignments(3)
                    if s.solve_assumps(assumption_lits(bits) + assumps)
                    is SolverResult.SAT]
        assert len(sat_sets) == 5

    def test_documented_lb_example(self):
        # weights {1, 2, 3}, sum >= 5: {2,3} and {1,2,3}
        enc = BinaryAdder(_terms([1, 2, 3]))
        s = ReferenceSolver()
        enc.encode_lb(5, 5, BasicVarManager(3), s)
        assumps = enc.enforce_lb(5)
        sat_sets = [bits for bits in all_assignments(3)
                    if s.solve_assumps(assumption_lits(bits) + assumps)
                    is SolverResult.SAT]
        assert sorted(sat_sets) == [(False, True, True), (True, True, True)]

    @pytest.mark.parametrize("weights", [[1], [6], [2, 3], [1, 2, 3], [2, 3, 4],
                                         [7, 1, 3], [5, 5, 5]])
    @pytest.mark.parametrize("direction", ["ub", "lb"])
    def test_exhaustive(self, weights, direction):
        _check_exhaustive(BinaryAdder, weights, direction)

    def test_lb_trivial_and_impossible(self):
        enc = BinaryAdder(_terms([2, 3]))
        s = ReferenceSolver()
        enc.encode_lb(0, 6, BasicVarManager(2), s)
        assert enc.enforce_lb(0) == []
        assumps = enc.enforce_lb(6)
        for bits in all_assignments(2):
            assert s.solve_assumps(assumption_lits(bits) + assumps) is SolverResult.UNSAT

    def test_unit_propagation_fixes_sum_bits(self):
        # the circuit alone must propagate the binary sum for total inputs
        weights = [3, 5, 6, 1]
        enc = BinaryAdder(_terms(weights))
        s = ReferenceSolver()
        enc.encode_ub(0, sum(weights), BasicVarManager(4), s)
        bits_lits = enc._sum_bits
        for bits in all_assignments(4):
            assert s.solve_assumps(assumption_lits(bits)) is SolverResult.SAT
            value = sum(w for w, b in zip(weights, bits) if b)
            for pos, sl in enumerate(bits_lits):
                bit = (value >> pos) & 1
                if sl is None:
                    assert bit == 0
                else:
                    from satkit import TernaryVal
                    assert s.lit_val(sl) is TernaryVal.from_bool(bool(bit))

    def test_incremental_extend(self):
        enc = BinaryAdder(_terms([2, 3]))
        vm = BasicVarManager(3)
        s = ReferenceSolver()
        enc.encode_ub(0, 5, vm, s)
        enc.extend([(Var(2).pos_lit(), 4)])
        with pytest.raises(NotEncodedError):
            enc.enforce_ub(3)
        enc.encode_ub(0, 9, vm, s)
        weights = [2, 3, 4]
        for k in range(10):
            assumps = enc.enforce_ub(k)
            for bits in all_assignments(3):
                value = sum(w for w, b in zip(weights, bits) if b)
                res = s.solve_assumps(assumption_lits(bits) + assumps)
                assert (res is SolverResult.SAT) == (value <= k)


class TestDynamicPolyWatchdog:
    def test_documented_example(self):
        # weights {3, 4}, sum <= 4: {}, {3}, {4}
        enc = DynamicPolyWatchdog(_terms([3, 4]))
        s = ReferenceSolver()
        enc.encode_ub(4, 4, BasicVarManager(2), s)
        assumps = enc.enforce_ub(4)
        sat_sets = [bits for bits in all_assignments(2)
                    if s.solve_assumps(assumption_lits(bits) + assumps)
                    is SolverResult.SAT]
        assert sorted(sat_sets) == [(False, False), (False, True), (True, False)]

    @pytest.mark.parametrize("weights", [[1], [6], [2, 3], [1, 1, 1], [2, 3, 4],
                                         [7, 1, 3], [8, 8]])
    def test_exhaustive(self, weights):
        _check_exhaustive(DynamicPolyWatchdog, weights)

    def test_structure_freeze(self):
        enc = DynamicPolyWatchdog(_terms([3, 4]))
        enc.encode_ub(2, 2, BasicVarManager(2), Cnf())
        with pytest.raises(UnsupportedOperationError):
            enc.extend([(Var(2).pos_lit(), 2)])

    def test_bound_changes_after_freeze_allowed(self):
        weights = [3, 4, 5]
        enc = DynamicPolyWatchdog(_terms(weights))
        vm = BasicVarManager(3)
        s = ReferenceSolver()
        enc.encode_ub(2, 2, vm, s)
        enc.encode_ub(0, 12, vm, s)  # only bound changes, no rebuild
        for k in range(13):
            assumps = enc.enforce_ub(k)
            for bits in all_assignments(3):
                value = sum(w for w, b in zip(weights, bits) if b)
                res = s.solve_assumps(assumption_lits(bits) + assumps)
                assert (res is SolverResult.SAT) == (value <= k)


class TestDeterminism:
    @pytest.mark.parametrize("enc_cls", [GeneralizedTotalizer, BinaryAdder,
                                         DynamicPolyWatchdog])
    def test_identical_inputs_identical_stream(self, enc_cls):
        from satkit import Cnf

        def run():
            enc = enc_cls(_terms([3, 1, 4, 1, 5]))
            cnf = Cnf()
            enc.encode_ub(2, 7, BasicVarManager(5), cnf)
            return [[l.raw for l in cl] for cl in cnf]

        assert run() == run()


class TestPureLiteralFixpoint:
    @pytest.mark.parametrize("enc_cls", [GeneralizedTotalizer, BinaryAdder,
                                         DynamicPolyWatchdog])
    @pytest.mark.parametrize("lo,hi", [(0, 3), (4, 6), (2, 2)])
    def test_ub(self, enc_cls, lo, hi):
        rng = random.Random(13)
        weights = [rng.randint(1, 7) for _ in range(9)]
        enc = enc_cls(_terms(weights))
        cnf = Cnf()
        enc.encode_ub(lo, hi, BasicVarManager(9), cnf)
        protected = set(range(9))
        for k in range(lo, hi + 1):
            protected.update(a.var_index for a in enc.enforce_ub(k))
        assert pure_literal_removable(cnf.clauses, protected) == 0
