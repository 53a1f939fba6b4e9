import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satkit import (Clause, Lit, PbConstraint, Rel, Trivial, Var,
                    clause_sanitize, lit, pb_normalize)
from satkit.types import (TAUTOLOGY, InvalidLiteralError, OutOfRangeError,
                          Tautology, TernaryVal)

from oracles import all_assignments, assignment_from_bits, pb_predicate


class TestLitIpasir:
    def test_one_maps_to_first_var_positive(self):
        l = Lit.from_ipasir(1)
        assert l.var_index == 0 and l.is_pos()

    def test_negative_three_maps_to_third_var_negated(self):
        l = Lit.from_ipasir(-3)
        assert l.var_index == 2 and l.is_neg()

    def test_zero_rejected(self):
        with pytest.raises(InvalidLiteralError):
            Lit.from_ipasir(0)

    def test_magnitude_overflow_rejected(self):
        with pytest.raises(OutOfRangeError):
            Lit.from_ipasir(2**31)
        assert Lit.from_ipasir(2**31 - 1).var_index == 2**31 - 2

    def test_to_ipasir_examples(self):
        assert Lit(0, negated=True).to_ipasir() == -1
        assert Lit(41).to_ipasir() == 42
        # packed representation: var index shifted left, low bit = negation
        assert Lit.from_raw(7).to_ipasir() == -4

    @given(st.integers(min_value=-(2**31 - 1), max_value=2**31 - 1).filter(lambda i: i != 0))
    def test_round_trip(self, i):
        assert Lit.from_ipasir(i).to_ipasir() == i

    @given(st.integers(min_value=0, max_value=2**31 - 1))
    def test_negation_flips_low_bit(self, idx):
        l = Lit(idx)
        assert (-l).raw == l.raw ^ 1
        assert (-(-l)) == l

    def test_var_range_checked(self):
        with pytest.raises(OutOfRangeError):
            Var(2**31)
        with pytest.raises(OutOfRangeError):
            Var(-1)
        assert Var(2**31 - 1).index == 2**31 - 1


class TestTernary:
    def test_three_states(self):
        assert len(set(TernaryVal)) == 3

    def test_negation(self):
        assert TernaryVal.TRUE.negate() is TernaryVal.FALSE
        assert TernaryVal.FALSE.negate() is TernaryVal.TRUE
        assert TernaryVal.DONT_CARE.negate() is TernaryVal.DONT_CARE


class TestClauseSanitize:
    def test_duplicates_removed_in_order(self):
        c = Clause([lit(1), lit(1), lit(-2)])
        assert clause_sanitize(c) == [lit(1), lit(-2)]

    def test_tautology_detected(self):
        assert clause_sanitize(Clause([lit(1), lit(-1)])) is TAUTOLOGY
        assert isinstance(TAUTOLOGY, Tautology)

    def test_empty_clause_preserved(self):
        out = clause_sanitize(Clause())
        assert isinstance(out, Clause) and len(out) == 0

    @given(st.lists(st.integers(min_value=-4, max_value=4).filter(lambda i: i != 0),
                    max_size=8))
    def test_satisfying_assignments_preserved(self, ints):
        c = Clause([lit(i) for i in ints])
        out = clause_sanitize(c)
        for bits in all_assignments(4):
            a = assignment_from_bits(bits)
            before = c.is_satisfied_by(a)
            after = True if out is TAUTOLOGY else out.is_satisfied_by(a)
            assert before == after


def _terms(*pairs):
    return [(lit(i), w) for i, w in pairs]


class TestPbNormalize:
    def test_negative_weight_flips_literal(self):
        # -2*x1 <= 1 rewrites to 2*~x1 <= 3, which trivial detection then
        # recognizes as always satisfied (bound >= weight sum)
        assert pb_normalize(PbConstraint(_terms((1, -2)), Rel.LE, 1)) is Trivial.TRUE
        # with another term keeping it non-trivial, the rewrite is observable
        c = PbConstraint(_terms((1, -2), (2, 3)), Rel.LE, 1)
        n = pb_normalize(c)
        assert n.terms == [(lit(-1), 2), (lit(2), 3)] and n.bound == 3

    def test_duplicate_merge(self):
        c = PbConstraint(_terms((1, 2), (1, 3)), Rel.LE, 4)
        n = pb_normalize(c)
        assert n.terms == [(lit(1), 5)] and n.bound == 4

    def test_opposing_literals_trivially_false(self):
        c = PbConstraint([(lit(1), 2), (lit(-1), 2)], Rel.LE, 1)
        assert pb_normalize(c) is Trivial.FALSE

    def test_trivially_true_ub(self):
        assert pb_normalize(PbConstraint(_terms((1, 2)), Rel.LE, 2)) is Trivial.TRUE

    def test_negative_ub_trivially_false(self):
        assert pb_normalize(PbConstraint(_terms((1, 2)), Rel.LE, -1)) is Trivial.FALSE

    @given(st.lists(st.tuples(st.integers(min_value=-6, max_value=6).filter(lambda i: i != 0),
                              st.integers(min_value=-5, max_value=5)), max_size=6),
           st.sampled_from([Rel.LE, Rel.GE, Rel.EQ]),
           st.integers(min_value=-15, max_value=15))
    def test_idempotent_and_semantics_preserving(self, int_terms, rel, bound):
        terms = [(lit(i), w) for i, w in int_terms]
        c = PbConstraint(terms, rel, bound)
        n = pb_normalize(c)
        if isinstance(n, PbConstraint):
            again = pb_normalize(n)
            assert isinstance(again, PbConstraint)
            assert again == n
            assert all(w > 0 for _, w in n.terms)
            seen = set()
            for l, _ in n.terms:
                assert l.var_index not in seen
                seen.add(l.var_index)
        for bits in all_assignments(6):
            before = pb_predicate(bits, terms, rel, bound)
            if n is Trivial.TRUE:
                after = True
            elif n is Trivial.FALSE:
                after = False
            else:
                after = pb_predicate(bits, n.terms, n.rel, n.bound)
            assert before == after, (int_terms, rel, bound, bits)


class TestAssignment:
    def test_lit_value_negates(self):
        a = assignment_from_bits((True, False))
        assert a.lit_value(lit(1)) is TernaryVal.TRUE
        assert a.lit_value(lit(-1)) is TernaryVal.FALSE
        assert a.lit_value(lit(-2)) is TernaryVal.TRUE
        assert a.lit_value(lit(5)) is TernaryVal.DONT_CARE

    def test_completion(self):
        a = assignment_from_bits((True,))
        c = a.completed(3)
        assert c.to_ipasir() == [1, -2, -3]

    def test_ipasir_round_trip(self):
        from satkit import Assignment
        a = Assignment.from_ipasir([1, -3])
        assert a.var_value(0) is TernaryVal.TRUE
        assert a.var_value(1) is TernaryVal.DONT_CARE
        assert a.var_value(2) is TernaryVal.FALSE
        assert a.to_ipasir() == [1, -3]
