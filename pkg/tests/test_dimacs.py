import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satkit import Lit, SatInstance, Var, lit
from satkit.formats import ParseError, dimacs

from oracles import random_cnf_instance, random_wcnf_instance


class TestParseCnf:
    def test_with_header(self):
        inst = dimacs.parse_cnf("p cnf 3 2\n1 -2 0\n2 3 0\n")
        assert len(inst.cnf) == 2
        assert inst.cnf[0] == [lit(1), lit(-2)]
        assert inst.cnf[1] == [lit(2), lit(3)]
        assert inst.n_vars == 3

    def test_header_optional(self):
        inst = dimacs.parse_cnf("c comment\n1 0")
        assert len(inst.cnf) == 1 and inst.cnf[0] == [lit(1)]

    def test_missing_terminator(self):
        with pytest.raises(ParseError) as e:
            dimacs.parse_cnf("1 -2\n")
        assert e.value.diagnostics.line == 1

    def test_clauses_span_lines_and_share_lines(self):
        inst = dimacs.parse_cnf("1 2\n-3 0 3 0\n")
        assert len(inst.cnf) == 2
        assert inst.cnf[0] == [lit(1), lit(2), lit(-3)]
        assert inst.cnf[1] == [lit(3)]

    def test_bad_token_has_position(self):
        with pytest.raises(ParseError) as e:
            dimacs.parse_cnf("1 x 0\n")
        assert e.value.diagnostics.line == 1 and e.value.diagnostics.column == 3

    def test_header_counts_advisory(self):
        diags = []
        inst = dimacs.parse_cnf("p cnf 2 5\n1 0\n", diags)
        assert len(inst.cnf) == 1
        assert any(d.severity == "warning" for d in diags)

    def test_header_extends_var_range(self):
        inst = dimacs.parse_cnf("p cnf 5 1\n1 0\n")
        assert inst.n_vars == 5

    def test_magnitude_overflow(self):
        with pytest.raises(ParseError):
            dimacs.parse_cnf(f"{2**31} 0\n")

    def test_non_ascii_outside_comment_rejected(self):
        with pytest.raises(ParseError):
            dimacs.parse_cnf("1 \xff 0\n".encode("latin-1"))
        inst = dimacs.parse_cnf("c caf\xe9\n1 0\n".encode("latin-1"))
        assert len(inst.cnf) == 1

    def test_totality_on_fuzz(self):
        rng = random.Random(0)
        alphabet = "pc cnf-0123456789 \n\t%xyz"
        for _ in range(300):
            text = "".join(rng.choice(alphabet)
                           for _ in range(rng.randint(0, 60)))
            try:
                dimacs.parse_cnf(text)
            except ParseError:
                pass


class TestWriteCnf:
    def test_golden_unit(self):
        inst = SatInstance()
        inst.add_clause([lit(1)])
        assert dimacs.write_cnf(inst) == "p cnf 1 1\n1 0\n"

    def test_empty_instance(self):
        assert dimacs.write_cnf(SatInstance()) == "p cnf 0 0\n"

    def test_refuses_unlowered_constraints(self):
        from satkit import CardConstraint
        inst = SatInstance()
        inst.add_card_constr(CardConstraint.at_most([lit(1), lit(2), lit(3)], 2))
        with pytest.raises(ValueError):
            dimacs.write_cnf(inst)

    @given(st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=200)
    def test_round_trip_random(self, seed):
        rng = random.Random(seed)
        inst = random_cnf_instance(rng, max_vars=20, max_clauses=30)
        assert dimacs.parse_cnf(dimacs.write_cnf(inst)) == inst


class TestParseWcnf:
    def test_new_format(self):
        inst = dimacs.parse_wcnf("h 1 2 0\n3 -1 0\n")
        assert len(inst.constraints.cnf) == 1
        assert inst.constraints.cnf[0] == [lit(1), lit(2)]
        assert inst.objective.soft_lits() == [(lit(-1), 3)]

    def test_legacy_format(self):
        inst = dimacs.parse_wcnf("p wcnf 2 2 5\n5 1 0\n2 -1 0\n")
        assert inst.constraints.cnf[0] == [lit(1)]
        assert inst.objective.soft_lits() == [(lit(-1), 2)]

    def test_zero_weight_rejected(self):
        with pytest.raises(ParseError):
            dimacs.parse_wcnf("0 1 0")

    def test_negative_weight_rejected(self):
        with pytest.raises(ParseError):
            dimacs.parse_wcnf("-3 1 0")

    def test_mixed_formats_rejected(self):
        with pytest.raises(ParseError):
            dimacs.parse_wcnf("p wcnf 1 1 5\nh 1 0\n")
        with pytest.raises(ParseError):
            dimacs.parse_wcnf("h 1 0\np wcnf 1 1 5\n")

    def test_malformed_header(self):
        with pytest.raises(ParseError):
            dimacs.parse_wcnf("p wcnf 1 1\n1 1 0\n")

    def test_formats_cost_equivalent(self):
        new = dimacs.parse_wcnf("h 1 0\n2 -1 0\n")
        legacy = dimacs.parse_wcnf("p wcnf 1 2 9\n9 1 0\n2 -1 0\n")
        assert new.constraints.cnf == legacy.constraints.cnf
        assert new.objective == legacy.objective

    def test_non_unit_soft_clause(self):
        inst = dimacs.parse_wcnf("4 1 2 0\n")
        (cl, w), = inst.objective.soft_clauses()
        assert cl == [lit(1), lit(2)] and w == 4

    def test_fuzz_never_crashes(self):
        rng = random.Random(21)
        alphabet = "pch wnf-0123456789 \n\t"
        for _ in range(300):
            text = "".join(rng.choice(alphabet)
                           for _ in range(rng.randint(0, 50)))
            try:
                dimacs.parse_wcnf(text)
            except ParseError:
                pass


class TestWriteWcnf:
    def test_round_trip_fixed(self):
        inst = dimacs.parse_wcnf("h 1 2 0\n3 -1 0\n7 1 -2 0\n")
        text = dimacs.write_wcnf(inst)
        assert dimacs.parse_wcnf(text) == inst
        assert text.splitlines()[0].startswith("h ")

    @given(st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=150)
    def test_round_trip_random(self, seed):
        rng = random.Random(seed)
        inst = random_wcnf_instance(rng, max_vars=15, max_clauses=20)
        assert dimacs.parse_wcnf(dimacs.write_wcnf(inst)) == inst
