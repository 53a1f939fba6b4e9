"""Acceptance suite: one test per top-level criterion, each printing a
PASS line (run with ``pytest tests/test_acceptance.py -v -s``).

All expected values are exact; no tolerances apply anywhere.
"""

import hashlib
import random
import time

import pytest

from satkit import (BasicVarManager, CardConstraint, Cnf, Lit, SatInstance,
                    Var, lit)
from satkit.cli import count_clauses, main
from satkit.encodings import (Bimander, BinaryAdder, Bitwise, ClauseCounter,
                              Commander, DynamicPolyWatchdog, ExpandedCard,
                              GeneralizedTotalizer, Inverted, Ladder, Pairwise,
                              Totalizer)
from satkit.formats import ParseError, dimacs, opb
from satkit.solvers import (ExternalSolver, ReferenceSolver, SolverError,
                            SolverResult)

from oracles import (all_assignments, assumption_lits, brute_force_models,
                     pure_literal_removable, random_cnf_instance,
                     random_opb_instance, random_wcnf_instance)

SAT = SolverResult.SAT
AM1_VARIANTS = [Pairwise, Ladder, Bitwise, Commander, Bimander]

# frozen self-goldens for the 300-input counting encoding, ranges [1, k]
TOTALIZER_300_GOLDENS = {1: 1193, 2: 1661, 5: 2843, 50: 15917,
                         150: 36161, 299: 47336, 300: 47336}
TOTALIZER_300_SHA256 = \
    "56e1afd55333c34bfbb1c5b6af9c37b2f65ba516db821d711bc65af7b1dba76b"


def _pass(name, t0):
    print(f"PASS [{name}] ({time.time() - t0:.1f}s)")


def _vars(n):
    return [Var(i).pos_lit() for i in range(n)]


def _exhaustive_bound_check(enc, direction, n, weights, bounds, solver):
    for k in bounds:
        assumps = getattr(enc, "enforce_" + direction)(k)
        for bits in all_assignments(n):
            value = sum(w for w, b in zip(weights, bits) if b)
            expect = value <= k if direction == "ub" else value >= k
            res = solver.solve_assumps(assumption_lits(bits) + assumps)
            assert (res is SAT) == expect, \
                (type(enc).__name__, direction, weights, k, bits)


def test_encoding_soundness_and_completeness_exhaustive():
    t0 = time.time()
    for cls in AM1_VARIANTS:
        for n in range(0, 9):
            enc = cls(_vars(n))
            s = ReferenceSolver()
            enc.encode(BasicVarManager(n), s)
            for bits in all_assignments(n):
                res = s.solve_assumps(assumption_lits(bits))
                assert (res is SAT) == (sum(bits) <= 1), (cls.__name__, n, bits)

    rng = random.Random(20260808)
    for n in range(1, 7):
        for direction in ("ub", "lb"):
            enc = Totalizer(_vars(n))
            s = ReferenceSolver()
            getattr(enc, "encode_" + direction)(0, n + 1, BasicVarManager(n), s)
            _exhaustive_bound_check(enc, direction, n, [1] * n,
                                    range(0, n + 2), s)

        for _ in range(3):
            weights = [rng.randint(1, 10) for _ in range(n)]
            total = sum(weights)
            terms = list(zip(_vars(n), weights))
            setups = [(GeneralizedTotalizer, "ub"), (BinaryAdder, "ub"),
                      (BinaryAdder, "lb"), (DynamicPolyWatchdog, "ub")]
            for enc_cls, direction in setups:
                enc = enc_cls(terms)
                s = ReferenceSolver()
                getattr(enc, "encode_" + direction)(0, total + 1,
                                                    BasicVarManager(n), s)
                _exhaustive_bound_check(enc, direction, n, weights,
                                        range(0, total + 2), s)
    _pass("encoding soundness/completeness, exhaustive oracle", t0)


def _incremental_scenario(kind, seed):
    rng = random.Random(seed)
    max_inputs = 6

    def new_items(count, start):
        if kind == "totalizer":
            return [Var(i).pos_lit() for i in range(start, start + count)]
        return [(Var(i).pos_lit(), rng.randint(1, 3))
                for i in range(start, start + count)]

    def make(items):
        return Totalizer(items) if kind == "totalizer" else GeneralizedTotalizer(items)

    items = new_items(rng.randint(1, 3), 0)
    enc = make(list(items))
    vm = BasicVarManager(max_inputs)
    s = ReferenceSolver()

    def weight_of(it):
        return 1 if kind == "totalizer" else it[1]

    for _ in range(rng.randint(2, 4)):
        total = sum(weight_of(it) for it in items)
        if rng.random() < 0.4 and len(items) < max_inputs:
            extra = new_items(rng.randint(1, max_inputs - len(items)), len(items))
            enc.extend(list(extra))
            items.extend(extra)
        else:
            lo = rng.randint(0, total)
            hi = rng.randint(lo, total)
            enc.encode_ub(lo, hi, vm, s)
            k = rng.randint(lo, hi)
            n = len(items)
            weights = [weight_of(it) for it in items]
            _exhaustive_bound_check(enc, "ub", n, weights, [k], s)

    total = sum(weight_of(it) for it in items)
    enc.encode_ub(0, total, vm, s)

    scratch = make(list(items))
    vm2 = BasicVarManager(max_inputs)
    s2 = ReferenceSolver()
    scratch.encode_ub(0, total, vm2, s2)

    n = len(items)
    for k in range(0, total + 1):
        a_inc = enc.enforce_ub(k)
        a_scr = scratch.enforce_ub(k)
        for bits in all_assignments(n):
            alpha = assumption_lits(bits)
            r_inc = s.solve_assumps(alpha + a_inc)
            r_scr = s2.solve_assumps(alpha + a_scr)
            assert r_inc == r_scr, (kind, seed, k, bits)
            value = sum(w * b for w, b in
                        zip((weight_of(it) for it in items), bits))
            assert (r_inc is SAT) == (value <= k), (kind, seed, k, bits)


def test_incremental_equivalence_random_scenarios():
    t0 = time.time()
    for kind in ("totalizer", "gte"):
        for seed in range(50):
            _incremental_scenario(kind, seed)
    _pass("incremental equivalence, 100 seeded scenarios", t0)


def test_cone_of_influence_fixpoint_and_trend():
    t0 = time.time()
    # (a) emitted encodings are pure-literal-reduction fixpoints
    rng = random.Random(5)
    for n, lo, hi in [(8, 0, 1), (8, 3, 4), (8, 6, 7), (12, 2, 5),
                      (12, 10, 11), (16, 0, 0), (16, 14, 15)]:
        weights = [rng.randint(1, 9) for _ in range(n)]
        terms = list(zip(_vars(n), weights))
        total = sum(weights)
        whi = min(hi * 2 + 3, total - 1)
        wlo = min(lo, whi)
        for enc, direction, bounds in [
            (Totalizer(_vars(n)), "ub", (lo, hi)),
            (Totalizer(_vars(n)), "lb", (max(1, lo), max(max(1, lo), hi))),
            (GeneralizedTotalizer(terms), "ub", (wlo, whi)),
            (BinaryAdder(terms), "ub", (wlo, whi)),
            (BinaryAdder(terms), "lb", (max(1, wlo), max(1, whi))),
            (DynamicPolyWatchdog(terms), "ub", (wlo, whi)),
            (ExpandedCard(terms), "ub", (lo, hi)),
            (Inverted(GeneralizedTotalizer, terms), "lb", (max(1, wlo), max(1, whi))),
        ]:
            cnf = Cnf()
            getattr(enc, "encode_" + direction)(bounds[0], bounds[1],
                                                BasicVarManager(n), cnf)
            protected = set(range(n))
            for k in range(bounds[0], bounds[1] + 1):
                protected.update(a.var_index
                                 for a in getattr(enc, "enforce_" + direction)(k))
            removable = pure_literal_removable(cnf.clauses, protected)
            assert removable == 0, (type(enc).__name__, direction, n, bounds)
    for cls in AM1_VARIANTS:
        for n in (3, 8, 13):
            cnf = Cnf()
            cls(_vars(n)).encode(BasicVarManager(n), cnf)
            assert pure_literal_removable(cnf.clauses, set(range(n))) == 0

    # (b) 300-input counting encoding: clause count non-decreasing in the
    # bound, strictly smaller at bound 1 than at bound 300, frozen goldens
    rows = count_clauses("totalizer", 300, None, 42, (1, 300))
    counts = [c for _, c, _ in rows]
    assert all(a <= b for a, b in zip(counts, counts[1:]))
    assert counts[0] < counts[-1]
    for k, expect in TOTALIZER_300_GOLDENS.items():
        assert counts[k - 1] == expect, (k, counts[k - 1], expect)
    digest = hashlib.sha256(
        "\n".join(f"{b},{c},{a}" for b, c, a in rows).encode()).hexdigest()
    assert digest == TOTALIZER_300_SHA256
    _pass("cone of influence: fixpoint + 300-input trend/goldens", t0)


def test_pairwise_clause_count_300():
    t0 = time.time()
    sink = ClauseCounter()
    enc = Pairwise(_vars(300))
    enc.encode(BasicVarManager(300), sink)
    assert sink.n_clauses == 44850
    assert enc.n_aux_vars == 0
    _pass("pairwise at-most-one over 300 inputs emits exactly 44850 clauses", t0)


def test_parser_round_trips_and_goldens():
    t0 = time.time()
    # fixed snippets: CNF
    inst = dimacs.parse_cnf("p cnf 3 2\n1 -2 0\n2 3 0\n")
    assert [list(c) for c in inst.cnf] == [[lit(1), lit(-2)], [lit(2), lit(3)]]
    assert len(dimacs.parse_cnf("c comment\n1 0").cnf) == 1
    with pytest.raises(ParseError) as e:
        dimacs.parse_cnf("1 -2\n")
    assert e.value.diagnostics.line == 1
    # fixed snippets: WCNF
    w = dimacs.parse_wcnf("h 1 2 0\n3 -1 0\n")
    assert w.constraints.cnf[0] == [lit(1), lit(2)]
    assert w.objective.soft_lits() == [(lit(-1), 3)]
    w = dimacs.parse_wcnf("p wcnf 2 2 5\n5 1 0\n2 -1 0\n")
    assert w.constraints.cnf[0] == [lit(1)]
    assert w.objective.soft_lits() == [(lit(-1), 2)]
    with pytest.raises(ParseError):
        dimacs.parse_wcnf("0 1 0")
    # fixed snippets: OPB
    o = opb.parse_opb("+2 x1 +3 x2 >= 3 ;")
    assert o.pbs[0].terms == [(lit(1), 2), (lit(2), 3)] and o.pbs[0].bound == 3
    o = opb.parse_opb("min: +1 x1 ;\n+1 x1 +1 x2 >= 1 ;")
    assert o.objective.soft_lits() == [(lit(-1), 1)]
    o = opb.parse_opb("-2 x1 <= 0 ;")  # trivially true once normalized
    assert not o.pbs and not o.cnf.clauses
    # fixed writer golden
    one = SatInstance()
    one.add_clause([lit(1)])
    assert dimacs.write_cnf(one) == "p cnf 1 1\n1 0\n"

    # 500 seeded random instances per format
    rng = random.Random(777)
    for _ in range(500):
        inst = random_cnf_instance(rng, max_vars=50, max_clauses=200)
        assert dimacs.parse_cnf(dimacs.write_cnf(inst)) == inst
    rng = random.Random(778)
    for _ in range(500):
        w = random_wcnf_instance(rng, max_vars=50, max_clauses=60)
        assert dimacs.parse_wcnf(dimacs.write_wcnf(w)) == w
    rng = random.Random(779)
    for _ in range(500):
        o = random_opb_instance(rng, max_vars=50, max_constraints=30)
        assert opb.parse_opb(opb.write_opb(o)) == o
    _pass("parser round trips: 500 seeded instances per format + goldens", t0)


def test_reference_solver_against_truth_tables():
    t0 = time.time()
    rng = random.Random(4242)
    for _ in range(200):
        clauses = []
        for _ in range(30):
            vs = rng.sample(range(8), k=3)
            clauses.append([Lit(v, rng.random() < 0.5) for v in vs])
        expected = bool(brute_force_models(clauses, 8))
        s = ReferenceSolver()
        for cl in clauses:
            s.add_clause(cl)
        assert (s.solve() is SAT) == expected

    checked = 0
    rng = random.Random(888)
    while checked < 100:
        clauses = [[Lit(v, rng.random() < 0.5) for v in rng.sample(range(7), k=3)]
                   for _ in range(rng.randint(10, 25))]
        assumps = [Lit(v, rng.random() < 0.5)
                   for v in rng.sample(range(7), k=rng.randint(2, 6))]
        s = ReferenceSolver()
        for cl in clauses:
            s.add_clause(cl)
        if s.solve_assumps(assumps) is not SolverResult.UNSAT:
            continue
        core = s.core()
        assert {l.raw for l in core} <= {a.raw for a in assumps}
        assert s.solve_assumps(core) is SolverResult.UNSAT
        checked += 1
    _pass("reference solver: 200 seeded 3-CNFs vs truth table, 100 core re-solves", t0)


def _enumerate_via_cli(tmp_path, capsys, text, limit):
    path = tmp_path / "inst.cnf"
    path.write_text(text)
    rc = main(["enumerate", str(path), "--limit", str(limit)])
    out = capsys.readouterr().out
    models = [line for line in out.splitlines() if line.startswith("v ")]
    return rc, models, out


def test_enumerator_exactness(tmp_path, capsys):
    t0 = time.time()
    rng = random.Random(31337)
    corpus = []
    # extremes: no models, and exactly 2^k models for k unconstrained vars
    corpus.append(("p cnf 1 2\n1 0\n-1 0\n", 0))
    corpus.append(("p cnf 4 0\n", 16))
    corpus.append(("p cnf 2 1\n1 2 0\n", 3))
    while len(corpus) < 20:
        nv = rng.randint(2, 12)
        lines = [f"p cnf {nv} 0"]
        clauses = []
        for _ in range(rng.randint(1, nv + 4)):
            vs = rng.sample(range(nv), k=min(nv, rng.randint(1, 3)))
            cl = [Lit(v, rng.random() < 0.5) for v in vs]
            clauses.append(cl)
            lines.append(" ".join(str(l.to_ipasir()) for l in cl) + " 0")
        n_models = len(brute_force_models(clauses, nv))
        if n_models > 200:
            continue
        corpus.append(("\n".join(lines) + "\n", n_models))
    assert len(corpus) == 20

    for text, expect in corpus:
        rc, models, out = _enumerate_via_cli(tmp_path, capsys, text, 5000)
        assert len(models) == expect, (text, expect, len(models))
        assert len(set(models)) == len(models)
        assert "enumeration exhaustive" in out
        assert rc == (10 if expect else 20)
        # every printed model passes the verifier
        for line in models:
            (tmp_path / "model.txt").write_text(line + "\n")
            rc_v = main(["verify", str(tmp_path / "inst.cnf"),
                         str(tmp_path / "model.txt")])
            capsys.readouterr()
            assert rc_v == 0

    # the 1000-solution workload, exercised functionally only (no external
    # libraries are bundled, so no cross-library timing comparison here)
    pairs = 8
    lines = [f"p cnf {2 * pairs} {pairs}"]
    for i in range(pairs):
        lines.append(f"{2 * i + 1} {2 * i + 2} 0")
    rc, models, out = _enumerate_via_cli(tmp_path, capsys,
                                         "\n".join(lines) + "\n", 1000)
    assert rc == 10 and len(models) == 1000 and len(set(models)) == 1000
    assert "limit reached" in out
    inst = dimacs.parse_cnf("\n".join(lines) + "\n")
    from satkit import Assignment
    for line in models:
        ints = [int(t) for t in line[2:].split() if t != "0"]
        a = Assignment.from_ipasir(ints)
        assert inst.is_satisfied_by(a)
    _pass("enumerator exactness: 20-instance corpus + 1000-solution workload", t0)


def _fake_solver(tmp_path, name, body):
    import stat
    path = tmp_path / name
    path.write_text("#!/bin/sh\n" + body)
    path.chmod(path.stat().st_mode | stat.S_IXUSR)
    return str(path)


def test_external_solver_protocol(tmp_path):
    t0 = time.time()

    def loaded(exe):
        s = ExternalSolver(exe)
        s.add_clause([lit(1), lit(-2)])
        s.add_clause([lit(2)])
        return s

    exe = _fake_solver(tmp_path, "sat.sh",
                       'echo "s SATISFIABLE"\necho "v 1 2 0"\nexit 10\n')
    s = loaded(exe)
    assert s.solve() is SAT
    from satkit import TernaryVal
    assert s.lit_val(lit(1)) is TernaryVal.TRUE
    assert s.lit_val(lit(2)) is TernaryVal.TRUE

    exe = _fake_solver(tmp_path, "unsat.sh", 'echo "s UNSATISFIABLE"\nexit 20\n')
    assert loaded(exe).solve() is SolverResult.UNSAT

    exe = _fake_solver(tmp_path, "garbage.sh", 'echo "c noise only"\nexit 0\n')
    with pytest.raises(SolverError):
        loaded(exe).solve()

    exe = _fake_solver(tmp_path, "mismatch.sh", 'echo "s SATISFIABLE"\nexit 0\n')
    with pytest.raises(SolverError):
        loaded(exe).solve()

    exe = _fake_solver(tmp_path, "unknown.sh", 'echo "s UNKNOWN"\nexit 0\n')
    assert loaded(exe).solve() is SolverResult.INTERRUPTED
    _pass("external solver protocol: canned-output binaries", t0)
