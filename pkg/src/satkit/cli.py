"""Command-line tools: model enumeration, solution verification, format
conversion, and encoding clause counting.

Exit codes: 0 success, 1 usage error, 2 input error; ``enumerate`` passes
the solve verdict through (10 when models were found, 20 for none), and
``verify`` exits 0 for OK and 20 otherwise.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Iterable

from .encodings import (Bimander, BinaryAdder, Bitwise, ClauseCounter,
                        Commander, DynamicPolyWatchdog, ExpandedCard,
                        GeneralizedTotalizer, Ladder, Pairwise, Totalizer)
from .formats import ParseError, dimacs, opb
from .instances import Cnf, EncodingConfig, OptInstance, SatInstance
from .manager import BasicVarManager
from .solvers import ExternalSolver, ReferenceSolver, Solve, SolverResult
from .types import Clause, Lit, TernaryVal, Var

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_SAT = 10
EXIT_UNSAT = 20

_AM1_ENCODERS = {
    "pairwise": Pairwise,
    "ladder": Ladder,
    "bitwise": Bitwise,
    "commander": Commander,
    "bimander": Bimander,
}
_PB_ENCODERS = {
    "gte": GeneralizedTotalizer,
    "adder": BinaryAdder,
    "dpw": DynamicPolyWatchdog,
    "card": ExpandedCard,
}


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT) -> None:
        super().__init__(message)
        self.code = code


def _make_solver(spec: str) -> Solve:
    if spec == "ref":
        return ReferenceSolver()
    if spec.startswith("bin:"):
        return ExternalSolver(spec[4:])
    raise CliError(f"unknown solver {spec!r} (use 'ref' or 'bin:<path>')", EXIT_USAGE)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="latin-1") as f:
            return f.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}") from e


def enumerate_models(inst: SatInstance, solver: Solve, limit: int | None):
    """Yield distinct total models as IPASIR integer lists, then a final
    ``("exhaustive", bool)`` marker; blocks each model over all instance
    variables."""
    if inst.cards or inst.pbs:
        raise CliError("enumeration expects a clause-only instance")
    n_vars = inst.n_vars
    for cl in inst.cnf:
        solver.add_clause(cl)
    count = 0
    while limit is None or count < limit:
        res = solver.solve()
        if res is SolverResult.UNSAT:
            yield ("exhaustive", True)
            return
        if res is not SolverResult.SAT:
            raise CliError(f"solver returned {res.value}")
        model = solver.full_solution().completed(n_vars)
        yield model.to_ipasir()[:n_vars]
        count += 1
        blocking = []
        for v in range(n_vars):
            val = model.var_value(v)
            blocking.append(Lit(v, negated=val is TernaryVal.TRUE))
        solver.add_clause(Clause(blocking))
    yield ("exhaustive", False)


def cmd_enumerate(args) -> int:
    inst = dimacs.parse_cnf(_read(args.cnf))
    solver = _make_solver(args.solver)
    n_models = 0
    exhaustive = False
    for item in enumerate_models(inst, solver, args.limit):
        if isinstance(item, tuple):
            exhaustive = item[1]
            break
        print("v " + " ".join(str(i) for i in item) + " 0")
        n_models += 1
    print(f"c {n_models} models, "
          + ("enumeration exhaustive" if exhaustive else "limit reached"))
    return EXIT_SAT if n_models else EXIT_UNSAT


def _parse_assignment(text: str):
    ints = []
    terminated = False
    for lineno, line in enumerate(text.split("\n"), start=1):
        if line.startswith("c") or line.startswith("s") or not line.strip():
            continue
        toks = line.split()
        if toks and toks[0] == "v":
            toks = toks[1:]
        for tok in toks:
            if terminated:
                continue
            try:
                i = int(tok)
            except ValueError:
                raise CliError(f"assignment token {tok!r} at line {lineno} "
                               "is not an integer") from None
            if i == 0:
                terminated = True
            else:
                ints.append(i)
    return ints


def cmd_verify(args) -> int:
    inst = dimacs.parse_cnf(_read(args.cnf))
    ints = _parse_assignment(_read(args.assignment))
    n_vars = inst.n_vars
    values: dict[int, bool] = {}
    for i in ints:
        if abs(i) > n_vars:
            print(f"warning: assignment mentions variable {abs(i)} outside "
                  f"the instance ({n_vars} variables); ignored", file=sys.stderr)
            continue
        values[abs(i) - 1] = i > 0
    first_falsified = None
    first_incomplete = None
    for idx, cl in enumerate(inst.cnf, start=1):
        satisfied = False
        unassigned = False
        for l in cl:
            v = values.get(l.var_index)
            if v is None:
                unassigned = True
            elif v != l.is_neg():
                satisfied = True
                break
        if satisfied:
            continue
        if unassigned:
            if first_incomplete is None:
                first_incomplete = idx
        elif first_falsified is None:
            first_falsified = idx
    if first_falsified is not None:
        print(f"FALSIFIED clause {first_falsified}")
        return EXIT_UNSAT
    if first_incomplete is not None:
        print(f"INCOMPLETE clause {first_incomplete}")
        return EXIT_UNSAT
    print("OK")
    return EXIT_OK


def _format_of(path: str, override: str | None) -> str:
    if override:
        return override
    for ext in ("cnf", "wcnf", "opb"):
        if path.endswith("." + ext):
            return ext
    raise CliError(f"cannot infer format of {path}; use --from/--to", EXIT_USAGE)


def cmd_convert(args) -> int:
    src = _format_of(args.infile, args.from_format)
    dst = _format_of(args.outfile, args.to_format)
    config = EncodingConfig(am1=args.am1_enc, card=args.card_enc, pb=args.pb_enc)
    text = _read(args.infile)
    if (src, dst) == ("cnf", "cnf"):
        out = dimacs.write_cnf(dimacs.parse_cnf(text))
    elif (src, dst) == ("wcnf", "wcnf"):
        out = dimacs.write_wcnf(dimacs.parse_wcnf(text))
    elif (src, dst) == ("opb", "opb"):
        out = opb.write_opb(opb.parse_opb(text))
    elif (src, dst) == ("opb", "cnf"):
        inst = opb.parse_opb(text)
        if isinstance(inst, OptInstance):
            raise CliError("objective ('min:' line) is not expressible in CNF")
        cnf, vm = inst.into_cnf(config)
        lowered = SatInstance(vm)
        lowered.cnf = cnf
        out = dimacs.write_cnf(lowered)
    else:
        raise CliError(f"unsupported conversion {src} -> {dst}", EXIT_USAGE)
    try:
        with open(args.outfile, "w", encoding="ascii") as f:
            f.write(out)
    except OSError as e:
        raise CliError(f"cannot write {args.outfile}: {e}") from e
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    except ValueError:
        raise CliError(f"range {text!r} must look like 'lo..hi'", EXIT_USAGE) from None


def count_clauses(enc: str, n: int, weights: tuple[int, int] | None,
                  seed: int, bounds: tuple[int, int]) -> list[tuple[int, int, int]]:
    """One (bound, clauses, aux_vars) row per bound, each from a fresh
    encoder; bound ranges are encoded cumulatively as [1, k]."""
    rows = []
    rng = random.Random(seed)
    lits = [Var(i).pos_lit() for i in range(n)]
    if enc in _PB_ENCODERS and weights is not None:
        ws = [rng.randint(weights[0], weights[1]) for _ in range(n)]
    else:
        ws = [1] * n
    for k in range(bounds[0], bounds[1] + 1):
        vm = BasicVarManager(n)
        sink = ClauseCounter()
        if enc in _AM1_ENCODERS:
            e = _AM1_ENCODERS[enc](lits)
            e.encode(vm, sink)
        elif enc == "totalizer":
            e = Totalizer(lits)
            e.encode_ub(min(1, k), k, vm, sink)
        elif enc in _PB_ENCODERS:
            e = _PB_ENCODERS[enc](list(zip(lits, ws)))
            e.encode_ub(min(1, k), k, vm, sink)
        else:
            raise CliError(f"unknown encoding {enc!r}", EXIT_USAGE)
        rows.append((k, sink.n_clauses, e.n_aux_vars))
    return rows


def cmd_count_clauses(args) -> int:
    weights = _parse_range(args.weights) if args.weights else None
    bounds = _parse_range(args.bounds)
    if args.n < 0 or bounds[0] < 0 or bounds[0] > bounds[1]:
        raise CliError("invalid --n or --bounds", EXIT_USAGE)
    rows = count_clauses(args.enc, args.n, weights, args.seed, bounds)
    lines = ["bound,clauses,aux_vars"]
    lines.extend(f"{b},{c},{a}" for b, c, a in rows)
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="satkit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("enumerate", help="enumerate models of a CNF")
    pe.add_argument("cnf")
    pe.add_argument("--limit", type=int, default=None)
    pe.add_argument("--solver", default="ref", help="'ref' or 'bin:<path>'")
    pe.set_defaults(func=cmd_enumerate)

    pv = sub.add_parser("verify", help="check an assignment against a CNF")
    pv.add_argument("cnf")
    pv.add_argument("assignment")
    pv.set_defaults(func=cmd_verify)

    pc = sub.add_parser("convert", help="convert between instance formats")
    pc.add_argument("infile")
    pc.add_argument("outfile")
    pc.add_argument("--from", dest="from_format", choices=["cnf", "wcnf", "opb"])
    pc.add_argument("--to", dest="to_format", choices=["cnf", "wcnf", "opb"])
    pc.add_argument("--am1-enc", default="auto",
                    choices=["auto", *_AM1_ENCODERS])
    pc.add_argument("--card-enc", default="totalizer", choices=["totalizer"])
    pc.add_argument("--pb-enc", default="gte", choices=list(_PB_ENCODERS))
    pc.set_defaults(func=cmd_convert)

    pk = sub.add_parser("count-clauses", help="tabulate encoding sizes per bound")
    pk.add_argument("--enc", required=True,
                    choices=[*_AM1_ENCODERS, "totalizer", *_PB_ENCODERS])
    pk.add_argument("--n", type=int, required=True)
    pk.add_argument("--weights", default=None, help="lo..hi random weight range")
    pk.add_argument("--seed", type=int, default=42)
    pk.add_argument("--bounds", required=True, help="lo..hi bound range")
    pk.add_argument("--out", default=None, help="CSV output path (default stdout)")
    pk.set_defaults(func=cmd_count_clauses)
    return p


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv if argv is None else list(argv))
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
