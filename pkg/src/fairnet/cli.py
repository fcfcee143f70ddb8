"""``fairnet`` command line.

Exit codes: 0 satisfied / feasible / yes, 1 unsatisfied / infeasible / no,
2 search budget exhausted, 3 benchmark finished with skipped entries,
64 usage error, 65 malformed input data, 66 unreadable input file,
69 input outside an operation's domain (precondition or size guard),
73 output file could not be written.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bench import SOLVERS, run_bench, write_csv
from .corpus import FAMILIES, GRAPH_FAMILIES, generate_corpus
from .criteria import CRITERIA, check
from .errors import (
    AllocationError,
    FairnetError,
    InputError,
    InstanceError,
    OracleLimitError,
    ParseError,
    PreconditionError,
    ReductionError,
    WitnessError,
)
from .formats import (
    load_source,
    read_allocation,
    read_instance,
    read_text,
    render_allocation,
    render_instance,
    render_roles,
)
from .model import Allocation, members
from .oracles import oracle_3coloring, oracle_clique, oracle_cutting, oracle_lsat
from .qp import build_qp_network, render_network, solve_qp_pareto
from .reductions import REDUCE
from .solvers import BUDGET_EXHAUSTED, FEASIBLE, INFEASIBLE, solve_eef_gef, solve_eef_lp

EXIT_OK = 0
EXIT_NO = 1
EXIT_BUDGET = 2
EXIT_PARTIAL = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOINPUT = 66
EXIT_UNAVAILABLE = 69
EXIT_CANTCREAT = 73

ORACLES = {
    "clique": oracle_clique,
    "3col": oracle_3coloring,
    "lsat": oracle_lsat,
    "cutting": oracle_cutting,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _OutputError(Exception):
    pass


def _write(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise _OutputError(f"{path}: cannot write: {exc.strerror}") from None


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _bundles(alloc: Allocation | None):
    if alloc is None:
        return None
    return [members(b) for b in alloc.bundles]


def _witness(w):
    if isinstance(w, Allocation):
        return {"bundles": _bundles(w)}
    return w


# check -------------------------------------------------------------------


def cmd_check(args) -> int:
    inst = read_instance(args.instance)
    alloc = read_allocation(args.allocation, inst)
    kwargs = {"mode": args.mode} if args.criterion == "pareto" else {}
    report = check(inst, alloc, args.criterion, **kwargs)
    violations = [
        {"agent": v.agent, "witness": _witness(v.witness), "lhs": v.lhs, "rhs": v.rhs}
        for v in report.violations
    ]
    lines = [f"{args.criterion}: {'satisfied' if report.satisfied else 'violated'}"]
    for v in report.violations:
        detail = f"  agent {v.agent}" if v.agent is not None else "  unassigned"
        w = v.witness
        detail += f" witness {_bundles(w) if isinstance(w, Allocation) else w}"
        if v.lhs is not None:
            detail += f" ({v.lhs} < {v.rhs})"
        lines.append(detail)
    payload = {
        "command": "check",
        "criterion": args.criterion,
        "satisfied": report.satisfied,
        "violations": violations,
    }
    _emit(args, payload, lines)
    return EXIT_OK if report.satisfied else EXIT_NO


# solve -------------------------------------------------------------------


def cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    if args.dump_network and args.fairness != "qp":
        raise UsageError("--dump-network applies to --fairness qp only")
    if args.fairness == "qp":
        if args.dump_network:
            _write(args.dump_network, render_network(build_qp_network(inst)))
        res = solve_qp_pareto(inst)
        status = FEASIBLE if res.feasible else INFEASIBLE
        alloc, nodes, elapsed = res.allocation, 0, None
        extra = {"max_flow_value": res.max_flow_value}
        unvalued = res.unvalued_goods
    else:
        solve = solve_eef_gef if args.fairness == "gef" else solve_eef_lp
        res = solve(inst, budget=args.budget)
        status, alloc = res.status, res.allocation
        nodes, elapsed = res.nodes_explored, res.elapsed
        extra = {}
        unvalued = res.unvalued_goods
    if args.emit_allocation and alloc is not None:
        _write(args.emit_allocation, render_allocation(alloc, f"fairnet solve --fairness {args.fairness}"))
    payload = {
        "command": "solve",
        "fairness": args.fairness,
        "status": status,
        "nodes_explored": nodes,
        "elapsed": elapsed,
        "allocation": _bundles(alloc),
        "unvalued_goods": list(unvalued),
        **extra,
    }
    head = status
    if args.fairness != "qp":
        head += f" (nodes {nodes}, {elapsed:.3f} s)"
    lines = [head]
    if alloc is not None:
        lines += [f"  agent {i}: {' '.join(map(str, b))}".rstrip() for i, b in enumerate(_bundles(alloc))]
    if unvalued:
        lines.append(f"  unallocated (valued by nobody): {' '.join(map(str, unvalued))}")
    _emit(args, payload, lines)
    return {FEASIBLE: EXIT_OK, INFEASIBLE: EXIT_NO, BUDGET_EXHAUSTED: EXIT_BUDGET}[status]


# reduce ------------------------------------------------------------------


def cmd_reduce(args) -> int:
    if args.stitch and args.source_problem != "lsat":
        raise UsageError("--stitch applies to --from lsat only")
    src = load_source(args.source_problem, read_text(args.source), args.source)
    if args.source_problem == "lsat":
        artifact = REDUCE["lsat"](src, stitch=args.stitch)
    else:
        artifact = REDUCE[args.source_problem](src)
    inst = artifact.instance
    _write(args.out, render_instance(inst, f"fairnet reduce --from {args.source_problem} ({artifact.target})"))
    if args.roles:
        _write(args.roles, render_roles(artifact))
    payload = {
        "command": "reduce",
        "reduction": artifact.reduction,
        "target": artifact.target,
        "agents": inst.n_agents,
        "goods": inst.n_goods,
        "edges": len(inst.edges),
        "trivial_no": artifact.trivial_no,
        "agent_roles": artifact.agent_counts(),
        "good_roles": artifact.good_counts(),
        "notes": list(artifact.notes),
    }
    lines = [
        f"{artifact.reduction} -> {artifact.target}: {inst.n_agents} agents, "
        f"{inst.n_goods} goods, {len(inst.edges)} edges"
        + (" (trivial no-instance)" if artifact.trivial_no else ""),
        "  agents: " + ", ".join(f"{k} {v}" for k, v in artifact.agent_counts().items()),
        "  goods: " + ", ".join(f"{k} {v}" for k, v in artifact.good_counts().items()),
    ]
    _emit(args, payload, lines)
    return EXIT_OK


# oracle ------------------------------------------------------------------


def _certificate(problem: str, cert):
    if cert is None:
        return None
    if problem == "cutting":
        X, S, Y = cert
        return {"X": list(X), "S": list(S), "Y": list(Y)}
    return list(cert)


def cmd_oracle(args) -> int:
    src = load_source(args.problem, read_text(args.source), args.source)
    cert = ORACLES[args.problem](src)
    payload = {
        "command": "oracle",
        "problem": args.problem,
        "answer": cert is not None,
        "certificate": _certificate(args.problem, cert),
    }
    lines = ["yes" if cert is not None else "no"]
    if cert is not None:
        lines.append(f"  certificate: {json.dumps(payload['certificate'])}")
    _emit(args, payload, lines)
    return EXIT_OK if cert is not None else EXIT_NO


# bench and gen -----------------------------------------------------------


def cmd_bench(args) -> int:
    if not Path(args.corpus).is_dir():
        raise InputError("corpus directory not found", None, args.corpus)
    solvers = [s for s in args.solvers.split(",") if s]
    unknown = [s for s in solvers if s not in SOLVERS]
    if unknown:
        raise UsageError(f"unknown solver(s) {', '.join(unknown)}; choose from {', '.join(SOLVERS)}")
    records, errors = run_bench(args.corpus, solvers, args.budget, args.workers)
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                write_csv(records, fh)
        except OSError as exc:
            raise _OutputError(f"{args.out}: cannot write: {exc.strerror}") from None
    else:
        write_csv(records, sys.stdout)
    for path, message in errors:
        print(f"fairnet bench: skipped {path}: {message}", file=sys.stderr)
    return EXIT_PARTIAL if errors else EXIT_OK


def cmd_gen(args) -> int:
    paths = generate_corpus(
        args.out, args.family, args.count, args.n, args.m, args.density, args.p, args.seed
    )
    if args.json:
        print(json.dumps({"command": "gen", "files": [str(p) for p in paths]}))
    else:
        print(f"wrote {len(paths)} instance(s) to {args.out}")
    return EXIT_OK


# parser ------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fairnet", description="Fair and efficient allocation on graphs.")
    parser.add_argument("--version", action="version", version=f"fairnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    json_flag = argparse.ArgumentParser(add_help=False)
    json_flag.add_argument("--json", action="store_true", help="machine-readable output on stdout")

    p = sub.add_parser("check", parents=[json_flag], help="check an allocation against a criterion")
    p.add_argument("--instance", required=True)
    p.add_argument("--allocation", required=True)
    p.add_argument("--criterion", required=True, choices=CRITERIA)
    p.add_argument("--mode", choices=("characterization", "exhaustive"), default="characterization",
                   help="Pareto check mode (default: characterization)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[json_flag], help="find a fair and efficient allocation")
    p.add_argument("--instance", required=True)
    p.add_argument("--fairness", required=True, choices=("gef", "lp", "qp"))
    p.add_argument("--budget", type=_positive, default=None,
                   help="search node budget for gef/lp (default 10^7 or $FAIRNET_BUDGET)")
    p.add_argument("--emit-allocation", metavar="FILE")
    p.add_argument("--dump-network", metavar="FILE", help="write the QP flow network")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", parents=[json_flag], help="build a reduced allocation instance")
    p.add_argument("--from", dest="source_problem", required=True, choices=tuple(REDUCE))
    p.add_argument("--source", required=True)
    p.add_argument("--stitch", action="store_true", help="lsat only: join the paths into one path")
    p.add_argument("--out", required=True)
    p.add_argument("--roles", metavar="FILE", help="write the role map sidecar")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("oracle", parents=[json_flag], help="brute-force a source problem")
    p.add_argument("--problem", required=True, choices=tuple(ORACLES))
    p.add_argument("--source", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="run solvers over a corpus and write CSV")
    p.add_argument("--corpus", required=True)
    p.add_argument("--solvers", default="gef,lp,qp", help=f"comma list from {','.join(SOLVERS)}")
    p.add_argument("--budget", type=_positive, default=None)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--out", metavar="CSV")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", parents=[json_flag], help="generate a seeded instance corpus")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--count", type=_positive, default=10)
    p.add_argument("--n", type=_non_negative, required=True, help="agents, vertices or variables")
    p.add_argument("--m", type=_non_negative, default=None, help="goods (graph families)")
    p.add_argument("--density", type=_probability, default=0.5)
    p.add_argument("--p", type=_probability, default=0.5, help="edge probability")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and args.family in GRAPH_FAMILIES and args.m is None:
        parser.exit(EXIT_USAGE, "fairnet gen: error: graph families need --m\n")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fairnet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"fairnet: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except (ParseError, InstanceError, AllocationError, WitnessError, ReductionError) as exc:
        print(f"fairnet: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (PreconditionError, OracleLimitError) as exc:
        print(f"fairnet: {exc}", file=sys.stderr)
        return EXIT_UNAVAILABLE
    except _OutputError as exc:
        print(f"fairnet: {exc}", file=sys.stderr)
        return EXIT_CANTCREAT
    except FairnetError as exc:
        print(f"fairnet: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
