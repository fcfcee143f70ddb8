"""Run solvers over a corpus directory and collect one CSV row per run."""

from __future__ import annotations

import csv
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from .criteria import check_qp
from .errors import FairnetError
from .formats import read_instance
from .model import Allocation, Instance, members
from .qp import solve_qp_pareto
from .solvers import BUDGET_EXHAUSTED, FEASIBLE, INFEASIBLE, default_budget, solve_eef_gef, solve_eef_lp


@dataclass(frozen=True)
class BenchRecord:
    instance_id: str
    solver: str
    verdict: str
    nodes_explored: int
    elapsed: float
    n: int
    m: int
    edges: int


CSV_COLUMNS = tuple(f.name for f in fields(BenchRecord))


def _qp_flow(instance: Instance, budget: int):
    result = solve_qp_pareto(instance)
    return (FEASIBLE if result.feasible else INFEASIBLE), 0


def _qp_brute(instance: Instance, budget: int):
    """Filter every non-wasteful complete allocation through the QP checker."""
    valued = [j for j in range(instance.n_goods) if instance.approvers[j]]
    choices = [members(instance.approvers[j]) for j in valued]
    nodes = 0
    for owners in itertools.product(*choices):
        nodes += 1
        if nodes > budget:
            return BUDGET_EXHAUSTED, budget
        full = [None] * instance.n_goods
        for j, o in zip(valued, owners):
            full[j] = o
        if check_qp(instance, Allocation.from_owners(full)).satisfied:
            return FEASIBLE, nodes
    return INFEASIBLE, nodes


def _search(solve):
    def run(instance: Instance, budget: int):
        result = solve(instance, budget=budget)
        return result.status, result.nodes_explored

    return run


SOLVERS = {
    "gef": _search(solve_eef_gef),
    "lp": _search(solve_eef_lp),
    "qp": _qp_flow,
    "qp-brute": _qp_brute,
}


def bench_one(path, solver: str, budget: int | None = None) -> BenchRecord:
    instance = read_instance(path)
    budget = default_budget() if budget is None else budget
    start = time.perf_counter()
    verdict, nodes = SOLVERS[solver](instance, budget)
    elapsed = time.perf_counter() - start
    return BenchRecord(
        Path(path).stem,
        solver,
        verdict,
        nodes,
        round(elapsed, 6),
        instance.n_agents,
        instance.n_goods,
        len(instance.edges),
    )


def _job(args):
    path, solver, budget = args
    try:
        return bench_one(path, solver, budget)
    except FairnetError as exc:
        return exc


def corpus_files(corpus_dir) -> list[Path]:
    """Instance files (``*.txt``) of a corpus directory in name order."""
    return sorted(p for p in Path(corpus_dir).glob("*.txt") if p.is_file())


def run_bench(corpus_dir, solvers=("gef", "lp", "qp"), budget=None, workers: int = 1):
    """Benchmark every instance with every solver.

    Rows come out in (file name, solver order) order whatever ``workers`` is.
    Returns ``(records, errors)`` where ``errors`` lists ``(path, message)``
    for unreadable files, which are skipped.
    """
    for s in solvers:
        if s not in SOLVERS:
            raise FairnetError(f"unknown solver {s!r}; choose from {', '.join(SOLVERS)}")
    jobs = [(p, s, budget) for p in corpus_files(corpus_dir) for s in solvers]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_job, jobs))
    else:
        results = [_job(j) for j in jobs]
    records, errors, reported = [], [], set()
    for (path, _, _), res in zip(jobs, results):
        if isinstance(res, BenchRecord):
            records.append(res)
        elif path not in reported:
            reported.add(path)
            errors.append((str(path), str(res)))
    return records, errors


def write_csv(records, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(astuple(r))

