"""Exact search for envy-free / locally proportional Pareto-efficient allocations.

For 0/1 valuations a Pareto-efficient allocation (when every good is valued
by somebody) is exactly a complete allocation that hands each good to one
of its approvers, so the search space is the product of approver sets.

The branch-and-bound below works on *good types* (goods approved by the
same agents are interchangeable) and keeps, per agent, a lower bound on how
many more approved goods it still needs.  Those bounds prune three ways:

* an agent needs more goods than remain among those it approves;
* the needs of all agents cannot be met jointly (a bipartite b-matching
  between needy agents and remaining goods, checked by augmenting paths);
* branching: when some agent has a positive need it is branched on first,
  otherwise the next good of the most contested type goes to one of its
  approvers in non-decreasing agent order.
"""

from __future__ import annotations

import itertools
import os
import sys
import time
from collections.abc import Iterator
from dataclasses import dataclass

from .criteria import check_complete, check_gef, check_lp, check_non_wasteful
from .errors import PreconditionError
from .model import Allocation, Instance, diagnose, members

DEFAULT_BUDGET = 10**7

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
BUDGET_EXHAUSTED = "budget-exhausted"


def default_budget() -> int:
    env = os.environ.get("FAIRNET_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class SolveResult:
    status: str
    allocation: Allocation | None
    nodes_explored: int
    elapsed: float
    unvalued_goods: tuple[int, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


def enumerate_nonwasteful_complete(instance: Instance) -> Iterator[Allocation]:
    """Yield every allocation giving each good to one of its approvers.

    Order is lexicographic in the recipient of good 0, then good 1, and so on.
    """
    unvalued = diagnose(instance).unvalued_goods
    if unvalued:
        raise PreconditionError(f"goods {list(unvalued)} are valued by nobody")
    choices = [members(instance.approvers[j]) for j in range(instance.n_goods)]
    for owners in itertools.product(*choices):
        yield Allocation.from_owners(owners)


class _BudgetExhausted(Exception):
    pass


class _Search:
    def __init__(self, instance: Instance, fairness: str, budget: int):
        if fairness not in ("gef", "lp"):
            raise ValueError(f"fairness must be 'gef' or 'lp', got {fairness!r}")
        self.instance = instance
        self.fairness = fairness
        self.budget = budget
        self.nodes = 0
        n = instance.n_agents
        self.n = n

        groups: dict[int, list[int]] = {}
        for j in range(instance.n_goods):
            col = instance.approvers[j]
            if col:
                groups.setdefault(col, []).append(j)
        # Most contested types first; ties by lowest good index.
        ordered = sorted(groups.items(), key=lambda kv: (-kv[0].bit_count(), kv[1][0]))
        self.type_goods = [goods for _, goods in ordered]
        self.type_approvers = [members(col) for col, _ in ordered]
        self.type_cols = [col for col, _ in ordered]
        T = len(ordered)
        self.T = T
        self.left = [len(g) for g in self.type_goods]
        self.total_left = sum(self.left)

        self.likes = [[t for t in range(T) if (self.type_cols[t] >> i) & 1] for i in range(n)]
        self.nbrs = instance.neighbors
        self.deg = [len(a) for a in self.nbrs]
        self.cnt = [[0] * T for _ in range(n)]
        self.own = [0] * n
        self.rem = [sum(self.left[t] for t in self.likes[i]) for i in range(n)]
        # view[i][j]: value to i of j's current bundle, for neighbours j of i
        self.view = [dict.fromkeys(self.nbrs[i], 0) for i in range(n)]
        self.nbr_sum = [0] * n
        self.need = [0] * n
        self.needy: set[int] = set()
        self.last = [0] * T

    # bookkeeping --------------------------------------------------------

    def _need_of(self, i: int) -> int:
        if self.fairness == "gef":
            top = max(self.view[i].values(), default=0)
            return max(0, top - self.own[i])
        d = self.deg[i]
        if d == 0:
            return 0
        return max(0, -(-self.nbr_sum[i] // d) - self.own[i])

    def _refresh(self, agents) -> bool:
        ok = True
        for i in agents:
            v = self._need_of(i)
            self.need[i] = v
            if v:
                self.needy.add(i)
                if v > self.rem[i]:
                    ok = False
            else:
                self.needy.discard(i)
        return ok

    def _apply(self, t: int, r: int, sign: int) -> None:
        col = self.type_cols[t]
        self.cnt[r][t] += sign
        self.own[r] += sign
        self.left[t] -= sign
        self.total_left -= sign
        for i in self.type_approvers[t]:
            self.rem[i] -= sign
        for i in self.nbrs[r]:
            if (col >> i) & 1:
                self.view[i][r] += sign
                self.nbr_sum[i] += sign

    def _assign(self, t: int, r: int) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted
        self._apply(t, r, 1)
        ok = self._refresh(self.type_approvers[t])
        return ok and self._needs_jointly_feasible()

    def _unassign(self, t: int, r: int) -> None:
        self._apply(t, r, -1)
        self._refresh(self.type_approvers[t])

    def _needs_jointly_feasible(self) -> bool:
        needy = self.needy
        if len(needy) <= 1:
            return True
        total = 0
        for i in needy:
            total += self.need[i]
        if total > self.total_left:
            return False
        # Unit augmenting paths from needy agents to remaining goods by type.
        left = self.left
        used = [0] * self.T
        holders: list[list[int]] = [[] for _ in range(self.T)]
        for i in sorted(needy):
            for _ in range(self.need[i]):
                if not self._augment(i, used, holders, left, set()):
                    return False
        return True

    def _augment(self, i, used, holders, left, seen) -> bool:
        for t in self.likes[i]:
            if t in seen or left[t] == 0:
                continue
            seen.add(t)
            if used[t] < left[t]:
                used[t] += 1
                holders[t].append(i)
                return True
            for k, h in enumerate(holders[t]):
                if self._augment(h, used, holders, left, seen):
                    holders[t][k] = i
                    return True
        return False

    # search -------------------------------------------------------------

    def run(self) -> bool:
        if not self._refresh(range(self.n)):
            return False
        return self._search()

    def _search(self) -> bool:
        if self.total_left == 0:
            return True
        if self.needy:
            i = min(self.needy, key=lambda a: (self.rem[a] - self.need[a], a))
            for t in self.likes[i]:
                if self.left[t] == 0:
                    continue
                if self._assign(t, i) and self._search():
                    return True
                self._unassign(t, i)
            return False
        t = next(t for t in range(self.T) if self.left[t])
        approvers = self.type_approvers[t]
        saved = self.last[t]
        for pos in range(saved, len(approvers)):
            r = approvers[pos]
            self.last[t] = pos
            if self._assign(t, r) and self._search():
                return True
            self._unassign(t, r)
        self.last[t] = saved
        return False

    def allocation(self) -> Allocation:
        owners: list[int | None] = [None] * self.instance.n_goods
        for t, goods in enumerate(self.type_goods):
            it = iter(goods)
            for i in range(self.n):
                for _ in range(self.cnt[i][t]):
                    owners[next(it)] = i
        return Allocation.from_owners(owners)


def _solve(instance: Instance, fairness: str, budget: int | None) -> SolveResult:
    budget = default_budget() if budget is None else budget
    unvalued = diagnose(instance).unvalued_goods
    start = time.perf_counter()
    search = _Search(instance, fairness, budget)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * instance.n_goods + 1000))
    try:
        found = search.run()
    except _BudgetExhausted:
        return SolveResult(BUDGET_EXHAUSTED, None, budget, time.perf_counter() - start, unvalued)
    finally:
        sys.setrecursionlimit(limit)
    elapsed = time.perf_counter() - start
    if not found:
        return SolveResult(INFEASIBLE, None, search.nodes, elapsed, unvalued)
    alloc = search.allocation()
    _assert_efficient_and_fair(instance, alloc, fairness)
    return SolveResult(FEASIBLE, alloc, search.nodes, elapsed, unvalued)


def _assert_efficient_and_fair(instance: Instance, alloc: Allocation, fairness: str) -> None:
    checker = {"gef": check_gef, "lp": check_lp}[fairness]
    if not (
        checker(instance, alloc).satisfied
        and check_non_wasteful(instance, alloc).satisfied
        and check_complete(instance, alloc, instance.valued_goods).satisfied
    ):
        raise AssertionError(f"solver produced an allocation failing {fairness}/efficiency")


def solve_eef_gef(instance: Instance, budget: int | None = None) -> SolveResult:
    """Decide whether a graph-envy-free Pareto-efficient allocation exists.

    Goods valued by nobody are left unallocated and reported; they cannot
    affect envy.  ``budget`` caps the number of search nodes (default
    10**7, or ``$FAIRNET_BUDGET``).
    """
    return _solve(instance, "gef", budget)


def solve_eef_lp(instance: Instance, budget: int | None = None) -> SolveResult:
    """Decide whether a locally proportional Pareto-efficient allocation exists."""
    return _solve(instance, "lp", budget)


def solve_identical_connected(instance: Instance) -> SolveResult:
    """Identical valuations on a connected graph: feasible iff n divides m.

    Goods are dealt round-robin, so good ``j`` goes to agent ``j mod n``.
    """
    diag = diagnose(instance)
    if not (diag.has_identical_valuations and diag.is_connected):
        raise PreconditionError("requires identical valuations on a connected graph")
    if diag.unvalued_goods:
        raise PreconditionError(f"goods {list(diag.unvalued_goods)} are valued by nobody")
    if instance.n_agents == 0:
        raise PreconditionError("requires at least one agent")
    start = time.perf_counter()
    n, m = instance.n_agents, instance.n_goods
    if m % n:
        return SolveResult(INFEASIBLE, None, 0, time.perf_counter() - start)
    alloc = Allocation.from_owners([j % n for j in range(m)])
    return SolveResult(FEASIBLE, alloc, 0, time.perf_counter() - start)
