"""Exact fairness and efficiency checkers.

Every checker returns a :class:`CriterionReport` listing *all* violations.
Proportionality thresholds are compared by cross-multiplying, so no
fractions or floats are involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, NamedTuple

from .errors import PreconditionError
from .model import Allocation, Instance, diagnose, members, validate_allocation

CRITERIA = ("gef", "gp", "qp", "lp", "complete", "nonwasteful", "pareto")

EXHAUSTIVE_BIT_LIMIT = 24


class Violation(NamedTuple):
    """One failure of a criterion.

    ``agent`` is the agent whose condition fails (None for an unassigned
    good).  ``witness`` is the envied neighbour, the integer deficit, the
    offending good, or a dominating allocation.  ``lhs``/``rhs`` hold the
    two sides of the failed inequality ``lhs >= rhs`` where one applies.
    """

    agent: int | None
    witness: Any
    lhs: int | None = None
    rhs: int | None = None


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    violations: tuple[Violation, ...] = ()

    @property
    def satisfied(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.satisfied


def check_gef(instance: Instance, allocation: Allocation) -> CriterionReport:
    validate_allocation(instance, allocation)
    out = []
    for i in range(instance.n_agents):
        own = instance.value(i, allocation.bundle(i))
        for j in instance.neighbors[i]:
            other = instance.value(i, allocation.bundle(j))
            if own < other:
                out.append(Violation(i, j, own, other))
    return CriterionReport("gef", tuple(out))


def _proportional(name, instance, allocation, denominator, target) -> CriterionReport:
    validate_allocation(instance, allocation)
    out = []
    for i in range(instance.n_agents):
        lhs = denominator(i) * instance.value(i, allocation.bundle(i))
        rhs = target(i)
        if lhs < rhs:
            out.append(Violation(i, rhs - lhs, lhs, rhs))
    return CriterionReport(name, tuple(out))


def check_gp(instance: Instance, allocation: Allocation) -> CriterionReport:
    """n * v_i(own) >= v_i(all goods) for every agent."""
    n = instance.n_agents
    return _proportional("gp", instance, allocation, lambda i: n, instance.total_value)


def check_qp(instance: Instance, allocation: Allocation) -> CriterionReport:
    """(d(i)+1) * v_i(own) >= v_i(all goods) for every agent."""
    return _proportional(
        "qp", instance, allocation, lambda i: instance.degree(i) + 1, instance.total_value
    )


def check_lp(instance: Instance, allocation: Allocation) -> CriterionReport:
    """(d(i)+1) * v_i(own) >= sum of v_i over the bundles of the closed neighbourhood."""

    def closed_sum(i):
        total = instance.value(i, allocation.bundle(i))
        for j in instance.neighbors[i]:
            total += instance.value(i, allocation.bundle(j))
        return total

    return _proportional(
        "lp", instance, allocation, lambda i: instance.degree(i) + 1, closed_sum
    )


def check_complete(instance: Instance, allocation: Allocation, goods: int | None = None) -> CriterionReport:
    """Every good (or every good in the bitset ``goods``) is assigned."""
    validate_allocation(instance, allocation)
    scope = instance.all_goods if goods is None else goods
    missing = scope & ~allocation.assigned
    return CriterionReport("complete", tuple(Violation(None, j) for j in members(missing)))


def check_non_wasteful(instance: Instance, allocation: Allocation) -> CriterionReport:
    validate_allocation(instance, allocation)
    out = []
    for i, bundle in enumerate(allocation.bundles):
        wasted = bundle & ~instance.approvals[i] & instance.valued_goods
        out.extend(Violation(i, j) for j in members(wasted))
    return CriterionReport("nonwasteful", tuple(out))


def check_pareto_efficient(
    instance: Instance, allocation: Allocation, mode: str = "characterization"
) -> CriterionReport:
    """Pareto efficiency.

    ``characterization`` tests completeness plus non-wastefulness, which is
    only equivalent when every good is approved by someone.
    ``exhaustive`` searches every assignment of each good to an agent or to
    nobody for a dominating allocation.
    """
    if mode == "characterization":
        unvalued = diagnose(instance).unvalued_goods
        if unvalued:
            raise PreconditionError(
                f"goods {list(unvalued)} are valued by nobody; "
                "use mode='exhaustive' for such instances"
            )
        v = check_complete(instance, allocation).violations
        v += check_non_wasteful(instance, allocation).violations
        return CriterionReport("pareto", v)
    if mode == "exhaustive":
        validate_allocation(instance, allocation)
        dom = find_dominator(instance, allocation)
        if dom is None:
            return CriterionReport("pareto")
        better = next(
            i for i in range(instance.n_agents)
            if instance.value(i, dom.bundle(i)) > instance.value(i, allocation.bundle(i))
        )
        own = instance.value(better, allocation.bundle(better))
        improved = instance.value(better, dom.bundle(better))
        return CriterionReport("pareto", (Violation(better, dom, own, improved),))
    raise ValueError(f"unknown Pareto mode {mode!r}")


def utility_vector(instance: Instance, allocation: Allocation) -> tuple[int, ...]:
    return tuple(instance.value(i, allocation.bundle(i)) for i in range(instance.n_agents))


@lru_cache(maxsize=4096)
def achievable_utilities(instance: Instance) -> dict[tuple[int, ...], tuple[int | None, ...]]:
    """All utility vectors reachable by some allocation, with one owner list each.

    Enumerates every map from goods to ``{None} | agents`` in lexicographic
    order; guarded to at most 2**24 assignments.
    """
    n, m = instance.n_agents, instance.n_goods
    if (n + 1) ** m > 2 ** EXHAUSTIVE_BIT_LIMIT:
        raise PreconditionError(
            f"exhaustive Pareto search over {(n + 1)}^{m} assignments exceeds the guard"
        )
    choices = [None, *range(n)]
    rows = instance.approvals
    out = {}
    for owners in product(choices, repeat=m):
        util = [0] * n
        for j, o in enumerate(owners):
            if o is not None and (rows[o] >> j) & 1:
                util[o] += 1
        out.setdefault(tuple(util), owners)
    return out


def find_dominator(instance: Instance, allocation: Allocation) -> Allocation | None:
    """A Pareto-dominating allocation, or None if ``allocation`` is efficient."""
    base = utility_vector(instance, allocation)
    for util, owners in achievable_utilities(instance).items():
        if util != base and all(u >= b for u, b in zip(util, base)):
            return Allocation.from_owners(owners)
    return None


CHECKERS = {
    "gef": check_gef,
    "gp": check_gp,
    "qp": check_qp,
    "lp": check_lp,
    "complete": check_complete,
    "nonwasteful": check_non_wasteful,
}


def check(instance: Instance, allocation: Allocation, criterion: str, **kwargs) -> CriterionReport:
    """Dispatch on a criterion name from :data:`CRITERIA`."""
    if criterion == "pareto":
        return check_pareto_efficient(instance, allocation, **kwargs)
    try:
        fn = CHECKERS[criterion]
    except KeyError:
        raise ValueError(f"unknown criterion {criterion!r}; expected one of {CRITERIA}") from None
    return fn(instance, allocation)
