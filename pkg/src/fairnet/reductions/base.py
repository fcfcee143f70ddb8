from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, NamedTuple

from ..criteria import check_complete, check_gef, check_lp, check_non_wasteful
from ..errors import WitnessError
from ..model import Allocation, Instance


class Role(NamedTuple):
    kind: str
    index: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.index:
            return self.kind
        return f"{self.kind}[{','.join(map(str, self.index))}]"


@dataclass(frozen=True)
class ReductionArtifact:
    """A reduced instance plus the role of every agent and good.

    ``target`` names the fairness notion the reduced instance is asked
    about (``"gef"`` or ``"lp"``), always paired with Pareto efficiency.
    """

    reduction: str
    source: Any
    instance: Instance
    agent_roles: tuple[Role, ...]
    good_roles: tuple[Role, ...]
    target: str
    trivial_no: bool = False
    notes: tuple[str, ...] = field(default=(), compare=False)

    @cached_property
    def _agent_index(self) -> dict[Role, int]:
        return {r: i for i, r in enumerate(self.agent_roles)}

    @cached_property
    def _good_index(self) -> dict[Role, int]:
        return {r: j for j, r in enumerate(self.good_roles)}

    def agent(self, kind: str, *index: int) -> int:
        return self._agent_index[Role(kind, tuple(index))]

    def good(self, kind: str, *index: int) -> int:
        return self._good_index[Role(kind, tuple(index))]

    def agents_of(self, kind: str) -> list[int]:
        return [i for i, r in enumerate(self.agent_roles) if r.kind == kind]

    def goods_of(self, kind: str) -> list[int]:
        return [j for j, r in enumerate(self.good_roles) if r.kind == kind]

    def agent_counts(self) -> dict[str, int]:
        return _count(self.agent_roles)

    def good_counts(self) -> dict[str, int]:
        return _count(self.good_roles)


def _count(roles) -> dict[str, int]:
    out: dict[str, int] = {}
    for r in roles:
        out[r.kind] = out.get(r.kind, 0) + 1
    return out


class Builder:
    """Accumulates agents, goods, approvals and edges in emission order."""

    def __init__(self):
        self.agent_roles: list[Role] = []
        self.good_roles: list[Role] = []
        self.approvals: list[set[int]] = []
        self.edges: set[tuple[int, int]] = set()

    def agent(self, kind: str, *index: int) -> int:
        self.agent_roles.append(Role(kind, tuple(index)))
        self.approvals.append(set())
        return len(self.agent_roles) - 1

    def good(self, kind: str, *index: int) -> int:
        self.good_roles.append(Role(kind, tuple(index)))
        return len(self.good_roles) - 1

    def approve(self, agent: int, goods) -> None:
        self.approvals[agent].update(goods)

    def edge(self, u: int, v: int) -> None:
        self.edges.add((min(u, v), max(u, v)))

    def build(self, reduction, source, target, trivial_no=False, notes=()) -> ReductionArtifact:
        inst = Instance.from_approvals(
            len(self.good_roles),
            [sorted(a) for a in self.approvals],
            sorted(self.edges),
            agent_names=[str(r) for r in self.agent_roles],
            good_names=[str(r) for r in self.good_roles],
        )
        return ReductionArtifact(
            reduction,
            source,
            inst,
            tuple(self.agent_roles),
            tuple(self.good_roles),
            target,
            trivial_no,
            tuple(notes),
        )


def trivial_no(reduction: str, source, target: str, reason: str) -> ReductionArtifact:
    """Two adjacent agents who both value a single good: no fair efficient allocation."""
    b = Builder()
    a0 = b.agent("trivial", 0)
    a1 = b.agent("trivial", 1)
    g = b.good("contested")
    b.approve(a0, [g])
    b.approve(a1, [g])
    b.edge(a0, a1)
    return b.build(reduction, source, target, trivial_no=True, notes=(reason,))


def meets_target(artifact: ReductionArtifact, allocation: Allocation) -> bool:
    """Fairness target plus efficiency (complete over valued goods, non-wasteful)."""
    inst = artifact.instance
    fair = {"gef": check_gef, "lp": check_lp}[artifact.target]
    return (
        fair(inst, allocation).satisfied
        and check_non_wasteful(inst, allocation).satisfied
        and check_complete(inst, allocation, inst.valued_goods).satisfied
    )


def require_target(artifact: ReductionArtifact, allocation: Allocation) -> None:
    if not meets_target(artifact, allocation):
        raise WitnessError(
            f"allocation does not satisfy {artifact.target} + Pareto efficiency on the artifact"
        )
