"""Cutting l vertices -> envy-free efficient allocation with two agent types.

Agents: greedy ``w_i`` and happy ``u_i`` per vertex, one trigger ``s``.
Goods: ``l`` coveted (everyone), ``n-l+1`` w-type (trigger and greedy),
``l+k`` u-type (happy).  A source edge ``(v_i, v_j)`` becomes the agent
edges ``(w_i, u_j)`` and ``(w_j, u_i)``; each ``w_i`` is also joined to
``u_i`` and to the trigger.
"""

from __future__ import annotations

from ..errors import ReductionError, WitnessError
from ..model import Allocation
from ..oracles import is_valid_cut
from ..sources import CuttingInstance
from .base import Builder, ReductionArtifact, require_target

NAME = "cutting"


def reduce_cutting_to_two_types(src: CuttingInstance) -> ReductionArtifact:
    g = src.graph
    n, l, k = g.n, src.l, src.k
    if l > n:
        raise ReductionError(f"l = {l} exceeds |V| = {n}; the w-type count n-l+1 would be non-positive")
    b = Builder()
    w = [b.agent("greedy", i) for i in range(n)]
    u = [b.agent("happy", i) for i in range(n)]
    s = b.agent("trigger")
    coveted = [b.good("coveted", i) for i in range(l)]
    wtype = [b.good("w-type", i) for i in range(n - l + 1)]
    utype = [b.good("u-type", i) for i in range(l + k)]
    for vi, vj in g.edges:
        b.edge(w[vi], u[vj])
        b.edge(w[vj], u[vi])
    for i in range(n):
        b.edge(w[i], u[i])
        b.edge(s, w[i])
    for a in [*w, s]:
        b.approve(a, coveted + wtype)
    for a in u:
        b.approve(a, coveted + utype)
    return b.build(NAME, src, "gef")


def forward(artifact: ReductionArtifact, partition) -> Allocation:
    """Coveted goods to the greedy agents of X, w-type goods to the other
    greedy agents and the trigger, u-type goods to the happy agents of X and S."""
    src: CuttingInstance = artifact.source
    if not is_valid_cut(src, partition):
        raise WitnessError("partition is not a valid cut for the source instance")
    X, S, Y = (sorted(p) for p in partition)
    n = src.graph.n
    owners: list[int | None] = [None] * artifact.instance.n_goods
    for j, v in zip(artifact.goods_of("coveted"), X):
        owners[j] = artifact.agent("greedy", v)
    rest = [artifact.agent("greedy", v) for v in range(n) if v not in set(X)]
    rest.append(artifact.agent("trigger"))
    for j, a in zip(artifact.goods_of("w-type"), rest):
        owners[j] = a
    # |S| may fall short of k; surplus u-type goods go to further happy agents
    # (happy agents are pairwise non-adjacent and only they value u-type goods).
    order = [*X, *S, *Y]
    utype = artifact.goods_of("u-type")
    for pos, j in enumerate(utype if order else ()):
        v = order[pos] if pos < len(order) else order[0]
        owners[j] = artifact.agent("happy", v)
    return Allocation.from_owners(owners)


def backward(artifact: ReductionArtifact, allocation: Allocation):
    """X = vertices whose greedy agent holds a coveted good; S = other vertices
    whose happy agent holds a u-type good; Y = the rest."""
    require_target(artifact, allocation)
    src: CuttingInstance = artifact.source
    n = src.graph.n
    coveted = 0
    for j in artifact.goods_of("coveted"):
        coveted |= 1 << j
    utype = 0
    for j in artifact.goods_of("u-type"):
        utype |= 1 << j
    X = tuple(v for v in range(n) if allocation.bundle(artifact.agent("greedy", v)) & coveted)
    star = {v for v in range(n) if allocation.bundle(artifact.agent("happy", v)) & utype}
    S = tuple(sorted(star - set(X)))
    Y = tuple(v for v in range(n) if v not in set(X) and v not in star)
    cert = (X, S, Y)
    if not is_valid_cut(src, cert):
        raise WitnessError(f"extracted partition {cert} is not a valid cut")
    return cert
