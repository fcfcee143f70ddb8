"""Clique -> envy-free efficient allocation with few goods.

With ``l = C(k, 2)`` the goods are ``l`` popular, ``k`` specialized and
``l+1`` dummy goods, so their number depends on ``k`` only.  Agents are
one per vertex, one per edge, ``l+1`` S-agents and ``l+1`` W-agents per
vertex.  An edge agent is adjacent to its endpoints and to every S-agent;
vertex ``v_i`` is adjacent to its own W-group, which is a clique.
Everybody values the popular goods, vertex agents value the specialized
goods and ``s_i`` values ``d_i``.
"""

from __future__ import annotations

from itertools import combinations

from ..errors import WitnessError
from ..model import Allocation
from ..oracles import is_clique
from ..sources import CliqueInstance
from .base import Builder, ReductionArtifact, require_target, trivial_no

NAME = "clique-goods"


def reduce_clique_goods(src: CliqueInstance) -> ReductionArtifact:
    g, k = src.graph, src.k
    l = src.pairs
    if g.m < l or k > g.n:
        return trivial_no(NAME, src, "gef", f"fewer than C(k,2) = {l} edges or k > |V|")
    b = Builder()
    popular = [b.good("popular", i) for i in range(l)]
    special = [b.good("specialized", i) for i in range(k)]
    dummy = [b.good("dummy", i) for i in range(l + 1)]
    V = [b.agent("vertex", i) for i in range(g.n)]
    E = [b.agent("edge", t) for t in range(g.m)]
    S = [b.agent("s", i) for i in range(l + 1)]
    W = [[b.agent("w", i, j) for j in range(l + 1)] for i in range(g.n)]
    for t, (p, q) in enumerate(g.edges):
        for s in S:
            b.edge(E[t], s)
        b.edge(E[t], V[p])
        b.edge(E[t], V[q])
    for i in range(g.n):
        for w in W[i]:
            b.edge(V[i], w)
        for w1, w2 in combinations(W[i], 2):
            b.edge(w1, w2)
    for a in range(len(b.agent_roles)):
        b.approve(a, popular)
    for v in V:
        b.approve(v, special)
    for s, d in zip(S, dummy):
        b.approve(s, [d])
    return b.build(NAME, src, "gef")


def forward(artifact: ReductionArtifact, clique) -> Allocation:
    """One popular good per edge of the clique, one specialized good per
    clique vertex, ``d_i`` to ``s_i``."""
    src: CliqueInstance = artifact.source
    g = src.graph
    clique = sorted(clique)
    if artifact.trivial_no or len(clique) != src.k or not is_clique(g, clique):
        raise WitnessError("witness is not a k-clique of the source graph")
    inside = set(clique)
    edges = [t for t, (p, q) in enumerate(g.edges) if p in inside and q in inside]
    owners: list[int | None] = [None] * artifact.instance.n_goods
    for j, t in zip(artifact.goods_of("popular"), edges):
        owners[j] = artifact.agent("edge", t)
    for j, v in zip(artifact.goods_of("specialized"), clique):
        owners[j] = artifact.agent("vertex", v)
    for i, j in enumerate(artifact.goods_of("dummy")):
        owners[j] = artifact.agent("s", i)
    return Allocation.from_owners(owners)


def backward(artifact: ReductionArtifact, allocation: Allocation) -> tuple[int, ...]:
    """The vertices whose agents hold a specialized good form the clique."""
    require_target(artifact, allocation)
    src: CliqueInstance = artifact.source
    if artifact.trivial_no:
        raise WitnessError("trivial no-instance admits no fair efficient allocation")
    special = 0
    for j in artifact.goods_of("specialized"):
        special |= 1 << j
    X = tuple(v for v in range(src.graph.n) if allocation.bundle(artifact.agent("vertex", v)) & special)
    if len(X) != src.k or not is_clique(src.graph, X):
        raise WitnessError(f"extracted vertex set {X} is not a {src.k}-clique")
    return X
