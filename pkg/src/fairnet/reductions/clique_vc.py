"""Clique -> envy-free efficient allocation on a graph with a k-vertex cover.

``k`` key agents; ``m`` guard agents per key pair ``i < j``, each adjacent
to ``u_i`` and ``u_j``; ``n-k`` residual agents completely joined to the
keys.  One core good per source vertex (valued by keys and residuals),
``m-1`` dummy goods per key pair (valued by that pair's guards), and guard
``x_ij^t`` also values every core good except the endpoints of edge ``e_t``.
"""

from __future__ import annotations

from itertools import combinations

from ..errors import WitnessError
from ..model import Allocation
from ..oracles import is_clique
from ..sources import CliqueInstance
from .base import Builder, ReductionArtifact, require_target, trivial_no

NAME = "clique-vc"


def reduce_clique_vertexcover(src: CliqueInstance) -> ReductionArtifact:
    g, k = src.graph, src.k
    n, m = g.n, g.m
    if k > n:
        return trivial_no(NAME, src, "gef", "k > |V|")
    if k >= 2 and m == 0:
        # m-1 dummy goods per pair is undefined, and there is no edge to be a clique
        return trivial_no(NAME, src, "gef", "k >= 2 on an edgeless graph")
    if k == n and m != n * (n - 1) // 2:
        # without residual agents a guard can absorb a core good and the
        # gadget admits fair allocations for non-cliques (e.g. n = k = 3, one edge)
        return trivial_no(NAME, src, "gef", "k = |V| on a non-complete graph")
    b = Builder()
    keys = [b.agent("key", i) for i in range(k)]
    pairs = list(combinations(range(k), 2))
    guards = {(i, j): [b.agent("guard", i, j, t) for t in range(m)] for i, j in pairs}
    residual = [b.agent("residual", r) for r in range(n - k)]
    core = [b.good("core", v) for v in range(n)]
    dummies = {(i, j): [b.good("dummy", i, j, c) for c in range(m - 1)] for i, j in pairs}
    for (i, j), group in guards.items():
        for t, x in enumerate(group):
            b.edge(x, keys[i])
            b.edge(x, keys[j])
            p, q = g.edges[t]
            b.approve(x, [core[v] for v in range(n) if v not in (p, q)])
            b.approve(x, dummies[i, j])
    for r in residual:
        for key in keys:
            b.edge(r, key)
    for a in keys + residual:
        b.approve(a, core)
    return b.build(NAME, src, "gef")


def vertex_cover(artifact: ReductionArtifact) -> list[int]:
    return artifact.agents_of("key")


def forward(artifact: ReductionArtifact, clique) -> Allocation:
    """Clique cores to the keys, other cores to residuals; every guard except
    the one indexed by the edge between its keys' vertices gets a dummy."""
    src: CliqueInstance = artifact.source
    g = src.graph
    clique = sorted(clique)
    if artifact.trivial_no or len(clique) != src.k or not is_clique(g, clique):
        raise WitnessError("witness is not a k-clique of the source graph")
    owners: list[int | None] = [None] * artifact.instance.n_goods
    for i, v in enumerate(clique):
        owners[artifact.good("core", v)] = artifact.agent("key", i)
    others = [v for v in range(g.n) if v not in set(clique)]
    for r, v in enumerate(others):
        owners[artifact.good("core", v)] = artifact.agent("residual", r)
    for i, j in combinations(range(src.k), 2):
        special = g.edges.index((clique[i], clique[j]))
        holders = [t for t in range(g.m) if t != special]
        for c, t in enumerate(holders):
            owners[artifact.good("dummy", i, j, c)] = artifact.agent("guard", i, j, t)
    return Allocation.from_owners(owners)


def backward(artifact: ReductionArtifact, allocation: Allocation) -> tuple[int, ...]:
    """The vertices of the core goods held by key agents form the clique."""
    require_target(artifact, allocation)
    src: CliqueInstance = artifact.source
    if artifact.trivial_no:
        raise WitnessError("trivial no-instance admits no fair efficient allocation")
    if src.k == src.graph.n:
        # the whole (complete) graph; keys need not hold one core each here
        return tuple(range(src.k))
    chosen = []
    for key in artifact.agents_of("key"):
        held = [
            artifact.good_roles[j].index[0]
            for j in allocation.goods_of(key)
            if artifact.good_roles[j].kind == "core"
        ]
        if len(held) != 1:
            raise WitnessError(f"key agent {key} holds {len(held)} core goods, expected 1")
        chosen.append(held[0])
    X = tuple(sorted(chosen))
    if len(set(X)) != src.k or not is_clique(src.graph, X):
        raise WitnessError(f"extracted vertex set {X} is not a {src.k}-clique")
    return X
