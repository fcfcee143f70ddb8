"""3-Coloring -> locally proportional efficient allocation.

Goods: one core good per vertex, guard goods ``e_i^b`` per edge and colour,
``a_b`` and ``x_b`` per colour.  Agents: ``E_i^b`` per edge and colour
(the group ``F_b``), ``A_b``, ``B_b`` and a clique ``C_b`` of ``n+2`` agents
per colour.  ``A_b``, ``B_b`` and ``C_0^b`` are adjacent to all of ``F_b``.
"""

from __future__ import annotations

from itertools import combinations

from ..errors import WitnessError
from ..model import Allocation
from ..oracles import is_proper_coloring
from ..sources import ColoringInstance
from .base import Builder, ReductionArtifact, require_target

NAME = "3col"
COLORS = (1, 2, 3)


def reduce_3col_lpa(src: ColoringInstance) -> ReductionArtifact:
    g = src.graph
    n, m = g.n, g.m
    b = Builder()
    core = [b.good("core", v) for v in range(n)]
    guard = {(c, i): b.good("guard", c, i) for c in COLORS for i in range(m)}
    a = {c: b.good("a", c) for c in COLORS}
    x = {c: b.good("x", c) for c in COLORS}

    F = {(c, i): b.agent("E", c, i) for c in COLORS for i in range(m)}
    A = {c: b.agent("A", c) for c in COLORS}
    B = {c: b.agent("B", c) for c in COLORS}
    C = {c: [b.agent("C", c, i) for i in range(n + 2)] for c in COLORS}

    for c in COLORS:
        b.approve(A[c], core + [a[c]])
        b.approve(B[c], [x[c]])
        for agent in C[c]:
            b.approve(agent, core + [a[c]])
        for u, v in combinations(C[c], 2):
            b.edge(u, v)
        for i, (p, q) in enumerate(g.edges):
            e = F[c, i]
            b.approve(e, [guard[c, i], core[p], core[q], x[c], a[c]])
            for hub in (A[c], B[c], C[c][0]):
                b.edge(e, hub)
    return b.build(NAME, src, "lp")


def forward(artifact: ReductionArtifact, coloring) -> Allocation:
    """Colour-b cores and ``a_b`` to ``A_b``, ``e_i^b`` to ``E_i^b``, ``x_b`` to ``B_b``."""
    src: ColoringInstance = artifact.source
    coloring = tuple(coloring)
    if not is_proper_coloring(src.graph, coloring):
        raise WitnessError("witness is not a proper 3-coloring of the source graph")
    owners: list[int | None] = [None] * artifact.instance.n_goods
    for v, c in enumerate(coloring):
        owners[artifact.good("core", v)] = artifact.agent("A", c)
    for c in COLORS:
        owners[artifact.good("a", c)] = artifact.agent("A", c)
        owners[artifact.good("x", c)] = artifact.agent("B", c)
        for i in range(src.graph.m):
            owners[artifact.good("guard", c, i)] = artifact.agent("E", c, i)
    return Allocation.from_owners(owners)


def backward(artifact: ReductionArtifact, allocation: Allocation) -> tuple[int, ...]:
    """Vertex v gets colour b when ``A_b`` holds its core good."""
    require_target(artifact, allocation)
    src: ColoringInstance = artifact.source
    colors = []
    for v in range(src.graph.n):
        holder = allocation.owner(artifact.good("core", v))
        role = artifact.agent_roles[holder] if holder is not None else None
        if role is None or role.kind != "A":
            raise WitnessError(f"core good of vertex {v} is not held by a colour agent")
        colors.append(role.index[0])
    out = tuple(colors)
    if not is_proper_coloring(src.graph, out):
        raise WitnessError(f"extracted coloring {out} is not proper")
    return out
