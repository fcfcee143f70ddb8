"""Linear SAT -> envy-free efficient allocation on a disjoint union of paths.

Gadgets (agent: approved goods):

* assignment ``Y_v - X_v`` with ``X_v: {x_v, xbar_v, y_v}``, ``Y_v: {y_v}``;
* isolated clause ``D_i - C_i`` with ``C_i``: its literal goods and ``d_i``,
  ``D_i: {d_i}``;
* coupled clauses ``G_i - A_i - B_i`` with ``G_i: {g_i}``,
  ``A_i: {g_i, s_i, t_i, l_i}`` and ``B_i: {s_i, t_i}``.

With ``stitch`` the components are chained into one path through connector
agents, each approving only a private connector good.
"""

from __future__ import annotations

from ..errors import WitnessError
from ..model import Allocation, Instance
from ..sources import LsatFormula, literal_true, validate_lsat_structure
from .base import Builder, ReductionArtifact, require_target

NAME = "lsat"


def literal_role(lit: int) -> tuple[str, int]:
    return ("x" if lit > 0 else "xbar", abs(lit) - 1)


def reduce_lsat_paths(src: LsatFormula, stitch: bool = False) -> ReductionArtifact:
    validate_lsat_structure(src)
    n, q, p = src.n_vars, len(src.coupled), len(src.isolated)
    b = Builder()
    y = [b.good("y", v) for v in range(n)]
    lit_good = {}
    for v in range(n):
        lit_good[v + 1] = b.good("x", v)
    for v in range(n):
        lit_good[-(v + 1)] = b.good("xbar", v)
    g = [b.good("g", i) for i in range(q)]
    d = [b.good("d", i) for i in range(p)]

    X = [b.agent("X", v) for v in range(n)]
    A, B = [], []
    for i in range(q):
        A.append(b.agent("A", i))
        B.append(b.agent("B", i))
    C = [b.agent("C", i) for i in range(p)]
    Y = [b.agent("Y", v) for v in range(n)]
    G = [b.agent("G", i) for i in range(q)]
    D = [b.agent("D", i) for i in range(p)]

    components = []
    for v in range(n):
        b.approve(X[v], [lit_good[v + 1], lit_good[-(v + 1)], y[v]])
        b.approve(Y[v], [y[v]])
        b.edge(X[v], Y[v])
        components.append([Y[v], X[v]])
    for i, clause in enumerate(src.isolated):
        b.approve(C[i], [lit_good[lit] for lit in clause] + [d[i]])
        b.approve(D[i], [d[i]])
        b.edge(C[i], D[i])
        components.append([D[i], C[i]])
    for i in range(q):
        s, l, t = src.coupled_literals(i)
        b.approve(G[i], [g[i]])
        b.approve(A[i], [g[i], lit_good[s], lit_good[t], lit_good[l]])
        b.approve(B[i], [lit_good[s], lit_good[t]])
        b.edge(G[i], A[i])
        b.edge(A[i], B[i])
        components.append([G[i], A[i], B[i]])

    if stitch:
        for r in range(len(components) - 1):
            c = b.agent("connector", r)
            cg = b.good("connector", r)
            b.approve(c, [cg])
            b.edge(components[r][-1], c)
            b.edge(c, components[r + 1][0])
    return b.build(NAME, src, "gef", notes=(f"stitch={stitch}",))


def forward(artifact: ReductionArtifact, assignment) -> Allocation:
    src: LsatFormula = artifact.source
    assignment = tuple(bool(a) for a in assignment)
    if len(assignment) != src.n_vars or not src.satisfied_by(assignment):
        raise WitnessError("assignment does not satisfy the formula")
    owners: list[int | None] = [None] * artifact.instance.n_goods

    def give(role, agent):
        owners[artifact.good(*role)] = agent

    for v in range(src.n_vars):
        give(("y", v), artifact.agent("Y", v))
    for i in range(len(src.coupled)):
        give(("g", i), artifact.agent("G", i))
    for i in range(len(src.isolated)):
        give(("d", i), artifact.agent("D", i))
    for c in artifact.agents_of("connector"):
        give(("connector", artifact.agent_roles[c].index[0]), c)

    placed = set()
    for i in range(len(src.coupled)):
        s, l, t = src.coupled_literals(i)
        a, b = artifact.agent("A", i), artifact.agent("B", i)
        st, lt, tt = (literal_true(x, assignment) for x in (s, l, t))
        if lt:
            give(literal_role(l), a)
            placed.add(l)
            if st and tt:
                give(literal_role(s), a)
                give(literal_role(t), b)
                placed |= {s, t}
            elif st or tt:
                lit = s if st else t
                give(literal_role(lit), b)
                placed.add(lit)
        else:
            give(literal_role(s), a)
            give(literal_role(t), b)
            placed |= {s, t}
    for i, clause in enumerate(src.isolated):
        for lit in clause:
            if literal_true(lit, assignment):
                give(literal_role(lit), artifact.agent("C", i))
                placed.add(lit)
    # false literals, and true literals no clause agent took, stay with X_v
    for v in range(src.n_vars):
        for lit in (v + 1, -(v + 1)):
            if lit not in placed:
                give(literal_role(lit), artifact.agent("X", v))
    return Allocation.from_owners(owners)


def backward(artifact: ReductionArtifact, allocation: Allocation) -> tuple[bool, ...]:
    """x_v is false exactly when X_v's literal goods are {x_v}."""
    require_target(artifact, allocation)
    src: LsatFormula = artifact.source
    out = []
    for v in range(src.n_vars):
        held = allocation.bundle(artifact.agent("X", v))
        pos = 1 << artifact.good("x", v)
        neg = 1 << artifact.good("xbar", v)
        out.append((held & (pos | neg)) != pos)
    tau = tuple(out)
    if not src.satisfied_by(tau):
        raise WitnessError(f"extracted assignment {tau} does not satisfy the formula")
    return tau


def is_path_forest(instance: Instance) -> bool:
    """Every connected component is a simple path (isolated vertices included)."""
    n = instance.n_agents
    if any(len(nb) > 2 for nb in instance.neighbors):
        return False
    return len(instance.edges) == n - _components(instance)


def is_single_path(instance: Instance) -> bool:
    n = instance.n_agents
    if not is_path_forest(instance) or _components(instance) != 1:
        return False
    return n == 1 or sum(1 for nb in instance.neighbors if len(nb) == 1) == 2


def _components(instance: Instance) -> int:
    seen = [False] * instance.n_agents
    count = 0
    for start in range(instance.n_agents):
        if seen[start]:
            continue
        count += 1
        stack = [start]
        seen[start] = True
        while stack:
            u = stack.pop()
            for v in instance.neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
    return count
