"""Quasi-global proportionality with Pareto efficiency as a feasible flow.

The 0/1 integer program

    sum_i x_ij = 1             for every valued good j
    sum_j a_ij x_ij >= s_i / (d_i + 1)   for every agent i
    x_ij = 0 unless a_ij = 1

has a totally unimodular constraint matrix, and it is exactly a flow
problem: source -> agent i with bounds [ceil(s_i/(d_i+1)), s_i],
agent i -> good j (capacity 1) when i approves j, and good j -> sink with
bounds [1, 1].  Any integral feasible flow decodes to a complete,
non-wasteful, quasi-globally proportional allocation and vice versa.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .criteria import check_complete, check_non_wasteful, check_qp
from .model import Allocation, Instance, members

SOURCE = 0
SINK = 1


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    lower: int
    upper: int


@dataclass(frozen=True)
class FlowNetwork:
    labels: tuple[str, ...]
    arcs: tuple[Arc, ...]
    source: int = SOURCE
    sink: int = SINK
    agent_nodes: tuple[int, ...] = ()
    good_nodes: tuple[tuple[int, int], ...] = ()  # (good index, node id)
    unvalued_goods: tuple[int, ...] = ()

    @property
    def n_nodes(self) -> int:
        return len(self.labels)


def qp_demand(instance: Instance, i: int) -> int:
    """Smallest integer number of approved goods meeting agent i's QP share."""
    return -(-instance.total_value(i) // (instance.degree(i) + 1))


def build_qp_network(instance: Instance) -> FlowNetwork:
    n = instance.n_agents
    labels = ["source", "sink"] + [f"agent:{i}" for i in range(n)]
    agent_nodes = tuple(range(2, 2 + n))
    valued = members(instance.valued_goods)
    good_nodes = tuple((j, 2 + n + k) for k, j in enumerate(valued))
    labels += [f"good:{j}" for j in valued]
    node_of_good = dict(good_nodes)
    arcs = []
    for i in range(n):
        arcs.append(Arc(SOURCE, agent_nodes[i], qp_demand(instance, i), instance.total_value(i)))
    for i in range(n):
        for j in members(instance.approvals[i]):
            arcs.append(Arc(agent_nodes[i], node_of_good[j], 0, 1))
    for j, node in good_nodes:
        arcs.append(Arc(node, SINK, 1, 1))
    unvalued = tuple(j for j in range(instance.n_goods) if not instance.approvers[j])
    return FlowNetwork(tuple(labels), tuple(arcs), SOURCE, SINK, agent_nodes, good_nodes, unvalued)


class _Dinic:
    def __init__(self, n_nodes: int):
        self.n = n_nodes
        self.head: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n_nodes)]

    def add_edge(self, u: int, v: int, cap: int) -> int:
        """Add u->v and its residual twin; returns the forward edge id."""
        eid = len(self.head)
        self.head += [v, u]
        self.cap += [cap, 0]
        self.adj[u].append(eid)
        self.adj[v].append(eid + 1)
        return eid

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for e in self.adj[u]:
                    if self.cap[e] > 0 and level[self.head[e]] < 0:
                        level[self.head[e]] = level[u] + 1
                        queue.append(self.head[e])
            if level[t] < 0:
                return total
            it = [0] * self.n
            while True:
                pushed = self._push(s, t, float("inf"), level, it)
                if not pushed:
                    break
                total += pushed

    def _push(self, s, t, limit, level, it):
        # iterative DFS along the level graph
        path: list[int] = []
        u = s
        while True:
            if u == t:
                f = limit
                for e in path:
                    f = min(f, self.cap[e])
                for e in path:
                    self.cap[e] -= f
                    self.cap[e ^ 1] += f
                return f
            adj = self.adj[u]
            advanced = False
            while it[u] < len(adj):
                e = adj[it[u]]
                v = self.head[e]
                if self.cap[e] > 0 and level[v] == level[u] + 1:
                    path.append(e)
                    u = v
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                if not path:
                    return 0
                level[u] = -1  # dead end
                e = path.pop()
                u = self.head[e ^ 1]
                it[u] += 1


def solve_feasible_flow(network: FlowNetwork) -> list[int] | None:
    """Integral flow per arc meeting every lower and upper bound, or None.

    Uses the standard reduction: arcs keep capacity ``upper - lower``, lower
    bounds become node imbalances fed from a super source / drained to a
    super sink, and an uncapacitated sink->source arc closes the circulation.
    The network is feasible iff the super source is saturated.
    """
    N = network.n_nodes
    super_s, super_t = N, N + 1
    g = _Dinic(N + 2)
    excess = [0] * N
    ids = []
    for a in network.arcs:
        if a.lower > a.upper:
            return None
        ids.append(g.add_edge(a.tail, a.head, a.upper - a.lower))
        excess[a.head] += a.lower
        excess[a.tail] -= a.lower
    big = sum(a.upper for a in network.arcs) + 1
    g.add_edge(network.sink, network.source, big)
    required = 0
    for v, ex in enumerate(excess):
        if ex > 0:
            g.add_edge(super_s, v, ex)
            required += ex
        elif ex < 0:
            g.add_edge(v, super_t, -ex)
    if g.max_flow(super_s, super_t) != required:
        return None
    return [a.lower + g.cap[eid ^ 1] for a, eid in zip(network.arcs, ids)]


def flow_value(network: FlowNetwork, flows: list[int]) -> int:
    return sum(f for a, f in zip(network.arcs, flows) if a.head == network.sink)


@dataclass(frozen=True)
class QpSolveResult:
    feasible: bool
    allocation: Allocation | None
    max_flow_value: int
    unvalued_goods: tuple[int, ...] = ()


def solve_qp_pareto(instance: Instance) -> QpSolveResult:
    """Complete (over valued goods), non-wasteful, quasi-globally proportional allocation.

    Goods nobody values are excluded from the network and left unallocated.
    """
    net = build_qp_network(instance)
    flows = solve_feasible_flow(net)
    if flows is None:
        return QpSolveResult(False, None, 0, net.unvalued_goods)
    agent_of_node = {node: i for i, node in enumerate(net.agent_nodes)}
    good_of_node = {node: j for j, node in net.good_nodes}
    owners: list[int | None] = [None] * instance.n_goods
    for a, f in zip(net.arcs, flows):
        if f and a.tail in agent_of_node and a.head in good_of_node:
            owners[good_of_node[a.head]] = agent_of_node[a.tail]
    alloc = Allocation.from_owners(owners)
    if not (
        check_qp(instance, alloc).satisfied
        and check_non_wasteful(instance, alloc).satisfied
        and check_complete(instance, alloc, instance.valued_goods).satisfied
    ):
        raise AssertionError("decoded flow violates QP or efficiency")
    return QpSolveResult(True, alloc, flow_value(net, flows), net.unvalued_goods)


def render_network(network: FlowNetwork) -> str:
    """Arc-list text form: ``node <id> <label>`` then ``arc <u> <v> <lower> <upper>``."""
    lines = ["# fairnet flow network", f"nodes {network.n_nodes}"]
    lines += [f"node {k} {label}" for k, label in enumerate(network.labels)]
    lines += [f"arc {a.tail} {a.head} {a.lower} {a.upper}" for a in network.arcs]
    return "\n".join(lines) + "\n"
