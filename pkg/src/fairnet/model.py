"""Instances, allocations and their structural validation.

Agents and goods are dense 0-based indices.  Each agent's approval set and
each bundle is stored as an ``int`` bitset over goods, so the value of a
bundle to an agent is ``(approvals[i] & bundle).bit_count()``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import AllocationError, InstanceError


def mask_of(items: Iterable[int]) -> int:
    mask = 0
    for j in items:
        mask |= 1 << j
    return mask


def members(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def _normalize_edges(n: int, edges: Iterable[Sequence[int]]) -> tuple[tuple[int, int], ...]:
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise InstanceError(f"edge {tuple(e)!r} must have exactly two endpoints")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise InstanceError(f"edge ({u}, {v}) references an agent outside 0..{n - 1}")
        if u == v:
            raise InstanceError(f"self-loop on agent {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InstanceError(f"parallel edge ({key[0]}, {key[1]})")
        seen.add(key)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class Instance:
    """A fair-division instance with 0/1 additive valuations on an undirected graph.

    Build instances with :meth:`from_matrix` or :meth:`from_approvals`; the
    raw constructor trusts its arguments.
    """

    n_agents: int
    n_goods: int
    approvals: tuple[int, ...]
    edges: tuple[tuple[int, int], ...] = ()
    agent_names: tuple[str, ...] | None = field(default=None, compare=False)
    good_names: tuple[str, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_approvals(cls, n_goods, approvals, edges=(), agent_names=None, good_names=None):
        """Build from one iterable of approved good indices per agent."""
        if isinstance(n_goods, bool) or int(n_goods) != n_goods or n_goods < 0:
            raise InstanceError(f"number of goods must be a non-negative integer, got {n_goods!r}")
        n_goods = int(n_goods)
        rows = []
        for i, row in enumerate(approvals):
            row = list(row)
            for j in row:
                if not (0 <= j < n_goods):
                    raise InstanceError(f"agent {i} approves good {j} outside 0..{n_goods - 1}")
            rows.append(mask_of(row))
        n = len(rows)
        return cls(
            n_agents=n,
            n_goods=n_goods,
            approvals=tuple(rows),
            edges=_normalize_edges(n, edges),
            agent_names=tuple(agent_names) if agent_names is not None else None,
            good_names=tuple(good_names) if good_names is not None else None,
        )

    @classmethod
    def from_matrix(cls, valuations, edges=(), n_goods=None, agent_names=None, good_names=None):
        """Build from an n x m 0/1 valuation matrix (nested sequences or an array)."""
        rows = [list(r) for r in valuations]
        if n_goods is None:
            n_goods = len(rows[0]) if rows else 0
        approvals = []
        for i, row in enumerate(rows):
            if len(row) != n_goods:
                raise InstanceError(
                    f"dimension mismatch: row {i} has {len(row)} entries, expected {n_goods}"
                )
            approved = []
            for j, a in enumerate(row):
                if a == 1:
                    approved.append(j)
                elif a != 0:
                    raise InstanceError(f"non-binary valuation {a!r} at agent {i}, good {j}")
            approvals.append(approved)
        return cls.from_approvals(n_goods, approvals, edges, agent_names, good_names)

    # derived structure ------------------------------------------------

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n_agents)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, i: int) -> int:
        return len(self.neighbors[i])

    def value(self, i: int, bundle: int) -> int:
        """Additive 0/1 value of the bitset ``bundle`` to agent ``i``."""
        return (self.approvals[i] & bundle).bit_count()

    def total_value(self, i: int) -> int:
        return self.approvals[i].bit_count()

    @cached_property
    def approvers(self) -> tuple[int, ...]:
        """Bitset over agents approving each good."""
        cols = [0] * self.n_goods
        for i, row in enumerate(self.approvals):
            for j in members(row):
                cols[j] |= 1 << i
        return tuple(cols)

    @cached_property
    def valued_goods(self) -> int:
        """Bitset of goods approved by at least one agent."""
        mask = 0
        for row in self.approvals:
            mask |= row
        return mask

    @property
    def all_goods(self) -> int:
        return (1 << self.n_goods) - 1

    def valuation_matrix(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.n_goods)] for row in self.approvals]


@dataclass(frozen=True)
class InstanceDiagnostics:
    unvalued_goods: tuple[int, ...]
    isolated_agents: tuple[int, ...]
    is_connected: bool
    has_identical_valuations: bool


def validate_instance(raw) -> Instance:
    """Turn a raw description into a validated :class:`Instance`.

    ``raw`` is either an :class:`Instance` (re-validated) or a mapping with
    keys ``valuations`` (n x m 0/1 matrix) and optional ``edges``,
    ``agents`` and ``goods`` (declared counts, checked against the matrix).
    """
    if isinstance(raw, Instance):
        raw = {
            "agents": raw.n_agents,
            "goods": raw.n_goods,
            "valuations": raw.valuation_matrix(),
            "edges": list(raw.edges),
        }
    if not isinstance(raw, Mapping):
        raise InstanceError("instance description must be a mapping or an Instance")
    valuations = raw.get("valuations")
    if valuations is None:
        raise InstanceError("instance description lacks 'valuations'")
    rows = [list(r) for r in valuations]
    n = raw.get("agents", len(rows))
    if n != len(rows):
        raise InstanceError(f"dimension mismatch: {n} agents declared, {len(rows)} valuation rows")
    m = raw.get("goods")
    if m is None:
        m = len(rows[0]) if rows else 0
    return Instance.from_matrix(rows, raw.get("edges", ()), n_goods=m)


def diagnose(instance: Instance) -> InstanceDiagnostics:
    n = instance.n_agents
    unvalued = tuple(j for j in range(instance.n_goods) if not instance.approvers[j])
    isolated = tuple(i for i in range(n) if not instance.neighbors[i])
    seen = {0} if n else set()
    stack = [0] if n else []
    while stack:
        u = stack.pop()
        for v in instance.neighbors[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return InstanceDiagnostics(
        unvalued_goods=unvalued,
        isolated_agents=isolated,
        is_connected=len(seen) == n,
        has_identical_valuations=len(set(instance.approvals)) <= 1,
    )


@dataclass(frozen=True)
class Allocation:
    """Bundles as bitsets over goods; agents past the end hold nothing.

    Construction does not check disjointness; use :func:`validate_allocation`.
    """

    bundles: tuple[int, ...] = ()

    def __post_init__(self):
        b = tuple(self.bundles)
        while b and b[-1] == 0:
            b = b[:-1]
        object.__setattr__(self, "bundles", b)

    @classmethod
    def from_sets(cls, sets) -> Allocation:
        """Build from a mapping ``agent -> goods`` or a sequence of good collections."""
        if isinstance(sets, Mapping):
            if not sets:
                return cls(())
            if min(sets) < 0:
                raise AllocationError(f"negative agent index {min(sets)}")
            out = [0] * (max(sets) + 1)
            for i, goods in sets.items():
                out[i] = _checked_mask(goods)
            return cls(tuple(out))
        return cls(tuple(_checked_mask(g) for g in sets))

    @classmethod
    def from_owners(cls, owners: Sequence[int | None]) -> Allocation:
        """Build from ``owners[j]`` = recipient agent of good ``j`` (or None)."""
        size = max((o for o in owners if o is not None), default=-1) + 1
        out = [0] * size
        for j, o in enumerate(owners):
            if o is not None:
                out[o] |= 1 << j
        return cls(tuple(out))

    def bundle(self, i: int) -> int:
        return self.bundles[i] if i < len(self.bundles) else 0

    def goods_of(self, i: int) -> list[int]:
        return members(self.bundle(i))

    def as_sets(self) -> dict[int, frozenset[int]]:
        return {i: frozenset(members(b)) for i, b in enumerate(self.bundles) if b}

    @property
    def assigned(self) -> int:
        mask = 0
        for b in self.bundles:
            mask |= b
        return mask

    def owner(self, j: int) -> int | None:
        bit = 1 << j
        for i, b in enumerate(self.bundles):
            if b & bit:
                return i
        return None

    def size(self) -> int:
        return sum(b.bit_count() for b in self.bundles)


def _checked_mask(goods) -> int:
    goods = list(goods)
    for j in goods:
        if j < 0:
            raise AllocationError(f"negative good index {j}")
    return mask_of(goods)


def validate_allocation(instance: Instance, allocation: Allocation) -> None:
    """Raise :class:`AllocationError` unless bundles are disjoint and in range."""
    if len(allocation.bundles) > instance.n_agents:
        raise AllocationError(
            f"allocation gives goods to agent {len(allocation.bundles) - 1}, "
            f"instance has {instance.n_agents} agents"
        )
    seen = 0
    for i, b in enumerate(allocation.bundles):
        if b >> instance.n_goods:
            bad = members(b >> instance.n_goods)[0] + instance.n_goods
            raise AllocationError(f"good {bad} out of range 0..{instance.n_goods - 1}")
        shared = seen & b
        if shared:
            raise AllocationError(f"good {members(shared)[0]} allocated twice")
        seen |= b
