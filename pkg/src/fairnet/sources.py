"""Source problems of the hardness reductions.

Graphs are simple and undirected on vertices ``0..n-1``.  LSAT literals use
the DIMACS convention: variable ``v`` (1-based) is the literal ``v`` and its
negation ``-v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb

from .errors import InstanceError, OracleLimitError, PreconditionError
from .model import _normalize_edges


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_edges(cls, n: int, edges=()) -> Graph:
        if n < 0:
            raise InstanceError(f"vertex count must be non-negative, got {n}")
        return cls(n, _normalize_edges(n, edges))

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class CuttingInstance:
    """Is there a partition X, S, Y of V with |X| = l, |S| <= k and no X-Y edge?"""

    graph: Graph
    l: int
    k: int

    def __post_init__(self):
        if self.l < 0 or self.k < 0:
            raise InstanceError("l and k must be non-negative")


@dataclass(frozen=True)
class CliqueInstance:
    """Does the graph contain a clique on k vertices?"""

    graph: Graph
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InstanceError(f"clique size must be at least 1, got {self.k}")

    @property
    def pairs(self) -> int:
        return comb(self.k, 2)


@dataclass(frozen=True)
class ColoringInstance:
    """Can the graph be properly coloured with 3 colours?"""

    graph: Graph


@dataclass(frozen=True)
class LsatFormula:
    """Linear-SAT formula in the restricted shape used by the path reduction.

    ``coupled`` holds clause pairs ``(A_i, B_i)`` of two literals each that
    share exactly one literal; ``isolated`` holds 3-literal clauses disjoint
    from each other and from every coupled clause.
    """

    n_vars: int
    coupled: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()
    isolated: tuple[tuple[int, int, int], ...] = ()

    @classmethod
    def create(cls, n_vars, coupled=(), isolated=()) -> LsatFormula:
        f = cls(
            n_vars,
            tuple((tuple(a), tuple(b)) for a, b in coupled),
            tuple(tuple(c) for c in isolated),
        )
        validate_lsat_structure(f)
        return f

    def coupled_literals(self, i: int) -> tuple[int, int, int]:
        """``(s_i, l_i, t_i)`` with ``A_i = {s_i, l_i}`` and ``B_i = {l_i, t_i}``."""
        a, b = self.coupled[i]
        (shared,) = set(a) & set(b)
        (s,) = set(a) - {shared}
        (t,) = set(b) - {shared}
        return s, shared, t

    def clauses(self) -> list[tuple[int, ...]]:
        out = []
        for a, b in self.coupled:
            out += [a, b]
        return out + list(self.isolated)

    def satisfied_by(self, assignment) -> bool:
        """``assignment[v-1]`` is the truth value of variable ``v``."""
        return all(any(literal_true(lit, assignment) for lit in c) for c in self.clauses())


def literal_true(lit: int, assignment) -> bool:
    value = bool(assignment[abs(lit) - 1])
    return value if lit > 0 else not value


def validate_lsat_structure(formula: LsatFormula) -> None:
    """Raise :class:`PreconditionError` unless the formula has the required shape."""
    n = formula.n_vars
    if n < 0:
        raise PreconditionError("variable count must be non-negative")

    def check_lit(lit):
        if not isinstance(lit, int) or lit == 0 or abs(lit) > n:
            raise PreconditionError(f"literal {lit!r} is not a literal over x1..x{n}")

    used: dict[int, str] = {}

    def claim(lit, owner):
        if lit in used:
            raise PreconditionError(f"literal {lit} appears in both {used[lit]} and {owner}")
        used[lit] = owner

    for i, pair in enumerate(formula.coupled):
        if len(pair) != 2:
            raise PreconditionError(f"coupled entry {i} must hold two clauses")
        a, b = pair
        for name, clause in (("A", a), ("B", b)):
            if len(clause) != 2 or len(set(clause)) != 2:
                raise PreconditionError(f"coupled clause {name}{i + 1} must have two distinct literals")
            for lit in clause:
                check_lit(lit)
        shared = set(a) & set(b)
        if len(shared) != 1:
            raise PreconditionError(
                f"coupled clauses A{i + 1}, B{i + 1} share {len(shared)} literals, expected exactly 1"
            )
        for lit in set(a) | set(b):
            claim(lit, f"coupled pair {i + 1}")
    for i, clause in enumerate(formula.isolated):
        if len(clause) != 3 or len(set(clause)) != 3:
            raise PreconditionError(f"isolated clause C{i + 1} must have three distinct literals")
        for lit in clause:
            check_lit(lit)
            claim(lit, f"isolated clause {i + 1}")


def source_size_guard(size: int, limit: int, what: str) -> None:
    if size > limit:
        raise OracleLimitError(f"{what} has size {size}, oracle guard is {limit}")
