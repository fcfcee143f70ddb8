"""Brute-force solvers for the four source problems.

These are ground truth for the reduction equivalence tests, so they are
deliberately naive and refuse inputs above a hard size guard instead of
truncating.  Certificates come back canonicalised (sorted tuples).
"""

from __future__ import annotations

from itertools import combinations, product

from .sources import (
    CliqueInstance,
    ColoringInstance,
    CuttingInstance,
    Graph,
    LsatFormula,
    source_size_guard,
    validate_lsat_structure,
)

CLIQUE_LIMIT = 20
COLORING_LIMIT = 15
LSAT_LIMIT = 20
CUTTING_LIMIT = 15

__all__ = [
    "oracle_clique",
    "oracle_3coloring",
    "oracle_lsat",
    "oracle_cutting",
    "validate_lsat_structure",
    "is_clique",
    "is_proper_coloring",
    "is_valid_cut",
]


def is_clique(graph: Graph, vertices) -> bool:
    return all(graph.adjacent(u, v) for u, v in combinations(vertices, 2))


def oracle_clique(src: CliqueInstance) -> tuple[int, ...] | None:
    """Lexicographically first k-clique, or None."""
    g = src.graph
    source_size_guard(g.n, CLIQUE_LIMIT, "clique graph")
    for cand in combinations(range(g.n), src.k):
        if is_clique(g, cand):
            return cand
    return None


def is_proper_coloring(graph: Graph, colors) -> bool:
    if len(colors) != graph.n or any(c not in (1, 2, 3) for c in colors):
        return False
    return all(colors[u] != colors[v] for u, v in graph.edges)


def oracle_3coloring(src: ColoringInstance) -> tuple[int, ...] | None:
    """First proper colouring in lexicographic order over colours 1 < 2 < 3."""
    g = src.graph
    source_size_guard(g.n, COLORING_LIMIT, "colouring graph")
    colors = [0] * g.n

    def extend(v):
        if v == g.n:
            return True
        for c in (1, 2, 3):
            if all(colors[u] != c for u in g.neighbors[v] if u < v):
                colors[v] = c
                if extend(v + 1):
                    return True
        colors[v] = 0
        return False

    return tuple(colors) if extend(0) else None


def oracle_lsat(src: LsatFormula) -> tuple[bool, ...] | None:
    """First satisfying assignment by truth table, starting from all-true."""
    validate_lsat_structure(src)
    source_size_guard(src.n_vars, LSAT_LIMIT, "LSAT formula")
    for assignment in product((True, False), repeat=src.n_vars):
        if src.satisfied_by(assignment):
            return assignment
    return None


def is_valid_cut(src: CuttingInstance, partition) -> bool:
    X, S, Y = (set(p) for p in partition)
    g = src.graph
    if X & S or X & Y or S & Y or X | S | Y != set(range(g.n)):
        return False
    if len(X) != src.l or len(S) > src.k:
        return False
    return not any((u in X and v in Y) or (u in Y and v in X) for u, v in g.edges)


def oracle_cutting(src: CuttingInstance):
    """First ``(X, S, Y)`` with X in lexicographic order and S = N(X) minus X."""
    g = src.graph
    source_size_guard(g.n, CUTTING_LIMIT, "cutting graph")
    if src.l > g.n:
        return None
    for X in combinations(range(g.n), src.l):
        xs = set(X)
        S = set()
        for v in X:
            S |= g.neighbors[v]
        S -= xs
        if len(S) <= src.k:
            Y = tuple(v for v in range(g.n) if v not in xs and v not in S)
            return X, tuple(sorted(S)), Y
    return None
