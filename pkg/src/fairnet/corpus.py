"""Seeded generators for instances, source problems and whole corpora.

Every generated file carries its generator parameters and seed in a header
comment, and file ``i`` of a corpus is drawn from its own RNG seeded with
``f"{seed}:{i}"``, so a corpus is byte-identical across runs and a prefix of
a larger corpus with the same seed.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations
from pathlib import Path

from .errors import PreconditionError
from .formats import render_instance, render_roles
from .model import Instance
from .reductions import REDUCE
from .sources import ColoringInstance, CliqueInstance, CuttingInstance, Graph, LsatFormula

GRAPH_FAMILIES = ("er", "path", "star", "clique", "cycle", "empty")
REDUCED_FAMILIES = (
    "reduced-cutting",
    "reduced-clique-goods",
    "reduced-clique-vc",
    "reduced-lsat",
    "reduced-3col",
)
FAMILIES = GRAPH_FAMILIES + REDUCED_FAMILIES


# graphs ------------------------------------------------------------------


def random_graph(rng: random.Random, n: int, family: str = "er", p: float = 0.5) -> Graph:
    if family == "er":
        edges = [e for e in combinations(range(n), 2) if rng.random() < p]
    elif family == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "star":
        edges = [(0, i) for i in range(1, n)]
    elif family == "clique":
        edges = list(combinations(range(n), 2))
    elif family == "cycle":
        edges = [(i, (i + 1) % n) for i in range(n)] if n >= 3 else [(i, i + 1) for i in range(n - 1)]
    elif family == "empty":
        edges = []
    else:
        raise PreconditionError(f"unknown graph family {family!r}")
    return Graph.from_edges(n, edges)


def canonical_form(graph: Graph) -> tuple[tuple[int, int], ...]:
    """Lexicographically least relabelled edge list (brute force over n!)."""
    best = None
    for perm in permutations(range(graph.n)):
        relabelled = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in graph.edges))
        if best is None or relabelled < best:
            best = relabelled
    return best if best is not None else ()


@lru_cache(maxsize=None)
def graphs_on(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class of simple graphs on ``n`` vertices."""
    pairs = list(combinations(range(n), 2))
    forms = set()
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [e for b, e in enumerate(pairs) if mask >> b & 1])
        forms.add(canonical_form(g))
    return tuple(Graph.from_edges(n, f) for f in sorted(forms, key=lambda f: (len(f), f)))


def all_graphs(max_n: int, min_n: int = 0) -> list[Graph]:
    """All graphs on ``min_n..max_n`` vertices up to isomorphism (1, 1, 2, 4, 11, 34, ...)."""
    out = []
    for n in range(min_n, max_n + 1):
        out.extend(graphs_on(n))
    return out


def is_connected(graph: Graph) -> bool:
    if graph.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in graph.neighbors[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == graph.n


# instances and sources ---------------------------------------------------


def random_instance(
    rng: random.Random,
    n: int,
    m: int,
    density: float = 0.5,
    family: str = "er",
    p: float = 0.5,
    all_valued: bool = False,
) -> Instance:
    """Random 0/1 valuations with the given density on a random graph.

    With ``all_valued`` every good gets at least one approver.
    """
    rows = [[1 if rng.random() < density else 0 for _ in range(m)] for _ in range(n)]
    if all_valued and n:
        for j in range(m):
            if not any(r[j] for r in rows):
                rows[rng.randrange(n)][j] = 1
    g = random_graph(rng, n, family, p)
    return Instance.from_matrix(rows, g.edges, n_goods=m)


def random_lsat(rng: random.Random, n_vars: int, max_coupled=None, max_isolated=None) -> LsatFormula:
    """A random formula in the restricted linear shape; literals are never reused."""
    lits = [s * v for v in range(1, n_vars + 1) for s in (1, -1)]
    rng.shuffle(lits)
    q = rng.randint(0, len(lits) // 3)
    if max_coupled is not None:
        q = min(q, max_coupled)
    rest = lits[3 * q :]
    p = rng.randint(0, len(rest) // 3)
    if max_isolated is not None:
        p = min(p, max_isolated)
    coupled = [((lits[3 * i], lits[3 * i + 1]), (lits[3 * i + 1], lits[3 * i + 2])) for i in range(q)]
    isolated = [tuple(rest[3 * i : 3 * i + 3]) for i in range(p)]
    return LsatFormula.create(n_vars, coupled, isolated)


def random_source(rng: random.Random, reduction: str, n: int, p: float = 0.5):
    """A random source instance for ``reduction`` with ``n`` vertices or variables."""
    if reduction == "lsat":
        return random_lsat(rng, n)
    g = random_graph(rng, n, "er", p)
    if reduction == "cutting":
        l = rng.randint(0, min(2, n))
        return CuttingInstance(g, l, rng.randint(0, 2))
    if reduction in ("clique-goods", "clique-vc"):
        return CliqueInstance(g, rng.randint(1, max(1, min(3, n))))
    if reduction == "3col":
        return ColoringInstance(g)
    raise PreconditionError(f"unknown reduction {reduction!r}")


# corpora -----------------------------------------------------------------


def generate_corpus(
    out_dir,
    family: str,
    count: int,
    n: int,
    m: int | None = None,
    density: float = 0.5,
    p: float = 0.5,
    seed: int = 0,
) -> list[Path]:
    """Write ``count`` instance files into ``out_dir`` and return their paths.

    Graph families draw a random valuation matrix with ``m`` goods; the
    ``reduced-*`` families reduce a random source with ``n`` vertices (or
    variables) and also write a ``.roles`` sidecar.
    """
    if family not in FAMILIES:
        raise PreconditionError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if family in GRAPH_FAMILIES and m is None:
        raise PreconditionError("graph families need a number of goods")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for i in range(count):
        rng = random.Random(f"{seed}:{i}")
        header = f"fairnet gen family={family} n={n} m={m} density={density} p={p} seed={seed} index={i}"
        name = f"{family}-{i:04d}"
        if family in GRAPH_FAMILIES:
            inst = random_instance(rng, n, m, density, family, p)
        else:
            reduction = family[len("reduced-") :]
            artifact = REDUCE[reduction](random_source(rng, reduction, n, p))
            inst = artifact.instance
            (out / f"{name}.roles").write_text(render_roles(artifact))
        path = out / f"{name}.txt"
        path.write_text(render_instance(inst, header))
        paths.append(path)
    return paths

