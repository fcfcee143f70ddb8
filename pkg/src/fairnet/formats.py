"""Plain-text file formats for instances, allocations, sources and role maps.

All formats are line oriented.  ``#`` starts a comment, blank lines are
ignored and every other line is ``directive arg ...`` with integer
arguments.  Indices are 0-based except in DIMACS ``e`` lines.

Instance::

    agents 3
    goods 2
    val 0 0 1        # agent 0 approves goods 0 and 1
    val 1 1
    edge 0 1

Allocation::

    bundle 0 0       # agent 0 receives good 0
    bundle 1 1

Graph source (cutting, clique, 3-colouring)::

    vertices 4       # or DIMACS: p edge 4 3
    edge 0 1         # or DIMACS: e 1 2
    k 2
    l 1

Linear SAT source (signed DIMACS literals)::

    variables 3
    coupled 1 2 2 3  # A = {x1, x2}, B = {x2, x3}
    isolated -1 -2 -3

Role map sidecar::

    reduction cutting
    agent 0 greedy[0]
    good 0 coveted[0]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import AllocationError, FairnetError, InputError, ParseError, PreconditionError
from .model import Allocation, Instance, members, validate_allocation
from .sources import (
    CliqueInstance,
    ColoringInstance,
    CuttingInstance,
    Graph,
    LsatFormula,
    validate_lsat_structure,
)


def _lines(text: str, comment_tokens=()):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] in comment_tokens:
            continue
        yield no, tokens[0], tokens[1:]


def _ints(args, no, path, count=None, what="argument(s)"):
    if count is not None and len(args) != count:
        raise ParseError(f"expected {count} {what}, got {len(args)}", no, path)
    try:
        return [int(a) for a in args]
    except ValueError:
        raise ParseError(f"non-integer argument in {' '.join(args)!r}", no, path) from None


def _once(seen: dict, key: str, no: int, path):
    if key in seen:
        raise ParseError(f"duplicate '{key}' directive (first on line {seen[key]})", no, path)
    seen[key] = no


def _need(seen: dict, key: str, no: int, path):
    if key not in seen:
        raise ParseError(f"'{key}' must be declared before this line", no, path)


# instances ---------------------------------------------------------------


def parse_instance(text: str, path=None) -> Instance:
    seen: dict[str, int] = {}
    n = m = 0
    approvals: list[set[int]] = []
    edges: set[tuple[int, int]] = set()
    for no, word, args in _lines(text):
        if word == "agents":
            _once(seen, word, no, path)
            (n,) = _ints(args, no, path, 1)
            if n < 0:
                raise ParseError("agent count must be non-negative", no, path)
            approvals = [set() for _ in range(n)]
        elif word == "goods":
            _once(seen, word, no, path)
            (m,) = _ints(args, no, path, 1)
            if m < 0:
                raise ParseError("good count must be non-negative", no, path)
        elif word == "val":
            _need(seen, "agents", no, path)
            _need(seen, "goods", no, path)
            if not args:
                raise ParseError("'val' needs an agent index", no, path)
            i, *goods = _ints(args, no, path)
            if not 0 <= i < n:
                raise ParseError(f"agent {i} outside 0..{n - 1}", no, path)
            for j in goods:
                if not 0 <= j < m:
                    raise ParseError(f"good {j} outside 0..{m - 1}", no, path)
            approvals[i].update(goods)
        elif word == "edge":
            _need(seen, "agents", no, path)
            u, v = _ints(args, no, path, 2, "endpoints")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) references an agent outside 0..{n - 1}", no, path)
            if u == v:
                raise ParseError(f"self-loop on agent {u}", no, path)
            key = (min(u, v), max(u, v))
            if key in edges:
                raise ParseError(f"parallel edge {key}", no, path)
            edges.add(key)
        else:
            raise ParseError(f"unknown directive {word!r}", no, path)
    if "agents" not in seen or "goods" not in seen:
        raise ParseError("instance must declare 'agents' and 'goods'", None, path)
    return Instance.from_approvals(m, [sorted(a) for a in approvals], sorted(edges))


def render_instance(instance: Instance, header: str | None = None) -> str:
    out = []
    if header:
        out += [f"# {h}" for h in header.splitlines()]
    out.append(f"agents {instance.n_agents}")
    out.append(f"goods {instance.n_goods}")
    for i, mask in enumerate(instance.approvals):
        out.append(" ".join(["val", str(i), *map(str, members(mask))]))
    for u, v in instance.edges:
        out.append(f"edge {u} {v}")
    return "\n".join(out) + "\n"


# allocations -------------------------------------------------------------


def parse_allocation(text: str, path=None, instance: Instance | None = None) -> Allocation:
    """Parse ``bundle`` lines; with ``instance`` the result is also validated."""
    sets: dict[int, set[int]] = {}
    where: dict[int, int] = {}
    for no, word, args in _lines(text):
        if word != "bundle":
            raise ParseError(f"unknown directive {word!r}", no, path)
        if not args:
            raise ParseError("'bundle' needs an agent index", no, path)
        i, *goods = _ints(args, no, path)
        if i < 0:
            raise ParseError(f"negative agent index {i}", no, path)
        for j in goods:
            if j < 0:
                raise ParseError(f"negative good index {j}", no, path)
            if j in where:
                raise ParseError(f"good {j} allocated twice (also on line {where[j]})", no, path)
            where[j] = no
        sets.setdefault(i, set()).update(goods)
    alloc = Allocation.from_sets(sets)
    if instance is not None:
        try:
            validate_allocation(instance, alloc)
        except AllocationError as exc:
            raise ParseError(str(exc), None, path) from None
    return alloc


def render_allocation(allocation: Allocation, header: str | None = None) -> str:
    out = [f"# {h}" for h in header.splitlines()] if header else []
    for i, b in enumerate(allocation.bundles):
        if b:
            out.append(" ".join(["bundle", str(i), *map(str, members(b))]))
    return "\n".join(out) + "\n" if out else ""


# sources -----------------------------------------------------------------


@dataclass(frozen=True)
class GraphSource:
    """A parsed graph file plus its integer parameters (``k``, ``l``)."""

    graph: Graph
    params: dict = field(default_factory=dict)

    def param(self, name: str, path=None) -> int:
        if name not in self.params:
            raise ParseError(f"source lacks required parameter '{name}'", None, path)
        return self.params[name]


def parse_graph_source(text: str, path=None) -> GraphSource:
    seen: dict[str, int] = {}
    n = None
    edges: list[tuple[int, int]] = []
    params: dict[str, int] = {}
    for no, word, args in _lines(text, comment_tokens=("c",)):
        if word in ("vertices", "p"):
            _once(seen, "vertices", no, path)
            if word == "p":
                if len(args) != 3 or args[0] not in ("edge", "col"):
                    raise ParseError("DIMACS header must be 'p edge N M'", no, path)
                n, _ = _ints(args[1:], no, path, 2)
            else:
                (n,) = _ints(args, no, path, 1)
            if n < 0:
                raise ParseError("vertex count must be non-negative", no, path)
        elif word in ("edge", "e"):
            _need(seen, "vertices", no, path)
            u, v = _ints(args, no, path, 2, "endpoints")
            if word == "e":
                u, v = u - 1, v - 1
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge endpoint outside the {n} vertices", no, path)
            if u == v:
                raise ParseError(f"self-loop on vertex {u}", no, path)
            edges.append((u, v))
        elif word in ("k", "l"):
            _once(seen, word, no, path)
            (params[word],) = _ints(args, no, path, 1)
            if params[word] < 0:
                raise ParseError(f"'{word}' must be non-negative", no, path)
        else:
            raise ParseError(f"unknown directive {word!r}", no, path)
    if n is None:
        raise ParseError("graph must declare 'vertices' (or a DIMACS 'p edge' line)", None, path)
    uniq = sorted({(min(u, v), max(u, v)) for u, v in edges})
    return GraphSource(Graph.from_edges(n, uniq), params)


def render_graph_source(graph: Graph, header: str | None = None, **params) -> str:
    out = [f"# {h}" for h in header.splitlines()] if header else []
    out.append(f"vertices {graph.n}")
    out += [f"edge {u} {v}" for u, v in graph.edges]
    for name in ("k", "l"):
        if params.get(name) is not None:
            out.append(f"{name} {params[name]}")
    return "\n".join(out) + "\n"


def parse_lsat(text: str, path=None) -> LsatFormula:
    seen: dict[str, int] = {}
    n = None
    coupled, isolated = [], []
    for no, word, args in _lines(text):
        if word == "variables":
            _once(seen, word, no, path)
            (n,) = _ints(args, no, path, 1)
        elif word == "coupled":
            a, b, c, d = _ints(args, no, path, 4, "literals")
            coupled.append(((a, b), (c, d)))
        elif word == "isolated":
            isolated.append(tuple(_ints(args, no, path, 3, "literals")))
        else:
            raise ParseError(f"unknown directive {word!r}", no, path)
    if n is None:
        raise ParseError("formula must declare 'variables'", None, path)
    formula = LsatFormula(n, tuple(coupled), tuple(isolated))
    try:
        validate_lsat_structure(formula)
    except PreconditionError as exc:
        raise ParseError(str(exc), None, path) from None
    return formula


def render_lsat(formula: LsatFormula, header: str | None = None) -> str:
    out = [f"# {h}" for h in header.splitlines()] if header else []
    out.append(f"variables {formula.n_vars}")
    for a, b in formula.coupled:
        out.append(f"coupled {a[0]} {a[1]} {b[0]} {b[1]}")
    for c in formula.isolated:
        out.append("isolated " + " ".join(map(str, c)))
    return "\n".join(out) + "\n"


def load_source(problem: str, text: str, path=None):
    """Parse a source file for ``problem`` (a reduction or oracle name)."""
    try:
        if problem in ("lsat",):
            return parse_lsat(text, path)
        src = parse_graph_source(text, path)
        if problem == "cutting":
            return CuttingInstance(src.graph, src.param("l", path), src.param("k", path))
        if problem in ("clique", "clique-goods", "clique-vc"):
            return CliqueInstance(src.graph, src.param("k", path))
        if problem in ("3col", "coloring"):
            return ColoringInstance(src.graph)
    except ParseError:
        raise
    except FairnetError as exc:
        raise ParseError(str(exc), None, path) from None
    raise ParseError(f"unknown source problem {problem!r}", None, path)


# role maps ---------------------------------------------------------------


def render_roles(artifact) -> str:
    out = [f"reduction {artifact.reduction}", f"target {artifact.target}"]
    out += [f"agent {i} {r}" for i, r in enumerate(artifact.agent_roles)]
    out += [f"good {j} {r}" for j, r in enumerate(artifact.good_roles)]
    return "\n".join(out) + "\n"


def parse_roles(text: str, path=None) -> dict:
    """Return ``{"reduction", "target", "agents": [...], "goods": [...]}``."""
    out = {"reduction": None, "target": None, "agents": {}, "goods": {}}
    for no, word, args in _lines(text):
        if word in ("reduction", "target"):
            if len(args) != 1:
                raise ParseError(f"'{word}' takes one argument", no, path)
            out[word] = args[0]
        elif word in ("agent", "good"):
            if len(args) != 2:
                raise ParseError(f"'{word}' takes an index and a role", no, path)
            (idx,) = _ints(args[:1], no, path)
            out[word + "s"][idx] = args[1]
        else:
            raise ParseError(f"unknown directive {word!r}", no, path)
    for key in ("agents", "goods"):
        table = out[key]
        if sorted(table) != list(range(len(table))):
            raise ParseError(f"{key} indices are not 0..{len(table) - 1}", None, path)
        out[key] = [table[i] for i in range(len(table))]
    return out


# file helpers ------------------------------------------------------------


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", None, path) from None


def read_instance(path) -> Instance:
    return parse_instance(read_text(path), path)


def read_allocation(path, instance: Instance | None = None) -> Allocation:
    return parse_allocation(read_text(path), path, instance)
