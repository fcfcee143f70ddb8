import random

import pytest
from hypothesis import given, settings, strategies as st

from fairnet.corpus import random_graph, random_lsat
from fairnet.errors import InputError, ParseError
from fairnet.formats import (
    load_source,
    parse_allocation,
    parse_graph_source,
    parse_instance,
    parse_lsat,
    parse_roles,
    read_instance,
    render_allocation,
    render_graph_source,
    render_instance,
    render_lsat,
    render_roles,
)
from fairnet.reductions import reduce_3col_lpa
from fairnet.sources import ColoringInstance, CuttingInstance, Graph
from conftest import instance_and_allocation, instances


def same_instance(a, b):
    return (
        a.n_agents == b.n_agents
        and a.n_goods == b.n_goods
        and a.valuation_matrix() == b.valuation_matrix()
        and sorted(a.edges) == sorted(b.edges)
    )


@settings(max_examples=150, deadline=None)
@given(instances(max_agents=6, max_goods=6))
def test_instance_round_trip(inst):
    assert same_instance(parse_instance(render_instance(inst, "header line")), inst)


@settings(max_examples=150, deadline=None)
@given(instance_and_allocation(max_agents=5, max_goods=6))
def test_allocation_round_trip(pair):
    inst, alloc = pair
    back = parse_allocation(render_allocation(alloc), instance=inst)
    assert [back.goods_of(i) for i in range(inst.n_agents)] == [alloc.goods_of(i) for i in range(inst.n_agents)]


def test_instance_example_and_comments():
    inst = parse_instance("# hi\nagents 3\ngoods 2\nval 0 0 1  # both\nval 1 1\n\nedge 0 1\n")
    assert inst.valuation_matrix() == [[1, 1], [0, 1], [0, 0]]
    assert inst.edges == ((0, 1),)


@pytest.mark.parametrize(
    "text,line",
    [
        ("agents 2\ngoods 1\nval 5 0\n", 3),
        ("agents 2\ngoods 1\nval 0 3\n", 3),
        ("agents 2\ngoods 1\nedge 0 0\n", 3),
        ("agents 2\ngoods 1\nedge 0 1\nedge 1 0\n", 4),
        ("agents 2\ngoods 1\nedge 0 2\n", 3),
        ("agents 2\nagents 3\n", 2),
        ("agents x\n", 1),
        ("agents 2\ngoods 1\nfrob 1\n", 3),
        ("val 0 0\n", 1),
    ],
)
def test_instance_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_instance(text, "f.txt")
    assert info.value.line == line
    assert f"f.txt:{line}:" in str(info.value)


def test_missing_header_is_an_error():
    with pytest.raises(ParseError):
        parse_instance("agents 2\n")


def test_allocation_errors():
    inst = parse_instance("agents 2\ngoods 2\n")
    with pytest.raises(ParseError) as info:
        parse_allocation("bundle 0 0\nbundle 1 0\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_allocation("bundle 3 0\n", instance=inst)
    with pytest.raises(ParseError):
        parse_allocation("bundle 0 7\n", instance=inst)
    with pytest.raises(ParseError):
        parse_allocation("give 0 0\n")


def test_graph_source_round_trip():
    rng = random.Random(0)
    for _ in range(50):
        g = random_graph(rng, rng.randint(0, 7), "er", 0.4)
        src = parse_graph_source(render_graph_source(g, "h", k=2, l=1))
        assert src.graph.n == g.n and src.graph.edge_set == g.edge_set
        assert src.params == {"k": 2, "l": 1}


def test_dimacs_graphs():
    src = parse_graph_source("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert src.graph.edge_set == {(0, 1), (1, 2), (0, 2)}
    with pytest.raises(ParseError) as info:
        parse_graph_source("p edge 2 1\ne 1 3\n")
    assert info.value.line == 2


def test_load_source_requires_parameters():
    with pytest.raises(ParseError):
        load_source("cutting", "vertices 2\nk 1\n")
    src = load_source("cutting", "vertices 3\nedge 0 1\nedge 1 2\nl 1\nk 1\n")
    assert isinstance(src, CuttingInstance) and (src.l, src.k) == (1, 1)
    assert isinstance(load_source("3col", "vertices 1\n"), ColoringInstance)
    with pytest.raises(ParseError):
        load_source("hamilton", "vertices 1\n")


def test_lsat_round_trip():
    rng = random.Random(1)
    for _ in range(100):
        f = random_lsat(rng, rng.randint(0, 6))
        g = parse_lsat(render_lsat(f))
        assert (g.n_vars, g.coupled, g.isolated) == (f.n_vars, f.coupled, f.isolated)


def test_lsat_structure_errors_become_parse_errors():
    with pytest.raises(ParseError):
        parse_lsat("variables 3\nisolated 1 1 2\n")
    with pytest.raises(ParseError):
        parse_lsat("variables 4\ncoupled 1 2 3 4\n")


def test_roles_round_trip():
    art = reduce_3col_lpa(ColoringInstance(Graph.from_edges(3, [(0, 1)])))
    roles = parse_roles(render_roles(art))
    assert roles["reduction"] == "3col" and roles["target"] == "lp"
    assert roles["agents"] == [str(r) for r in art.agent_roles]
    assert roles["goods"] == [str(r) for r in art.good_roles]


def test_unreadable_file(tmp_path):
    with pytest.raises(InputError):
        read_instance(tmp_path / "missing.txt")
