import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import instance_and_allocation, instances
from fairnet.errors import AllocationError, InstanceError
from fairnet.formats import parse_instance, render_instance
from fairnet.model import Allocation, Instance, diagnose, members, validate_allocation, validate_instance


def test_minimal_instance_is_valid():
    inst = validate_instance({"valuations": [[1], [1]], "edges": [(0, 1)]})
    assert inst.n_agents == 2 and inst.n_goods == 1
    assert inst.neighbors == ((1,), (0,))
    assert inst.total_value(0) == inst.total_value(1) == 1


def test_non_binary_valuation_rejected():
    with pytest.raises(InstanceError, match="non-binary valuation"):
        validate_instance({"valuations": [[2]]})


def test_self_loop_rejected():
    with pytest.raises(InstanceError, match="self-loop"):
        validate_instance({"valuations": [[1], [0]], "edges": [(0, 0)]})


@pytest.mark.parametrize(
    "raw, message",
    [
        ({"valuations": [[1, 0], [1]]}, "dimension mismatch"),
        ({"valuations": [[1]], "agents": 2}, "dimension mismatch"),
        ({"valuations": [[1], [0]], "edges": [(0, 2)]}, "outside"),
        ({"valuations": [[1], [0]], "edges": [(0, 1), (1, 0)]}, "parallel edge"),
        ({"valuations": [[1], [0]], "edges": [(0, 1, 2)]}, "two endpoints"),
    ],
)
def test_structural_errors(raw, message):
    with pytest.raises(InstanceError, match=message):
        validate_instance(raw)


def test_validate_instance_accepts_instances():
    inst = Instance.from_matrix([[1, 0], [0, 1]], [(0, 1)])
    assert validate_instance(inst) == inst


def test_diagnose_fields():
    path = Instance.from_matrix([[1, 0, 1], [1, 0, 1], [1, 0, 1]], [(0, 1), (1, 2)])
    d = diagnose(path)
    assert d.unvalued_goods == (1,)
    assert d.is_connected
    assert d.has_identical_valuations
    assert d.isolated_agents == ()
    split = Instance.from_matrix([[1], [0], [0]], [(0, 1)])
    d = diagnose(split)
    assert not d.is_connected
    assert d.isolated_agents == (2,)
    assert not d.has_identical_valuations


def test_validate_allocation_examples():
    inst = Instance.from_matrix([[1, 1], [1, 1]])
    with pytest.raises(AllocationError, match="good 0 allocated twice"):
        validate_allocation(inst, Allocation.from_sets({0: [0], 1: [0]}))
    validate_allocation(inst, Allocation.from_sets({}))
    validate_allocation(inst, Allocation.from_sets({0: [0], 1: [1]}))
    with pytest.raises(AllocationError, match="out of range"):
        validate_allocation(inst, Allocation.from_sets({0: [2]}))
    with pytest.raises(AllocationError):
        validate_allocation(inst, Allocation.from_sets({2: [0]}))


def test_allocation_constructors_agree():
    a = Allocation.from_sets({0: [1], 2: [0, 3]})
    b = Allocation.from_owners([2, 0, None, 2])
    assert a == b
    assert a.goods_of(2) == [0, 3]
    assert a.owner(3) == 2 and a.owner(2) is None
    assert a.as_sets() == {0: frozenset({1}), 2: frozenset({0, 3})}
    assert Allocation.from_sets({0: [], 1: []}) == Allocation.from_sets({})


@given(instance_and_allocation())
def test_bundle_sizes_bounded_by_goods(pair):
    inst, alloc = pair
    validate_allocation(inst, alloc)
    total = sum(len(alloc.goods_of(i)) for i in range(inst.n_agents))
    assert total <= inst.n_goods
    assert (total == inst.n_goods) == (alloc.assigned == inst.all_goods)


@given(instances(), st.data())
def test_valuation_is_additive(inst, data):
    m = inst.n_goods
    S = data.draw(st.sets(st.integers(0, max(m - 1, 0)), max_size=m)) if m else set()
    T = data.draw(st.sets(st.integers(0, max(m - 1, 0)), max_size=m)) if m else set()
    T -= S
    mask = lambda goods: sum(1 << j for j in goods)
    for i in range(inst.n_agents):
        assert inst.value(i, mask(S | T)) == inst.value(i, mask(S)) + inst.value(i, mask(T))


@given(instances(max_agents=6, max_goods=7))
def test_instance_text_round_trip(inst):
    assert parse_instance(render_instance(inst)) == inst


def test_members():
    assert members(0) == []
    assert members(0b10110) == [1, 2, 4]
