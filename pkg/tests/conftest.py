import random

import pytest
from hypothesis import strategies as st

from fairnet.model import Allocation, Instance


@st.composite
def instances(draw, max_agents=5, max_goods=5, min_agents=0, min_goods=0):
    n = draw(st.integers(min_agents, max_agents))
    m = draw(st.integers(min_goods, max_goods))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=m, max_size=m), min_size=n, max_size=n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Instance.from_matrix(rows, edges, n_goods=m)


@st.composite
def instance_and_allocation(draw, max_agents=5, max_goods=5):
    inst = draw(instances(max_agents, max_goods))
    choices = [None, *range(inst.n_agents)]
    owners = [draw(st.sampled_from(choices)) for _ in range(inst.n_goods)]
    return inst, Allocation.from_owners(owners)


@pytest.fixture
def rng():
    return random.Random(20240611)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Record one ``(criterion, passed, detail)`` line, echoed in the summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(criterion, passed, detail):
        line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'}  {detail}"
        lines.append((criterion, line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
