from __future__ import annotations

import random

import pytest
from hypothesis import assume, strategies as st

from hfactor.core import Graph, Prescription
from hfactor.corpus import random_prescription

A, B, C = 0, 1, 2


def ones(n: int) -> Prescription:
    return Prescription.uniform(n, [1])


@pytest.fixture
def P3() -> Graph:
    return Graph.path(3)


@pytest.fixture
def K3() -> Graph:
    return Graph.complete(3)


@pytest.fixture
def K2() -> Graph:
    return Graph.complete(2)


@st.composite
def graphs(draw, max_n: int = 6, max_m: int = 10, connected: bool = False) -> Graph:
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_m)) if pairs else []
    g = Graph(n, edges)
    if connected:
        assume(g.is_connected())
    return g


@st.composite
def instances(draw, max_n: int = 6, max_m: int = 10) -> tuple[Graph, Prescription]:
    g = draw(graphs(max_n, max_m))
    seed = draw(st.integers(0, 2**32 - 1))
    return g, random_prescription(g, random.Random(seed))


# One line per acceptance criterion, shown at the end of every run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
