import random

import pytest
from hypothesis import strategies as st

from netsurplus.graph import WeightedDigraph

ACCEPTANCE_LINES: list[str] = []


def random_digraph(rng: random.Random, n: int, p: float | None = None, weights=(1.0,)) -> WeightedDigraph:
    if p is None:
        p = rng.random()
    links = [
        (a, b, rng.choice(weights))
        for a in range(n)
        for b in range(n)
        if a != b and rng.random() < p
    ]
    return WeightedDigraph(n, tuple(links))


@st.composite
def digraphs(draw, max_n=7, weights=st.sampled_from([1.0, 2.0, 3.0])):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return WeightedDigraph(n, tuple((a, b, draw(weights)) for a, b in chosen))


def directed_cycle(n: int) -> WeightedDigraph:
    return WeightedDigraph(n, tuple((i, (i + 1) % n, 1.0) for i in range(n)))


def complete_digraph(n: int, w: float = 1.0) -> WeightedDigraph:
    return WeightedDigraph(n, tuple((a, b, w) for a in range(n) for b in range(n) if a != b))


# transition network of the series 1,2,3,1,2,1, labels shifted to 0-base
TOY_TEXT = "n 3\n0 1 2\n1 2 1\n2 0 1\n1 0 1\n"


@pytest.fixture
def toy_net():
    return WeightedDigraph(3, ((0, 1, 2.0), (1, 2, 1.0), (2, 0, 1.0), (1, 0, 1.0)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
