import io
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netsurplus.automorphism import automorphism_brute_force
from netsurplus.complexity import (
    REPORT_COLUMNS,
    complexity_unweighted,
    complexity_weighted,
    write_report_csv,
)
from netsurplus.graph import WeightedDigraph, description_length, log2_factorial

from conftest import complete_digraph, digraphs, directed_cycle, random_digraph


def oracle_c(g: WeightedDigraph) -> float:
    """Encoding length minus log2(n!/|Aut|) with |Aut| from brute force."""
    aut = automorphism_brute_force(g)
    return description_length(g.n, g.l).total_bits - (math.log2(math.factorial(g.n)) - aut.log2_aut)


def test_directed_triangle_is_twelve_bits():
    assert complexity_unweighted(directed_cycle(3)) == 12.0
    assert oracle_c(directed_cycle(3)) == pytest.approx(12.0, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 10, 64, 500])
def test_empty_graph_is_encoding_length(n):
    g = WeightedDigraph(n)
    assert complexity_unweighted(g) == description_length(n, 0).total_bits
    assert complexity_weighted(g).c_bits == description_length(n, 0).total_bits


def test_toy_weighted_decomposition(toy_net):
    top = WeightedDigraph(3, ((0, 1, 1.0),))
    expected = 0.5 * oracle_c(top) + 0.5 * oracle_c(toy_net.unweighted())
    # both threshold graphs are asymmetric: 0.5 (11 - log2 6) + 0.5 (12 - log2 6)
    assert expected == pytest.approx(11.5 - math.log2(6), abs=1e-12)
    report = complexity_weighted(toy_net)
    assert report.c_bits == pytest.approx(expected, abs=1e-12)
    assert [lv.threshold for lv in report.levels] == [2.0, 1.0]
    assert [lv.coefficient for lv in report.levels] == [0.5, 0.5]
    assert [lv.l for lv in report.levels] == [1, 4]


@given(digraphs(max_n=8, weights=st.just(1.0)), st.floats(0.01, 100))
@settings(max_examples=100, deadline=None)
def test_uniform_weights_reduce_to_unweighted(g, w):
    h = WeightedDigraph(g.n, tuple((a, b, w) for a, b, _ in g.links))
    assert complexity_weighted(h).c_bits == complexity_unweighted(g)


@given(digraphs(max_n=7), st.sampled_from([0.5, 3.0, 1e3]))
@settings(max_examples=100, deadline=None)
def test_weight_scaling_invariance(g, k):
    scaled = WeightedDigraph(g.n, tuple((a, b, w * k) for a, b, w in g.links))
    assert complexity_weighted(scaled).c_bits == pytest.approx(complexity_weighted(g).c_bits, abs=1e-9)


@given(digraphs(max_n=7))
@settings(max_examples=200, deadline=None)
def test_unweighted_matches_oracle_and_bounds(g):
    c = complexity_unweighted(g)
    assert c == pytest.approx(oracle_c(g), abs=1e-9)
    assert 0.0 < c <= description_length(g.n, g.l).total_bits


@given(digraphs(max_n=7))
@settings(max_examples=100, deadline=None)
def test_report_invariants(g):
    rep = complexity_weighted(g)
    coefs = [lv.coefficient for lv in rep.levels]
    assert all(0.0 < c <= 1.0 for c in coefs)
    assert sum(coefs) == pytest.approx(1.0)
    assert rep.c_bits <= max(lv.length.total_bits for lv in rep.levels) + 1e-9


def test_relabelling_invariance():
    rng = random.Random(2024)
    for _ in range(25):
        g = random_digraph(rng, rng.randint(2, 64), rng.random() * 0.2, weights=(1.0, 2.0, 3.0, 5.0))
        base = complexity_weighted(g).c_bits
        for _ in range(3):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert complexity_weighted(g.relabel(perm)).c_bits == pytest.approx(base, abs=1e-9)


def test_more_symmetry_means_more_complexity():
    # six nodes, six links each; symmetry grows from left to right
    asym = WeightedDigraph(6, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (1, 3, 1)))
    cycle = directed_cycle(6)
    triangles = WeightedDigraph(6, ((0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1)))
    c = [complexity_unweighted(g) for g in (asym, cycle, triangles)]
    assert c[0] < c[1] < c[2]


def test_complete_digraph():
    for n in range(2, 7):
        assert complexity_unweighted(complete_digraph(n)) == description_length(n, n * (n - 1)).total_bits


def test_csv_report(toy_net):
    buf = io.StringIO()
    write_report_csv(complexity_weighted(toy_net), buf, ("netsurplus test",))
    lines = buf.getvalue().splitlines()
    assert lines[0] == "# netsurplus test"
    assert lines[1] == ",".join(REPORT_COLUMNS)
    assert lines[2].startswith("2.0,0.5,3,1,11,0.0,")
    assert lines[-1].startswith("summary,1.0,3,4,,,")
    assert len(lines) == 5


def test_level_log2_omega(toy_net):
    lv = complexity_weighted(toy_net).levels[1]
    assert lv.log2_omega == pytest.approx(log2_factorial(3))
