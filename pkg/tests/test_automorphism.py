import itertools
import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from networkx.algorithms.isomorphism import DiGraphMatcher

from netsurplus.automorphism import (
    AutomorphismBudgetError,
    automorphism_brute_force,
    automorphism_log_size,
)
from netsurplus.graph import WeightedDigraph, log2_factorial

from conftest import complete_digraph, digraphs, directed_cycle, random_digraph


def nx_group_order(g: WeightedDigraph) -> int:
    G = nx.DiGraph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return sum(1 for _ in DiGraphMatcher(G, G).isomorphisms_iter())


def symmetric(G: nx.Graph) -> WeightedDigraph:
    G = nx.convert_node_labels_to_integers(G)
    links = [(a, b, 1.0) for a, b in G.edges()] + [(b, a, 1.0) for a, b in G.edges()]
    return WeightedDigraph(G.number_of_nodes(), tuple(links))


def test_directed_triangle():
    r = automorphism_log_size(directed_cycle(3))
    assert r.log2_aut == pytest.approx(math.log2(3), abs=1e-12)
    assert automorphism_brute_force(directed_cycle(3)).group_order_core == 3


@pytest.mark.parametrize("n", [1, 2, 5, 40, 1000])
def test_empty_graph(n):
    r = automorphism_log_size(WeightedDigraph(n))
    assert r.log2_aut == log2_factorial(n)
    assert r.orbit_count == 1


def test_toy_is_asymmetric(toy_net):
    assert automorphism_brute_force(toy_net).log2_aut == 0.0
    assert automorphism_log_size(toy_net).log2_aut == 0.0


def test_brute_force_small_cases():
    assert automorphism_brute_force(complete_digraph(4)).log2_aut == pytest.approx(math.log2(24))
    assert automorphism_brute_force(WeightedDigraph(2, ((0, 1, 1),))).log2_aut == 0.0
    with pytest.raises(ValueError):
        automorphism_brute_force(WeightedDigraph(9))


def test_exhaustive_three_nodes():
    pairs = [(a, b) for a in range(3) for b in range(3) if a != b]
    for mask in range(1 << len(pairs)):
        g = WeightedDigraph(3, tuple((a, b, 1) for i, (a, b) in enumerate(pairs) if mask >> i & 1))
        assert automorphism_log_size(g).log2_aut == pytest.approx(automorphism_brute_force(g).log2_aut, abs=1e-9)


@given(digraphs(max_n=7))
@settings(max_examples=300, deadline=None)
def test_matches_brute_force(g):
    fast, slow = automorphism_log_size(g), automorphism_brute_force(g)
    assert abs(fast.log2_aut - slow.log2_aut) < 1e-9
    assert fast.orbit_count == slow.orbit_count


def test_weights_are_ignored(toy_net):
    assert automorphism_log_size(toy_net).log2_aut == automorphism_log_size(toy_net.unweighted()).log2_aut


def test_input_order_independent():
    rng = random.Random(5)
    g = random_digraph(rng, 30, 0.08)
    links = list(g.links)
    rng.shuffle(links)
    # construction re-sorts, so go through relabel with identity to force a new object
    h = WeightedDigraph(30, tuple(links)).relabel(range(30))
    assert automorphism_log_size(g) == automorphism_log_size(h)


@pytest.mark.parametrize(
    "name,graph,order",
    [
        ("petersen", symmetric(nx.petersen_graph()), 120),
        ("hypercube4", symmetric(nx.hypercube_graph(4)), 384),
        ("circulant16", symmetric(nx.circulant_graph(16, [1, 4])), None),
        ("cycle12", directed_cycle(12), 12),
        ("k33", symmetric(nx.complete_bipartite_graph(3, 3)), 72),
        ("star", symmetric(nx.star_graph(6)), 720),
        ("grid3x4", symmetric(nx.grid_2d_graph(3, 4)), 4),
        ("tree", symmetric(nx.balanced_tree(2, 3)), None),
    ],
)
def test_symmetric_families_against_networkx(name, graph, order):
    r = automorphism_log_size(graph)
    expected = nx_group_order(graph)
    if order is not None:
        assert expected == order
    assert r.group_order_core * math.factorial(r.isolated) == expected


@pytest.mark.parametrize("p", [7, 11, 19, 23])
def test_paley_tournaments(p):
    squares = {(x * x) % p for x in range(1, p)}
    g = WeightedDigraph(p, tuple((a, b, 1) for a in range(p) for b in range(p) if a != b and (b - a) % p in squares))
    # Aut of the Paley tournament is the affine group x -> a x + b with a a square
    assert automorphism_log_size(g).group_order_core == p * (p - 1) // 2


def test_isomorphic_components_multiply_by_factorial():
    # three directed 4-cycles and two directed 8-cycles
    links = [(k * 4 + i, k * 4 + (i + 1) % 4, 1) for k in range(3) for i in range(4)]
    links += [(12 + k * 8 + i, 12 + k * 8 + (i + 1) % 8, 1) for k in range(2) for i in range(8)]
    r = automorphism_log_size(WeightedDigraph(28, tuple(links)))
    assert r.group_order_core == 4**3 * math.factorial(3) * 8**2 * math.factorial(2)
    assert r.orbit_count == 2


def test_wl_equivalent_but_non_isomorphic_components():
    # a directed 6-cycle next to two directed 3-cycles: colour refinement alone cannot split them
    links = [(i, (i + 1) % 6, 1) for i in range(6)]
    links += [(6 + k * 3 + i, 6 + k * 3 + (i + 1) % 3, 1) for k in range(2) for i in range(3)]
    g = WeightedDigraph(12, tuple(links))
    assert automorphism_log_size(g).group_order_core == 6 * 3 * 3 * 2 == nx_group_order(g)


def test_many_disjoint_edges_is_fast():
    g = WeightedDigraph(8000, tuple((2 * i, 2 * i + 1, 1) for i in range(500)))
    r = automorphism_log_size(g)
    expected = math.log2(math.factorial(500)) + log2_factorial(7000)
    assert r.log2_aut == pytest.approx(expected, rel=1e-12)
    assert r.search_nodes <= 2 * 500


def test_isolated_node_adds_log_factor():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 6)
        g = random_digraph(rng, n, 0.4)
        bigger = WeightedDigraph(n + 1, g.links)
        k = g.isolated_count()
        delta = automorphism_log_size(bigger).log2_aut - automorphism_log_size(g).log2_aut
        assert delta == pytest.approx(math.log2(k + 1), abs=1e-9)
        assert automorphism_log_size(bigger).log2_aut == pytest.approx(
            automorphism_brute_force(bigger).log2_aut, abs=1e-9
        )


@given(digraphs(max_n=7))
@settings(max_examples=100, deadline=None)
def test_bounds(g):
    r = automorphism_log_size(g)
    assert 0.0 <= r.log2_aut <= log2_factorial(g.n) + 1e-9
    if g.l in (0, g.max_links):
        assert r.log2_aut == log2_factorial(g.n)
    else:
        assert r.log2_aut < log2_factorial(g.n)


def test_relabelling_gives_identical_bits():
    rng = random.Random(3)
    for _ in range(20):
        g = random_digraph(rng, rng.randint(5, 60), 0.05)
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert automorphism_log_size(g).log2_aut == automorphism_log_size(g.relabel(perm)).log2_aut


def test_budget_exhaustion_raises():
    with pytest.raises(AutomorphismBudgetError):
        automorphism_log_size(symmetric(nx.petersen_graph()), budget=2)


def test_all_permutations_of_small_graph_give_same_group():
    g = WeightedDigraph(5, ((0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1)))
    ref = automorphism_brute_force(g).group_order_core
    for perm in itertools.permutations(range(5)):
        assert automorphism_log_size(g.relabel(perm)).group_order_core == ref
