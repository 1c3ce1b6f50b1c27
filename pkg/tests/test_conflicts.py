import math
import random
from itertools import product

import networkx as nx
import pytest

from rainbowcycles.conflicts import (
    conflict_graph,
    enumerate_cycles,
    exact_chromatic_number,
    f_oracle,
    good_edges_case1,
    good_edges_case2,
    min_rainbow_colors,
    verify_rainbow,
)
from rainbowcycles.constructions import EdgeColoring, two_clique_graph
from rainbowcycles.errors import PreconditionError
from rainbowcycles.graphs import (
    Graph,
    canonical_rotation,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    gnp_graph,
    graph_stats,
    verify_cycle,
)
from rainbowcycles.lemmas import BookWitness, find_book_edge


def nx_cycle_set(g, length):
    """Independent enumeration oracle built on networkx."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    found = set()
    for cyc in nx.simple_cycles(h, length_bound=length):
        if len(cyc) == length:
            found.add(canonical_rotation(tuple(cyc)))
    return found


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def test_counts_on_named_graphs():
    assert len(enumerate_cycles(complete_graph(5), 5)) == 12
    assert len(enumerate_cycles(cycle_graph(7), 7)) == 1
    assert enumerate_cycles(complete_graph(4), 5) == []


def test_complete_graph_closed_form():
    for n in range(5, 9):
        for length in range(5, n + 1):
            expected = (
                math.comb(n, length) * math.factorial(length - 1) // 2
            )
            assert len(enumerate_cycles(complete_graph(n), length)) == expected


def test_matches_networkx_on_random_graphs():
    rng = random.Random(11)
    for _ in range(40):
        g = gnp_graph(rng.randint(4, 9), rng.uniform(0.3, 0.8), rng)
        length = rng.randint(3, max(3, g.n))
        ours = {w.vertices for w in enumerate_cycles(g, length)}
        assert ours == nx_cycle_set(g, length)


def test_output_is_canonical_and_sorted():
    cycles = enumerate_cycles(complete_graph(6), 5)
    seqs = [w.vertices for w in cycles]
    assert seqs == sorted(seqs)
    for s in seqs:
        assert s == canonical_rotation(s)
        assert len(set(s)) == 5


def test_length_validation():
    with pytest.raises(ValueError):
        enumerate_cycles(complete_graph(4), 2)


# ---------------------------------------------------------------------------
# conflict graph
# ---------------------------------------------------------------------------

def test_single_cycle_conflicts_completely():
    conf = conflict_graph(cycle_graph(9), 9)
    assert conf.node_count == 9
    assert conf.conflict_count == 36  # complete on 9 nodes


def test_k4_triangle_conflicts():
    conf = conflict_graph(complete_graph(4), 3)
    assert conf.node_count == 6
    assert conf.conflict_count == 12
    index = complete_graph(4).edge_index()
    # incident edges share a triangle; disjoint edges never do
    assert conf.is_adjacent(index[(0, 1)], index[(0, 2)])
    assert not conf.is_adjacent(index[(0, 1)], index[(2, 3)])


def test_edgeless_graph_conflicts():
    conf = conflict_graph(Graph.from_edges(5, []), 4)
    assert conf.node_count == 0
    assert conf.conflict_count == 0


def test_witnesses_verify():
    g = complete_graph(6)
    conf = conflict_graph(g, 5, keep_witnesses=True)
    assert conf.witnesses
    for (i, j), wit in conf.witnesses.items():
        check = verify_cycle(g, wit, required_edges=[g.edges[i], g.edges[j]], length=5)
        assert check, check.reason


# ---------------------------------------------------------------------------
# rainbow verification
# ---------------------------------------------------------------------------

def test_verify_rainbow_single_cycle():
    g = cycle_graph(9)
    assert verify_rainbow(g, EdgeColoring(g, tuple(range(9))), 9).passed
    rep = verify_rainbow(g, EdgeColoring(g, (0, 0, 1, 2, 3, 4, 5, 6, 7)), 9)
    assert not rep.passed
    witness, colors = rep.violation
    assert sorted(colors).count(0) == 2
    assert verify_cycle(g, witness, length=9)


def test_verify_rainbow_two_clique():
    w = two_clique_graph(10, 26)
    for length in (5, 7, 9):
        assert verify_rainbow(w.graph, w.coloring, length).passed


def test_verify_rainbow_counts_cycles():
    rep = verify_rainbow(
        complete_graph(5), EdgeColoring(complete_graph(5), tuple(range(10))), 5
    )
    assert rep.passed and rep.cycles_examined == 12


# ---------------------------------------------------------------------------
# exact color counts
# ---------------------------------------------------------------------------

def brute_force_chromatic(masks):
    """Exhaustive oracle: smallest c admitting a proper coloring."""
    n = len(masks)
    if n == 0:
        return 0
    for c in range(1, n + 1):
        for assign in product(range(c), repeat=n):
            if all(
                not (masks[i] >> j & 1) or assign[i] != assign[j]
                for i in range(n)
                for j in range(i + 1, n)
            ):
                return c
    raise AssertionError("unreachable")


def test_min_colors_named_values():
    value, coloring = min_rainbow_colors(complete_graph(4), 3)
    assert value == 3
    assert verify_rainbow(complete_graph(4), coloring, 3).passed
    for length in (5, 7, 9):
        value, coloring = min_rainbow_colors(cycle_graph(length), length)
        assert value == length
        assert coloring.color_count == length


def test_min_colors_two_triangles_sharing_edge():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    value, coloring = min_rainbow_colors(g, 3)
    assert value == 3
    assert verify_rainbow(g, coloring, 3).passed


def test_min_colors_guard():
    with pytest.raises(PreconditionError, match="guard"):
        min_rainbow_colors(complete_graph(12), 9)  # 66 edges > default 64
    value, _ = min_rainbow_colors(complete_graph(12), 9, max_edges=None)
    assert value == 66  # complete conflict graph on all edges


def test_exact_chromatic_against_brute_force():
    rng = random.Random(23)
    for _ in range(60):
        n = rng.randint(1, 9)
        masks = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.45:
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        chi, assign = exact_chromatic_number(masks)
        assert chi == brute_force_chromatic(masks)
        assert len(set(assign)) == chi
        for i in range(n):
            for j in range(i + 1, n):
                if masks[i] >> j & 1:
                    assert assign[i] != assign[j]


# ---------------------------------------------------------------------------
# the exhaustive oracle
# ---------------------------------------------------------------------------

def test_oracle_4_5_3():
    result = f_oracle(4, 5, 3)
    assert result.value == 3
    assert result.graphs_examined == 6  # C(6,5)
    assert result.extremal_graph.edge_count == 5
    assert verify_rainbow(result.extremal_graph, result.optimal_coloring, 3).passed
    assert result.optimal_coloring.color_count == 3


def test_oracle_5_7_3():
    result = f_oracle(5, 7, 3)
    assert result.value == 3
    assert result.graphs_examined == 120  # C(10,7)


def test_oracle_guards():
    with pytest.raises(PreconditionError, match="guard"):
        f_oracle(8, 10, 5)
    with pytest.raises(PreconditionError, match="infeasible"):
        f_oracle(4, 7, 3)


def test_oracle_no_cycles_possible():
    result = f_oracle(3, 1, 3)
    assert result.value == 1  # one edge, no triangle, one color suffices


def test_oracle_monotone_in_edges():
    # adding an edge never lowers the minimum: restriction of a valid
    # coloring of the larger graph colors the smaller one
    rng = random.Random(5)
    trials = 0
    while trials < 1000:
        n = rng.randint(4, 8)
        length = rng.choice((3, 5))
        g = gnp_graph(n, rng.uniform(0.3, 0.8), rng)
        non_edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if not g.has_edge(u, v)
        ]
        if not non_edges:
            continue
        extra = rng.choice(non_edges)
        bigger = Graph.from_edges(n, list(g.edges) + [extra])
        small, _ = min_rainbow_colors(g, length)
        large, _ = min_rainbow_colors(bigger, length)
        assert large >= small
        trials += 1


# ---------------------------------------------------------------------------
# good edges
# ---------------------------------------------------------------------------

def test_good_edges_case1():
    g = complete_graph(6)
    full = good_edges_case1(g, range(6))
    assert full.count == 15 and full.bound == 15

    partial = good_edges_case1(g, {0, 1, 2, 3})
    assert partial.count == 14 and partial.bound == 14

    empty = good_edges_case1(g, set())
    assert empty.count == 0 and empty.bound <= 0


def test_good_edges_case2_complete():
    g = complete_graph(6)
    book = find_book_edge(g)
    result = good_edges_case2(g, book)
    assert result.count == 6  # edges inside {2,3,4,5}
    assert result.bound == pytest.approx(6.0)  # 4 * (5 - 2) / 2

    g20 = complete_graph(20)
    result = good_edges_case2(g20, find_book_edge(g20))
    assert result.count == 153
    assert result.bound == pytest.approx(153.0)


def test_good_edges_case2_manual_star_book():
    star = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    result = good_edges_case2(star, BookWitness(0, 1, ()))
    assert result.count == 0


def test_good_edges_case2_validates_book():
    g = complete_graph(5)
    with pytest.raises(ValueError, match="not an edge"):
        good_edges_case2(cycle_graph(5), BookWitness(0, 2, ()))
    with pytest.raises(ValueError, match="common"):
        good_edges_case2(g, BookWitness(0, 1, (2,)))


# ---------------------------------------------------------------------------
# reduction equivalence (spot check; the acceptance suite runs the full batch)
# ---------------------------------------------------------------------------

def test_reduction_equivalence_spot():
    rng = random.Random(99)
    for _ in range(200):
        g = gnp_graph(rng.randint(4, 8), rng.uniform(0.3, 0.8), rng)
        if not g.edge_count:
            continue
        length = rng.randint(3, g.n)
        colors = tuple(rng.randrange(max(2, g.edge_count // 2)) for _ in g.edges)
        coloring = EdgeColoring(g, colors)
        conf = conflict_graph(g, length)
        proper = all(colors[i] != colors[j] for i, j in conf.pairs())
        assert verify_rainbow(g, coloring, length).passed == proper
