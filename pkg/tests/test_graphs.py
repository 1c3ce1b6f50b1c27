import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowcycles.errors import ParseError
from rainbowcycles.graphs import (
    CycleWitness,
    Graph,
    PathWitness,
    bfs_distances,
    canonical_rotation,
    common_neighbors,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    delete_vertices,
    disjoint_union,
    graph_stats,
    parse_graph,
    path_graph,
    serialize_graph,
    verify_cycle,
    verify_path,
)

INF = math.inf


# ---------------------------------------------------------------------------
# hypothesis strategies
# ---------------------------------------------------------------------------

@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.integers(min_value=0, max_value=2 ** len(pairs) - 1))
    return Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def test_parse_triangle():
    g = parse_graph("3 3\n0 1\n1 2\n0 2\n")
    assert g.n == 3
    assert g.edges == ((0, 1), (0, 2), (1, 2))


def test_parse_edgeless():
    g = parse_graph("2 0\n")
    assert g.n == 2
    assert g.edges == ()


def test_parse_loop_reports_line():
    with pytest.raises(ParseError, match="line 2.*loop"):
        parse_graph("3 1\n0 0\n")


def test_parse_comments_and_count_mismatch():
    g = parse_graph("# a triangle\n3 3\n0 1\n# middle comment\n1 2\n0 2\n")
    assert g.edge_count == 3
    with pytest.raises(ParseError, match="declares 2"):
        parse_graph("3 2\n0 1\n")


def test_parse_duplicate_and_range():
    with pytest.raises(ParseError, match="line 3.*duplicate"):
        parse_graph("3 2\n0 1\n1 0\n")
    with pytest.raises(ParseError, match="out of range"):
        parse_graph("3 1\n0 5\n")


def test_roundtrip_is_bit_exact():
    text = "5 4\n0 3\n1 2\n1 4\n2 3\n"
    assert serialize_graph(parse_graph(text)) == text


@given(graphs())
def test_roundtrip_random(g):
    assert parse_graph(serialize_graph(g)) == g


# ---------------------------------------------------------------------------
# traversal and surgery
# ---------------------------------------------------------------------------

def test_bfs_on_path():
    assert bfs_distances(path_graph(4), 0) == [0, 1, 2, 3]


def test_bfs_on_complete():
    assert bfs_distances(complete_graph(5), 2) == [1, 1, 0, 1, 1]


def test_bfs_disconnected():
    g = disjoint_union(cycle_graph(3), cycle_graph(3))
    dist = bfs_distances(g, 0)
    assert dist[:3] == [0, 1, 1]
    assert dist[3:] == [INF, INF, INF]


def test_common_neighbors():
    assert common_neighbors(complete_graph(4), 0, 1) == (2, 3)
    assert common_neighbors(cycle_graph(5), 0, 1) == ()
    assert common_neighbors(complete_bipartite_graph(2, 3), 0, 1) == (2, 3, 4)
    with pytest.raises(ValueError):
        common_neighbors(complete_graph(4), 1, 1)


def test_delete_vertices():
    sub, kept = delete_vertices(complete_graph(5), {2})
    assert sub == complete_graph(4)
    assert kept == (0, 1, 3, 4)

    sub, kept = delete_vertices(cycle_graph(5), {4})
    assert sub == path_graph(4)

    g = cycle_graph(6)
    sub, kept = delete_vertices(g, set())
    assert sub == g
    assert kept == tuple(range(6))

    with pytest.raises(ValueError):
        delete_vertices(g, {9})


@given(graphs())
def test_handshake(g):
    assert sum(g.degrees()) == 2 * g.edge_count


@given(graphs(), st.data())
def test_bfs_triangle_inequality(g, data):
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, g.n - 1))
    w = data.draw(st.integers(0, g.n - 1))
    du = bfs_distances(g, u)
    dv = bfs_distances(g, v)
    assert du[w] <= du[v] + dv[w]


def test_stats():
    s = graph_stats(path_graph(4))
    assert (s.min_degree, s.max_degree, s.edge_count) == (1, 2, 3)
    assert s.argmin == 0 and s.argmax == 1


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

def test_verify_cycle_with_required_edges():
    g = complete_graph(10)
    w = CycleWitness(tuple(range(9)))
    assert verify_cycle(g, w, required_edges=[(0, 1), (4, 5)])
    check = verify_cycle(g, CycleWitness((0, 1, 2, 1, 4, 5, 6, 7, 8)))
    assert not check and "repeated" in check.reason
    check = verify_cycle(g, w, required_edges=[(0, 9)])
    assert not check and "required edge" in check.reason


def test_verify_cycle_structure():
    g = cycle_graph(5)
    assert verify_cycle(g, CycleWitness((0, 1, 2, 3, 4)))
    check = verify_cycle(g, CycleWitness((0, 1, 3)))
    assert not check and "missing edge" in check.reason
    check = verify_cycle(g, CycleWitness((0, 1)))
    assert not check and "at least 3" in check.reason
    check = verify_cycle(g, CycleWitness((0, 1, 2, 3, 4)), length=7)
    assert not check and "length" in check.reason


def test_verify_path():
    g = path_graph(5)
    assert verify_path(g, PathWitness((0, 1, 2, 3)))
    assert verify_path(g, PathWitness((2,)))
    assert not verify_path(g, PathWitness(()))
    check = verify_path(g, PathWitness((0, 2)))
    assert not check and "missing edge" in check.reason
    check = verify_path(g, PathWitness((0, 1, 0)))
    assert not check and "repeated" in check.reason


@given(st.lists(st.integers(0, 50), min_size=3, max_size=12, unique=True), st.data())
def test_canonical_rotation_invariance(vertices, data):
    vs = tuple(vertices)
    canon = canonical_rotation(vs)
    assert canonical_rotation(canon) == canon  # idempotent
    shift = data.draw(st.integers(0, len(vs) - 1))
    rotated = vs[shift:] + vs[:shift]
    assert canonical_rotation(rotated) == canon
    assert canonical_rotation(tuple(reversed(rotated))) == canon
    assert canon[0] == min(vs)
    assert canon[1] < canon[-1]


@settings(max_examples=30)
@given(graphs(max_n=7))
def test_witness_edges_match_adjacency(g):
    for u, v in g.edges:
        assert verify_path(g, PathWitness((u, v)))
