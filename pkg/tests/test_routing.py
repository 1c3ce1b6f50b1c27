import random
from itertools import combinations

import pytest

from rainbowcycles.conflicts import conflict_graph
from rainbowcycles.errors import PreconditionError, RoutingError, SearchError
from rainbowcycles.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    gnp_graph,
    verify_cycle,
)
from rainbowcycles.lemmas import BookWitness, find_book_edge, find_close_set
from rainbowcycles.routing import (
    connect_short,
    route_good_pair_case1,
    route_good_pair_case2,
    route_in_dense_subgraph,
)


def assert_verified(g, k, result, e1, e2):
    witness, diag = result
    check = verify_cycle(g, witness, required_edges=(e1, e2), length=2 * k + 1)
    assert check, check.reason
    assert diag.stage_length_sum() + diag.joining_edges == 2 * k + 1
    return witness, diag


# ---------------------------------------------------------------------------
# connect_short
# ---------------------------------------------------------------------------

def test_connect_short_prefers_length_two():
    w = connect_short(complete_graph(6), 0, 1, avoid={2})
    assert w.vertices == (0, 3, 1)


def test_connect_short_length_three():
    w = connect_short(cycle_graph(6), 0, 3)
    assert w.vertices == (0, 1, 2, 3)


def test_connect_short_not_found():
    star = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    with pytest.raises(SearchError):
        connect_short(star, 1, 2, avoid={0})


def test_connect_short_warns_on_oversized_avoid():
    g = complete_graph(30)
    with pytest.warns(UserWarning, match="5k"):
        connect_short(g, 0, 1, avoid=set(range(2, 24)), k=4)


# ---------------------------------------------------------------------------
# dense regime
# ---------------------------------------------------------------------------

def test_case1_disjoint_edges_on_k12():
    g = complete_graph(12)
    result = route_good_pair_case1(g, 4, range(12), (0, 1), (2, 3))
    _, diag = assert_verified(g, 4, result, (0, 1), (2, 3))
    assert diag.recipe == "case1"
    assert [s.length for s in diag.stages] == [1, 2, 4]
    assert diag.adjuster_used is None


def test_case1_sharing_a_vertex():
    g = complete_graph(12)
    result = route_good_pair_case1(g, 4, range(12), (0, 1), (1, 2))
    witness, diag = assert_verified(g, 4, result, (0, 1), (1, 2))
    assert diag.stages[0].length == 0  # the shared vertex is the connection


def test_case1_disconnected_fails_at_connection():
    g = disjoint_union(complete_graph(5), complete_graph(5))
    with pytest.raises(RoutingError) as info:
        route_good_pair_case1(g, 4, range(10), (0, 1), (5, 6))
    assert info.value.stage == "P1"


def test_case1_requires_good_edges():
    with pytest.raises(PreconditionError, match="no endpoint"):
        route_good_pair_case1(complete_graph(12), 4, {0, 1}, (0, 1), (2, 3))


def test_case1_determinism():
    g = complete_graph(13)
    a = route_good_pair_case1(g, 4, range(13), (0, 5), (2, 9))
    b = route_good_pair_case1(g, 4, range(13), (0, 5), (2, 9))
    assert a[0] == b[0]
    assert [s.content for s in a[1].stages] == [s.content for s in b[1].stages]


def test_case1_k_validation():
    with pytest.raises(PreconditionError, match="k = 3"):
        route_good_pair_case1(complete_graph(12), 3, range(12), (0, 1), (2, 3))
    # the maintenance flag lets k=3 through; on K_12 the recipe still lands
    result = route_good_pair_case1(
        complete_graph(12), 3, range(12), (0, 1), (2, 3), allow_small_k=True
    )
    assert_verified(complete_graph(12), 3, result, (0, 1), (2, 3))


# ---------------------------------------------------------------------------
# very dense subgraph regime
# ---------------------------------------------------------------------------

def test_claim1_disjoint():
    g = complete_graph(12)
    result = route_in_dense_subgraph(g, 4, (0, 1), (2, 3))
    _, diag = assert_verified(g, 4, result, (0, 1), (2, 3))
    assert diag.recipe == "claim1-disjoint"


def test_claim1_adjacent():
    g = complete_graph(12)
    result = route_in_dense_subgraph(g, 4, (0, 1), (0, 2))
    _, diag = assert_verified(g, 4, result, (0, 1), (0, 2))
    assert diag.recipe == "claim1-adjacent"


def test_claim1_sparse_cycle_fails():
    g = cycle_graph(9)
    with pytest.raises(RoutingError):
        route_in_dense_subgraph(g, 4, (0, 1), (4, 5))


# ---------------------------------------------------------------------------
# near-bipartite regime
# ---------------------------------------------------------------------------

def test_case2_adjacent_on_k20():
    g = complete_graph(20)
    book = find_book_edge(g)
    result = route_good_pair_case2(g, 4, book, (2, 3), (3, 4))
    _, diag = assert_verified(g, 4, result, (2, 3), (3, 4))
    assert diag.recipe == "case2-adjacent"
    assert diag.adjuster_used is True  # complete graphs always close in length 2


def test_case2_disjoint_common_on_k20():
    g = complete_graph(20)
    book = find_book_edge(g)
    result = route_good_pair_case2(g, 4, book, (2, 3), (4, 5))
    _, diag = assert_verified(g, 4, result, (2, 3), (4, 5))
    assert diag.recipe == "case2-disjoint-common"
    assert diag.adjuster_used is True


def test_case2_rejects_edges_touching_book_pair():
    g = complete_graph(20)
    book = find_book_edge(g)  # (0, 1)
    with pytest.raises(PreconditionError, match="touches the book pair"):
        route_good_pair_case2(g, 4, book, (0, 2), (3, 4))


def _nocommon_graph(through_q: bool):
    """Disjoint good edges whose free endpoints share no usable neighbor.

    p=0, q=1, adjuster r=2 adjacent to y=4; e1=(3,4), e2=(5,6). The closure
    from the greedy endpoint 7 to w=6 runs 7-8-6 when through_q (length 2)
    and 7-8-9-6 otherwise (length 3, which drops q from the cycle).
    """
    edges = [
        (0, 1),  # book edge
        (0, 2), (1, 2),  # adjuster triangle
        (2, 4),  # r adjacent to y
        (0, 3), (0, 5),  # x and z sit in N(p)
        (3, 4),  # e1
        (5, 6),  # e2
        (3, 7),  # greedy step from x
    ]
    if through_q:
        edges += [(7, 8), (8, 6)]
        return Graph.from_edges(9, edges)
    edges += [(7, 8), (8, 9), (9, 6)]
    return Graph.from_edges(10, edges)


def test_case2_disjoint_nocommon_through_q():
    g = _nocommon_graph(through_q=True)
    book = BookWitness(0, 1, (2,))
    result = route_good_pair_case2(g, 4, book, (3, 4), (5, 6))
    witness, diag = assert_verified(g, 4, result, (3, 4), (5, 6))
    assert diag.recipe == "case2-disjoint-nocommon"
    assert diag.adjuster_used is True
    assert 1 in witness.vertices  # q rides along


def test_case2_disjoint_nocommon_skip_q():
    g = _nocommon_graph(through_q=False)
    book = BookWitness(0, 1, (2,))
    result = route_good_pair_case2(g, 4, book, (3, 4), (5, 6))
    witness, diag = assert_verified(g, 4, result, (3, 4), (5, 6))
    assert diag.recipe == "case2-disjoint-nocommon"
    assert diag.adjuster_used is False
    assert 1 not in witness.vertices  # q skipped via the direct p-r edge


def test_case2_nocommon_mirrored_variant():
    # r is adjacent to w (the second edge's free endpoint) but not to y, so
    # the roles of the two edges swap.
    edges = [
        (0, 1),
        (0, 2), (1, 2),
        (2, 6),  # r adjacent to w this time
        (0, 3), (0, 5),
        (3, 4),  # e1
        (5, 6),  # e2
        (5, 7),  # greedy step from z
        (7, 8), (8, 4),  # closure to y
    ]
    g = Graph.from_edges(9, edges)
    book = BookWitness(0, 1, (2,))
    result = route_good_pair_case2(g, 4, book, (3, 4), (5, 6))
    witness, diag = assert_verified(g, 4, result, (3, 4), (5, 6))
    assert diag.recipe == "case2-disjoint-nocommon"


def test_case2_random_batch_verifies():
    rng = random.Random(17)
    g = gnp_graph(40, 0.55, rng)
    book = find_book_edge(g)
    members = set(g.adj[book.p]) - {book.q}
    good = [
        e
        for e in g.edges
        if (e[0] in members or e[1] in members) and not (set(e) & {book.p, book.q})
    ]
    pairs = [
        (e1, e2) for e1, e2 in combinations(good, 2)
    ]
    rng.shuffle(pairs)
    for e1, e2 in pairs[:60]:
        result = route_good_pair_case2(g, 4, book, e1, e2)
        assert_verified(g, 4, result, e1, e2)


# ---------------------------------------------------------------------------
# router/conflict consistency
# ---------------------------------------------------------------------------

def test_router_claims_match_conflict_graph():
    g = complete_graph(9)
    conf = conflict_graph(g, 9)
    index = g.edge_index()
    members = find_close_set(g).members
    rng = random.Random(3)
    edges = list(g.edges)
    for _ in range(25):
        e1, e2 = rng.sample(edges, 2)
        witness, _ = route_good_pair_case1(g, 4, members, e1, e2)
        assert verify_cycle(g, witness, required_edges=(e1, e2), length=9)
        i, j = index[e1], index[e2]
        assert conf.is_adjacent(i, j)  # routers never invent conflicts
