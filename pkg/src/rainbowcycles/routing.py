"""Routing two target edges onto a common odd cycle of prescribed length.

Three recipes are implemented: the dense regime (a short connection, a
greedy stretch and a length-4 closure), the very-dense subgraph recipe
(common-neighbor hops around a greedy stretch) and the near-bipartite regime
built around a book edge pq, where the triangle pqr acts as an adjuster: the
cycle can run through the edge p-r or the two-edge path p-q-r, absorbing the
length difference of the final 2-or-3 closure.

The recipes check their hypotheses but attempt routing regardless (the
hypotheses are asymptotic and rarely hold at desk scale); correctness rests
on every returned witness passing cycle verification, not on hypothesis
satisfaction. All choices scan ascending ids, so identical inputs give
identical witnesses.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import InternalCheckError, PreconditionError, RoutingError, SearchError
from .graphs import (
    CycleWitness,
    Graph,
    PathWitness,
    bits,
    normalize_edge,
    verify_cycle,
)
from .lemmas import BookWitness, find_path_len4, greedy_path

RECIPES = (
    "case1",
    "claim1-disjoint",
    "claim1-adjacent",
    "case2-adjacent",
    "case2-disjoint-common",
    "case2-disjoint-nocommon",
)


@dataclass(frozen=True)
class RouteStage:
    """One step of a recipe: a path witness or a single chosen vertex."""

    name: str
    content: PathWitness | int

    @property
    def length(self) -> int:
        return self.content.length if isinstance(self.content, PathWitness) else 0


@dataclass(frozen=True, eq=False)
class RouteDiagnostics:
    """How a cycle was assembled.

    adjuster_used: True when the route runs through q (the p-q-r side of the
    adjuster triangle), False when it takes the edge p-r directly, None for
    recipes without an adjuster. joining_edges counts the single edges the
    assembly contributes beside the path stages.
    """

    recipe: str
    stages: tuple[RouteStage, ...]
    joining_edges: int
    adjuster_used: bool | None = None

    def stage_length_sum(self) -> int:
        return sum(s.length for s in self.stages)


def _finish(
    g: Graph,
    k: int,
    recipe: str,
    vertices: list[int],
    stages: list[RouteStage],
    e1,
    e2,
    adjuster_used: bool | None,
) -> tuple[CycleWitness, RouteDiagnostics]:
    witness = CycleWitness(tuple(vertices))
    check = verify_cycle(g, witness, required_edges=(e1, e2), length=2 * k + 1)
    if not check:
        raise InternalCheckError(f"recipe {recipe} produced a bad cycle: {check.reason}")
    diag = RouteDiagnostics(
        recipe=recipe,
        stages=tuple(stages),
        joining_edges=2 * k + 1 - sum(s.length for s in stages),
        adjuster_used=adjuster_used,
    )
    if diag.stage_length_sum() + diag.joining_edges != 2 * k + 1:
        raise InternalCheckError("stage-length bookkeeping broke")
    return witness, diag


def _validate_route_args(g: Graph, k: int, e1, e2, allow_small_k: bool):
    e1 = normalize_edge(*e1)
    e2 = normalize_edge(*e2)
    if k < 4 and not allow_small_k:
        raise PreconditionError(
            f"k = {k} below 4; the recipes are only guaranteed for k >= 4 "
            "(pass allow_small_k=True to experiment)"
        )
    if k < 2:
        raise PreconditionError(f"k = {k} leaves no room for any recipe")
    if e1 == e2:
        raise ValueError("the two target edges must differ")
    for u, v in (e1, e2):
        if not g.has_edge(u, v):
            raise ValueError(f"({u},{v}) is not an edge of the graph")
    return e1, e2


def _smallest_common_neighbor(g: Graph, u: int, v: int, banned) -> int | None:
    mask = g.masks[u] & g.masks[v]
    for b in banned:
        mask &= ~(1 << b)
    if not mask:
        return None
    return (mask & -mask).bit_length() - 1


# ---------------------------------------------------------------------------
# the 2-or-3 connector
# ---------------------------------------------------------------------------

def connect_short(g: Graph, x: int, y: int, avoid=frozenset(), k: int | None = None) -> PathWitness:
    """Path of length 2 or 3 from x to y with interior outside `avoid`.

    Prefers length 2; ties broken by ascending ids. The guarantee behind this
    primitive is conditional on |avoid| <= 5k, so an oversized avoid set only
    warns. Raises SearchError when neither length exists.
    """
    avoid = frozenset(avoid)
    if x == y:
        raise ValueError("endpoints must differ")
    if x in avoid or y in avoid:
        raise ValueError("endpoints may not be in the avoid set")
    if k is not None and len(avoid) > 5 * k:
        warnings.warn(
            f"avoid set of size {len(avoid)} exceeds 5k = {5 * k}; "
            "the existence guarantee does not apply",
            stacklevel=2,
        )
    blocked = 0
    for v in avoid:
        blocked |= 1 << v
    blocked |= (1 << x) | (1 << y)
    masks = g.masks
    mid = masks[x] & masks[y] & ~blocked
    if mid:
        return PathWitness((x, (mid & -mid).bit_length() - 1, y))
    for a in bits(masks[x] & ~blocked):
        second = masks[a] & masks[y] & ~blocked & ~(1 << a)
        if second:
            return PathWitness((x, a, (second & -second).bit_length() - 1, y))
    raise SearchError(f"no path of length 2 or 3 from {x} to {y} avoiding {sorted(avoid)}")


# ---------------------------------------------------------------------------
# dense regime
# ---------------------------------------------------------------------------

def _bfs_parents(g: Graph, source: int) -> tuple[list[float], list[int]]:
    dist: list[float] = [float("inf")] * g.n
    parent = [-1] * g.n
    dist[source] = 0
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:  # frontier kept ascending; parents are smallest-id
            for v in g.adj[u]:
                if dist[v] == float("inf"):
                    dist[v] = d
                    parent[v] = u
                    nxt.append(v)
        frontier = nxt
    return dist, parent


def route_good_pair_case1(
    g: Graph, k: int, members, e1, e2, allow_small_k: bool = False
) -> tuple[CycleWitness, RouteDiagnostics]:
    """Dense-regime recipe: connect, stretch greedily, close with length 4.

    `members` is the distance-3 set certifying both edges good (each must
    have an endpoint in it). P1 is the shortest connection over all endpoint
    labelings, P2 a greedy stretch to total length 2k-3, P3 a length-4
    closure avoiding the 2k-4 inner vertices.
    """
    e1, e2 = _validate_route_args(g, k, e1, e2, allow_small_k)
    member_set = set(members)
    for name, e in (("first", e1), ("second", e2)):
        if not member_set & set(e):
            raise PreconditionError(f"{name} edge {e} has no endpoint in the set")

    # P1: all valid endpoint labelings, first shortest wins. Minimality over
    # labelings keeps the interior clear of the two free endpoints.
    dists = {}
    parents = {}
    for x in e1:
        dists[x], parents[x] = _bfs_parents(g, x)
    best = None
    for x in sorted(e1):
        y = e1[0] if e1[1] == x else e1[1]
        for z in sorted(e2):
            w = e2[0] if e2[1] == z else e2[1]
            if y == w or y == z or x == w:
                continue
            d = dists[x][z]
            if best is None or d < best[0]:
                best = (d, x, y, z, w)
    if best is None or best[0] == float("inf"):
        raise RoutingError("no connection between the edges", stage="P1")
    d, x, y, z, w = best
    if d > min(3, 2 * k - 5):
        raise RoutingError(
            f"shortest connection has length {d} > {min(3, 2 * k - 5)}", stage="P1"
        )
    chain = [z]
    while chain[-1] != x:
        chain.append(parents[x][chain[-1]])
    p1 = PathWitness(tuple(chain))  # runs z .. x

    p2_len = 2 * k - 5 - p1.length
    p2 = greedy_path(g, y, set(p1.vertices) | {w}, p2_len)
    if p2 is None:
        raise RoutingError(f"greedy stretch of length {p2_len} stuck", stage="P2")
    u = p2.vertices[-1]

    inner = (set(p1.vertices) | set(p2.vertices)) - {u}
    try:
        p3 = find_path_len4(g, w, u, avoid=inner)
    except SearchError as err:
        raise RoutingError(
            f"no length-4 closure from {w} to {u}", stage="P3"
        ) from err

    cycle = [w, *p1.vertices, *p2.vertices, *reversed(p3.vertices[1:-1])]
    stages = [RouteStage("P1", p1), RouteStage("P2", p2), RouteStage("P3", p3)]
    return _finish(g, k, "case1", cycle, stages, e1, e2, None)


# ---------------------------------------------------------------------------
# very dense subgraph regime
# ---------------------------------------------------------------------------

def route_in_dense_subgraph(
    g: Graph, k: int, e1, e2, allow_small_k: bool = False
) -> tuple[CycleWitness, RouteDiagnostics]:
    """Common-neighbor recipe for subgraphs of very high minimum degree.

    Disjoint edges pq, zw: hop p-a-z through a common neighbor, stretch from
    w, hop back through a common neighbor of the far end and q. Adjacent
    edges pq, pz: stretch from z and hop back to q. Expected to succeed when
    the minimum degree exceeds half the order plus 5k.
    """
    e1, e2 = _validate_route_args(g, k, e1, e2, allow_small_k)
    shared = set(e1) & set(e2)
    last_error: RoutingError | None = None

    if shared:
        p = shared.pop()
        q = e1[0] if e1[1] == p else e1[1]
        z = e2[0] if e2[1] == p else e2[1]
        length = 2 * k - 3
        path = greedy_path(g, z, {q, p}, length)
        if path is None:
            raise RoutingError(f"greedy stretch of length {length} stuck", stage="P")
        u = path.vertices[-1]
        b = _smallest_common_neighbor(g, u, q, banned={p, *path.vertices})
        if b is None:
            raise RoutingError(
                f"no common neighbor of {u} and {q} available", stage="b"
            )
        cycle = [q, p, *path.vertices, b]
        stages = [RouteStage("P", path), RouteStage("b", b)]
        return _finish(g, k, "claim1-adjacent", cycle, stages, e1, e2, None)

    for p in sorted(e1):
        q = e1[0] if e1[1] == p else e1[1]
        for z in sorted(e2):
            w = e2[0] if e2[1] == z else e2[1]
            a = _smallest_common_neighbor(g, p, z, banned={q, w})
            if a is None:
                last_error = RoutingError(
                    f"no common neighbor of {p} and {z}", stage="a"
                )
                continue
            length = 2 * k - 5
            path = greedy_path(g, w, {q, p, a, z}, length)
            if path is None:
                last_error = RoutingError(
                    f"greedy stretch of length {length} stuck", stage="P"
                )
                continue
            u = path.vertices[-1]
            b = _smallest_common_neighbor(g, u, q, banned={p, a, z, *path.vertices})
            if b is None:
                last_error = RoutingError(
                    f"no common neighbor of {u} and {q} available", stage="b"
                )
                continue
            cycle = [q, p, a, z, *path.vertices, b]
            stages = [
                RouteStage("a", a),
                RouteStage("P", path),
                RouteStage("b", b),
            ]
            return _finish(g, k, "claim1-disjoint", cycle, stages, e1, e2, None)
    assert last_error is not None
    raise last_error


# ---------------------------------------------------------------------------
# near-bipartite regime (book + adjuster)
# ---------------------------------------------------------------------------

def route_good_pair_case2(
    g: Graph, k: int, book: BookWitness, e1, e2, allow_small_k: bool = False
) -> tuple[CycleWitness, RouteDiagnostics]:
    """Book-based recipe: route both edges onto one cycle through the book
    edge's neighborhood, using the adjuster triangle pqr to fix the length.

    Both edges must be good for the book: an endpoint in N(p) minus q and
    neither endpoint in {p, q}. Dispatches on whether the edges share a
    vertex, and for disjoint edges on whether their free endpoints have a
    usable common neighbor.
    """
    e1, e2 = _validate_route_args(g, k, e1, e2, allow_small_k)
    p, q = book.p, book.q
    if not g.has_edge(p, q):
        raise ValueError(f"book edge ({p},{q}) missing from the graph")
    member_mask = g.masks[p] & ~(1 << q)
    for name, e in (("first", e1), ("second", e2)):
        if set(e) & {p, q}:
            raise PreconditionError(f"{name} edge {e} touches the book pair")
        if not (member_mask >> e[0] & 1 or member_mask >> e[1] & 1):
            raise PreconditionError(
                f"{name} edge {e} has no endpoint adjacent to {p}"
            )

    shared = set(e1) & set(e2)
    if shared:
        return _case2_adjacent(g, k, p, q, shared.pop(), e1, e2)
    return _case2_disjoint(g, k, p, q, member_mask, e1, e2)


def _case2_adjacent(g, k, p, q, x, e1, e2):
    last_error = RoutingError("no labeling attempted", stage="setup")
    y1 = e1[0] if e1[1] == x else e1[1]
    z1 = e2[0] if e2[1] == x else e2[1]
    for y, z in ((y1, z1), (z1, y1)):
        r = _smallest_common_neighbor(g, p, q, banned={x, y, z})
        if r is None:
            last_error = RoutingError("no adjuster vertex available", stage="r")
            continue
        try:
            p1 = connect_short(g, p, z, avoid={x, y, q, r}, k=k)
        except SearchError:
            last_error = RoutingError(f"no short path {p}-{z}", stage="P1")
            continue
        p2_len = 2 * k - 5 - p1.length
        if p2_len < 0:
            last_error = RoutingError("connection too long for this k", stage="P1")
            continue
        p2 = greedy_path(g, y, {r, q, x, *p1.vertices}, p2_len)
        if p2 is None:
            last_error = RoutingError(
                f"greedy stretch of length {p2_len} stuck", stage="P2"
            )
            continue
        u = p2.vertices[-1]
        avoid = ({q, x} | set(p1.vertices) | set(p2.vertices)) - {u}
        try:
            p3 = connect_short(g, u, r, avoid=avoid, k=k)
        except SearchError:
            last_error = RoutingError(f"no short closure {u}-{r}", stage="P3")
            continue
        stages = [
            RouteStage("r", r),
            RouteStage("P1", p1),
            RouteStage("P2", p2),
            RouteStage("P3", p3),
        ]
        interior = list(p3.vertices[1:-1])
        if p3.length == 2:
            cycle = [r, q, *p1.vertices, x, *p2.vertices, *interior]
            return _finish(g, k, "case2-adjacent", cycle, stages, e1, e2, True)
        cycle = [r, *p1.vertices, x, *p2.vertices, *interior]
        return _finish(g, k, "case2-adjacent", cycle, stages, e1, e2, False)
    raise last_error


def _case2_disjoint(g, k, p, q, member_mask, e1, e2):
    last_error = RoutingError("no labeling attempted", stage="setup")

    def endpoint_orders(e):
        in_set = sorted(v for v in e if member_mask >> v & 1)
        out = sorted(v for v in e if not member_mask >> v & 1)
        return in_set + out

    for first, second in ((e1, e2), (e2, e1)):
        for z in sorted(v for v in second if member_mask >> v & 1):
            w = second[0] if second[1] == z else second[1]
            for x in endpoint_orders(first):
                y = first[0] if first[1] == x else first[1]
                u = _smallest_common_neighbor(g, y, w, banned={p, q, x, z})
                if u is not None:
                    result = _case2_disjoint_common(
                        g, k, p, q, x, y, z, w, u, e1, e2
                    )
                else:
                    result = _case2_disjoint_nocommon(
                        g, k, p, q, member_mask, x, y, z, w, e1, e2
                    )
                if isinstance(result, RoutingError):
                    last_error = result
                    continue
                return result
    raise last_error


def _case2_disjoint_common(g, k, p, q, x, y, z, w, u, e1, e2):
    r = _smallest_common_neighbor(g, p, q, banned={x, y, z, w, u})
    if r is None:
        return RoutingError("no adjuster vertex available", stage="r")
    p1_len = 2 * k - 8
    if p1_len < 0:
        return RoutingError("k too small for the disjoint-common recipe", stage="P1")
    p1 = greedy_path(g, x, {y, u, w, z, p, q, r}, p1_len)
    if p1 is None:
        return RoutingError(f"greedy stretch of length {p1_len} stuck", stage="P1")
    v = p1.vertices[-1]
    avoid = (set(p1.vertices) | {y, u, w, z, p, q}) - {v}
    try:
        p2 = connect_short(g, v, r, avoid=avoid, k=k)
    except SearchError:
        return RoutingError(f"no short closure {v}-{r}", stage="P2")
    stages = [
        RouteStage("u", u),
        RouteStage("r", r),
        RouteStage("P1", p1),
        RouteStage("P2", p2),
    ]
    interior = list(p2.vertices[1:-1])
    if p2.length == 2:
        cycle = [*p1.vertices, *interior, r, q, p, z, w, u, y]
        return _finish(g, k, "case2-disjoint-common", cycle, stages, e1, e2, True)
    cycle = [*p1.vertices, *interior, r, p, z, w, u, y]
    return _finish(g, k, "case2-disjoint-common", cycle, stages, e1, e2, False)


def _case2_disjoint_nocommon(g, k, p, q, member_mask, x, y, z, w, e1, e2):
    p1_len = 2 * k - 7
    if p1_len < 0:
        return RoutingError("k too small for the disjoint recipe", stage="P1")
    adjusters = g.masks[p] & g.masks[q] & ~sum(1 << v for v in (x, y, z, w))

    # Preferred variant: r adjacent to the free endpoint of the first edge.
    r = None
    cand = adjusters & g.masks[y]
    if cand:
        r = (cand & -cand).bit_length() - 1
    if r is not None:
        p1 = greedy_path(g, x, {y, w, z, p, q, r}, p1_len)
        if p1 is None:
            return RoutingError(f"greedy stretch of length {p1_len} stuck", stage="P1")
        u = p1.vertices[-1]
        avoid = ({z, p, q, r, y} | set(p1.vertices)) - {u}
        try:
            p2 = connect_short(g, u, w, avoid=avoid, k=k)
        except SearchError:
            return RoutingError(f"no short closure {u}-{w}", stage="P2")
        stages = [RouteStage("r", r), RouteStage("P1", p1), RouteStage("P2", p2)]
        interior = list(p2.vertices[1:-1])
        if p2.length == 2:
            cycle = [z, p, q, r, y, *p1.vertices, *interior, w]
            return _finish(g, k, "case2-disjoint-nocommon", cycle, stages, e1, e2, True)
        cycle = [z, p, r, y, *p1.vertices, *interior, w]
        return _finish(g, k, "case2-disjoint-nocommon", cycle, stages, e1, e2, False)

    # Mirrored variant: r adjacent to the free endpoint of the second edge.
    # The roles of the two edges swap, which needs the first edge's set
    # endpoint adjacent to p.
    cand = adjusters & g.masks[w]
    if cand and member_mask >> x & 1:
        r = (cand & -cand).bit_length() - 1
        p1 = greedy_path(g, z, {w, y, x, p, q, r}, p1_len)
        if p1 is None:
            return RoutingError(f"greedy stretch of length {p1_len} stuck", stage="P1")
        u = p1.vertices[-1]
        avoid = ({x, p, q, r, w} | set(p1.vertices)) - {u}
        try:
            p2 = connect_short(g, u, y, avoid=avoid, k=k)
        except SearchError:
            return RoutingError(f"no short closure {u}-{y}", stage="P2")
        stages = [RouteStage("r", r), RouteStage("P1", p1), RouteStage("P2", p2)]
        interior = list(p2.vertices[1:-1])
        if p2.length == 2:
            cycle = [x, p, q, r, w, *p1.vertices, *interior, y]
            return _finish(g, k, "case2-disjoint-nocommon", cycle, stages, e1, e2, True)
        cycle = [x, p, r, w, *p1.vertices, *interior, y]
        return _finish(g, k, "case2-disjoint-nocommon", cycle, stages, e1, e2, False)

    return RoutingError("no adjacent adjuster vertex for either free endpoint", stage="r")
