"""Executable short-path connectivity lemmas.

Each operation returns an explicit certificate (vertex set, path, edge) that
is re-verified against the host graph before it is handed back, so callers
never need to trust the search procedure itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import GreedyStuckError, InternalCheckError, PreconditionError, SearchError
from .graphs import Graph, PathWitness, bits, common_neighbors, graph_stats, reach_within

# Tolerance used only where an integer is checked against a genuinely
# irrational bound (certificate sizes vs C1); hypothesis thresholds with
# rational values are compared exactly in integer arithmetic instead, since
# e and delta do land exactly on n^2/4-style lattice points.
SLACK = 1e-9


def _degree_sqrt_ge(quad4: int, twice_gap: int, strict: bool) -> bool:
    """Exact test of sqrt(quad4)/2 >= twice_gap/2 (or >), quad4 = 4*radicand.

    Encodes delta-vs-(n/2 - sqrt(...) + c) hypotheses without float error.
    A negative radicand means the bound is undefined; treated as unmet.
    """
    if quad4 < 0:
        return False
    if twice_gap < 0:
        return True
    if strict:
        return quad4 > twice_gap * twice_gap
    return quad4 >= twice_gap * twice_gap


# ---------------------------------------------------------------------------
# precondition reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Condition:
    name: str
    lhs: float
    rhs: float
    passed: bool


@dataclass(frozen=True)
class PreconditionReport:
    """Numeric evaluation of a lemma's or routing case's hypotheses."""

    context: str
    conditions: tuple[Condition, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions)

    def describe(self) -> str:
        lines = [f"[{self.context}] overall: {'pass' if self.ok else 'fail'}"]
        for c in self.conditions:
            mark = "ok " if c.passed else "FAIL"
            lines.append(f"  {mark} {c.name}: {c.lhs:.6f} vs {c.rhs:.6f}")
        return "\n".join(lines)


PRECONDITION_CONTEXTS = ("close-set", "path4", "book", "case1", "case2")


def check_preconditions(
    g: Graph, context: str, k: int = 4, eps: float = 0.01
) -> PreconditionReport:
    """Evaluate every hypothesis of the named context numerically.

    Contexts: 'close-set' (the distance-3 set lemma), 'path4' (the
    length-4 path lemma), 'book' (the wide-book lemma), 'case1' and 'case2'
    (the two density regimes of the routing argument, using k and eps).
    """
    n = g.n
    e = g.edge_count
    if n == 0:
        raise ValueError("precondition check needs a nonempty graph")
    delta = graph_stats(g).min_degree
    quarter = n * n / 4

    def sqrt_or_inf(radicand: float) -> float:
        return math.sqrt(radicand) if radicand >= 0 else math.inf

    if context == "close-set":
        conditions = (
            Condition("e >= n^2/4 - n/2", e, quarter - n / 2, 4 * e >= n * n - 2 * n),
        )
    elif context == "path4":
        quad4 = 4 * e - n * n
        conditions = (
            Condition("e >= n^2/4 + 4", e, quarter + 4, 4 * e >= n * n + 16),
            Condition(
                "delta >= n/2 - sqrt(e - n^2/4) + 2",
                delta,
                n / 2 - sqrt_or_inf(quad4 / 4) + 2,
                _degree_sqrt_ge(quad4, n + 4 - 2 * delta, strict=False),
            ),
        )
    elif context == "book":
        conditions = (Condition("e > n^2/4", e, quarter, 4 * e > n * n),)
    elif context == "case1":
        quad4 = 4 * (e - 2 * k * n) - n * n
        conditions = (
            Condition(
                "e >= (1/4 + eps^6) n^2",
                e,
                (0.25 + eps**6) * n * n,
                e >= (0.25 + eps**6) * n * n,
            ),
            Condition(
                "delta > n/2 - sqrt(e - 2kn - n^2/4) + 2k",
                delta,
                n / 2 - sqrt_or_inf(quad4 / 4) + 2 * k,
                _degree_sqrt_ge(quad4, n + 4 * k - 2 * delta, strict=True),
            ),
        )
    elif context == "case2":
        quad4 = 4 * e - n * n
        conditions = (
            Condition(
                "e < (1/4 + eps^6) n^2",
                e,
                (0.25 + eps**6) * n * n,
                e < (0.25 + eps**6) * n * n,
            ),
            Condition(
                "delta > n/2 - sqrt(e - n^2/4) - 1/2",
                delta,
                n / 2 - sqrt_or_inf(quad4 / 4) - 0.5,
                _degree_sqrt_ge(quad4, n - 1 - 2 * delta, strict=True),
            ),
        )
    else:
        raise ValueError(
            f"unknown context {context!r}; expected one of {PRECONDITION_CONTEXTS}"
        )
    return PreconditionReport(context=context, conditions=conditions)


# ---------------------------------------------------------------------------
# distance-3 close set
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CloseSetCertificate:
    """A vertex set whose members are pairwise at distance <= 3.

    C1 and C2 are the two roots of x^2 - n x + C(n,2) - e = 0; the
    certificate guarantees |A| >= C1. The branch records which of the three
    construction routes produced A: 'whole-graph' (A = V), 'star-of-max-degree'
    (A = {v0} u N(v0)) or 'high-degree-threshold' (A = vertices of degree > X).
    """

    members: tuple[int, ...]
    branch: str
    c1: float
    c2: float
    threshold: int | None = None
    center: int | None = None


def _close_set_bounds(g: Graph) -> tuple[float, float]:
    n = g.n
    e = g.edge_count
    c1 = n / 2 + math.sqrt(max(0.0, e - n * n / 4 + n / 2))
    return c1, n - c1


def find_close_set(g: Graph) -> CloseSetCertificate:
    """Find a large vertex set with all pairwise distances <= 3.

    Requires e >= n^2/4 - n/2. Tries, in order: the whole vertex set, the
    closed neighborhood of a maximum-degree vertex, and the set of vertices
    above the degree threshold X (max degree of a vertex that has an
    at-least-as-high-degree partner at distance > 3). The certificate is
    re-verified before return.
    """
    n = g.n
    e = g.edge_count
    if n == 0:
        raise ValueError("close set undefined for the empty graph")
    report = check_preconditions(g, "close-set")
    if not report.ok:
        raise PreconditionError(
            f"e = {e} below n^2/4 - n/2 = {n * n / 4 - n / 2}", report
        )
    c1, c2 = _close_set_bounds(g)

    reach3 = [reach_within(g, v, 3) for v in range(n)]
    full = (1 << n) - 1

    if all(r == full for r in reach3):
        cert = CloseSetCertificate(tuple(range(n)), "whole-graph", c1, c2)
        return _verified_close_set(g, cert, reach3)

    stats = graph_stats(g)
    if stats.max_degree >= c1 - 1 - SLACK:
        v0 = stats.argmax
        members = tuple(sorted((v0, *g.adj[v0])))
        cert = CloseSetCertificate(members, "star-of-max-degree", c1, c2, center=v0)
        return _verified_close_set(g, cert, reach3)

    degs = g.degrees()
    threshold = -1
    for x in range(n):
        far = ~reach3[x] & full
        if any(degs[y] >= degs[x] for y in bits(far)):
            threshold = max(threshold, degs[x])
    if threshold < 0:
        raise InternalCheckError("no far pair found after whole-graph branch failed")
    members = tuple(v for v in range(n) if degs[v] > threshold)
    cert = CloseSetCertificate(
        members, "high-degree-threshold", c1, c2, threshold=threshold
    )
    return _verified_close_set(g, cert, reach3)


def _verified_close_set(
    g: Graph, cert: CloseSetCertificate, reach3: list[int]
) -> CloseSetCertificate:
    if len(cert.members) < cert.c1 - SLACK:
        raise InternalCheckError(
            f"close set of size {len(cert.members)} below bound {cert.c1}"
        )
    amask = 0
    for v in cert.members:
        amask |= 1 << v
    for v in cert.members:
        if amask & ~reach3[v]:
            raise InternalCheckError(f"vertex {v} is farther than 3 from the set")
    return cert


# ---------------------------------------------------------------------------
# length-4 paths
# ---------------------------------------------------------------------------

def find_path_len4(g: Graph, x: int, y: int, avoid=frozenset()) -> PathWitness:
    """Find a path of length exactly 4 from x to y outside `avoid`.

    Meet-in-the-middle over N(x) and N(y), scanning ascending ids. Guaranteed
    to succeed when the length-4 path hypotheses hold for the graph induced
    on V minus avoid; on failure the SearchError carries that precondition
    evaluation.
    """
    avoid = frozenset(avoid)
    if x == y:
        raise ValueError("endpoints must differ")
    if x in avoid or y in avoid:
        raise ValueError("endpoints may not be in the avoid set")
    blocked = 0
    for v in avoid:
        blocked |= 1 << v
    blocked |= (1 << x) | (1 << y)
    masks = g.masks
    for a in bits(masks[x] & ~blocked):
        inner_blocked = blocked | (1 << a)
        mid_pool = masks[a] & ~inner_blocked
        if not mid_pool:
            continue
        for b in bits(masks[y] & ~inner_blocked):
            mids = mid_pool & masks[b] & ~(1 << b)
            if mids:
                m = (mids & -mids).bit_length() - 1
                return PathWitness((x, a, m, b, y))
    sub, _ = _induced_on_complement(g, avoid)
    raise SearchError(
        f"no length-4 path from {x} to {y} avoiding {sorted(avoid)}",
        report=check_preconditions(sub, "path4"),
    )


def _induced_on_complement(g: Graph, avoid: frozenset[int]):
    from .graphs import delete_vertices

    return delete_vertices(g, avoid)


# ---------------------------------------------------------------------------
# greedy path extension
# ---------------------------------------------------------------------------

def greedy_path(g: Graph, start: int, forbidden, length: int) -> PathWitness | None:
    """Greedy smallest-id walk of exactly `length` edges from start, dodging
    `forbidden` and already-used vertices. Returns None when stuck.

    This is the unchecked kernel; `greedy_extend` wraps it with the degree
    hypothesis, and the routers call it directly because they attempt routing
    even when the hypothesis fails.
    """
    blocked = 0
    for v in forbidden:
        blocked |= 1 << v
    blocked |= 1 << start
    path = [start]
    masks = g.masks
    for _ in range(length):
        free = masks[path[-1]] & ~blocked
        if not free:
            return None
        v = (free & -free).bit_length() - 1
        path.append(v)
        blocked |= 1 << v
    return PathWitness(tuple(path))


def greedy_extend(g: Graph, start: int, forbidden, length: int) -> PathWitness:
    """Path of exactly `length` edges from start, disjoint from `forbidden`.

    Requires start outside the forbidden set and |forbidden| <= delta - length,
    which makes the greedy rule (always take the smallest-id unused neighbor)
    incapable of getting stuck: the current endpoint has at least delta
    neighbors while at most |forbidden| + length - 1 are off-limits.
    """
    forbidden = frozenset(forbidden)
    if length < 0:
        raise ValueError("length must be >= 0")
    if start in forbidden:
        raise PreconditionError(f"start vertex {start} is in the forbidden set")
    for v in forbidden:
        if not 0 <= v < g.n:
            raise ValueError(f"forbidden vertex {v} out of range")
    delta = graph_stats(g).min_degree if g.n else 0
    if len(forbidden) > delta - length:
        raise PreconditionError(
            f"|S| = {len(forbidden)} exceeds delta - length = {delta - length}"
        )
    witness = greedy_path(g, start, forbidden, length)
    if witness is None:
        raise GreedyStuckError(
            f"greedy walk from {start} stuck before length {length}"
        )
    return witness


# ---------------------------------------------------------------------------
# wide books
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BookWitness:
    """An edge pq together with the common neighborhood of its endpoints."""

    p: int
    q: int
    common: tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.common)


def find_book_edge(g: Graph) -> BookWitness:
    """Edge maximizing the number of common neighbors of its endpoints.

    Requires e > n^2/4, which guarantees the maximum exceeds n/6 (a classical
    fact; its failure here would signal a bug, so it is re-checked). Ties are
    broken by lexicographically smallest edge.
    """
    report = check_preconditions(g, "book")
    if not report.ok:
        raise PreconditionError(
            f"e = {g.edge_count} not above n^2/4 = {g.n * g.n / 4}", report
        )
    masks = g.masks
    best_edge = None
    best = -1
    for u, v in g.edges:
        width = (masks[u] & masks[v]).bit_count()
        if width > best:
            best = width
            best_edge = (u, v)
    assert best_edge is not None
    p, q = best_edge
    if not best > g.n / 6:
        raise InternalCheckError(
            f"book width {best} at edge {best_edge} does not exceed n/6"
        )
    return BookWitness(p, q, common_neighbors(g, p, q))


# ---------------------------------------------------------------------------
# distance-tightness construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TightnessExample:
    """Graph with designated u, v at distance exactly 4.

    Complete graph on n-2 vertices, u attached to the first `set_size`
    vertices, v to the next `set_size`, and all edges between those two
    groups removed.
    """

    graph: Graph
    u: int
    v: int
    set_size: int


def tightness_graph(n: int, e: int) -> TightnessExample:
    """Build the construction showing distance 4 cannot be improved.

    The attachment sets have size s = ceil(n/2 - sqrt(e - n^2/4) + 2), the
    degree threshold of the length-4 path lemma. Feasibility needs
    e >= n^2/4 + 4, room for both sets plus a bridging clique vertex
    (2s <= n - 3), and the construction must end up with more than e edges.
    """
    if n < 5:
        raise PreconditionError(f"n = {n} too small for the construction")
    if 4 * e < n * n + 16:
        raise PreconditionError(f"e = {e} below n^2/4 + 4 = {n * n / 4 + 4}")
    s = math.ceil(n / 2 - math.sqrt(e - n * n / 4) + 2 - SLACK)
    if s < 1:
        raise PreconditionError(f"attachment size s = {s} not positive")
    if 2 * s > n - 3:
        raise PreconditionError(
            f"infeasible: 2s = {2 * s} exceeds n - 3 = {n - 3} "
            "(sets would swallow the clique)"
        )
    edge_total = (n - 2) * (n - 3) // 2 + 2 * s - s * s
    if edge_total <= e:
        raise PreconditionError(
            f"construction has {edge_total} edges, not more than e = {e}"
        )
    clique = n - 2
    u, v = n - 2, n - 1
    group_a = set(range(s))
    group_b = set(range(s, 2 * s))
    edges = {
        (a, b)
        for a in range(clique)
        for b in range(a + 1, clique)
        if not (a in group_a and b in group_b)
    }
    edges.update((a, u) for a in group_a)
    edges.update((b, v) for b in group_b)
    return TightnessExample(Graph.from_edges(n, edges), u, v, s)
