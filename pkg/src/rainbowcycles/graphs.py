"""Simple undirected graphs with dense integer vertex ids, plus the path and
cycle witnesses every other module certifies its output with.

Vertices are 0..n-1. Adjacency is kept as sorted tuples (all iteration is
ascending-id, which makes every search in the package deterministic) and as
per-vertex bitmasks (ints), which the distance and common-neighbor kernels
use.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import ParseError

INF = math.inf

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    """Return the unordered pair (min, max)."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1."""

    n: int
    edges: tuple[Edge, ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    masks: tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build and validate a graph from an iterable of (u, v) pairs.

        Rejects loops, duplicate edges (in either orientation) and
        out-of-range endpoints.
        """
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        seen: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            e = normalize_edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        return cls._from_edge_set(n, seen)

    @classmethod
    def _from_edge_set(cls, n: int, edge_set: set[Edge]) -> "Graph":
        # Internal fast path: edge_set is trusted to be normalized and valid.
        nbrs: list[list[int]] = [[] for _ in range(n)]
        masks = [0] * n
        for u, v in edge_set:
            nbrs[u].append(v)
            nbrs[v].append(u)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(
            n=n,
            edges=tuple(sorted(edge_set)),
            adj=tuple(tuple(sorted(a)) for a in nbrs),
            masks=tuple(masks),
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def edge_index(self) -> dict[Edge, int]:
        """Map each edge to its position in lexicographic edge order."""
        return {e: i for i, e in enumerate(self.edges)}


@dataclass(frozen=True)
class GraphStats:
    """Degree summary: extremes, witnesses and the edge count."""

    min_degree: int
    max_degree: int
    edge_count: int
    argmin: int
    argmax: int


def graph_stats(g: Graph) -> GraphStats:
    if g.n == 0:
        raise ValueError("stats undefined for the empty graph")
    degs = g.degrees()
    dmin = min(degs)
    dmax = max(degs)
    return GraphStats(
        min_degree=dmin,
        max_degree=dmax,
        edge_count=g.edge_count,
        argmin=degs.index(dmin),
        argmax=degs.index(dmax),
    )


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph._from_edge_set(n, {(u, v) for u in range(n) for v in range(u + 1, n)})


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph._from_edge_set(n, {normalize_edge(i, (i + 1) % n) for i in range(n)})


def path_graph(n: int) -> Graph:
    return Graph._from_edge_set(n, {(i, i + 1) for i in range(n - 1)})


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph._from_edge_set(a + b, {(u, v) for u in range(a) for v in range(a, a + b)})


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = {(u + g.n, v + g.n) for u, v in h.edges}
    return Graph._from_edge_set(g.n + h.n, set(g.edges) | shifted)


def gnp_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Erdos-Renyi G(n, p) using the supplied RNG (callers own the seed)."""
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    return Graph._from_edge_set(n, edges)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the line-oriented edge-list format.

    First non-comment line is "n m", then m lines "u v". Lines starting with
    '#' are comments. Errors carry the 1-based line number.
    """
    header: tuple[int, int] | None = None
    pairs: list[Edge] = []
    seen: set[Edge] = set()
    n = m = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise ParseError("expected header 'n m'", line_no)
            try:
                n, m = int(fields[0]), int(fields[1])
            except ValueError:
                raise ParseError("non-integer header field", line_no) from None
            if n < 0 or m < 0:
                raise ParseError("negative count in header", line_no)
            header = (n, m)
            continue
        if len(fields) != 2:
            raise ParseError("expected edge line 'u v'", line_no)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError("non-integer vertex id", line_no) from None
        if u == v:
            raise ParseError(f"loop at vertex {u}", line_no)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", line_no)
        e = normalize_edge(u, v)
        if e in seen:
            raise ParseError(f"duplicate edge {e}", line_no)
        seen.add(e)
        pairs.append(e)
    if header is None:
        raise ParseError("empty input: missing 'n m' header")
    if len(pairs) != m:
        raise ParseError(f"header declares {m} edges, found {len(pairs)}")
    return Graph._from_edge_set(n, seen)


def serialize_graph(g: Graph) -> str:
    """Canonical form: header then edges sorted lexicographically, LF endings."""
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# traversal
# ---------------------------------------------------------------------------

def bfs_distances(g: Graph, source: int) -> list[int | float]:
    """Shortest-path distances from source; math.inf marks unreachable."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    dist: list[int | float] = [INF] * g.n
    dist[source] = 0
    frontier = [source]
    d = 0
    adj = g.adj
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if dist[v] is INF:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def reach_within(g: Graph, v: int, radius: int) -> int:
    """Bitmask of vertices at distance <= radius from v."""
    masks = g.masks
    reach = 1 << v
    frontier = reach
    for _ in range(radius):
        grow = 0
        m = frontier
        while m:
            lsb = m & -m
            grow |= masks[lsb.bit_length() - 1]
            m ^= lsb
        frontier = grow & ~reach
        if not frontier:
            break
        reach |= frontier
    return reach


def common_neighbors(g: Graph, u: int, v: int) -> tuple[int, ...]:
    """N(u) & N(v) in ascending order."""
    if u == v:
        raise ValueError("common_neighbors needs two distinct vertices")
    return tuple(bits(g.masks[u] & g.masks[v]))


def bits(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        lsb = mask & -mask
        out.append(lsb.bit_length() - 1)
        mask ^= lsb
    return out


def delete_vertices(g: Graph, removed) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on V minus removed, relabeled to dense ids.

    Returns (subgraph, kept) where kept[new_id] = old_id.
    """
    removed = set(removed)
    for v in removed:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    kept = tuple(v for v in range(g.n) if v not in removed)
    new_id = {old: new for new, old in enumerate(kept)}
    edges = {
        (new_id[u], new_id[v])
        for u, v in g.edges
        if u not in removed and v not in removed
    }
    return Graph._from_edge_set(len(kept), edges), kept


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathWitness:
    """Explicit vertex sequence certifying a path; length = edges used."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def edge_pairs(self) -> list[Edge]:
        vs = self.vertices
        return [normalize_edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]


@dataclass(frozen=True)
class CycleWitness:
    """Explicit vertex sequence certifying a cycle (last wraps to first)."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edge_pairs(self) -> list[Edge]:
        vs = self.vertices
        return [
            normalize_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))
        ]

    def canonical(self) -> "CycleWitness":
        return CycleWitness(canonical_rotation(self.vertices))


def canonical_rotation(vertices: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate/reflect so the smallest id is first and its smaller cycle
    neighbor second. Unique per cycle, idempotent."""
    k = len(vertices)
    i = vertices.index(min(vertices))
    rotated = vertices[i:] + vertices[:i]
    if k >= 3 and rotated[1] > rotated[-1]:
        rotated = (rotated[0],) + tuple(reversed(rotated[1:]))
    return rotated


@dataclass(frozen=True)
class WitnessCheck:
    """Outcome of a witness verification; failure is a result, not an error."""

    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_required(witness_edges: list[Edge], required) -> str | None:
    present = set(witness_edges)
    for u, v in required:
        if normalize_edge(u, v) not in present:
            return f"required edge ({u},{v}) not on witness"
    return None


def verify_path(g: Graph, witness: PathWitness, required_edges=()) -> WitnessCheck:
    """Check the path invariants in g plus presence of required edges."""
    vs = witness.vertices
    if len(vs) == 0:
        return WitnessCheck(False, "empty vertex sequence")
    for v in vs:
        if not 0 <= v < g.n:
            return WitnessCheck(False, f"vertex {v} out of range")
    if len(set(vs)) != len(vs):
        return WitnessCheck(False, "repeated vertex")
    for i in range(len(vs) - 1):
        if not g.has_edge(vs[i], vs[i + 1]):
            return WitnessCheck(False, f"missing edge ({vs[i]},{vs[i + 1]})")
    missing = _check_required(witness.edge_pairs(), required_edges)
    if missing:
        return WitnessCheck(False, missing)
    return WitnessCheck(True)


def verify_cycle(
    g: Graph,
    witness: CycleWitness,
    required_edges=(),
    length: int | None = None,
) -> WitnessCheck:
    """Check the cycle invariants in g, optional exact length, required edges."""
    vs = witness.vertices
    if len(vs) < 3:
        return WitnessCheck(False, "cycle needs at least 3 vertices")
    for v in vs:
        if not 0 <= v < g.n:
            return WitnessCheck(False, f"vertex {v} out of range")
    if len(set(vs)) != len(vs):
        return WitnessCheck(False, "repeated vertex")
    if length is not None and len(vs) != length:
        return WitnessCheck(False, f"length {len(vs)} != required {length}")
    for i in range(len(vs)):
        u, v = vs[i], vs[(i + 1) % len(vs)]
        if not g.has_edge(u, v):
            return WitnessCheck(False, f"missing edge ({u},{v})")
    missing = _check_required(witness.edge_pairs(), required_edges)
    if missing:
        return WitnessCheck(False, missing)
    return WitnessCheck(True)
