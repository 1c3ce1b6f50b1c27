"""The two-clique coloring construction and the closed-form bound evaluators.

The construction is kept bit-faithful to its source: clique sizes use the
exact ceiling formula with no re-optimization, and color ids are dense
integers assigned in lexicographic edge order within each clique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParseError, PreconditionError
from .graphs import Edge, Graph, normalize_edge

EPS_MAX = 0.01


@dataclass(frozen=True, eq=False)
class EdgeColoring:
    """Color assignment for every edge of a host graph.

    colors[i] is the color of host.edges[i] (lexicographic edge order).
    """

    host: Graph
    colors: tuple[int, ...]

    def __post_init__(self):
        if len(self.colors) != self.host.edge_count:
            raise ValueError(
                f"{len(self.colors)} colors for {self.host.edge_count} edges"
            )

    @property
    def color_count(self) -> int:
        return len(set(self.colors))

    def as_dict(self) -> dict[Edge, int]:
        return dict(zip(self.host.edges, self.colors))

    def color_matrix(self) -> list[list[int]]:
        """n x n lookup table; -1 marks non-edges."""
        mat = [[-1] * self.host.n for _ in range(self.host.n)]
        for (u, v), c in zip(self.host.edges, self.colors):
            mat[u][v] = c
            mat[v][u] = c
        return mat


def parse_coloring(text: str, host: Graph) -> EdgeColoring:
    """Parse "u v c" lines; every edge of host exactly once, '#' comments."""
    index = host.edge_index()
    colors: list[int | None] = [None] * host.edge_count
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError("expected 'u v c'", line_no)
        try:
            u, v, c = (int(f) for f in fields)
        except ValueError:
            raise ParseError("non-integer field", line_no) from None
        if c < 0:
            raise ParseError(f"negative color {c}", line_no)
        e = normalize_edge(u, v)
        if e not in index:
            raise ParseError(f"({u},{v}) is not an edge of the host graph", line_no)
        if colors[index[e]] is not None:
            raise ParseError(f"edge ({u},{v}) colored twice", line_no)
        colors[index[e]] = c
    missing = [host.edges[i] for i, c in enumerate(colors) if c is None]
    if missing:
        raise ParseError(f"{len(missing)} uncolored edges, first {missing[0]}")
    return EdgeColoring(host, tuple(colors))  # type: ignore[arg-type]


def serialize_coloring(coloring: EdgeColoring) -> str:
    lines = [f"{u} {v} {c}" for (u, v), c in zip(coloring.host.edges, coloring.colors)]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the two-clique witness
# ---------------------------------------------------------------------------

def _range_check(n: int, e: int) -> None:
    if n < 1:
        raise PreconditionError(f"n = {n} must be positive")
    if not e > n * n / 4:
        raise PreconditionError(f"e = {e} not above n^2/4 = {n * n / 4}")
    if e > n * (n - 1) // 2:
        raise PreconditionError(f"e = {e} exceeds C({n},2) = {n * (n - 1) // 2}")


def clique_sizes(n: int, e: int) -> tuple[int, int]:
    """Sizes (|A|, |B|) of the two cliques for parameters (n, e).

    |A| = ceil(n/2 + sqrt(e + n - n^2/4)), |B| = n - |A|. Raises when the
    witness is infeasible: |A| > n, or fewer than e edges overall. The
    formula does overshoot near e = C(n,2) at small n; that is reported, not
    patched.
    """
    _range_check(n, e)
    size_a = math.ceil(n / 2 + math.sqrt(e + n - n * n / 4) - 1e-9)
    size_b = n - size_a
    if size_b < 0:
        raise PreconditionError(
            f"infeasible sizes: |A| = {size_a} exceeds n = {n} (e too close to C(n,2))"
        )
    have = size_a * (size_a - 1) // 2 + size_b * (size_b - 1) // 2
    if have < e:
        raise PreconditionError(
            f"size inequality fails: |A| = {size_a}, |B| = {size_b} "
            f"give {have} < e = {e} edges"
        )
    return size_a, size_b


@dataclass(frozen=True, eq=False)
class TwoCliqueWitness:
    graph: Graph
    coloring: EdgeColoring
    size_a: int
    size_b: int


def two_clique_graph(n: int, e: int) -> TwoCliqueWitness:
    """Disjoint cliques on |A| and |B| vertices, each clique rainbow-colored.

    The A-clique gets distinct colors 0..C(|A|,2)-1; the B-clique reuses the
    first C(|B|,2) of them. Every cycle lies inside one clique, so every
    cycle of any length is rainbow; the number of colors is C(|A|,2).
    """
    size_a, size_b = clique_sizes(n, e)
    edges: set[Edge] = set()
    for u in range(size_a):
        for v in range(u + 1, size_a):
            edges.add((u, v))
    for u in range(size_a, n):
        for v in range(u + 1, n):
            edges.add((u, v))
    graph = Graph._from_edge_set(n, edges)
    colors = []
    next_a = 0
    next_b = 0
    for u, v in graph.edges:
        if v < size_a:
            colors.append(next_a)
            next_a += 1
        else:
            colors.append(next_b)
            next_b += 1
    return TwoCliqueWitness(graph, EdgeColoring(graph, tuple(colors)), size_a, size_b)


def upper_bound_colors(n: int, e: int) -> int:
    """Color count of the two-clique witness: C(|A|, 2)."""
    size_a, _ = clique_sizes(n, e)
    return size_a * (size_a - 1) // 2


# ---------------------------------------------------------------------------
# closed-form evaluators
# ---------------------------------------------------------------------------

def asymptotic_value(n: int, e: int) -> float:
    """Leading term e/2 + (n/2) sqrt(e - n^2/4) of the color-count asymptote."""
    if e < n * n / 4:
        raise PreconditionError(f"e = {e} below n^2/4 = {n * n / 4}")
    return e / 2 + (n / 2) * math.sqrt(e - n * n / 4)


@dataclass(frozen=True)
class FormulaParams:
    """Parameters of the explicit lower-bound formula.

    Requires floor(n^2/4) + 1 <= e <= C(n,2), k >= 4 and 0 < eps < 0.01.
    """

    n: int
    e: int
    k: int = 4
    eps: float = 0.005

    def __post_init__(self):
        if self.k < 4:
            raise PreconditionError(f"k = {self.k} must be at least 4")
        if not 0 < self.eps < EPS_MAX:
            raise PreconditionError(f"eps = {self.eps} outside (0, {EPS_MAX})")
        low = self.n * self.n // 4 + 1
        high = self.n * (self.n - 1) // 2
        if not low <= self.e <= high:
            raise PreconditionError(f"e = {self.e} outside [{low}, {high}]")


def lower_bound_formula(params: FormulaParams) -> float:
    """Explicit lower bound e/2 + (n/2) sqrt(e - n^2/4) - eps n^2 - 2 k^2 eps^-26.

    Returned raw: the constant term is astronomically large at desk scale, so
    the value is typically (hugely) negative. Clamping is left to display
    code; hiding the negativity would misrepresent the bound.
    """
    n, e, k, eps = params.n, params.e, params.k, params.eps
    return (
        e / 2
        + (n / 2) * math.sqrt(e - n * n / 4)
        - eps * n * n
        - 2 * k * k * eps**-26
    )


def conjecture_value(n: int) -> float:
    """Conjectured leading term n^2/8 at the edge threshold."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return n * n / 8


def known_small_cycle_values(n: int, cycle_len: int) -> int | None:
    """Known color counts at e = floor(n^2/4) + 1 for the two short odd cycles.

    Length 3 gives 3; length 5 gives floor(n/2) + 3. Both are asymptotic
    claims, valid once n is large enough, so they are for informational
    comparison only. Longer cycles have no known closed form: returns None.
    """
    if cycle_len == 3:
        return 3
    if cycle_len == 5:
        return n // 2 + 3
    return None
