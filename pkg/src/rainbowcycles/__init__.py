"""Constructions, certificates and brute-force oracles for edge colorings in
which every odd cycle of a fixed length is rainbow."""

from .conflicts import (
    ConflictGraph,
    GoodEdges,
    OracleResult,
    VerificationReport,
    conflict_graph,
    enumerate_cycles,
    f_oracle,
    good_edges_case1,
    good_edges_case2,
    min_rainbow_colors,
    verify_rainbow,
)
from .constructions import (
    EdgeColoring,
    FormulaParams,
    TwoCliqueWitness,
    asymptotic_value,
    conjecture_value,
    known_small_cycle_values,
    lower_bound_formula,
    parse_coloring,
    serialize_coloring,
    two_clique_graph,
    upper_bound_colors,
)
from .errors import (
    GreedyStuckError,
    InternalCheckError,
    ParseError,
    PreconditionError,
    RainbowCyclesError,
    RoutingError,
    SearchError,
)
from .graphs import (
    CycleWitness,
    Graph,
    GraphStats,
    PathWitness,
    WitnessCheck,
    bfs_distances,
    common_neighbors,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    delete_vertices,
    disjoint_union,
    gnp_graph,
    graph_stats,
    parse_graph,
    path_graph,
    serialize_graph,
    verify_cycle,
    verify_path,
)
from .lemmas import (
    BookWitness,
    CloseSetCertificate,
    PreconditionReport,
    TightnessExample,
    check_preconditions,
    find_book_edge,
    find_close_set,
    find_path_len4,
    greedy_extend,
    tightness_graph,
)
from .report import ReportRow, render_csv, report_rows
from .routing import (
    RouteDiagnostics,
    RouteStage,
    connect_short,
    route_good_pair_case1,
    route_good_pair_case2,
    route_in_dense_subgraph,
)

__version__ = "0.1.0"
