"""Command-line entry point.

Exit codes: 0 success/pass, 1 verification failed, 2 precondition violated,
3 search or routing failure, 64 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile

from . import conflicts, constructions, lemmas, report, routing
from .errors import (
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_USAGE,
    EXIT_VERIFICATION,
    ParseError,
    PreconditionError,
    RainbowCyclesError,
    SearchError,
)
from .graphs import Graph, parse_graph, serialize_graph


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; the documented code is 64.
    def error(self, message):
        raise _UsageError(message)


def _load_graph(path: str) -> Graph:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err}") from err


def _load_coloring(path: str, host: Graph):
    try:
        with open(path, encoding="utf-8") as fh:
            return constructions.parse_coloring(fh.read(), host)
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err}") from err


def _load_vertex_set(path: str) -> list[int]:
    """Whitespace-separated vertex ids; '#' starts a comment line."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err}") from err
    out = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for field in line.split():
            try:
                out.append(int(field))
            except ValueError:
                raise ParseError(f"non-integer vertex id {field!r}", line_no) from None
    return out


def _parse_edge(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise _UsageError(f"expected an edge as 'u,v', got {text!r}")
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise _UsageError(f"non-integer endpoint in {text!r}") from None
    return u, v


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        _write_atomic(out, text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_construct(args) -> int:
    witness = constructions.two_clique_graph(args.n, args.e)
    print(
        f"two-clique witness: |A|={witness.size_a} |B|={witness.size_b} "
        f"edges={witness.graph.edge_count} colors={witness.coloring.color_count}"
    )
    if args.out:
        _write_atomic(args.out, serialize_graph(witness.graph))
        print(f"graph written to {args.out}")
    if args.colors:
        _write_atomic(args.colors, constructions.serialize_coloring(witness.coloring))
        print(f"coloring written to {args.colors}")
    return EXIT_OK


def _cmd_formula(args) -> int:
    n, e = args.n, args.e
    upper = constructions.upper_bound_colors(n, e)
    asym = constructions.asymptotic_value(n, e)
    params = constructions.FormulaParams(n=n, e=e, k=args.k, eps=args.eps)
    lower = constructions.lower_bound_formula(params)
    rows = [
        ("upper_bound_colors", f"{upper}"),
        ("asymptotic_value", f"{asym:.6f}"),
        ("slack", f"{upper - asym:.6f}"),
        ("conjecture_value(n)", f"{constructions.conjecture_value(n):.6f}"),
        ("lower_bound_raw", f"{lower:.6e}"),
        ("lower_bound_clamped", f"{max(0.0, lower):.6f}"),
    ]
    known = constructions.known_small_cycle_values(n, 2 * args.k + 1)
    if known is not None:
        rows.append((f"known_value_len{2 * args.k + 1} (large-n claim)", str(known)))
    if args.csv:
        print("name,value")
        for name, value in rows:
            print(f"{name},{value}")
    else:
        width = max(len(name) for name, _ in rows)
        for name, value in rows:
            print(f"{name:<{width}}  {value}")
    return EXIT_OK


def _cmd_lemma(args) -> int:
    if args.lemma_cmd == "close-set":
        cert = lemmas.find_close_set(_load_graph(args.graph))
        print(f"branch: {cert.branch}")
        print(f"C1={cert.c1:.6f} C2={cert.c2:.6f}")
        if cert.threshold is not None:
            print(f"degree threshold X={cert.threshold}")
        if cert.center is not None:
            print(f"star center v0={cert.center}")
        print(f"|A|={len(cert.members)}")
        print("A:", " ".join(map(str, cert.members)))
        return EXIT_OK
    if args.lemma_cmd == "path4":
        witness = lemmas.find_path_len4(
            _load_graph(args.graph), args.x, args.y, avoid=set(args.avoid or ())
        )
        print("path:", " ".join(map(str, witness.vertices)))
        return EXIT_OK
    if args.lemma_cmd == "greedy":
        witness = lemmas.greedy_extend(
            _load_graph(args.graph), args.start, set(args.avoid or ()), args.len
        )
        print("path:", " ".join(map(str, witness.vertices)))
        return EXIT_OK
    if args.lemma_cmd == "book":
        book = lemmas.find_book_edge(_load_graph(args.graph))
        print(f"edge: {book.p} {book.q}")
        print(f"width: {book.width}")
        print("common:", " ".join(map(str, book.common)))
        return EXIT_OK
    if args.lemma_cmd == "tightness":
        example = lemmas.tightness_graph(args.n, args.e)
        print(
            f"set size s={example.set_size} u={example.u} v={example.v} "
            f"edges={example.graph.edge_count}"
        )
        if args.out:
            _write_atomic(args.out, serialize_graph(example.graph))
            print(f"graph written to {args.out}")
        return EXIT_OK
    if args.lemma_cmd == "check":
        rep = lemmas.check_preconditions(
            _load_graph(args.graph), args.context, k=args.k, eps=args.eps
        )
        print(rep.describe())
        return EXIT_OK if rep.ok else EXIT_PRECONDITION
    raise _UsageError(f"unknown lemma subcommand {args.lemma_cmd!r}")


def _cmd_route(args) -> int:
    g = _load_graph(args.graph)
    e1 = _parse_edge(args.edge1)
    e2 = _parse_edge(args.edge2)
    case = args.case
    if case == "auto":
        if args.book:
            case = "case2"
        elif args.set:
            case = "case1"
        elif lemmas.check_preconditions(g, "close-set").ok:
            case = "case1"
        elif lemmas.check_preconditions(g, "book").ok:
            case = "case2"
        else:
            case = "claim1"
    if case == "case1":
        members = (
            _load_vertex_set(args.set)
            if args.set
            else lemmas.find_close_set(g).members
        )
        witness, diag = routing.route_good_pair_case1(g, args.k, members, e1, e2)
    elif case == "claim1":
        witness, diag = routing.route_in_dense_subgraph(g, args.k, e1, e2)
    elif case == "case2":
        if args.book:
            p, q = _parse_edge(args.book)
            book = lemmas.BookWitness(p, q, tuple(sorted(set(g.adj[p]) & set(g.adj[q]))))
        else:
            book = lemmas.find_book_edge(g)
        witness, diag = routing.route_good_pair_case2(g, args.k, book, e1, e2)
    else:
        raise _UsageError(f"unknown case {case!r}")
    print("cycle:", " ".join(map(str, witness.vertices)))
    print(f"recipe: {diag.recipe}")
    for stage in diag.stages:
        if isinstance(stage.content, int):
            print(f"  {stage.name}: vertex {stage.content}")
        else:
            print(f"  {stage.name}: {' '.join(map(str, stage.content.vertices))}")
    if diag.adjuster_used is not None:
        print(f"adjuster: {'through-q' if diag.adjuster_used else 'skip-q'}")
    return EXIT_OK


def _cmd_conflict(args) -> int:
    g = _load_graph(args.graph)
    conf = conflicts.conflict_graph(g, args.L, keep_witnesses=args.witnesses)
    print("# edge index legend")
    for i, (u, v) in enumerate(g.edges):
        print(f"# {i}: {u} {v}")
    for i, j in conf.pairs():
        print(f"{i} {j}")
    if args.witnesses and conf.witnesses:
        print("# witnesses")
        for (i, j), wit in sorted(conf.witnesses.items()):
            print(f"# {i} {j}: {' '.join(map(str, wit.vertices))}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    coloring = _load_coloring(args.colors, g)
    rep = conflicts.verify_rainbow(g, coloring, args.L)
    if rep.passed:
        print(f"pass: {rep.cycles_examined} cycles examined, all rainbow")
        return EXIT_OK
    witness, colors = rep.violation
    print(f"FAIL after {rep.cycles_examined} cycles")
    print("cycle:", " ".join(map(str, witness.vertices)))
    print("colors:", " ".join(map(str, colors)))
    return EXIT_VERIFICATION


def _cmd_min_colors(args) -> int:
    g = _load_graph(args.graph)
    value, coloring = conflicts.min_rainbow_colors(
        g, args.L, max_edges=args.max_edges
    )
    print(f"min colors: {value}")
    for (u, v), c in zip(g.edges, coloring.colors):
        print(f"{u} {v} {c}")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    result = conflicts.f_oracle(args.n, args.e, args.L, max_n=args.max_n_override)
    print(
        f"f(n={result.n}, e={result.e}, L={result.length}) = {result.value} "
        f"({result.graphs_examined} graphs examined)"
    )
    _write_atomic(args.out_graph, serialize_graph(result.extremal_graph))
    _write_atomic(
        args.out_colors, constructions.serialize_coloring(result.optimal_coloring)
    )
    print(f"extremal graph written to {args.out_graph}")
    print(f"optimal coloring written to {args.out_colors}")
    return EXIT_OK


def _cmd_report(args) -> int:
    rows = report.report_rows(
        n_values=args.n,
        e_fractions=args.fractions,
        k=args.k,
        good_edge_max_n=args.good_edge_max_n,
        oracle_max_n=args.oracle_max_n,
    )
    _emit(report.render_csv(rows), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    return [int(f) for f in text.split(",") if f]


def _float_list(text: str) -> list[float]:
    return [float(f) for f in text.split(",") if f]


def build_parser() -> _Parser:
    parser = _Parser(prog="rainbowcycles")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("construct", help="build extremal witnesses")
    csub = p.add_subparsers(dest="construct_cmd", required=True)
    c = csub.add_parser("two-clique", help="two disjoint rainbow cliques")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--e", type=int, required=True)
    c.add_argument("--out", help="write the graph here")
    c.add_argument("--colors", help="write the coloring here")
    c.set_defaults(func=_cmd_construct)

    p = sub.add_parser("formula", help="evaluate the closed-form bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--eps", type=float, default=0.005)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_formula)

    p = sub.add_parser("lemma", help="run a connectivity lemma")
    lsub = p.add_subparsers(dest="lemma_cmd", required=True)
    c = lsub.add_parser("close-set", help="distance-3 vertex set certificate")
    c.add_argument("--graph", required=True)
    c = lsub.add_parser("path4", help="path of length exactly 4")
    c.add_argument("--graph", required=True)
    c.add_argument("--x", type=int, required=True)
    c.add_argument("--y", type=int, required=True)
    c.add_argument("--avoid", type=_int_list)
    c = lsub.add_parser("greedy", help="greedy path extension")
    c.add_argument("--graph", required=True)
    c.add_argument("--start", type=int, required=True)
    c.add_argument("--len", type=int, required=True)
    c.add_argument("--avoid", type=_int_list)
    c = lsub.add_parser("book", help="widest-book edge")
    c.add_argument("--graph", required=True)
    c = lsub.add_parser("tightness", help="distance-4 tightness construction")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--e", type=int, required=True)
    c.add_argument("--out")
    c = lsub.add_parser("check", help="evaluate lemma/case hypotheses")
    c.add_argument("--graph", required=True)
    c.add_argument("--context", required=True, choices=lemmas.PRECONDITION_CONTEXTS)
    c.add_argument("--k", type=int, default=4)
    c.add_argument("--eps", type=float, default=0.005)
    p.set_defaults(func=_cmd_lemma)

    p = sub.add_parser("route", help="place two edges on a common odd cycle")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--case", default="auto", choices=("auto", "case1", "claim1", "case2"))
    p.add_argument("--edge1", required=True)
    p.add_argument("--edge2", required=True)
    p.add_argument("--set", help="vertex-set file for case1")
    p.add_argument("--book", help="book edge 'p,q' for case2")
    p.set_defaults(func=_cmd_route)

    p = sub.add_parser("conflict", help="emit the conflict graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--witnesses", action="store_true")
    p.set_defaults(func=_cmd_conflict)

    p = sub.add_parser("verify", help="check that every cycle is rainbow")
    p.add_argument("--graph", required=True)
    p.add_argument("--colors", required=True)
    p.add_argument("--L", type=int, required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("min-colors", help="exact minimum rainbow color count")
    p.add_argument("--graph", required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument(
        "--max-edges",
        type=int,
        default=conflicts.DEFAULT_CHROMATIC_MAX_EDGES,
        help="exact-search guard; raise to force larger instances",
    )
    p.set_defaults(func=_cmd_min_colors)

    p = sub.add_parser("oracle", help="exhaustive minimum over all graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument(
        "--max-n-override",
        type=int,
        default=conflicts.DEFAULT_ORACLE_MAX_N,
        help="tractability guard; raise deliberately",
    )
    p.add_argument("--out-graph", default="oracle_graph.txt")
    p.add_argument("--out-colors", default="oracle_colors.txt")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("report", help="bound-comparison CSV")
    p.add_argument("--n", type=_int_list, required=True, help="comma-separated")
    p.add_argument(
        "--fractions",
        type=_float_list,
        required=True,
        help="edge densities e/n^2, comma-separated, each in (1/4, 1/2]",
    )
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--good-edge-max-n", type=int, default=report.DEFAULT_GOOD_EDGE_MAX_N)
    p.add_argument("--oracle-max-n", type=int, default=report.DEFAULT_ORACLE_MAX_N)
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_report)

    return parser


def dispatch(argv: list[str]) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as err:
        print(f"precondition violated: {err}", file=sys.stderr)
        if err.report is not None:
            print(err.report.describe(), file=sys.stderr)
        return err.exit_code
    except SearchError as err:
        print(f"search failed: {err}", file=sys.stderr)
        if getattr(err, "report", None) is not None:
            print(err.report.describe(), file=sys.stderr)
        return err.exit_code
    except RainbowCyclesError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code
    except ValueError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
