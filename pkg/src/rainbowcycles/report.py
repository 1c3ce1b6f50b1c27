"""Bound-comparison report: one CSV row per (n, e) pair on a parameter grid.

Rows are reproducible bit-exactly: fixed header, reals at 6 decimal places.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .conflicts import f_oracle, good_edges_case1
from .constructions import asymptotic_value, two_clique_graph, upper_bound_colors
from .errors import PreconditionError
from .lemmas import find_close_set

log = logging.getLogger(__name__)

CSV_HEADER = "n,e,k,upper_bound,asymptotic,slack,good_edge_lb,oracle_value"

DEFAULT_GOOD_EDGE_MAX_N = 12
DEFAULT_ORACLE_MAX_N = 6


@dataclass(frozen=True)
class ReportRow:
    """One comparison point; optional fields stay None when out of reach."""

    n: int
    e: int
    k: int
    upper_bound: int
    asymptotic: float
    good_edge_lb: int | None = None
    oracle_value: int | None = None

    @property
    def slack(self) -> float:
        return self.upper_bound - self.asymptotic


def clamp_edge_count(n: int, fraction: float) -> tuple[int, bool]:
    """e = ceil(fraction * n^2), clamped into [floor(n^2/4)+1, C(n,2)]."""
    low = n * n // 4 + 1
    high = n * (n - 1) // 2
    e = math.ceil(fraction * n * n)
    clamped = not low <= e <= high
    return min(max(e, low), high), clamped


def report_rows(
    n_values: list[int],
    e_fractions: list[float],
    k: int = 4,
    good_edge_max_n: int = DEFAULT_GOOD_EDGE_MAX_N,
    oracle_max_n: int = DEFAULT_ORACLE_MAX_N,
) -> list[ReportRow]:
    """Evaluate the bound grid; skips (with a log line) infeasible points.

    good_edge_lb is the good-edge count of the two-clique instance under its
    own distance-3 set (only computed up to good_edge_max_n); oracle_value is
    the exhaustive minimum (only up to oracle_max_n, tiny by necessity).
    """
    if not n_values or not e_fractions:
        raise ValueError("empty parameter grid")
    for n in n_values:
        if n < 2:
            raise ValueError(f"n = {n} too small for any row")
    for f in e_fractions:
        if not 0.25 < f <= 0.5:
            raise ValueError(f"fraction {f} outside (1/4, 1/2]")
    if k < 2:
        raise ValueError(f"k = {k} gives no odd cycle length")

    rows = []
    for n in n_values:
        for fraction in e_fractions:
            e, clamped = clamp_edge_count(n, fraction)
            if clamped:
                log.info("clamped e to %d for n=%d fraction=%s", e, n, fraction)
            try:
                upper = upper_bound_colors(n, e)
            except PreconditionError as err:
                log.warning("skipping n=%d e=%d: %s", n, e, err)
                continue
            row = ReportRow(
                n=n,
                e=e,
                k=k,
                upper_bound=upper,
                asymptotic=asymptotic_value(n, e),
                good_edge_lb=_good_edge_count(n, e) if n <= good_edge_max_n else None,
                oracle_value=(
                    f_oracle(n, e, 2 * k + 1).value if n <= oracle_max_n else None
                ),
            )
            rows.append(row)
    return rows


def _good_edge_count(n: int, e: int) -> int | None:
    witness = two_clique_graph(n, e)
    try:
        cert = find_close_set(witness.graph)
    except PreconditionError:
        return None
    return good_edges_case1(witness.graph, cert.members).count


def render_csv(rows: list[ReportRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                (
                    str(r.n),
                    str(r.e),
                    str(r.k),
                    str(r.upper_bound),
                    f"{r.asymptotic:.6f}",
                    f"{r.slack:.6f}",
                    "" if r.good_edge_lb is None else str(r.good_edge_lb),
                    "" if r.oracle_value is None else str(r.oracle_value),
                )
            )
        )
    return "\n".join(lines) + "\n"
