"""Exception hierarchy shared by all modules, with CLI exit codes attached.

Exit code vocabulary: 0 success/pass, 1 verification failed, 2 precondition
violated, 3 search/routing failure, 64 usage or input-format error.
"""

from __future__ import annotations

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_PRECONDITION = 2
EXIT_SEARCH = 3
EXIT_USAGE = 64


class RainbowCyclesError(Exception):
    """Base class for all library errors."""

    exit_code = EXIT_VERIFICATION


class ParseError(RainbowCyclesError):
    """Malformed graph / coloring / vertex-set file."""

    exit_code = EXIT_USAGE

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class PreconditionError(RainbowCyclesError):
    """A stated hypothesis or parameter range does not hold.

    When available, ``report`` carries the evaluated inequalities.
    """

    exit_code = EXIT_PRECONDITION

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class SearchError(RainbowCyclesError):
    """An existence search came up empty."""

    exit_code = EXIT_SEARCH

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class GreedyStuckError(SearchError):
    """Greedy path extension dead-ended.

    Distinct from PreconditionError so property tests can assert it never
    fires when the degree hypothesis holds.
    """


class RoutingError(SearchError):
    """A cycle-routing recipe failed; ``stage`` names the failing step."""

    def __init__(self, message: str, stage: str, diagnostics=None):
        self.stage = stage
        self.diagnostics = diagnostics
        super().__init__(f"{stage}: {message}")


class InternalCheckError(RainbowCyclesError):
    """A certificate produced internally failed re-verification.

    This signals an implementation bug, never an expected outcome on valid
    inputs.
    """

    exit_code = EXIT_VERIFICATION
