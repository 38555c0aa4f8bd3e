"""Expanding Window GGM: time-respecting partial correlations and directed edges.

For each prefix of the chronologically ordered event columns, a graphical
lasso solve determines the incoming partial correlations of the newest
event, conditioned only on events that precede it.  The assembled matrix
avoids the inappropriate conditioning on future events that a single
full-window GGM would perform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FlowcastError
from .glasso import empirical_covariance, graphical_lasso, partial_correlations
from .panel import EventSequence


@dataclass(frozen=True)
class InformationFlowMatrix:
    """Assembled time-respecting partial correlations (entry (i,k), i<k, is the
    partial correlation of events i and k conditioned on events before k)."""

    entries: np.ndarray
    lam: float
    event_order: EventSequence | None = None

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class DirectedEdge:
    source: int
    target: int  # always source < target: information flows forward in time
    partial_correlation: float


@dataclass(frozen=True)
class DirectedEdgeSet:
    edges: tuple

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def sources_of(self, target: int) -> list:
        return [e.source for e in self.edges if e.target == target]


class WindowError(FlowcastError):
    """Solver failure annotated with the expanding-window index."""

    def __init__(self, window: int, cause: Exception):
        super().__init__(f"window k={window}: {cause}")
        self.window = window
        self.cause = cause


def expanding_window(
    X: np.ndarray, lam: float, event_order: EventSequence | None = None
) -> InformationFlowMatrix:
    """Run the per-prefix graphical lasso sweep over standardized columns.

    Column k of the result depends only on the first k columns of X, so
    truncating X reproduces the leading columns bit-identically.
    """
    X = np.asarray(X, dtype=float)
    n = X.shape[1]
    if n < 2:
        raise ValueError("need at least two event columns")
    C = np.eye(n)
    for k in range(2, n + 1):
        S_k = empirical_covariance(X[:, :k])
        try:
            theta = graphical_lasso(S_k, lam)
        except FlowcastError as exc:
            raise WindowError(k, exc) from exc
        Ck = partial_correlations(theta)
        C[: k - 1, k - 1] = Ck[: k - 1, k - 1]
        C[k - 1, : k - 1] = Ck[: k - 1, k - 1]
    return InformationFlowMatrix(C, lam, event_order)


def select_edges(cmat: InformationFlowMatrix) -> DirectedEdgeSet:
    """One edge i -> k per nonzero meaningful entry (exact-zero test)."""
    edges = []
    n = cmat.n
    for k in range(1, n):
        for i in range(k):
            value = cmat.entries[i, k]
            if value != 0.0:
                edges.append(DirectedEdge(i, k, float(value)))
    return DirectedEdgeSet(tuple(edges))
