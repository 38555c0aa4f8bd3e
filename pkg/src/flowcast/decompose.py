"""Edge-restricted regressions splitting each event into propagated vs. new information."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import RankError
from .ewggm import DirectedEdgeSet, InformationFlowMatrix, expanding_window, select_edges
from .panel import DialoguePanel, EventKind, EventSequence, event_sequence, observation_matrix
from .preprocess import standardize_columns


@dataclass(frozen=True)
class DecompositionTerm:
    source: int
    coefficient: float


@dataclass(frozen=True)
class EventDecomposition:
    """OLS split of one event onto its selected predecessors.

    epsilon_share follows the 1 - sum(coefficients) convention;
    abs_epsilon_share uses 1 - sum(|coefficients|).  ``flagged`` marks
    decompositions where the percentage reading is unreliable (negative
    coefficient or coefficient sum above one).
    """

    event: int
    terms: tuple
    epsilon_share: float
    abs_epsilon_share: float
    r_squared: float
    flagged: bool = False


@dataclass(frozen=True)
class InformationFlowNetwork:
    events: EventSequence
    edges: tuple  # (source, target, coefficient, partial_correlation)
    decompositions: tuple
    lam: float
    markov: float = field(default=1.0)

    def decomposition_of(self, target: int) -> EventDecomposition | None:
        for d in self.decompositions:
            if d.event == target:
                return d
        return None


def decompose_event(X: np.ndarray, edges: DirectedEdgeSet, k: int) -> EventDecomposition:
    """Regress standardized column k on its in-edge sources, no intercept."""
    X = np.asarray(X, dtype=float)
    if k < 1:
        raise ValueError("event 0 has no predecessors to decompose onto")
    sources = sorted(edges.sources_of(k))
    y = X[:, k]
    tss = float(y @ y)
    if not sources:
        return EventDecomposition(k, (), 1.0, 1.0, 0.0, False)
    Z = X[:, sources]
    rank = np.linalg.matrix_rank(Z)
    if rank < len(sources):
        raise RankError(f"collinear predictors {sources} for event {k}")
    coef, *_ = np.linalg.lstsq(Z, y, rcond=None)
    resid = y - Z @ coef
    rss = float(resid @ resid)
    r_squared = 0.0 if tss == 0 else max(0.0, min(1.0, 1.0 - rss / tss))
    terms = tuple(DecompositionTerm(s, float(c)) for s, c in zip(sources, coef))
    total = float(np.sum(coef))
    flagged = bool(np.any(coef < 0) or total > 1.0)
    return EventDecomposition(
        k,
        terms,
        1.0 - total,
        1.0 - float(np.sum(np.abs(coef))),
        r_squared,
        flagged,
    )


def markov_score(network: InformationFlowNetwork) -> float:
    """Share of absolute coefficient mass on edges from each event's most
    recent forecast and most recent response.  1.0 when no edges exist."""
    events = list(network.events)
    total = 0.0
    markov_mass = 0.0
    for source, target, coef, _pc in network.edges:
        total += abs(coef)
        if source in _markov_sources(events, target):
            markov_mass += abs(coef)
    if total == 0.0:
        return 1.0
    return markov_mass / total


def _markov_sources(events: list, target: int) -> set:
    """Indices of the most recent forecast and most recent response before target."""
    out = set()
    for kind in (EventKind.FORECAST, EventKind.RESPONSE):
        for i in range(target - 1, -1, -1):
            if events[i].kind is kind:
                out.add(i)
                break
    return out


def decompose_network(panel: DialoguePanel, lam: float) -> InformationFlowNetwork:
    """EW GGM edge selection followed by per-event decomposition regressions.

    The panel is expected to be preprocessed (Box-Cox already applied if
    desired); standardization happens here so the covariance convention
    matches the solver's.
    """
    order = event_sequence(panel)
    X_raw = observation_matrix(panel, include_shipment=True)
    X, _, _ = standardize_columns(X_raw, names=[e.label for e in order])
    cmat = expanding_window(X, lam, order)
    edge_set = select_edges(cmat)
    return _assemble(order, X, cmat, edge_set, lam)


def _assemble(
    order: EventSequence,
    X: np.ndarray,
    cmat: InformationFlowMatrix,
    edge_set: DirectedEdgeSet,
    lam: float,
) -> InformationFlowNetwork:
    n = len(order)
    decomps = tuple(decompose_event(X, edge_set, k) for k in range(1, n))
    coef_by_edge = {}
    for d in decomps:
        for term in d.terms:
            coef_by_edge[(term.source, d.event)] = term.coefficient
    edges = tuple(
        (e.source, e.target, coef_by_edge[(e.source, e.target)], e.partial_correlation)
        for e in edge_set
    )
    network = InformationFlowNetwork(order, edges, decomps, lam)
    score = markov_score(network)
    return InformationFlowNetwork(order, edges, decomps, lam, score)


def equation_string(network: InformationFlowNetwork, target: int) -> str:
    """Render the compact decomposition line, e.g. ``F_1=0.5F_2+0.4F_4+e``."""
    events = list(network.events)
    dec = network.decomposition_of(target)
    name = _subscript(events[target])
    if dec is None or not dec.terms:
        return f"{name}=ε"
    parts = []
    for i, term in enumerate(dec.terms):
        coef = term.coefficient
        src = _subscript(events[term.source])
        sign = "-" if coef < 0 else ("+" if i > 0 else "")
        parts.append(f"{sign}{abs(coef):.2g}{src}")
    return f"{name}={''.join(parts)}+ε"


def _subscript(event) -> str:
    if event.kind is EventKind.SHIPMENT:
        return "S"
    return f"{event.kind.value}_{event.lag}"
