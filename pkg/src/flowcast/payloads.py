"""The stable JSON contract consumed by the CLI, HTTP service, and web UI."""

from __future__ import annotations

import json

from .ccc import ccc_solve
from .decompose import decompose_network, equation_string
from .panel import DialoguePanel, EventKind
from .preprocess import apply_box_cox, normality_report, standardize_columns


def canonical_json(obj) -> bytes:
    """Deterministic byte encoding: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")


def _event_entry(panel: DialoguePanel, ev) -> dict:
    # x_time: position on the time-line (lag N earliest, shipment at the end).
    if ev.kind is EventKind.SHIPMENT:
        hemisphere = "end"
        x_time = panel.N
    else:
        hemisphere = "top" if ev.kind is EventKind.FORECAST else "bottom"
        x_time = panel.N - ev.lag
    return {
        "id": ev.label,
        "kind": ev.kind.value,
        "lag": ev.lag,
        "x_time": x_time,
        "hemisphere": hemisphere,
    }


def network_payload(
    panel: DialoguePanel,
    lam: float,
    gamma: float | None = -0.5,
    shift: float = 0.0,
) -> dict:
    """Full network analysis: Box-Cox (unless gamma is None), standardize,
    EW GGM, decomposition, layout hints per the ellipse visualization."""
    work = panel if gamma is None else apply_box_cox(panel, gamma, shift)
    network = decompose_network(work, lam)
    events = list(network.events)
    labels = [e.label for e in events]
    return {
        "events": [_event_entry(panel, ev) for ev in events],
        "edges": [
            {
                "from": labels[s],
                "to": labels[t],
                "coefficient": coef,
                "partial_correlation": pc,
                "sign": "positive" if coef >= 0 else "negative",
            }
            for s, t, coef, pc in network.edges
        ],
        "decompositions": [
            {
                "event": labels[d.event],
                "equation": equation_string(network, d.event),
                "terms": [
                    {"source": labels[t.source], "coefficient": t.coefficient}
                    for t in d.terms
                ],
                "epsilon_share": d.epsilon_share,
                "abs_epsilon_share": d.abs_epsilon_share,
                "r_squared": d.r_squared,
                "flagged": d.flagged,
            }
            for d in network.decompositions
        ],
        "markov_score": network.markov,
        "markov_score_note": (
            "heuristic summary: fraction of absolute coefficient mass on edges "
            "from each event's most recent forecast and most recent response"
        ),
        "lambda": lam,
        "gamma": gamma,
    }


def ccc_payload(panel: DialoguePanel, alpha: float) -> dict:
    """Continuum canonical correlation on standardized forecast/response blocks."""
    F, _, _ = standardize_columns(panel.forecasts)
    R, _, _ = standardize_columns(panel.responses)
    sol = ccc_solve(F, R, alpha)
    return {
        "alpha": alpha,
        "w": [float(x) for x in sol.w],
        "v": [float(x) for x in sol.v],
        "f_star": [float(x) for x in sol.f_star],
        "r_star": [float(x) for x in sol.r_star],
        "objective": float(sol.objective),
        "warn_overfit": bool(sol.warn_overfit),
        "transform": "standardized",
        "periods": [
            {"label": panel.period_labels[t], **score}
            for t, score in enumerate(sol.scores())
        ],
    }


def normality_payload(panel: DialoguePanel, gamma: float | None, shift: float = 0.0) -> list:
    return normality_report(panel, gamma, shift)
