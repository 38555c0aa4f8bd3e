"""Box-Cox normalization, column standardization, and KS normality checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .errors import BoxCoxDomainError, SampleTooSmallError, ZeroVarianceError
from .panel import DialoguePanel, event_sequence

#: Exponent below which KS p-value series terms are dropped.
_KS_TERM_EPS = 1e-12


@dataclass(frozen=True)
class TransformConfig:
    """Box-Cox exponent and standardization switch applied before inference."""

    gamma: float = -0.5
    standardize: bool = True
    shift: float = 0.0  # added to every cell before Box-Cox, recorded in output

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise ValueError("gamma must be finite")


def box_cox(y: float, gamma: float) -> float:
    """(y**gamma - 1)/gamma for gamma != 0, log(y) at gamma = 0.  Requires y > 0."""
    if y <= 0:
        raise BoxCoxDomainError(f"Box-Cox requires positive input, got {y}")
    if gamma == 0.0:
        return math.log(y)
    # expm1 keeps precision as gamma -> 0 (continuous into the log branch)
    return math.expm1(gamma * math.log(y)) / gamma


def box_cox_vector(y: np.ndarray, gamma: float) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        bad = float(y[y <= 0][0])
        raise BoxCoxDomainError(f"Box-Cox requires positive input, got {bad}")
    if gamma == 0.0:
        return np.log(y)
    return np.expm1(gamma * np.log(y)) / gamma


def apply_box_cox(panel: DialoguePanel, gamma: float, shift: float = 0.0) -> DialoguePanel:
    """Box-Cox every cell of the panel; the error names the offending cell."""

    def transform(arr, kind):
        arr = np.asarray(arr, dtype=float) + shift
        if np.any(arr <= 0):
            idx = np.argwhere(arr <= 0)[0]
            period = panel.period_labels[idx[0]]
            lag = (idx[1] + 1) if arr.ndim == 2 else 0
            event = "S" if kind == "S" else f"{kind}{lag}"
            raise BoxCoxDomainError(
                f"Box-Cox requires positive values; period {period!r}, event {event} "
                f"has value {float(arr[tuple(idx)]):g} after shift {shift:g}",
                period=period,
                event=event,
            )
        return box_cox_vector(arr, gamma)

    return DialoguePanel(
        transform(panel.forecasts, "F"),
        transform(panel.responses, "R"),
        transform(panel.shipments, "S"),
        panel.period_labels,
    )


def standardize_columns(X: np.ndarray, names=None):
    """Scale each column to mean 0, sample sd 1 (ddof=1).

    Returns (Z, means, sds); the affine parameters invert the mapping.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise SampleTooSmallError("standardization needs a 2-D matrix with T >= 2")
    means = X.mean(axis=0)
    sds = X.std(axis=0, ddof=1)
    for j, sd in enumerate(sds):
        if sd <= 0:
            name = names[j] if names is not None else f"column {j}"
            raise ZeroVarianceError(f"{name} is constant; cannot standardize")
    return (X - means) / sds, means, sds


def unstandardize_columns(Z: np.ndarray, means: np.ndarray, sds: np.ndarray) -> np.ndarray:
    return np.asarray(Z, dtype=float) * np.asarray(sds) + np.asarray(means)


def _kolmogorov_sf(lam: float) -> float:
    """Asymptotic Kolmogorov tail Q(lam) = 2 sum_k (-1)^(k-1) exp(-2 k^2 lam^2)."""
    if lam <= 0:
        return 1.0
    total = 0.0
    for k in range(1, 100001):
        term = math.exp(-2.0 * k * k * lam * lam)
        if term < _KS_TERM_EPS:
            break
        total += (-1.0) ** (k - 1) * term
    return min(1.0, max(0.0, 2.0 * total))


def ks_normality(x: np.ndarray) -> dict:
    """KS distance to a fitted normal and its asymptotic p-value.

    Mean and sd are estimated from the sample, so the p-value is an
    approximate diagnostic (no Lilliefors correction), matching common
    toolchain behavior.
    """
    x = np.asarray(x, dtype=float).ravel()
    t_count = x.size
    if t_count < 8:
        raise SampleTooSmallError(f"KS normality needs T >= 8, got {t_count}")
    mu = x.mean()
    sd = x.std(ddof=1)
    if sd <= 0:
        raise ZeroVarianceError("constant sample; KS normality undefined")
    z = np.sort((x - mu) / sd)
    cdf = norm.cdf(z)
    i = np.arange(1, t_count + 1)
    d_plus = np.max(i / t_count - cdf)
    d_minus = np.max(cdf - (i - 1) / t_count)
    d_stat = max(d_plus, d_minus, 0.0)
    lam = (math.sqrt(t_count) + 0.12 + 0.11 / math.sqrt(t_count)) * d_stat
    return {"statistic": float(d_stat), "p_value": _kolmogorov_sf(lam)}


def normality_report(panel: DialoguePanel, gamma=None, shift: float = 0.0) -> list:
    """Per-event KS diagnostics, optionally after a Box-Cox transform.

    Returns a list of dicts ready for JSON serialization:
    {event, ks, p, mean, sd}.
    """
    work = panel if gamma is None else apply_box_cox(panel, gamma, shift)
    from .panel import observation_matrix

    X = observation_matrix(work, include_shipment=True)
    rows = []
    for j, ev in enumerate(event_sequence(work)):
        col = X[:, j]
        res = ks_normality(col)
        rows.append(
            {
                "event": ev.label,
                "ks": res["statistic"],
                "p": res["p_value"],
                "mean": float(col.mean()),
                "sd": float(col.std(ddof=1)),
            }
        )
    return rows
