"""Continuum Canonical Correlation over the forecast and response blocks.

A single parameter alpha in [0,1] interpolates between canonical
correlation (alpha=0), partial least squares (alpha=0.5) and per-block
principal components (alpha -> 1).  The nonconvex objective is maximized
by projected gradient ascent on the product of unit spheres, multi-started
from the three closed-form special-case solutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DegenerateInputError, RankError

#: Rule-of-thumb observations-per-variable ratio below which results overfit.
OVERFIT_RATIO = 10

_PGA_TOL = 1e-10
_PGA_MAX_ITER = 5000
_POWER_TOL = 1e-12
_POWER_MAX_ITER = 10000


@dataclass(frozen=True)
class CccSolution:
    alpha: float
    w: np.ndarray
    v: np.ndarray
    f_star: np.ndarray
    r_star: np.ndarray
    objective: float
    warn_overfit: bool = False
    starts_used: tuple = field(default=(), repr=False)

    def scores(self) -> list:
        """Per-period (f_score, r_score, rank) triples; rank in [0,1] orders
        periods for the blue-to-red coloring."""
        t_count = self.f_star.size
        denom = max(1, t_count - 1)
        return [
            {
                "f_score": float(self.f_star[t]),
                "r_score": float(self.r_star[t]),
                "rank": t / denom,
            }
            for t in range(t_count)
        ]


def _check_blocks(F: np.ndarray, R: np.ndarray):
    F = np.asarray(F, dtype=float)
    R = np.asarray(R, dtype=float)
    if F.ndim != 2 or R.ndim != 2 or F.shape[0] != R.shape[0]:
        raise DegenerateInputError("F and R must be 2-D with matching row counts")
    if F.shape[0] < 3:
        raise DegenerateInputError("need T >= 3 periods")
    for name, B in (("F", F), ("R", R)):
        if np.any(B.std(axis=0) == 0):
            raise DegenerateInputError(f"block {name} has a zero-variance column")
    return F, R


def ccc_objective(F, R, w, v, alpha: float) -> float:
    """COV(Fw, Rv)^2 * (VAR(Fw) VAR(Rv))^(alpha/(1-alpha) - 1), T-1 denominators.

    Columns of F and R must be zero-mean; alpha=1 is excluded (route it to
    the PCA oracle instead).
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError("ccc_objective requires 0 <= alpha < 1")
    f = np.asarray(F) @ np.asarray(w)
    r = np.asarray(R) @ np.asarray(v)
    denom = F.shape[0] - 1
    cov = float(f @ r) / denom
    var_f = float(f @ f) / denom
    var_r = float(r @ r) / denom
    expo = alpha / (1.0 - alpha) - 1.0
    prod = var_f * var_r
    if prod <= 0.0:
        if expo < 0:
            raise DegenerateInputError("zero-variance direction with negative exponent")
        return 0.0
    return cov**2 * prod**expo


def _power_iteration(A: np.ndarray) -> tuple:
    """Leading eigenpair of a symmetric PSD matrix; deterministic all-ones start."""
    n = A.shape[0]
    u = np.ones(n) / np.sqrt(n)
    lam = 0.0
    for _ in range(_POWER_MAX_ITER):
        z = A @ u
        norm = np.linalg.norm(z)
        if norm == 0.0:
            return u, 0.0
        z /= norm
        lam_new = float(z @ A @ z)
        if np.linalg.norm(z - u) < _POWER_TOL or np.linalg.norm(z + u) < _POWER_TOL:
            return z, lam_new
        u, lam = z, lam_new
    raise ConvergenceError("power iteration did not converge")


def _fix_sign(u: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(u)))
    return -u if u[k] < 0 else u


def pca_oracle(X: np.ndarray) -> tuple:
    """Leading principal direction and variance of one block (power iteration)."""
    X = np.asarray(X, dtype=float)
    cov = X.T @ X / (X.shape[0] - 1)
    w, var = _power_iteration(cov)
    return _fix_sign(w), float(var)


def pls_oracle(F: np.ndarray, R: np.ndarray) -> tuple:
    """Leading singular triple (w, v, cov) of the cross-covariance F'R/(T-1)."""
    F, R = _check_blocks(F, R)
    C = F.T @ R / (F.shape[0] - 1)
    w, _ = _power_iteration(C @ C.T)
    w = _fix_sign(w)
    z = C.T @ w
    s = np.linalg.norm(z)
    if s == 0.0:
        v = np.ones(R.shape[1]) / np.sqrt(R.shape[1])
    else:
        v = z / s
    return w, v, float(s)


def cca_oracle(F: np.ndarray, R: np.ndarray) -> tuple:
    """Leading canonical pair via the generalized eigenproblem; unit-norm w, v."""
    F, R = _check_blocks(F, R)
    Sff = F.T @ F
    Srr = R.T @ R
    Sfr = F.T @ R
    try:
        Sff_inv = np.linalg.inv(Sff)
        Srr_inv = np.linalg.inv(Srr)
    except np.linalg.LinAlgError:
        raise RankError(
            "singular within-block covariance; likely overfitting "
            f"(T={F.shape[0]} vs {F.shape[1]}+{R.shape[1]} variables)"
        )
    M = Sff_inv @ Sfr @ Srr_inv @ Sfr.T
    eigvals, eigvecs = np.linalg.eig(M)
    k = int(np.argmax(eigvals.real))
    w = eigvecs[:, k].real
    w /= np.linalg.norm(w)
    z = Srr_inv @ Sfr.T @ w
    norm = np.linalg.norm(z)
    if norm == 0.0:
        v = np.ones(R.shape[1]) / np.sqrt(R.shape[1])
    else:
        v = z / norm
    f = F @ w
    r = R @ v
    rho = abs(float(f @ r) / (np.linalg.norm(f) * np.linalg.norm(r)))
    k = int(np.argmax(np.abs(w)))
    if w[k] < 0:
        w, v = -w, -v
    return w, v, rho


def _grad(F, R, w, v, alpha):
    denom = F.shape[0] - 1
    f = F @ w
    r = R @ v
    cov = float(f @ r) / denom
    var_f = float(f @ f) / denom
    var_r = float(r @ r) / denom
    expo = alpha / (1.0 - alpha) - 1.0
    prod_e = (var_f * var_r) ** expo
    gw = 2.0 * cov * (F.T @ r / denom) * prod_e
    gv = 2.0 * cov * (R.T @ f / denom) * prod_e
    if expo != 0.0:
        prod_em1 = (var_f * var_r) ** (expo - 1.0)
        gw = gw + cov**2 * expo * prod_em1 * var_r * (2.0 * F.T @ f / denom)
        gv = gv + cov**2 * expo * prod_em1 * var_f * (2.0 * R.T @ r / denom)
    return gw, gv


def _project_tangent(g, u):
    return g - float(g @ u) * u


def _pga(F, R, w0, v0, alpha):
    """Projected gradient ascent on the product of unit spheres."""
    w = w0 / np.linalg.norm(w0)
    v = v0 / np.linalg.norm(v0)
    obj = ccc_objective(F, R, w, v, alpha)
    step = 1.0
    for _ in range(_PGA_MAX_ITER):
        gw, gv = _grad(F, R, w, v, alpha)
        gw = _project_tangent(gw, w)
        gv = _project_tangent(gv, v)
        grad_norm = np.sqrt(float(gw @ gw + gv @ gv))
        if grad_norm < 1e-14:
            break
        improved = False
        while step > 1e-16:
            w_new = w + step * gw
            v_new = v + step * gv
            w_new /= np.linalg.norm(w_new)
            v_new /= np.linalg.norm(v_new)
            obj_new = ccc_objective(F, R, w_new, v_new, alpha)
            if obj_new > obj:
                improved = True
                break
            step /= 2.0
        if not improved:
            break
        gain = obj_new - obj
        w, v, obj = w_new, v_new, obj_new
        step *= 2.0
        if gain < _PGA_TOL:
            break
    return w, v, obj


def _canonical_signs(F, R, w, v):
    """Flip so COV(Fw, Rv) >= 0, then fix the joint sign by the largest |w| entry."""
    cov = float((F @ w) @ (R @ v))
    if cov < 0:
        v = -v
    k = int(np.argmax(np.abs(w)))
    if w[k] < 0:
        w = -w
        v = -v
    return w, v


def ccc_solve(F: np.ndarray, R: np.ndarray, alpha: float, extra_starts=()) -> CccSolution:
    """Maximize the continuum objective; alpha=1 routes to the PCA oracle.

    Starts: CCA, PLS and PCA closed forms plus one seeded random direction
    (and any caller-provided warm starts).
    """
    F, R = _check_blocks(F, R)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    t_count = F.shape[0]
    warn = t_count < OVERFIT_RATIO * (F.shape[1] + R.shape[1])

    if alpha == 1.0:
        w, _ = pca_oracle(F)
        v, _ = pca_oracle(R)
        w, v = _canonical_signs(F, R, w, v)
        f = F @ w
        r = R @ v
        denom = t_count - 1
        objective = float(f @ f) / denom * (float(r @ r) / denom)
        return CccSolution(alpha, w, v, f, r, objective, warn, ("pca",))

    starts = []
    try:
        w_c, v_c, _ = cca_oracle(F, R)
        starts.append(("cca", w_c, v_c))
    except (RankError, np.linalg.LinAlgError):
        pass
    w_p, v_p, _ = pls_oracle(F, R)
    starts.append(("pls", w_p, v_p))
    w_f, _ = pca_oracle(F)
    v_r, _ = pca_oracle(R)
    starts.append(("pca", w_f, v_r))
    rng = np.random.default_rng(20130800)
    starts.append(("random", rng.standard_normal(F.shape[1]), rng.standard_normal(R.shape[1])))
    for i, (w0, v0) in enumerate(extra_starts):
        starts.append((f"warm{i}", np.asarray(w0, float), np.asarray(v0, float)))

    best = None
    used = []
    for name, w0, v0 in starts:
        try:
            w, v, obj = _pga(F, R, w0, v0, alpha)
        except DegenerateInputError:
            continue
        used.append(name)
        if best is None or obj > best[2]:
            best = (w, v, obj)
    if best is None:
        raise DegenerateInputError("no feasible start for the continuum solve")
    w, v, obj = best
    w, v = _canonical_signs(F, R, w, v)
    return CccSolution(alpha, w, v, F @ w, R @ v, obj, warn, tuple(used))


def alpha_sweep(F: np.ndarray, R: np.ndarray, grid) -> list:
    """ccc_solve per grid point, warm-starting from the previous solution.

    Failures are recorded in place of the solution so the sweep continues.
    """
    out = []
    prev = None
    for alpha in grid:
        extra = ((prev.w, prev.v),) if prev is not None else ()
        try:
            sol = ccc_solve(F, R, float(alpha), extra_starts=extra)
        except (DegenerateInputError, ConvergenceError, ValueError) as exc:
            out.append(exc)
            continue
        out.append(sol)
        prev = sol
    return out


def default_alpha_grid() -> np.ndarray:
    """21 evenly spaced points over [0,1]; includes the 0.1 default."""
    return np.round(np.linspace(0.0, 1.0, 21), 10)
