import numpy as np
import pytest

from flowcast import (
    alpha_sweep,
    cca_oracle,
    ccc_objective,
    ccc_solve,
    pca_oracle,
    pls_oracle,
)
from flowcast.ccc import default_alpha_grid
from flowcast.errors import DegenerateInputError, RankError


def centered(X):
    return X - X.mean(0)


def blocks(t=200, n=5, m=4, seed=0, coupling=0.4):
    rng = np.random.default_rng(seed)
    F = rng.standard_normal((t, n))
    R = coupling * F[:, :m] + rng.standard_normal((t, m))
    return centered(F), centered(R)


class TestObjective:
    def test_alpha_zero_is_squared_correlation(self):
        F, R = blocks()
        w = np.ones(5) / np.sqrt(5)
        v = np.ones(4) / 2.0
        f, r = F @ w, R @ v
        rho = np.corrcoef(f, r)[0, 1]
        assert ccc_objective(F, R, w, v, 0.0) == pytest.approx(rho**2, abs=1e-12)

    def test_alpha_half_is_squared_covariance(self):
        F, R = blocks(seed=1)
        w = np.ones(5) / np.sqrt(5)
        v = np.ones(4) / 2.0
        cov = (F @ w) @ (R @ v) / (F.shape[0] - 1)
        assert ccc_objective(F, R, w, v, 0.5) == pytest.approx(cov**2, abs=1e-12)

    def test_identical_single_columns(self):
        rng = np.random.default_rng(2)
        x = centered(rng.standard_normal((50, 1)))
        assert ccc_objective(x, x, np.array([1.0]), np.array([1.0]), 0.0) == pytest.approx(1.0)

    def test_alpha_one_excluded(self):
        F, R = blocks()
        with pytest.raises(ValueError):
            ccc_objective(F, R, np.ones(5) / np.sqrt(5), np.ones(4) / 2, 1.0)


class TestOracles:
    def test_cca_identical_blocks(self):
        F, _ = blocks(seed=3)
        _, _, rho = cca_oracle(F, F.copy())
        assert rho == pytest.approx(1.0, abs=1e-8)

    def test_cca_single_columns_is_pearson(self):
        rng = np.random.default_rng(4)
        x = centered(rng.standard_normal((100, 1)))
        y = centered(0.6 * x + 0.5 * rng.standard_normal((100, 1)))
        _, _, rho = cca_oracle(x, y)
        assert rho == pytest.approx(abs(np.corrcoef(x[:, 0], y[:, 0])[0, 1]), abs=1e-10)

    def test_cca_independent_large_t(self):
        rng = np.random.default_rng(5)
        F = centered(rng.standard_normal((5000, 5)))
        R = centered(rng.standard_normal((5000, 4)))
        _, _, rho = cca_oracle(F, R)
        assert rho < 0.1

    def test_cca_singular_block_raises(self):
        rng = np.random.default_rng(6)
        x = rng.standard_normal(50)
        F = centered(np.column_stack([x, x]))
        R = centered(rng.standard_normal((50, 2)))
        with pytest.raises(RankError):
            cca_oracle(F, R)

    def test_pca_diagonal_covariance(self):
        rng = np.random.default_rng(7)
        X = centered(rng.standard_normal((4000, 2)) * np.array([2.0, 1.0]))
        w, var = pca_oracle(X)
        assert abs(w[0]) == pytest.approx(1.0, abs=0.05)
        assert var == pytest.approx(4.0, rel=0.15)

    def test_pls_identical_blocks_is_pca(self):
        F, _ = blocks(seed=8)
        w, v, _ = pls_oracle(F, F.copy())
        pc, _ = pca_oracle(F)
        assert abs(float(w @ pc)) > 0.999
        assert abs(float(v @ pc)) > 0.999

    def test_pls_cov_matches_alpha_half_objective(self):
        F, R = blocks(seed=9)
        _, _, cov = pls_oracle(F, R)
        sol = ccc_solve(F, R, 0.5)
        assert sol.objective == pytest.approx(cov**2, abs=1e-6)


class TestSolver:
    def test_unit_norms(self):
        F, R = blocks(seed=10)
        for alpha in (0.0, 0.1, 0.5, 0.9, 1.0):
            sol = ccc_solve(F, R, alpha)
            assert np.linalg.norm(sol.w) == pytest.approx(1.0, abs=1e-10)
            assert np.linalg.norm(sol.v) == pytest.approx(1.0, abs=1e-10)
            assert np.array_equal(sol.f_star, F @ sol.w)
            assert np.array_equal(sol.r_star, R @ sol.v)

    def test_alpha_zero_matches_cca(self):
        F, R = blocks(seed=11)
        sol = ccc_solve(F, R, 0.0)
        _, _, rho = cca_oracle(F, R)
        assert sol.objective >= rho**2 - 1e-6
        assert sol.objective == pytest.approx(rho**2, abs=1e-4)

    def test_alpha_half_matches_pls(self):
        F, R = blocks(seed=12)
        sol = ccc_solve(F, R, 0.5)
        w, v, _ = pls_oracle(F, R)
        assert abs(float(sol.w @ w)) >= 0.999
        assert abs(float(sol.v @ v)) >= 0.999

    def test_alpha_one_matches_pca(self):
        F, R = blocks(seed=13)
        sol = ccc_solve(F, R, 1.0)
        wf, _ = pca_oracle(F)
        vr, _ = pca_oracle(R)
        assert abs(float(sol.w @ wf)) >= 0.999
        assert abs(float(sol.v @ vr)) >= 0.999

    def test_sign_convention_cov_nonnegative(self):
        F, R = blocks(seed=14)
        for alpha in (0.0, 0.3, 0.7):
            sol = ccc_solve(F, R, alpha)
            assert float(sol.f_star @ sol.r_star) >= 0.0
            assert sol.w[int(np.argmax(np.abs(sol.w)))] > 0

    def test_orthogonal_invariance_alpha_zero(self):
        F, R = blocks(seed=15)
        rng = np.random.default_rng(99)
        Q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
        s1 = ccc_solve(F, R, 0.0)
        s2 = ccc_solve(F @ Q, R, 0.0)
        assert s2.objective == pytest.approx(s1.objective, abs=1e-8)

    def test_scale_behavior(self):
        F, R = blocks(seed=16)
        c = 3.0
        s0a = ccc_solve(F, R, 0.0)
        s0b = ccc_solve(c * F, R, 0.0)
        assert s0b.objective == pytest.approx(s0a.objective, abs=1e-8)
        s5a = ccc_solve(F, R, 0.5)
        s5b = ccc_solve(c * F, R, 0.5)
        assert s5b.objective == pytest.approx(c**2 * s5a.objective, rel=1e-6)

    def test_brute_force_grid(self):
        rng = np.random.default_rng(17)
        F = centered(rng.standard_normal((50, 2)))
        R = centered(0.5 * F + rng.standard_normal((50, 2)))
        thetas = np.deg2rad(np.arange(0.0, 360.0, 1.0))
        W = np.stack([np.cos(thetas), np.sin(thetas)])
        fs, rs = F @ W, R @ W
        d = F.shape[0] - 1
        cov = fs.T @ rs / d
        vf = np.sum(fs * fs, axis=0) / d
        vr = np.sum(rs * rs, axis=0) / d
        for alpha in (0.0, 0.25, 0.5, 0.75):
            expo = alpha / (1 - alpha) - 1
            grid_max = float(np.max(cov**2 * np.outer(vf, vr) ** expo))
            sol = ccc_solve(F, R, alpha)
            assert abs(sol.objective - grid_max) <= 1e-3

    def test_overfit_warning_threshold(self):
        rng = np.random.default_rng(18)
        F = centered(rng.standard_normal((30, 12)))
        R = centered(rng.standard_normal((30, 7)))
        assert ccc_solve(F, R, 0.5).warn_overfit
        F = centered(rng.standard_normal((200, 5)))
        R = centered(rng.standard_normal((200, 4)))
        assert not ccc_solve(F, R, 0.5).warn_overfit

    def test_degenerate_block_rejected(self):
        rng = np.random.default_rng(19)
        F = np.zeros((50, 2))
        R = centered(rng.standard_normal((50, 2)))
        with pytest.raises(DegenerateInputError):
            ccc_solve(F, R, 0.3)

    def test_alpha_zero_objective_bounded_by_one(self):
        F, R = blocks(seed=20)
        assert ccc_solve(F, R, 0.0).objective <= 1.0 + 1e-12


class TestSweep:
    def test_endpoints_match_oracles(self):
        F, R = blocks(seed=21)
        sols = alpha_sweep(F, R, [0.0, 0.5, 1.0])
        _, _, rho = cca_oracle(F, R)
        assert sols[0].objective == pytest.approx(rho**2, abs=1e-4)
        _, _, cov = pls_oracle(F, R)
        assert sols[1].objective == pytest.approx(cov**2, abs=1e-6)
        wf, _ = pca_oracle(F)
        assert abs(float(sols[2].w @ wf)) >= 0.999

    def test_default_grid_includes_default_alpha(self):
        grid = default_alpha_grid()
        assert len(grid) == 21
        assert 0.1 in grid.tolist()

    def test_scores_rank_in_unit_interval(self):
        F, R = blocks(seed=22)
        sol = ccc_solve(F, R, 0.1)
        scores = sol.scores()
        assert len(scores) == F.shape[0]
        ranks = [s["rank"] for s in scores]
        assert ranks[0] == 0.0 and ranks[-1] == 1.0
        assert all(0.0 <= r <= 1.0 for r in ranks)
