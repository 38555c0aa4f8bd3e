import numpy as np
import pytest

from flowcast import (
    EventId,
    EventKind,
    PlantedEdge,
    SyntheticSpec,
    decompose_network,
    generate,
    markov_spec,
    observation_matrix,
    partial_correlation_via_regression,
    recovery_report,
)
from flowcast.errors import SyntheticSpecError


class TestSpec:
    def test_json_round_trip(self):
        spec = markov_spec(seed=5)
        back = SyntheticSpec.from_json(spec.to_json())
        assert back == spec

    def test_non_time_respecting_edge_rejected(self):
        with pytest.raises(SyntheticSpecError):
            SyntheticSpec(
                10, 3, 2,
                (PlantedEdge(EventId(EventKind.FORECAST, 1), EventId(EventKind.FORECAST, 2), 0.5),),
            )

    def test_unknown_event_rejected(self):
        with pytest.raises(SyntheticSpecError):
            SyntheticSpec(
                10, 3, 2,
                (PlantedEdge(EventId(EventKind.RESPONSE, 3), EventId(EventKind.SHIPMENT, 0), 0.5),),
            )


class TestGenerate:
    def test_deterministic(self):
        spec = markov_spec(t_count=50, seed=9)
        p1, p2 = generate(spec), generate(spec)
        assert np.array_equal(p1.forecasts, p2.forecasts)
        assert np.array_equal(p1.responses, p2.responses)
        assert np.array_equal(p1.shipments, p2.shipments)

    def test_no_edges_independent_columns(self):
        spec = SyntheticSpec(500, 3, 2, (), 1.0, 3)
        X = observation_matrix(generate(spec))
        corr = np.corrcoef(X.T)
        off = corr[~np.eye(corr.shape[0], dtype=bool)]
        assert np.max(np.abs(off)) < 0.15

    def test_column_means_near_zero(self):
        panel = generate(markov_spec(t_count=5000, seed=1))
        X = observation_matrix(panel)
        assert np.max(np.abs(X.mean(0))) < 0.05

    def test_asymptotic_zero_pattern(self):
        # non-adjacent planted pairs have ~zero regression partial correlation
        spec = markov_spec(t_count=5000, seed=2)
        X = observation_matrix(generate(spec))
        Z = (X - X.mean(0)) / X.std(0, ddof=1)
        # F4 (col 0) and F2 (col 4) are non-adjacent in the chain
        assert abs(partial_correlation_via_regression(Z, 0, 4)) < 0.05
        # S (last col) is isolated
        assert abs(partial_correlation_via_regression(Z, 0, Z.shape[1] - 1)) < 0.05


class TestRecoveryReport:
    def test_perfect_recovery(self):
        spec = markov_spec(seed=1)
        panel = generate(spec)
        net = decompose_network(panel, 0.45)
        rep = recovery_report(spec, panel, net)
        assert rep["edge_precision"] == 1.0
        assert rep["edge_recall"] == 1.0
        assert rep["coefficient_rmse"] < 0.1

    def test_empty_recovery_convention(self):
        spec = markov_spec(t_count=50, seed=4)
        panel = generate(spec)
        net = decompose_network(panel, 1.4)
        rep = recovery_report(spec, panel, net)
        assert rep["edge_recall"] == 0.0
        assert rep["edge_precision"] == 1.0

    def test_lambda_sweep_finds_recovery(self):
        spec = markov_spec(seed=1)
        panel = generate(spec)
        hits = []
        for lam in np.linspace(0.05, 0.5, 10):
            rep = recovery_report(spec, panel, decompose_network(panel, float(lam)))
            hits.append(rep["edge_precision"] >= 0.9 and rep["edge_recall"] >= 0.9)
        assert any(hits)
