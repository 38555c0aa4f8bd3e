import numpy as np
import pytest

from flowcast import (
    decompose_event,
    decompose_network,
    generate,
    markov_score,
    markov_spec,
)
from flowcast.decompose import InformationFlowNetwork, equation_string
from flowcast.errors import RankError
from flowcast.ewggm import DirectedEdge, DirectedEdgeSet
from flowcast.panel import _sequence_for
from tests.test_panel import make_panel


def standardized(X):
    return (X - X.mean(0)) / X.std(0, ddof=1)


class TestDecomposeEvent:
    def test_exact_copy_column(self):
        rng = np.random.default_rng(0)
        x = rng.standard_normal(100)
        X = standardized(np.column_stack([x, x]))
        edges = DirectedEdgeSet((DirectedEdge(0, 1, 0.9),))
        dec = decompose_event(X, edges, 1)
        assert dec.terms[0].coefficient == pytest.approx(1.0, abs=1e-10)
        assert dec.epsilon_share == pytest.approx(0.0, abs=1e-10)
        assert dec.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_planted_coefficients(self):
        rng = np.random.default_rng(1)
        t = 500
        a = rng.standard_normal(t)
        b = rng.standard_normal(t)
        y = 0.6 * a + 0.3 * b + 0.2 * rng.standard_normal(t)
        X = np.column_stack([a, b, y])  # zero-mean-ish; no standardization distortion
        X = X - X.mean(0)
        edges = DirectedEdgeSet((DirectedEdge(0, 2, 0.5), DirectedEdge(1, 2, 0.3)))
        dec = decompose_event(X, edges, 2)
        coefs = {t_.source: t_.coefficient for t_ in dec.terms}
        assert coefs[0] == pytest.approx(0.6, abs=0.1)
        assert coefs[1] == pytest.approx(0.3, abs=0.1)

    def test_empty_predictor_set(self):
        rng = np.random.default_rng(2)
        X = standardized(rng.standard_normal((50, 3)))
        dec = decompose_event(X, DirectedEdgeSet(()), 2)
        assert dec.terms == ()
        assert dec.epsilon_share == 1.0
        assert dec.r_squared == 0.0

    def test_collinear_predictors_rejected(self):
        rng = np.random.default_rng(3)
        x = rng.standard_normal(50)
        X = np.column_stack([x, x, rng.standard_normal(50)])
        edges = DirectedEdgeSet((DirectedEdge(0, 2, 0.5), DirectedEdge(1, 2, 0.5)))
        with pytest.raises(RankError):
            decompose_event(X, edges, 2)

    def test_epsilon_share_convention(self):
        # coefficients 0.5 and 0.4 leave a 0.1 epsilon share
        rng = np.random.default_rng(4)
        t = 2000
        a = rng.standard_normal(t)
        b = rng.standard_normal(t)
        y = 0.5 * a + 0.4 * b
        X = np.column_stack([a, b, y]) - 0.0
        edges = DirectedEdgeSet((DirectedEdge(0, 2, 0.5), DirectedEdge(1, 2, 0.4)))
        dec = decompose_event(X, edges, 2)
        assert dec.epsilon_share == pytest.approx(0.1, abs=1e-9)
        assert not dec.flagged

    def test_negative_coefficient_flagged(self):
        rng = np.random.default_rng(5)
        t = 200
        a = rng.standard_normal(t)
        y = -0.5 * a + 0.1 * rng.standard_normal(t)
        X = np.column_stack([a, y]) - 0.0
        edges = DirectedEdgeSet((DirectedEdge(0, 1, -0.5),))
        dec = decompose_event(X, edges, 1)
        assert dec.flagged
        assert dec.abs_epsilon_share == pytest.approx(1.0 - abs(dec.terms[0].coefficient))

    def test_full_lower_triangular_equals_ols(self):
        rng = np.random.default_rng(6)
        X = standardized(rng.standard_normal((100, 4)))
        edges = DirectedEdgeSet(
            tuple(DirectedEdge(i, 3, 0.1) for i in range(3))
        )
        dec = decompose_event(X, edges, 3)
        ref, *_ = np.linalg.lstsq(X[:, :3], X[:, 3], rcond=None)
        for term, expected in zip(dec.terms, ref):
            assert term.coefficient == pytest.approx(expected, abs=1e-12)


class TestDecomposeNetwork:
    def test_white_noise_panel_empty(self):
        spec = markov_spec(t_count=400, seed=7)
        from flowcast.synth import SyntheticSpec

        noise = SyntheticSpec(spec.T, spec.N, spec.M, (), 1.0, 11)
        panel = generate(noise)
        net = decompose_network(panel, 0.5)
        assert net.edges == ()
        assert all(d.epsilon_share == 1.0 for d in net.decompositions)
        assert net.markov == 1.0

    def test_no_response_to_forecast_edges(self):
        panel = generate(markov_spec(seed=1))
        net = decompose_network(panel, 0.45)
        events = list(net.events)
        for s, t, _c, _pc in net.edges:
            assert not (events[s].label.startswith("R") and events[t].label.startswith("F"))

    def test_deterministic(self):
        panel = generate(markov_spec(t_count=200, seed=3))
        n1 = decompose_network(panel, 0.3)
        n2 = decompose_network(panel, 0.3)
        assert n1.edges == n2.edges
        assert n1.markov == n2.markov

    def test_scale_invariance(self):
        panel = generate(markov_spec(t_count=200, seed=4))
        from flowcast import DialoguePanel

        scaled = DialoguePanel(
            panel.forecasts * 37.0,
            panel.responses * 37.0,
            panel.shipments * 37.0,
            panel.period_labels,
        )
        n1 = decompose_network(panel, 0.3)
        n2 = decompose_network(scaled, 0.3)
        assert [(s, t) for s, t, _, _ in n1.edges] == [(s, t) for s, t, _, _ in n2.edges]
        for (_, _, c1, _), (_, _, c2, _) in zip(n1.edges, n2.edges):
            assert c1 == pytest.approx(c2, abs=1e-9)

    def test_edge_coefficients_match_decompositions(self):
        panel = generate(markov_spec(t_count=300, seed=5))
        net = decompose_network(panel, 0.3)
        for s, t, coef, _pc in net.edges:
            dec = net.decomposition_of(t)
            match = [term for term in dec.terms if term.source == s]
            assert len(match) == 1 and match[0].coefficient == coef


class TestMarkovScore:
    def _net(self, n, m, edges):
        order = _sequence_for(n, m)
        return InformationFlowNetwork(order, tuple(edges), (), 0.5)

    def test_adjacent_forecast_edges_score_one(self):
        # F4,R4,F3,R3,F2,R2,F1,R1,S: F_{i+1} -> F_i are Markov edges
        edges = [(0, 2, 0.8, 0.5), (2, 4, 0.8, 0.5), (4, 6, 0.8, 0.5)]
        assert markov_score(self._net(4, 4, edges)) == 1.0

    def test_distant_edge_scores_zero(self):
        # F4 -> F1 skips two lags; N=4, M=4: F4=0, F1=6
        assert markov_score(self._net(4, 4, [(0, 6, 0.5, 0.3)])) == 0.0

    def test_no_edges_vacuous(self):
        assert markov_score(self._net(3, 2, [])) == 1.0

    def test_planted_markov_panel(self):
        panel = generate(markov_spec(seed=1))
        net = decompose_network(panel, 0.45)
        assert net.markov >= 0.8


class TestEquationString:
    def test_display_format(self):
        order = _sequence_for(4, 4)
        from flowcast.decompose import DecompositionTerm, EventDecomposition

        # F1 is index 6; F2 index 4, F4 index 0
        dec = EventDecomposition(
            6,
            (DecompositionTerm(4, 0.5), DecompositionTerm(0, 0.4)),
            0.1,
            0.1,
            0.9,
        )
        net = InformationFlowNetwork(order, (), (dec,), 0.8)
        assert equation_string(net, 6) == "F_1=0.5F_2+0.4F_4+ε"

    def test_source_free_event(self):
        order = _sequence_for(2, 2)
        net = InformationFlowNetwork(order, (), (), 0.8)
        assert equation_string(net, 0) == "F_2=ε"
