import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowcast import (
    DialoguePanel,
    EventId,
    EventKind,
    event_sequence,
    load_csv,
    loads_csv,
    observation_matrix,
    save_csv,
)
from flowcast.errors import (
    DuplicateRecordError,
    HorizonOrderError,
    IncompletePanelError,
    PanelParseError,
)


def make_panel(t=4, n=3, m=2, seed=0):
    rng = np.random.default_rng(seed)
    return DialoguePanel(
        rng.uniform(1, 10, (t, n)),
        rng.uniform(1, 10, (t, m)),
        rng.uniform(1, 10, t),
        tuple(f"2012-W{i:02d}" for i in range(1, t + 1)),
    )


def panel_to_csv(panel):
    lines = ["period,kind,lag,value"]
    for i, p in enumerate(panel.period_labels):
        for lag in range(1, panel.N + 1):
            lines.append(f"{p},F,{lag},{float(panel.forecasts[i, lag - 1])!r}")
        for lag in range(1, panel.M + 1):
            lines.append(f"{p},R,{lag},{float(panel.responses[i, lag - 1])!r}")
        lines.append(f"{p},S,0,{float(panel.shipments[i])!r}")
    return "\n".join(lines) + "\n"


class TestEventId:
    def test_shipment_lag_zero_only(self):
        EventId(EventKind.SHIPMENT, 0)
        with pytest.raises(ValueError):
            EventId(EventKind.SHIPMENT, 1)

    def test_forecast_needs_positive_lag(self):
        with pytest.raises(ValueError):
            EventId(EventKind.FORECAST, 0)

    def test_label_round_trip(self):
        for ev in (EventId(EventKind.FORECAST, 12), EventId(EventKind.RESPONSE, 3),
                   EventId(EventKind.SHIPMENT, 0)):
            assert EventId.from_label(ev.label) == ev


class TestEventSequence:
    def test_n2_m2(self):
        seq = event_sequence(make_panel(n=2, m=2))
        assert [e.label for e in seq] == ["F2", "R2", "F1", "R1", "S"]

    def test_n3_m1(self):
        seq = event_sequence(make_panel(n=3, m=1))
        assert [e.label for e in seq] == ["F3", "F2", "F1", "R1", "S"]

    def test_large_horizon_dimensions(self):
        # N=12, M=7: 20 events, responses only once lag <= 7
        seq = event_sequence(make_panel(n=12, m=7))
        labels = [e.label for e in seq]
        assert len(labels) == 20
        assert labels[:7] == ["F12", "F11", "F10", "F9", "F8", "F7", "R7"]
        assert labels[-3:] == ["F1", "R1", "S"]

    @given(n=st.integers(1, 15), m=st.integers(1, 15))
    @settings(max_examples=50, deadline=None)
    def test_structure_properties(self, n, m):
        if m > n:
            m = n
        seq = event_sequence(make_panel(n=n, m=m))
        events = list(seq)
        assert len(events) == n + m + 1
        assert len(set(events)) == len(events)
        for k in range(1, m + 1):
            f = seq.index(EventId(EventKind.FORECAST, k))
            r = seq.index(EventId(EventKind.RESPONSE, k))
            assert r == f + 1
        assert events[-1].kind is EventKind.SHIPMENT


class TestObservationMatrix:
    def test_shapes(self):
        panel = make_panel(t=30, n=12, m=7)
        assert observation_matrix(panel, include_shipment=True).shape == (30, 20)
        assert observation_matrix(panel, include_shipment=False).shape == (30, 19)

    def test_minimal_no_shipment(self):
        panel = make_panel(t=1, n=1, m=1)
        X = observation_matrix(panel, include_shipment=False)
        assert X.shape == (1, 2)
        assert X[0, 0] == panel.forecasts[0, 0]
        assert X[0, 1] == panel.responses[0, 0]

    def test_column_order_matches_sequence(self):
        panel = make_panel(n=2, m=2)
        X = observation_matrix(panel)
        expected = np.column_stack([
            panel.forecasts[:, 1], panel.responses[:, 1],
            panel.forecasts[:, 0], panel.responses[:, 0],
            panel.shipments,
        ])
        assert np.array_equal(X, expected)


class TestCsv:
    def test_load_infers_dimensions(self):
        panel = loads_csv(panel_to_csv(make_panel(t=30, n=12, m=7)))
        assert (panel.T, panel.N, panel.M) == (30, 12, 7)

    def test_single_period_minimal(self):
        text = "period,kind,lag,value\np1,F,1,2.0\np1,R,1,3.0\np1,S,0,4.0\n"
        panel = loads_csv(text)
        assert (panel.T, panel.N, panel.M) == (1, 1, 1)

    def test_missing_cell_rejected(self):
        panel = make_panel()
        lines = panel_to_csv(panel).splitlines()
        dropped = [ln for ln in lines if not ln.startswith("2012-W02,F,2")]
        with pytest.raises(IncompletePanelError):
            loads_csv("\n".join(dropped))

    def test_duplicate_record(self):
        text = panel_to_csv(make_panel())
        with pytest.raises(DuplicateRecordError):
            loads_csv(text + "2012-W01,F,1,5.0\n")

    def test_parse_error_carries_line_number(self):
        text = "period,kind,lag,value\np1,F,1,2.0\np1,X,1,3.0\n"
        with pytest.raises(PanelParseError) as err:
            loads_csv(text)
        assert err.value.line == 3

    def test_horizon_order_error(self):
        text = ("period,kind,lag,value\n"
                "p1,F,1,2.0\np1,R,1,3.0\np1,R,2,3.5\np1,S,0,4.0\n")
        with pytest.raises(HorizonOrderError):
            loads_csv(text)

    def test_rows_in_any_order(self):
        lines = panel_to_csv(make_panel()).splitlines()
        shuffled = [lines[0]] + lines[:0:-1]
        panel = loads_csv("\n".join(shuffled))
        assert np.array_equal(panel.forecasts, make_panel().forecasts)

    def test_round_trip_bit_exact(self, tmp_path):
        panel = make_panel(seed=3)
        path = tmp_path / "panel.csv"
        save_csv(panel, path)
        back = load_csv(path)
        assert np.array_equal(back.forecasts, panel.forecasts)
        assert np.array_equal(back.responses, panel.responses)
        assert np.array_equal(back.shipments, panel.shipments)
        assert back.period_labels == panel.period_labels


class TestPanelInvariants:
    def test_immutable(self):
        panel = make_panel()
        with pytest.raises(ValueError):
            panel.forecasts[0, 0] = 99.0

    def test_nonfinite_rejected(self):
        f = np.ones((2, 2))
        f[0, 0] = np.nan
        with pytest.raises(IncompletePanelError):
            DialoguePanel(f, np.ones((2, 1)), np.ones(2))

    def test_m_greater_than_n_rejected(self):
        with pytest.raises(HorizonOrderError):
            DialoguePanel(np.ones((2, 1)), np.ones((2, 2)), np.ones(2))
