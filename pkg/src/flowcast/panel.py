"""Rolling-horizon data model and CSV ingestion.

A dialogue panel holds, for each realization period, the forecasts issued
at every lag, the supplier responses at every lag, and the realized
shipment.  Events are ordered chronologically: the lag-N forecast is the
earliest signal, lag-1 the latest, and the shipment closes the dialogue.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    DuplicateRecordError,
    HorizonOrderError,
    IncompletePanelError,
    PanelParseError,
)


class EventKind(str, Enum):
    FORECAST = "F"
    RESPONSE = "R"
    SHIPMENT = "S"


@dataclass(frozen=True, order=True)
class EventId:
    """One forecast, response, or shipment node, identified by kind and lag."""

    kind: EventKind
    lag: int

    def __post_init__(self):
        if self.kind is EventKind.SHIPMENT:
            if self.lag != 0:
                raise ValueError("shipment events carry lag 0")
        elif self.lag < 1:
            raise ValueError(f"{self.kind.value} events require lag >= 1")

    @property
    def label(self) -> str:
        if self.kind is EventKind.SHIPMENT:
            return "S"
        return f"{self.kind.value}{self.lag}"

    @classmethod
    def from_label(cls, label: str) -> "EventId":
        label = label.strip()
        if label == "S":
            return cls(EventKind.SHIPMENT, 0)
        kind = EventKind(label[0])
        return cls(kind, int(label[1:]))


@dataclass(frozen=True)
class EventSequence:
    """Chronological ordering of all events of one panel."""

    events: tuple

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __getitem__(self, i):
        return self.events[i]

    def index(self, event: EventId) -> int:
        return self.events.index(event)


@dataclass(frozen=True)
class DialoguePanel:
    """T periods x (N forecast lags, M response lags, shipment) observations.

    Column j of ``forecasts`` is the lag-(j+1) individual lag trend; row i is
    the dialogue vector of period i.  Immutable; safe to share across
    concurrent analyses.
    """

    forecasts: np.ndarray
    responses: np.ndarray
    shipments: np.ndarray
    period_labels: tuple = field(default=())

    def __post_init__(self):
        f = np.asarray(self.forecasts, dtype=float)
        r = np.asarray(self.responses, dtype=float)
        s = np.asarray(self.shipments, dtype=float)
        if f.ndim != 2 or r.ndim != 2 or s.ndim != 1:
            raise ValueError("forecasts/responses must be 2-D, shipments 1-D")
        if not (f.shape[0] == r.shape[0] == s.shape[0]):
            raise ValueError("row counts of forecasts, responses, shipments differ")
        if f.shape[1] < r.shape[1]:
            raise HorizonOrderError(
                f"forecast horizon N={f.shape[1]} must be >= response horizon M={r.shape[1]}"
            )
        if f.shape[0] < 1 or f.shape[1] < 1 or r.shape[1] < 1:
            raise ValueError("panel dimensions must be positive")
        for name, arr in (("forecasts", f), ("responses", r), ("shipments", s)):
            if not np.all(np.isfinite(arr)):
                raise IncompletePanelError(f"non-finite value in {name}")
        f.setflags(write=False)
        r.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "forecasts", f)
        object.__setattr__(self, "responses", r)
        object.__setattr__(self, "shipments", s)
        labels = tuple(self.period_labels) or tuple(str(i) for i in range(f.shape[0]))
        if len(labels) != f.shape[0]:
            raise ValueError("period_labels length must equal T")
        object.__setattr__(self, "period_labels", labels)

    @property
    def T(self) -> int:
        return self.forecasts.shape[0]

    @property
    def N(self) -> int:
        return self.forecasts.shape[1]

    @property
    def M(self) -> int:
        return self.responses.shape[1]

    def value(self, period_index: int, event: EventId) -> float:
        if event.kind is EventKind.FORECAST:
            return float(self.forecasts[period_index, event.lag - 1])
        if event.kind is EventKind.RESPONSE:
            return float(self.responses[period_index, event.lag - 1])
        return float(self.shipments[period_index])


def event_sequence(panel: DialoguePanel) -> EventSequence:
    """Chronological event order: F_N, ..., F_k, R_k (k <= M), ..., F_1, R_1, S."""
    return _sequence_for(panel.N, panel.M)


def _sequence_for(n_horizon: int, m_horizon: int) -> EventSequence:
    events = []
    for lag in range(n_horizon, 0, -1):
        events.append(EventId(EventKind.FORECAST, lag))
        if lag <= m_horizon:
            events.append(EventId(EventKind.RESPONSE, lag))
    events.append(EventId(EventKind.SHIPMENT, 0))
    return EventSequence(tuple(events))


def observation_matrix(panel: DialoguePanel, include_shipment: bool = True) -> np.ndarray:
    """T x n matrix whose columns follow the event_sequence order.

    The zero-padding convention for absent response lags is notational only;
    no padded columns are ever materialized.
    """
    cols = []
    for ev in event_sequence(panel):
        if ev.kind is EventKind.FORECAST:
            cols.append(panel.forecasts[:, ev.lag - 1])
        elif ev.kind is EventKind.RESPONSE:
            cols.append(panel.responses[:, ev.lag - 1])
        elif include_shipment:
            cols.append(panel.shipments)
    return np.column_stack(cols)


def load_csv(path) -> DialoguePanel:
    """Load a panel from a ``period,kind,lag,value`` CSV file."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return _parse_csv(fh)


def loads_csv(text: str) -> DialoguePanel:
    """Parse a panel from CSV text (same schema as :func:`load_csv`)."""
    return _parse_csv(io.StringIO(text))


def _parse_csv(fh) -> DialoguePanel:
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise PanelParseError(1, "empty file; expected header period,kind,lag,value")
    if [h.strip().lower() for h in header] != ["period", "kind", "lag", "value"]:
        raise PanelParseError(1, f"bad header {header!r}; expected period,kind,lag,value")

    records = {}
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 4:
            raise PanelParseError(lineno, f"expected 4 fields, got {len(row)}")
        period, kind_s, lag_s, value_s = (c.strip() for c in row)
        try:
            kind = EventKind(kind_s)
        except ValueError:
            raise PanelParseError(lineno, f"unknown kind {kind_s!r}; expected F, R or S")
        try:
            lag = int(lag_s)
        except ValueError:
            raise PanelParseError(lineno, f"non-integer lag {lag_s!r}")
        try:
            value = float(value_s)
        except ValueError:
            raise PanelParseError(lineno, f"non-numeric value {value_s!r}")
        if not np.isfinite(value):
            raise PanelParseError(lineno, f"non-finite value {value_s!r}")
        try:
            event = EventId(kind, lag)
        except ValueError as exc:
            raise PanelParseError(lineno, str(exc))
        key = (period, event)
        if key in records:
            raise DuplicateRecordError(
                f"duplicate record for period {period!r}, event {event.label}"
            )
        records[key] = value

    if not records:
        raise IncompletePanelError("file contains no data rows")

    periods = sorted({p for p, _ in records})
    f_lags = {e.lag for _, e in records if e.kind is EventKind.FORECAST}
    r_lags = {e.lag for _, e in records if e.kind is EventKind.RESPONSE}
    n_horizon = max(f_lags) if f_lags else 0
    m_horizon = max(r_lags) if r_lags else 0
    if n_horizon == 0:
        raise IncompletePanelError("no forecast rows present")
    if m_horizon == 0:
        raise IncompletePanelError("no response rows present")
    if m_horizon > n_horizon:
        raise HorizonOrderError(
            f"response horizon M={m_horizon} exceeds forecast horizon N={n_horizon}"
        )

    t_count = len(periods)
    forecasts = np.empty((t_count, n_horizon))
    responses = np.empty((t_count, m_horizon))
    shipments = np.empty(t_count)
    for i, period in enumerate(periods):
        for lag in range(1, n_horizon + 1):
            key = (period, EventId(EventKind.FORECAST, lag))
            if key not in records:
                raise IncompletePanelError(f"missing forecast lag {lag} for period {period!r}")
            forecasts[i, lag - 1] = records[key]
        for lag in range(1, m_horizon + 1):
            key = (period, EventId(EventKind.RESPONSE, lag))
            if key not in records:
                raise IncompletePanelError(f"missing response lag {lag} for period {period!r}")
            responses[i, lag - 1] = records[key]
        key = (period, EventId(EventKind.SHIPMENT, 0))
        if key not in records:
            raise IncompletePanelError(f"missing shipment for period {period!r}")
        shipments[i] = records[key]

    return DialoguePanel(forecasts, responses, shipments, tuple(periods))


def save_csv(panel: DialoguePanel, path) -> None:
    """Write a panel back out in the ingestion schema (round-trip exact)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["period", "kind", "lag", "value"])
        for i, period in enumerate(panel.period_labels):
            for lag in range(1, panel.N + 1):
                writer.writerow([period, "F", lag, repr(float(panel.forecasts[i, lag - 1]))])
            for lag in range(1, panel.M + 1):
                writer.writerow([period, "R", lag, repr(float(panel.responses[i, lag - 1]))])
            writer.writerow([period, "S", 0, repr(float(panel.shipments[i]))])
