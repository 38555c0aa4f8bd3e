"""HTTP service: dataset upload plus parameterized network/CCC/normality analyses.

Responses are pure functions of (dataset bytes, query parameters); bodies
are canonical JSON so identical requests return byte-identical payloads.
An LRU cache keyed by (dataset id, endpoint, parameters) is an optimization
only -- correctness never depends on it.
"""

from __future__ import annotations

import threading
import time
import uuid
from collections import OrderedDict
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response

from .errors import (
    BoxCoxDomainError,
    ConvergenceError,
    FlowcastError,
    SingularMatrixError,
)
from .ewggm import WindowError
from .panel import loads_csv
from .payloads import canonical_json, ccc_payload, network_payload, normality_payload

MAX_UPLOAD_BYTES = 10 * 1024 * 1024
CACHE_SIZE = 128


class _LruCache:
    """Size-bounded LRU over computed response bodies; thread-safe."""

    def __init__(self, maxsize: int = CACHE_SIZE):
        self.maxsize = maxsize
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                return self._data[key]
        return None

    def put(self, key, value):
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)


def _error(status: int, code: str, message: str, detail: str = "") -> Response:
    return Response(
        content=canonical_json({"code": code, "message": message, "detail": detail}),
        status_code=status,
        media_type="application/json",
    )


def _json(obj, status: int = 200) -> Response:
    return Response(content=canonical_json(obj), status_code=status, media_type="application/json")


def create_app(
    data_dir: str | None = None,
    max_upload_bytes: int = MAX_UPLOAD_BYTES,
    cors_origins=None,
    cache_size: int = CACHE_SIZE,
) -> FastAPI:
    app = FastAPI(title="flowcast", docs_url=None, redoc_url=None)
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    datasets: dict = {}  # id -> (panel, created_at); panels are immutable
    cache = _LruCache(cache_size)
    store = Path(data_dir) if data_dir else None

    if store is not None:
        store.mkdir(parents=True, exist_ok=True)
        for csv_path in sorted(store.glob("*.csv")):
            try:
                panel = loads_csv(csv_path.read_text(encoding="utf-8"))
            except FlowcastError:
                continue
            datasets[csv_path.stem] = (panel, csv_path.stat().st_mtime)

    @app.post("/datasets")
    async def upload(request: Request):
        body = await request.body()
        if len(body) > max_upload_bytes:
            return _error(413, "oversize", f"upload exceeds {max_upload_bytes} bytes")
        if not body.strip():
            return _error(400, "empty", "request body is empty; expected CSV")
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError as exc:
            return _error(400, "encoding", "body is not valid UTF-8", str(exc))
        try:
            panel = loads_csv(text)
        except FlowcastError as exc:
            return _error(400, "parse", "CSV does not parse as a dialogue panel", str(exc))
        dataset_id = uuid.uuid4().hex[:12]
        datasets[dataset_id] = (panel, time.time())
        if store is not None:
            (store / f"{dataset_id}.csv").write_text(text, encoding="utf-8")
        return _json({"id": dataset_id}, status=201)

    def _panel_or_error(dataset_id: str):
        entry = datasets.get(dataset_id)
        if entry is None:
            return None, _error(404, "unknown_dataset", f"no dataset {dataset_id!r}")
        return entry[0], None

    def _cached(key, compute):
        body = cache.get(key)
        if body is None:
            body = canonical_json(compute())
            cache.put(key, body)
        return Response(content=body, media_type="application/json")

    @app.get("/datasets/{dataset_id}/network")
    def network(dataset_id: str, request: Request):
        panel, err = _panel_or_error(dataset_id)
        if err is not None:
            return err
        params, perr = _floats(request, {"lambda": 0.8, "gamma": -0.5, "shift": 0.0})
        if perr is not None:
            return perr
        lam, gamma, shift = params["lambda"], params["gamma"], params["shift"]
        if not 0.0 <= lam <= 1.5:
            return _error(422, "bad_parameter", f"lambda must lie in [0, 1.5], got {lam}")
        if request.query_params.get("boxcox", "1") in ("0", "false"):
            gamma = None
        try:
            return _cached(
                (dataset_id, "network", lam, gamma, shift),
                lambda: network_payload(panel, lam, gamma, shift),
            )
        except (BoxCoxDomainError,) as exc:
            return _error(422, "domain", "Box-Cox transform failed", str(exc))
        except WindowError as exc:
            if isinstance(exc.cause, SingularMatrixError):
                return _error(422, "singular", "singular covariance at lambda=0", str(exc))
            return _error(500, "convergence", "solver failed", str(exc))
        except (ConvergenceError, SingularMatrixError) as exc:
            return _error(500, "convergence", "solver failed", str(exc))
        except FlowcastError as exc:
            return _error(422, "domain", "analysis rejected the dataset", str(exc))

    @app.get("/datasets/{dataset_id}/ccc")
    def ccc(dataset_id: str, request: Request):
        panel, err = _panel_or_error(dataset_id)
        if err is not None:
            return err
        params, perr = _floats(request, {"alpha": 0.1})
        if perr is not None:
            return perr
        alpha = params["alpha"]
        if not 0.0 <= alpha <= 1.0:
            return _error(422, "bad_parameter", f"alpha must lie in [0, 1], got {alpha}")
        try:
            return _cached(
                (dataset_id, "ccc", alpha), lambda: ccc_payload(panel, alpha)
            )
        except ConvergenceError as exc:
            return _error(500, "convergence", "solver failed", str(exc))
        except FlowcastError as exc:
            return _error(422, "domain", "analysis rejected the dataset", str(exc))

    @app.get("/datasets/{dataset_id}/normality")
    def normality(dataset_id: str, request: Request):
        panel, err = _panel_or_error(dataset_id)
        if err is not None:
            return err
        params, perr = _floats(request, {"gamma": -0.5, "shift": 0.0})
        if perr is not None:
            return perr
        gamma = params["gamma"]
        if request.query_params.get("boxcox", "1") in ("0", "false"):
            gamma = None
        try:
            return _cached(
                (dataset_id, "normality", gamma, params["shift"]),
                lambda: normality_payload(panel, gamma, params["shift"]),
            )
        except FlowcastError as exc:
            return _error(422, "domain", "analysis rejected the dataset", str(exc))

    return app


def _floats(request: Request, defaults: dict):
    """Parse float query parameters with defaults; 422 on malformed values."""
    out = {}
    for name, default in defaults.items():
        raw = request.query_params.get(name)
        if raw is None:
            out[name] = default
            continue
        try:
            out[name] = float(raw)
        except ValueError:
            return None, _error(422, "bad_parameter", f"{name} must be a number, got {raw!r}")
    return out, None
