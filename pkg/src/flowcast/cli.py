"""Command-line entry point.

Exit codes: 0 ok, 2 usage, 3 data/domain, 4 environment, 5 convergence.
Defaults follow the recommended analysis workflow: lambda 0.8, gamma -0.5,
alpha 0.1.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import synth as synth_mod
from .errors import (
    BoxCoxDomainError,
    ConvergenceError,
    DegenerateInputError,
    DuplicateRecordError,
    FlowcastError,
    HorizonOrderError,
    IncompletePanelError,
    PanelParseError,
    RankError,
    SampleTooSmallError,
    ShapeError,
    SingularMatrixError,
    SyntheticSpecError,
    ZeroVarianceError,
)
from .ewggm import WindowError
from .panel import load_csv, save_csv

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_ENV = 4
EXIT_CONVERGENCE = 5

_DATA_ERRORS = (
    PanelParseError,
    DuplicateRecordError,
    IncompletePanelError,
    HorizonOrderError,
    BoxCoxDomainError,
    ZeroVarianceError,
    SampleTooSmallError,
    RankError,
    DegenerateInputError,
    ShapeError,
    SyntheticSpecError,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowcast",
        description="Rolling-horizon collaborative forecast analytics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_net = sub.add_parser("network", help="infer the information-flow network")
    p_net.add_argument("input", help="panel CSV (period,kind,lag,value)")
    p_net.add_argument("--lambda", dest="lam", type=float, default=0.8,
                       help="graphical lasso tightness (default 0.8)")
    p_net.add_argument("--gamma", type=float, default=-0.5,
                       help="Box-Cox exponent (default -0.5)")
    p_net.add_argument("--no-boxcox", action="store_true",
                       help="skip the Box-Cox transform")
    p_net.add_argument("--shift", type=float, default=0.0,
                       help="constant added before Box-Cox (recorded in output)")
    p_net.add_argument("--out", help="output JSON path (stdout when omitted)")
    p_net.add_argument("--debug-objective",
                       help="CSV path for per-sweep solver objective values")

    p_ccc = sub.add_parser("ccc", help="continuum canonical correlation summary")
    p_ccc.add_argument("input")
    p_ccc.add_argument("--alpha", type=float, default=0.1,
                       help="variance/correlation balance in [0,1] (default 0.1)")
    p_ccc.add_argument("--out")

    p_norm = sub.add_parser("normality", help="KS normality diagnostics over a gamma grid")
    p_norm.add_argument("input")
    p_norm.add_argument("--gamma-grid", default="-0.5",
                        help="comma-separated Box-Cox exponents (default -0.5)")
    p_norm.add_argument("--no-boxcox", action="store_true",
                        help="diagnose the raw panel instead")
    p_norm.add_argument("--shift", type=float, default=0.0)
    p_norm.add_argument("--out")

    p_synth = sub.add_parser("synth", help="generate a synthetic panel from a spec")
    p_synth.add_argument("spec", help="SyntheticSpec JSON path")
    p_synth.add_argument("--out", required=True, help="panel CSV output path")
    p_synth.add_argument("--seed", type=int, help="override the spec's seed")

    p_serve = sub.add_parser("serve", help="run the HTTP analysis service")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--data-dir", help="persist uploads and reload on restart")
    p_serve.add_argument("--cors-origin", action="append", default=[],
                         help="allowed CORS origin for the web UI (repeatable)")

    return parser


def _emit(obj, out_path) -> None:
    text = json.dumps(obj, indent=2)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _cmd_network(args) -> int:
    from .payloads import network_payload

    if not 0.0 <= args.lam <= 1.5:
        print(f"flowcast network: --lambda must lie in [0, 1.5], got {args.lam}",
              file=sys.stderr)
        return EXIT_USAGE
    panel = load_csv(args.input)
    gamma = None if args.no_boxcox else args.gamma
    payload = network_payload(panel, args.lam, gamma, args.shift)
    if args.debug_objective:
        _dump_objective_trace(panel, args, gamma)
    _emit(payload, args.out)
    return EXIT_OK


def _dump_objective_trace(panel, args, gamma) -> None:
    from .glasso import empirical_covariance, graphical_lasso
    from .panel import observation_matrix
    from .preprocess import apply_box_cox, standardize_columns

    work = panel if gamma is None else apply_box_cox(panel, gamma, args.shift)
    X, _, _ = standardize_columns(observation_matrix(work))
    with open(args.debug_objective, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["window", "sweep", "objective"])
        for k in range(2, X.shape[1] + 1):
            prec = graphical_lasso(
                empirical_covariance(X[:, :k]), args.lam, collect_objective=True
            )
            for sweep, value in enumerate(prec.objective_trace, start=1):
                writer.writerow([k, sweep, repr(value)])


def _cmd_ccc(args) -> int:
    from .payloads import ccc_payload

    if not 0.0 <= args.alpha <= 1.0:
        print(f"flowcast ccc: --alpha must lie in [0, 1], got {args.alpha}", file=sys.stderr)
        return EXIT_USAGE
    panel = load_csv(args.input)
    _emit(ccc_payload(panel, args.alpha), args.out)
    return EXIT_OK


def _cmd_normality(args) -> int:
    from .payloads import normality_payload

    try:
        grid = [float(g) for g in args.gamma_grid.split(",") if g.strip() != ""]
    except ValueError:
        print(f"flowcast normality: bad --gamma-grid {args.gamma_grid!r}", file=sys.stderr)
        return EXIT_USAGE
    panel = load_csv(args.input)
    if args.no_boxcox:
        result = {"raw": normality_payload(panel, None)}
    else:
        result = {repr(g): normality_payload(panel, g, args.shift) for g in grid}
    _emit(result, args.out)
    return EXIT_OK


def _cmd_synth(args) -> int:
    with open(args.spec, "r", encoding="utf-8") as fh:
        spec = synth_mod.SyntheticSpec.from_json(fh.read())
    if args.seed is not None:
        spec = synth_mod.SyntheticSpec(
            spec.T, spec.N, spec.M, spec.planted_edges, spec.noise_sd, args.seed
        )
    save_csv(synth_mod.generate(spec), args.out)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(data_dir=args.data_dir, cors_origins=args.cors_origin or None)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"flowcast serve: cannot bind {args.host}:{args.port} ({exc})", file=sys.stderr)
        return EXIT_ENV
    return EXIT_OK


_COMMANDS = {
    "network": _cmd_network,
    "ccc": _cmd_ccc,
    "normality": _cmd_normality,
    "synth": _cmd_synth,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _DATA_ERRORS as exc:
        print(f"flowcast {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ConvergenceError, SingularMatrixError, WindowError) as exc:
        print(f"flowcast {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except FileNotFoundError as exc:
        print(f"flowcast {args.command}: {exc}", file=sys.stderr)
        return EXIT_ENV
    except FlowcastError as exc:
        print(f"flowcast {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
