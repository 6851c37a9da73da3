"""Command line front end: serve, replay, simulate, calibrate-check."""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

from .calibration import run_calibration
from .config import DEFAULT_PORT, SessionConfig
from .errors import CalibrationFailedError, GazeKioskError
from .protocol import serialize
from .sim import SyntheticUserModel, full_grid, run_grid, write_grid_csv
from .traces import read_ratio_trace


def _add_condition_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dwell-ms", type=int, default=1000, help="dwell threshold in ms")
    parser.add_argument("--grace-ms", type=int, default=0, help="dropout tolerance in ms")
    parser.add_argument("--area", default="medium", choices=["small", "medium", "large", "pilot"])
    parser.add_argument("--catalog", default=None, help="catalog JSON path (default: built-in)")


def _session_config(args: argparse.Namespace) -> SessionConfig:
    cfg = SessionConfig(
        dwell_ms=args.dwell_ms,
        grace_ms=args.grace_ms,
        area_preset=args.area,
        catalog_path=args.catalog,
    )
    if getattr(args, "profile", None):
        h_c, v_c = (float(x) for x in args.profile.split(","))
        cfg.profile = (h_c, v_c)
    if getattr(args, "experiment_targets", None):
        cfg.mode = "experiment"
        cfg.targets = tuple(args.experiment_targets.split(","))
    if getattr(args, "emit_gaze", False):
        cfg.emit_gaze = True
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gazekiosk", description="Gaze-driven kiosk toolkit")
    sub = parser.add_subparsers(dest="command")

    serve = sub.add_parser("serve", help="run the realtime event service")
    serve.add_argument("--source", default="ratio-trace", choices=["camera", "frame-dir", "ratio-trace"])
    serve.add_argument("--trace", default=None, help="ratio trace file")
    serve.add_argument("--frame-dir", default=None, help="PGM frame directory")
    serve.add_argument("--landmarks", default=None, help="landmark trace for frame-dir source")
    serve.add_argument("--camera", type=int, default=0, help="camera index")
    serve.add_argument("--port", type=int, default=DEFAULT_PORT)
    serve.add_argument("--log", default=None, help="session log path")
    serve.add_argument("--realtime", action="store_true", help="pace delivery by sample timestamps")
    serve.add_argument("--mirror", action="store_true")
    serve.add_argument("--swap-eyes", action="store_true")
    serve.add_argument("--profile", default=None, help="h_c,v_c to skip calibration")
    serve.add_argument("--experiment-targets", default=None, help="comma-separated target item ids")
    serve.add_argument("--emit-gaze", action="store_true", help="stream debug gaze positions")
    _add_condition_flags(serve)

    replay_p = sub.add_parser("replay", help="headless replay of a ratio trace")
    replay_p.add_argument("trace", help="ratio trace file")
    replay_p.add_argument("--profile", default=None, help="h_c,v_c to skip calibration")
    replay_p.add_argument("--experiment-targets", default=None, help="comma-separated target item ids")
    replay_p.add_argument("--emit-gaze", action="store_true")
    _add_condition_flags(replay_p)

    simulate = sub.add_parser("simulate", help="run the synthetic-user condition grid")
    simulate.add_argument("--reps", type=int, default=4, help="trials per condition")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--out", default="grid.csv", help="output CSV path")
    simulate.add_argument("--reaction-ms", type=int, default=500)
    simulate.add_argument("--overshoot", type=float, default=0.15)
    simulate.add_argument("--catalog", default=None)

    calend = sub.add_parser("calibrate-check", help="print the profile a trace calibrates to")
    calend.add_argument("trace", help="ratio trace file")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return _dispatch(args)
    except GazeKioskError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "serve":
        from .service import GazeService

        cfg = _session_config(args)
        cfg.source = args.source
        cfg.trace_path = args.trace
        cfg.frame_dir = args.frame_dir
        cfg.landmark_trace = args.landmarks
        cfg.camera_index = args.camera
        cfg.port = args.port
        cfg.log_path = args.log
        cfg.realtime = args.realtime
        cfg.mirror = args.mirror
        cfg.swap_eyes = args.swap_eyes
        service = GazeService(cfg)
        print(f"listening on 127.0.0.1:{cfg.port}", file=sys.stderr)
        asyncio.run(service.serve())
        return 0

    if args.command == "replay":
        from .sim import replay

        cfg = _session_config(args)
        cfg.trace_path = args.trace
        cfg.validate()
        for event in replay(args.trace, cfg.pipeline_config()):
            print(serialize(event))
        return 0

    if args.command == "simulate":
        from .menu import Catalog

        catalog = Catalog.from_file(args.catalog) if args.catalog else Catalog.default()
        model = SyntheticUserModel(
            reaction_ms=args.reaction_ms, overshoot_prob=args.overshoot, seed=args.seed
        )
        rows = run_grid(full_grid(), args.reps, model, catalog, seed=args.seed)
        write_grid_csv(rows, args.out)
        print(f"wrote {len(rows)} condition rows to {args.out}", file=sys.stderr)
        return 0

    if args.command == "calibrate-check":
        samples = read_ratio_trace(args.trace)
        try:
            profile, _ = run_calibration(samples)
        except CalibrationFailedError as exc:
            print(f"calibration failed: {exc}", file=sys.stderr)
            return 1
        print(json.dumps({"h_c": profile.h_c, "v_c": profile.v_c, "sample_count": profile.sample_count}))
        return 0

    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
