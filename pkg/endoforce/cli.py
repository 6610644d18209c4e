#!/usr/bin/env python
# -*- coding:utf-8 -*-
"""
Command line entry point.

    endoforce run <scenario> [--out DIR] [--seed N] [--pathway straight|curved]
                             [--noise-free] [--trials N]
    endoforce calibrate <scenario> --target-std 0.45 [--tol 0.005]
    endoforce report <trace.csv> [<trace.csv> ...] [--window N]

Exit codes: 0 success, 2 config error, 3 trial fault, 4 calibration failure.
"""
import argparse
import logging
import sys
from dataclasses import replace
from endoforce import __version__
from endoforce.dsp.filters import FilterSpec
from endoforce.experiment.calibration import calibrate_noise
from endoforce.experiment.harness import run_scenario
from endoforce.experiment.scenario import Mode, load_scenario
from endoforce.persistence.replay import replay_metrics
from endoforce.persistence.trace import read_trace
from endoforce.testbed.pathway import PathwayKind
from endoforce.utils.exceptions import (
    CalibrationError,
    ConfigError,
    EndoForceException,
    InputDomainError,
    TraceParseError,
    TraceWriteError,
    ValidationError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_TRIAL_FAULT = 3
EXIT_CALIBRATION = 4

LOG_FORMAT = "%(asctime)s (%(filename)s:%(lineno)s) %(levelname)s %(message)s"


def build_parser():
    parser = argparse.ArgumentParser(prog="endoforce", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run a scenario")
    run.add_argument("scenario")
    run.add_argument("--out", default=".", help="directory for trace files")
    run.add_argument("--seed", type=int, help="master noise seed")
    run.add_argument("--pathway", choices=[k.value for k in PathwayKind])
    run.add_argument("--noise-free", action="store_true", help="oracle mode")
    run.add_argument("--trials", type=int)

    calibrate = commands.add_parser("calibrate", help="calibrate EndoForce noise")
    calibrate.add_argument("scenario")
    calibrate.add_argument("--target-std", type=float, required=True)
    calibrate.add_argument("--tol", type=float, default=0.005)

    report = commands.add_parser("report", help="recompute metrics from traces")
    report.add_argument("traces", nargs="+")
    report.add_argument(
        "--window",
        type=int,
        default=FilterSpec().window,
        help="filter window the trials ran with (dsp.window); traces do not record it",
    )
    return parser


def apply_overrides(cfg, args):
    """
    Apply the ``run`` command line overrides to a scenario.
    """
    try:
        if args.seed is not None:
            cfg = replace(cfg, noise=replace(cfg.noise, seed=args.seed))
        if args.pathway:
            cfg = cfg.with_pathway(PathwayKind(args.pathway))
            cfg = replace(cfg, name=f"{cfg.name}_{args.pathway}")
        if args.noise_free:
            cfg = replace(cfg, mode=Mode.ORACLE)
        if args.trials is not None:
            cfg = replace(cfg, trials=args.trials)
    except ValidationError as error:
        raise ConfigError(str(error)) from error
    return cfg


def cmd_run(args):
    cfg = apply_overrides(load_scenario(args.scenario), args)
    result = run_scenario(cfg, args.out)
    for report in result.reports:
        if report.ok:
            print(
                f"trial {report.trial_index}: rmse={report.rmse_n:.4f} N "
                f"std={report.endoforce_std_n:.4f} N halted_at={report.halted_at_s} s "
                f"trace={report.trace_path}"
            )
        else:
            print(f"trial {report.trial_index}: FAULT {report.fault}")
    summary = result.summary
    print(
        f"{result.name}: mean rmse={summary.mean_rmse_n:.4f} N "
        f"(min {summary.min_rmse_n:.4f}, max {summary.max_rmse_n:.4f}) "
        f"mean std={summary.mean_std_n:.4f} N"
    )
    return EXIT_TRIAL_FAULT if summary.failures else EXIT_OK


def cmd_calibrate(args):
    cfg = load_scenario(args.scenario)
    noise = calibrate_noise(cfg, args.target_std, args.tol)
    print(f"noise.sigma_endoforce_n = {noise.sigma_endoforce_n!r}")
    return EXIT_OK


def cmd_report(args):
    spec = FilterSpec(window=args.window)
    for path in args.traces:
        value, std = replay_metrics(read_trace(path), spec)
        print(f"{path}: rmse={value:.9f} N std={std:.9f} N")
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT)
    handlers = {"run": cmd_run, "calibrate": cmd_calibrate, "report": cmd_report}
    try:
        return handlers[args.command](args)
    except (ConfigError, ValidationError, InputDomainError) as error:
        print(f"config error: {error}", file=sys.stderr)
        return EXIT_CONFIG
    except CalibrationError as error:
        print(f"calibration failed: {error}", file=sys.stderr)
        return EXIT_CALIBRATION
    except TraceWriteError as error:
        print(f"cannot write trace: {error}", file=sys.stderr)
        return EXIT_TRIAL_FAULT
    except (TraceParseError, OSError) as error:
        print(f"cannot read trace: {error}", file=sys.stderr)
        return EXIT_TRIAL_FAULT
    except EndoForceException as error:
        print(f"trial fault: {error}", file=sys.stderr)
        return EXIT_TRIAL_FAULT


if __name__ == "__main__":
    sys.exit(main())
