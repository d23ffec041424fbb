"""Command-line front end.

Exit codes: 0 success, 1 usage, I/O, config or schema error, 2 the
simulation went unstable.
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ConfigError, load_config
from .control import ControlLawMode
from .estimator import EstimatorSingularError, rls_init, rls_update
from .invariants import run_invariant_suite
from .logio import LogFormatError, load_log, save_log
from .regressor import THETA_NAMES, regressor_scaled
from .simrunner import ExperimentConfig, InstabilityError, run_experiment, tracking_errors

EXIT_OK, EXIT_ERROR, EXIT_UNSTABLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def build_parser():
    parser = _Parser(prog="adaptive-leg",
                     description="Adaptive computed-torque simulation of a 4-DoF leg.")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a closed-loop experiment and write a CSV log")
    sim.add_argument("config", help="TOML experiment config")
    sim.add_argument("--out", help="CSV output path (default: config path with .csv suffix)")
    sim.add_argument("--mode", choices=["standard", "paper-literal"], help="override the control law")
    sim.add_argument("--no-adapt", action="store_true", help="freeze the parameter estimate")
    sim.add_argument("--seed", type=int, help="override the noise seed")

    chk = sub.add_parser("check", help="run the numerical invariant suite")
    chk.add_argument("--params", help="config whose [robot.nominal] parameters are checked")
    chk.add_argument("--seed", type=int, default=0, help="random seed for sampled states")

    ident = sub.add_parser("identify", help="replay the estimator offline over a CSV log")
    ident.add_argument("log", help="CSV log written by simulate")
    ident.add_argument("--rls-cov", type=float, help="initial covariance scale")
    ident.add_argument("--config", help="config giving the nominal parameters and estimator settings")
    return parser


def _fail(message):
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def cmd_simulate(args):
    config = load_config(args.config)
    overrides = {}
    if args.mode:
        overrides["mode"] = ControlLawMode.parse(args.mode)
    if args.no_adapt:
        overrides["adaptation_on"] = False
    if args.seed is not None:
        overrides["seed"] = args.seed
    config = replace(config, **overrides)
    out = Path(args.out) if args.out else Path(args.config).with_suffix(".csv")

    try:
        records = run_experiment(config)
    except InstabilityError as exc:
        save_log(exc.records, out)
        print(f"unstable: {exc}; {len(exc.records)} rows written to {out}", file=sys.stderr)
        return EXIT_UNSTABLE
    save_log(records, out)
    print(f"wrote {len(records)} rows to {out}")
    print(f"max tracking error: {tracking_errors(records).max():.6e} rad")
    print(f"final theta_err_sq: {records[-1].theta_error_sq:.6e}")
    return EXIT_OK


def cmd_check(args):
    params = load_config(args.params).nominal_params if args.params else ExperimentConfig().nominal_params
    report = run_invariant_suite(params, seed=args.seed)
    print(report.format_table())
    return EXIT_OK if report.passed else EXIT_ERROR


def replay_log(cols, config, cov_scale=None):
    """Run RLS over a log: the state of row k is paired with the torque of row k-1.

    Returns ``(theta_hat, residual_norm, updates)``.
    """
    rls_cfg = config.rls if cov_scale is None else replace(config.rls, initial_cov_scale=cov_scale)
    params = config.nominal_params
    n = len(cols["t"])
    vec = lambda p, k, m=4: np.array([cols[f"{p}{i}"][k] for i in range(m)])
    state = rls_init(rls_cfg)
    pairs = []
    for k in range(1, n):
        phi = regressor_scaled(vec("q", k), vec("qd", k), vec("qdd", k), params)
        tau = vec("tau", k - 1)
        pairs.append((phi, tau))
        try:
            state = rls_update(state, phi, tau)
        except EstimatorSingularError:
            continue
    theta = state.theta_hat
    residual = float(np.sqrt(sum(np.sum((tau - phi @ theta) ** 2) for phi, tau in pairs)))
    return theta, residual, state.tick


def cmd_identify(args):
    config = load_config(args.config) if args.config else ExperimentConfig()
    if args.rls_cov is not None and not (np.isfinite(args.rls_cov) and args.rls_cov > 0):
        raise UsageError(f"--rls-cov must be > 0, got {args.rls_cov}")
    cols = load_log(args.log)
    if len(cols["t"]) < 2:
        raise LogFormatError("log needs at least two data rows")
    theta, residual, updates = replay_log(cols, config, args.rls_cov)
    print(f"updates: {updates}")
    for name, value in zip(THETA_NAMES, theta):
        print(f"theta_{name} = {value:.17g}")
    print(f"residual norm: {residual:.6e}")
    return EXIT_OK


COMMANDS = {"simulate": cmd_simulate, "check": cmd_check, "identify": cmd_identify}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, LogFormatError, UsageError) as exc:
        return _fail(str(exc))
    except OSError as exc:
        return _fail(f"{exc.strerror or exc}: {exc.filename}" if exc.filename else str(exc))
