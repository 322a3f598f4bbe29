"""Command-line entry point for running campaigns and the verification suite.

Subcommands: lowerbound | upperbound | clt | variancemax | gaussmax | verify.
Every run is fully determined by its flags; re-running a command reproduces
its output byte for byte, for any --threads value.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from ..errors import ResourceLimitError
from ..ntcore import build_prime_table
from ..rmf import RmfKind
from . import io, runner, verify
from .config import Experiment, ExperimentConfig, geometric_range
from .runner import LOWER_BOUND_CONSTANTS

__all__ = ["main", "build_parser"]


def _default_threads() -> int:
    env = os.environ.get("RMFLAB_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _add_common(sub: argparse.ArgumentParser, *, kinds: bool = True) -> None:
    if kinds:
        sub.add_argument(
            "--kind",
            choices=[k.value for k in RmfKind],
            default=RmfKind.STEINHAUS.value,
            help="coefficient model (default: steinhaus)",
        )
    sub.add_argument("--n-min", type=int, default=1024, help="smallest size N")
    sub.add_argument(
        "--n-max", type=int, default=None, help="largest size N (default: --n-min)"
    )
    sub.add_argument(
        "--n-step-factor",
        type=float,
        default=2.0,
        help="geometric step between sizes (default: 2)",
    )
    sub.add_argument("--trials", type=int, default=10, help="trials per size")
    sub.add_argument(
        "--epsilon",
        type=float,
        default=0.25,
        help="epsilon in the (log N)-power normalizations",
    )
    sub.add_argument("--seed", type=int, default=1, help="master seed")
    sub.add_argument(
        "--subsample",
        type=int,
        default=None,
        help="evaluate this many discretization points instead of all of them",
    )
    sub.add_argument("--out", default=None, help="output path ('-' or omitted: stdout)")
    sub.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker threads (default: env RMFLAB_THREADS or 1)",
    )
    sub.add_argument(
        "--format", choices=["csv", "json"], default="csv", help="output format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmflab",
        description=(
            "Monte Carlo experiments on exponential sums with random "
            "multiplicative coefficients"
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser(
        "lowerbound", help="grid maximum of |P_N| as a multiple of sqrt(log N)"
    )
    _add_common(sub)

    sub = subs.add_parser(
        "upperbound",
        help="max of the rough-part sum over the discretization, normalized",
    )
    _add_common(sub)

    sub = subs.add_parser(
        "clt", help="distribution of sqrt(2) Re P_N(Theta) at uniform Theta"
    )
    _add_common(sub)

    sub = subs.add_parser(
        "variancemax", help="max conditional variance over the discretization"
    )
    _add_common(sub)

    sub = subs.add_parser(
        "gaussmax", help="maximum of n equicorrelated standard normals"
    )
    sub.add_argument("--n-min", type=int, default=100000, help="population size n")
    sub.add_argument("--epsilon", type=float, default=1e-3, help="correlation level")
    sub.add_argument(
        "--delta",
        type=float,
        default=0.1,
        help="threshold parameter in sqrt((2 - delta) log n)",
    )
    sub.add_argument("--trials", type=int, default=10000, help="number of trials")
    sub.add_argument("--seed", type=int, default=1, help="master seed")
    sub.add_argument("--out", default=None, help="output path ('-' or omitted: stdout)")
    sub.add_argument(
        "--format", choices=["csv", "json"], default="csv", help="output format"
    )

    sub = subs.add_parser("verify", help="run every registered self-check")
    sub.add_argument("--out", default=None, help="report path ('-' or omitted: stdout)")

    return parser


def _config_from(args: argparse.Namespace, experiment: Experiment) -> ExperimentConfig:
    n_max = args.n_max if args.n_max is not None else args.n_min
    threads = args.threads if args.threads is not None else _default_threads()
    return ExperimentConfig(
        experiment=experiment,
        kind=RmfKind(args.kind),
        N_values=geometric_range(args.n_min, n_max, args.n_step_factor),
        trials=args.trials,
        epsilon=args.epsilon,
        master_seed=args.seed,
        subsample=args.subsample,
        output_path=args.out,
        threads=threads,
        fmt=args.format,
    )


_RUNNERS = {
    Experiment.LOWER_BOUND: runner.run_lower_bound,
    Experiment.UPPER_BOUND: runner.run_upper_bound,
    Experiment.CLT: runner.run_clt,
    Experiment.VARIANCE_MAX: runner.run_variance_max,
}


def _print_campaign_summary(config: ExperimentConfig, records) -> None:
    if config.experiment is Experiment.LOWER_BOUND:
        c = LOWER_BOUND_CONSTANTS[config.kind]
        for N in config.N_values:
            batch = [r for r in records if r.N == N]
            frac = sum(r.value >= c for r in batch) / len(batch)
            print(
                f"# N={N}: fraction of trials with max ratio >= {c:.5f}: {frac:.3f}",
                file=sys.stderr,
            )
    elif config.experiment in (Experiment.UPPER_BOUND, Experiment.VARIANCE_MAX):
        for N in config.N_values:
            batch = [r.value for r in records if r.N == N]
            print(
                f"# N={N}: normalized max over trials: {max(batch):.6g}",
                file=sys.stderr,
            )
    elif config.experiment is Experiment.CLT:
        for r in records:
            if r.statistic == "ks_distance":
                print(f"# N={r.N}: KS distance {r.value:.5f}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    try:
        return _dispatch(build_parser().parse_args(argv))
    except (ValueError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args: argparse.Namespace) -> int:
    command = Experiment(args.command)

    if command is Experiment.VERIFY:
        results = verify.run_all_checks()
        report = verify.verify_report(results)
        io.write_text(json.dumps(report, indent=2) + "\n", args.out)
        for r in results:
            mark = "ok" if r.passed else "FAIL"
            print(f"# {mark:4s} {r.name}: {r.detail} ({r.observed:g})", file=sys.stderr)
        return report["status"]

    if command is Experiment.GAUSS_MAX:
        result = runner.run_gauss_max(
            args.n_min, args.epsilon, args.delta, args.trials, args.seed
        )
        io.write_gauss_output(result, args.out, args.format)
        print(
            f"# n={result.n}: P(max <= {result.threshold:.4f}) = {result.prob_below:.4f}",
            file=sys.stderr,
        )
        return 0

    config = _config_from(args, command)
    table = build_prime_table(max(config.N_values))
    records = _RUNNERS[command](config, table)
    io.write_output(records, command.value, config.output_path, config.fmt)
    _print_campaign_summary(config, records)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
