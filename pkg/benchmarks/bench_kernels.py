"""Benchmark the compiled kernel backend against the pure-Python fallback.

Runs each numeric kernel on a representative workload under both backends and
prints a timing table.  Usage:

    python3 benchmarks/bench_kernels.py [--repeat 3] [--scale 1.0]

The two backends are bitwise-interchangeable (the test suite asserts it);
this script only measures the speed gap.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from rmflab import rng
from rmflab._kernels import pykernels

try:
    from rmflab._kernels import _ckernels
except ImportError:
    _ckernels = None

from rmflab.ntcore import build_prime_table, power_ceil
from rmflab.rmf import RmfKind, sample_prime_assignment


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def build_workloads(scale: float):
    sieve_limit = int(10**6 * scale)
    extend_n = int(10**5 * scale)
    table = build_prime_table(max(sieve_limit, extend_n, 10**5))
    assignment = sample_prime_assignment(RmfKind.STEINHAUS, extend_n, 7, table=table)

    eval_n = int(4096 * scale)
    ns = np.arange(1, eval_n + 1, dtype=np.int64)
    coeffs = np.exp(2j * np.pi * rng.uniforms(11, 0, eval_n))
    thetas = rng.uniforms(12, 0, int(512 * scale))

    var_n = int(10**5 * scale)
    lo = power_ceil(var_n, 0.8)
    primes = table.primes_in(lo - 1, var_n)
    lens = var_n // primes
    fvals = np.exp(2j * np.pi * rng.uniforms(13, 0, int(lens.max()) + 1))
    var_thetas = rng.uniforms(14, 0, max(1, int(64 * scale)))

    def bench_sieve(impl):
        return lambda: impl.sieve_spf(sieve_limit)

    def bench_extend(impl):
        return lambda: impl.extend_values(assignment.values, table.spf, extend_n, False)

    def bench_eval(impl):
        return lambda: impl.eval_points_sum(ns, coeffs, thetas)

    def bench_inner(impl):
        def run():
            for theta in var_thetas:
                impl.inner_sums(primes, lens, fvals, float(theta))

        return run

    def bench_gauss(impl):
        return lambda: impl.gauss_max_trials(200, 1e-3, int(1000 * scale), 1)

    return [
        (f"sieve_spf({sieve_limit})", bench_sieve),
        (f"extend_values(N={extend_n})", bench_extend),
        (f"eval_points_sum({eval_n} coeffs x {len(thetas)} pts)", bench_eval),
        (f"inner_sums(N={var_n}, {len(var_thetas)} pts)", bench_inner),
        (f"gauss_max_trials(n=200, {int(1000 * scale)} trials)", bench_gauss),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timing repeats (best of)")
    parser.add_argument(
        "--scale", type=float, default=1.0, help="workload size multiplier"
    )
    args = parser.parse_args()

    workloads = build_workloads(args.scale)
    have_c = _ckernels is not None
    if not have_c:
        print("compiled backend not built; timing the fallback only\n")

    name_w = max(len(name) for name, _ in workloads)
    header = f"{'kernel':<{name_w}}  {'python':>10}"
    if have_c:
        header += f"  {'compiled':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, make in workloads:
        t_py = _time(make(pykernels), args.repeat)
        line = f"{name:<{name_w}}  {t_py * 1e3:>8.1f}ms"
        if have_c:
            t_c = _time(make(_ckernels), args.repeat)
            line += f"  {t_c * 1e3:>8.1f}ms  {t_py / t_c:>7.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
