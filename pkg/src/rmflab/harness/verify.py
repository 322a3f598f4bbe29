"""Self-check registry: every classical inequality and cross-module identity
the library relies on, runnable from the CLI as a machine-readable report.

Checks call library functions through their modules (ntcore.tau_k, not a
bound local), so a fault injected into a module function is seen here — the
registry is the regression tripwire, not a copy of the logic under test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import estimates, expsum, ntcore, rng, variance
from ..expsum import ALL_COEFFICIENTS, CoefficientFilter
from ..ntcore import PrimeTable, build_prime_table
from ..rmf import RmfKind, sample_values
from ..variance import Normalization, VarianceSpec

__all__ = ["CheckResult", "run_all_checks", "verify_report"]

DEFAULT_TABLE_LIMIT = 1_000_000


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    observed: float
    detail: str


def _result(name: str, passed: bool, observed: float, detail: str) -> CheckResult:
    return CheckResult(name, bool(passed), float(observed), detail)


# --- number-theoretic kernels -----------------------------------------------------


def _check_ramanujan_gcd_bound(table: PrimeTable) -> CheckResult:
    worst = 0.0
    for q in range(1, 41):
        for n in range(-40, 41):
            bound = math.gcd(q, abs(n)) if n != 0 else q
            worst = max(worst, abs(ntcore.ramanujan_sum(q, n)) / bound)
    return _result(
        "ramanujan_gcd_bound", worst <= 1.0 + 1e-9, worst, "max |c_q(n)| / gcd(q, n)"
    )


def _check_ramanujan_prime_case(table: PrimeTable) -> CheckResult:
    worst = 0.0
    for q in (2, 3, 5, 7, 11, 13):
        for n in range(1, 31):
            want = q - 1 if n % q == 0 else -1
            worst = max(worst, abs(ntcore.ramanujan_sum(q, n) - want))
    return _result(
        "ramanujan_prime_case", worst <= 1e-9, worst, "max |c_q(n) - closed form|, q prime"
    )


def _check_tau_summatory(table: PrimeTable) -> CheckResult:
    x = 3000
    direct2 = sum(ntcore.tau_k(n, 2, table) for n in range(1, x + 1))
    hyper2 = sum(x // d for d in range(1, x + 1))
    x3 = 300
    direct3 = sum(ntcore.tau_k(n, 3, table) for n in range(1, x3 + 1))
    hyper3 = sum(
        x3 // (a * b) for a in range(1, x3 + 1) for b in range(1, x3 // a + 1)
    )
    diff = abs(direct2 - hyper2) + abs(direct3 - hyper3)
    return _result(
        "tau_summatory", diff == 0, diff, "divisor-count sums vs lattice-point counts"
    )


def _check_euler_phi(table: PrimeTable) -> CheckResult:
    worst = 0
    for q in range(1, 151):
        brute = sum(1 for a in range(1, q + 1) if math.gcd(a, q) == 1)
        worst = max(worst, abs(ntcore.euler_phi(q, table) - brute))
    return _result("euler_phi_brute", worst == 0, worst, "phi vs coprime count, q <= 150")


def _check_factorize(table: PrimeTable) -> CheckResult:
    us = rng.uniforms(2024, 0, 30)
    bad = 0
    for u in us:
        n = 2 + int(float(u) * (table.limit - 2))
        fac = ntcore.factorize(n, table)
        prod = 1
        for p, e in fac.factors:
            prod *= p**e
            bad += not table.is_prime(p)
        bad += prod != n
    return _result("factorize_roundtrip", bad == 0, bad, "reconstruction failures")


def _check_squarefree_count(table: PrimeTable) -> CheckResult:
    x = 1500
    brute = 0
    for n in range(1, x + 1):
        m, squarefree = n, True
        for p in range(2, int(math.isqrt(n)) + 1):
            if m % (p * p) == 0:
                squarefree = False
                break
        brute += squarefree
    diff = abs(ntcore.squarefree_count(x, table) - brute)
    return _result("squarefree_count", diff == 0, diff, "counting function vs sweep")


# --- classical inequalities ---------------------------------------------------------


def _check_brun_titchmarsh(table: PrimeTable) -> CheckResult:
    us = rng.uniforms(777, 0, 400)
    worst = 0.0
    try:
        for i in range(100):
            x = 3 + float(us[4 * i]) * (4 * 10**5)
            y = 10 + float(us[4 * i + 1]) * (3 * 10**5)
            q = 1 + int(us[4 * i + 2] * 8)
            a = 1 + int(us[4 * i + 3] * q)
            while math.gcd(a, q) != 1:
                a += 1
            report = estimates.brun_titchmarsh_report(x, max(y, q + 10), q, a, table)
            worst = max(worst, report.ratio)
    except RuntimeError as exc:
        return _result("brun_titchmarsh_sweep", False, worst, f"violation: {exc}")
    return _result("brun_titchmarsh_sweep", worst <= 1.0, worst, "max observed lhs/rhs")


def _check_geometric(table: PrimeTable) -> CheckResult:
    us = rng.uniforms(5150, 0, 600)
    worst = 0.0
    try:
        for i in range(300):
            L = 1 + int(us[2 * i] * 999)
            alpha = float(us[2 * i + 1]) * 3.0 - 1.5
            report = estimates.geometric_sum_report(L, alpha)
            worst = max(worst, report.ratio)
    except RuntimeError as exc:
        return _result("geometric_sweep", False, worst, f"violation: {exc}")
    return _result(
        "geometric_sweep", worst <= 1.0 + 1e-9, worst, "max observed lhs/rhs"
    )


def _check_davenport(table: PrimeTable) -> CheckResult:
    worst = 0.0
    for N, a, q in ((10**4, 0, 1), (10**4, 1, 101), (10**5, 1, 317)):
        worst = max(worst, estimates.davenport_report(N, a, q, table).ratio)
    return _result("davenport_bound", worst < 10.0, worst, "max observed lhs/rhs")


def _check_vdc(table: PrimeTable) -> CheckResult:
    us = rng.uniforms(31337, 0, 60)
    worst = 0.0
    for i in range(20):
        M = int(10 ** (2 + 2 * float(us[3 * i])))
        theta = M ** (1 + 2 * float(us[3 * i + 1]))
        Mprime = M + int(float(us[3 * i + 2]) * M)
        worst = max(worst, estimates.vdc_report(M, Mprime, theta).ratio)
    return _result("vdc_bound", worst < 10.0, worst, "max observed lhs/rhs")


def _check_moments(table: PrimeTable) -> CheckResult:
    coeffs = np.ones(200)
    worst = 0.0
    try:
        for kind in (RmfKind.STEINHAUS, RmfKind.RADEMACHER):
            for k in (1.0, 2.0, 3.0):
                report = estimates.moment_bound_check(
                    coeffs, k, kind, 2000, 20260816, table
                )
                worst = max(worst, report.ratio)
    except RuntimeError as exc:
        return _result("moment_bounds", False, worst, f"violation: {exc}")
    return _result("moment_bounds", True, worst, "max observed lhs/rhs, k = 1..3")


def _check_orthogonality(table: PrimeTable) -> CheckResult:
    worst = 0.0
    try:
        for r in (2, 8):
            report = estimates.orthogonality_mc(r, 20000, 321, table)
            if report.stderr:
                worst = max(worst, abs(report.lhs - report.rhs) / report.stderr)
    except RuntimeError as exc:
        return _result("orthogonality_mc", False, worst, f"violation: {exc}")
    return _result("orthogonality_mc", worst <= 4.0, worst, "max |error| in stderr units")


def _check_quadruple_vw(table: PrimeTable) -> CheckResult:
    bad = 0
    for r in range(1, 33):
        for pairing in estimates.Pairing:
            bad += estimates.quadruple_count_vw(r, pairing) != estimates.quadruple_count(
                r, pairing
            )
    return _result("quadruple_vw_equality", bad == 0, bad, "mismatches for r <= 32")


# --- cross-module identities ---------------------------------------------------------


def _check_rewrite_identity(table: PrimeTable) -> CheckResult:
    us = rng.uniforms(424242, 0, 10)
    worst = 0.0
    for i in range(5):
        N = 200 + int(float(us[2 * i]) * 1800)
        theta = float(us[2 * i + 1])
        kind = RmfKind.STEINHAUS if i % 2 == 0 else RmfKind.RADEMACHER
        values = sample_values(kind, N, 900 + i, table)
        spec = VarianceSpec(0.8, Normalization.FULL, kind)
        a = variance.conditional_variance(values, theta, spec, table)
        b = variance.rewrite_by_r(values, theta, table)
        worst = max(worst, abs(a - b) / max(1.0, abs(b)))
    return _result(
        "variance_rewrite_identity", worst <= 1e-10, worst, "max relative difference"
    )


def _check_fft_direct(table: PrimeTable) -> CheckResult:
    values = sample_values(RmfKind.STEINHAUS, 256, 9, table)
    grid = expsum.eval_grid_fft(values, ALL_COEFFICIENTS, 257, table)
    worst = 0.0
    for j in (0, 1, grid.M // 3, grid.M // 2):
        direct = expsum.eval_point(values, ALL_COEFFICIENTS, j / grid.M, table)
        worst = max(worst, abs(grid.values[j] - direct))
    return _result("fft_matches_direct", worst < 1e-9, worst, "max |grid - direct|")


def _check_parseval(table: PrimeTable) -> CheckResult:
    values = sample_values(RmfKind.RADEMACHER, 1024, 2, table)
    grid = expsum.eval_grid_fft(values, ALL_COEFFICIENTS, 2048, table)
    lhs = float(np.mean(np.abs(grid.values) ** 2))
    rhs = float(np.sum(np.abs(values.values) ** 2)) / values.N
    rel = abs(lhs - rhs) / rhs
    return _result("parseval", rel < 1e-8, rel, "grid mean square vs coefficient energy")


def _check_bernstein(table: PrimeTable) -> CheckResult:
    worst = 0.0
    for seed in (3, 4):
        values = sample_values(RmfKind.STEINHAUS, 64, seed, table)
        _, coarse = expsum.max_modulus(values, ALL_COEFFICIENTS, 4 * math.pi, table)
        _, fine = expsum.max_modulus(values, ALL_COEFFICIENTS, 256 * math.pi, table)
        worst = max(worst, fine / coarse)
    return _result(
        "bernstein_certificate", worst <= 2.0, worst, "fine max / coarse max <= 2"
    )


def _check_diagonal(table: PrimeTable) -> CheckResult:
    N = 2000
    lo = ntcore.power_ceil(N, 6.0 / 7.0)
    primes = table.primes_in(lo - 1, N)
    values = sample_values(RmfKind.RADEMACHER, N, 11, table)
    acc = 0.0
    for p in primes.tolist():
        block = values.values[1 : N // p + 1]
        acc += float(np.sum(np.abs(block) ** 2))
    route = acc / (2.0 * N)
    direct = variance.diagonal_term(N, RmfKind.RADEMACHER, table)
    diff = abs(route - direct)
    return _result("diagonal_consistency", diff < 1e-12, diff, "sampled vs counted route")


_CHECKS = (
    _check_ramanujan_gcd_bound,
    _check_ramanujan_prime_case,
    _check_tau_summatory,
    _check_euler_phi,
    _check_factorize,
    _check_squarefree_count,
    _check_brun_titchmarsh,
    _check_geometric,
    _check_davenport,
    _check_vdc,
    _check_moments,
    _check_orthogonality,
    _check_quadruple_vw,
    _check_rewrite_identity,
    _check_fft_direct,
    _check_parseval,
    _check_bernstein,
    _check_diagonal,
)


def run_all_checks(table: PrimeTable | None = None) -> list[CheckResult]:
    """Run every registered check; an exception inside one marks it failed."""
    if table is None:
        table = build_prime_table(DEFAULT_TABLE_LIMIT)
    results = []
    for check in _CHECKS:
        name = check.__name__.removeprefix("_check_")
        try:
            results.append(check(table))
        except Exception as exc:  # noqa: BLE001 - a crash is a failed check
            results.append(_result(name, False, math.nan, f"error: {exc!r}"))
    return results


def verify_report(results: list[CheckResult]) -> dict:
    """Machine-readable report; status 0 only when every check passed."""
    return {
        "status": 0 if all(r.passed for r in results) else 1,
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "checks": [
            {
                "name": r.name,
                "passed": r.passed,
                "observed": None if math.isnan(r.observed) else r.observed,
                "detail": r.detail,
            }
            for r in results
        ],
    }
