"""Acceptance gate: one test per top-level criterion, each emitting a
[PASS]/[FAIL] line with the observed numbers.

The quantities probed are asymptotic, so acceptance combines exact identities,
inequality oracles, and desk-scale quantitative checks at the stated
tolerances.  Every check runs in full; a criterion whose stated window the
computed truth genuinely misses is left to fail rather than weakened or
skipped (see the failing windows in the diagonal and Gaussian-maximum tests:
the honest values are asserted in comments next to each).
"""

import math
import sys
import time

import conftest
import numpy as np
import pytest

from rmflab import estimates, expsum, ntcore, rng, variance
from rmflab.estimates import Pairing
from rmflab.expsum import ALL_COEFFICIENTS, CoefficientFilter
from rmflab.harness import io, runner
from rmflab.harness.config import Experiment, ExperimentConfig
from rmflab.harness.stats import normal_cdf
from rmflab.rmf import RmfKind, sample_values
from rmflab.variance import Normalization, VarianceSpec

MASTER = 20260816


def _criterion(name: str, passed: bool, detail: str) -> None:
    tag = "PASS" if passed else "FAIL"
    line = f"[{tag}] {name}: {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line, file=sys.__stderr__, flush=True)
    assert passed, f"{name}: {detail}"


# --- exact identity suite ---------------------------------------------------------


def _direct_dft(ns, coeffs, M, scale):
    roots = np.exp((2j * np.pi / M) * np.arange(M))
    out = np.empty(M, dtype=np.complex128)
    for start in range(0, M, 512):
        js = np.arange(start, min(start + 512, M))
        out[js] = coeffs @ roots[(ns[:, None] * js[None, :]) % M]
    return out * scale


def test_exact_identity_suite(table_10k):
    t0 = time.time()
    # conditional variance rewrite, 20 random triples, relative 1e-10
    draws = rng.uniforms(31415926, 0, 40)
    worst_rw = 0.0
    for i in range(20):
        N = 50 + int(float(draws[2 * i]) * (10**4 - 50))
        theta = float(draws[2 * i + 1])
        kind = RmfKind.STEINHAUS if i % 2 else RmfKind.RADEMACHER
        values = sample_values(kind, N, 100 + i, table_10k)
        spec = VarianceSpec(0.8, Normalization.FULL, kind)
        a = variance.conditional_variance(values, theta, spec, table_10k)
        b = variance.rewrite_by_r(values, theta, table_10k)
        worst_rw = max(worst_rw, abs(a - b) / max(1e-300, abs(b)))
    # FFT against the quadratic-time exact-index DFT, 20 seeds
    fft_draws = rng.uniforms(31415, 0, 20)
    worst_fft = 0.0
    for trial in range(20):
        N = 32 + int(fft_draws[trial] * (4096 - 32))
        kind = RmfKind.STEINHAUS if trial % 2 else RmfKind.RADEMACHER
        vals = sample_values(kind, N, seed=5000 + trial, table=table_10k)
        grid = expsum.eval_grid_fft(vals, ALL_COEFFICIENTS, N + 1, table_10k)
        ns = np.arange(1, N + 1)
        want = _direct_dft(ns, vals.values[1:], grid.M, 1.0 / math.sqrt(N))
        worst_fft = max(worst_fft, float(np.max(np.abs(grid.values - want))))
    # Parseval
    worst_par = 0.0
    for seed, N in ((1, 97), (2, 1024), (3, 3000)):
        vals = sample_values(RmfKind.STEINHAUS, N, seed, table_10k)
        grid = expsum.eval_grid_fft(vals, ALL_COEFFICIENTS, 2 * N, table_10k)
        lhs = float(np.mean(np.abs(grid.values) ** 2))
        rhs = float(np.sum(np.abs(vals.values) ** 2)) / N
        worst_par = max(worst_par, abs(lhs - rhs) / rhs)
    # quadruple-count parametrization, every r <= 64, both pairings
    vw_bad = sum(
        estimates.quadruple_count_vw(r, pairing) != estimates.quadruple_count(r, pairing)
        for r in range(1, 65)
        for pairing in Pairing
    )
    elapsed = time.time() - t0
    ok = worst_rw <= 1e-10 and worst_fft < 1e-9 and worst_par <= 1e-8 and vw_bad == 0
    _criterion(
        "exact identity suite",
        ok and elapsed < 60,
        f"rewrite rel {worst_rw:.2e} (<=1e-10), fft {worst_fft:.2e} (<1e-9), "
        f"parseval rel {worst_par:.2e} (<=1e-8), vw mismatches {vw_bad}, {elapsed:.1f}s (<60s)",
    )


# --- inequality oracles ------------------------------------------------------------


def test_inequality_oracles(table_1m):
    t0 = time.time()
    # |c_q(n)| <= gcd(|n|, q), exhausteively for q, |n| <= 200
    worst_ram = 0.0
    for q in range(1, 201):
        for n in range(-200, 201):
            bound = math.gcd(q, abs(n)) if n != 0 else q
            worst_ram = max(worst_ram, abs(ntcore.ramanujan_sum(q, n)) / bound)
    # Brun-Titchmarsh on a 1000-case sweep with x + y <= 10^6
    us = rng.uniforms(777, 0, 4000)
    worst_bt = 0.0
    for i in range(1000):
        x = 3 + float(us[4 * i]) * (5 * 10**5)
        y = 10 + float(us[4 * i + 1]) * (4 * 10**5)
        q = 1 + int(us[4 * i + 2] * 8)
        a = 1 + int(us[4 * i + 3] * q)
        while math.gcd(a, q) != 1:
            a += 1
        report = estimates.brun_titchmarsh_report(x, max(y, q + 10), q, a, table_1m)
        worst_bt = max(worst_bt, report.ratio)
    # geometric sums on a 1000-case sweep
    gs = rng.uniforms(5150, 0, 2000)
    worst_geo = 0.0
    for i in range(1000):
        L = 1 + int(gs[2 * i] * 999)
        alpha = float(gs[2 * i + 1]) * 3.0 - 1.5
        worst_geo = max(worst_geo, estimates.geometric_sum_report(L, alpha).ratio)
    # moment comparisons, k in {1,2,3}, both kinds, 10^3 coefficients
    coeffs = np.ones(1000)
    moment_ok = True
    worst_margin = math.inf
    for kind in (RmfKind.STEINHAUS, RmfKind.RADEMACHER):
        for k in (1.0, 2.0, 3.0):
            rep = estimates.moment_bound_check(coeffs, k, kind, 10**4, MASTER, table_1m)
            margin = (rep.rhs - rep.lhs) / rep.stderr
            worst_margin = min(worst_margin, margin)
            moment_ok = moment_ok and rep.lhs - 3.0 * rep.stderr <= rep.rhs
    elapsed = time.time() - t0
    ok = worst_ram <= 1.0 + 1e-9 and worst_bt <= 1.0 and worst_geo <= 1.0 + 1e-9 and moment_ok
    _criterion(
        "inequality oracles",
        ok and elapsed < 300,
        f"ramanujan ratio {worst_ram:.6f} (<=1), brun-titchmarsh {worst_bt:.3f} (<=1), "
        f"geometric {worst_geo:.3f} (<=1), moment worst margin {worst_margin:+.1f} sigma "
        f"(>-3), {elapsed:.1f}s (<300s)",
    )


# --- orthogonality -----------------------------------------------------------------


def test_orthogonality_identity(table_1k):
    worst = 0.0
    for r in (2, 8, 16):
        rep = estimates.orthogonality_mc(r, 10**5, 321, table_1k)
        worst = max(worst, abs(rep.lhs - rep.rhs) / rep.stderr)
    _criterion(
        "orthogonality within 4 sigma",
        worst <= 4.0,
        f"max deviation {worst:.2f} sigma over r in (2, 8, 16), 1e5 trials each",
    )


# --- diagonal windows (both windows are genuinely missed by the computed truth) ----


def test_diagonal_window_steinhaus(table_1m):
    value = variance.diagonal_term(10**6, RmfKind.STEINHAUS, table_1m)
    center = math.log(7.0 / 6.0) / 2.0
    # exact value: 126745/2000000 = 0.0633725, which misses
    # [0.0670753, 0.0870753]; the first-order prediction overshoots at 10^6
    _criterion(
        "steinhaus diagonal window",
        abs(value - center) <= 0.01,
        f"diagonal {value:.7f} vs log(7/6)/2 = {center:.7f} +- 0.01",
    )


def test_diagonal_window_rademacher(table_1m):
    value = variance.diagonal_term(10**6, RmfKind.RADEMACHER, table_1m)
    center = (3.0 / math.pi**2) * math.log(7.0 / 6.0)
    # exact value: 117624/2000000 = 0.058812, which misses
    # [0.0368558, 0.0568558]; the squarefree-density factor applies only in
    # the limit, and at 10^6 the quotients N/p <= 7 are far from that regime
    _criterion(
        "rademacher diagonal window",
        abs(value - center) <= 0.01,
        f"diagonal {value:.7f} vs (3/pi^2) log(7/6) = {center:.7f} +- 0.01",
    )


def test_conditional_variance_floor(table_1m):
    N = 10**5
    thetas = expsum.build_theta_set_A(N, table_1m)
    spec = VarianceSpec(6.0 / 7.0, Normalization.HALF, RmfKind.STEINHAUS)
    total = hits = 0
    low = 1.0 / 13.0 - 0.02
    smallest = math.inf
    for seed in range(1, 21):
        values = sample_values(RmfKind.STEINHAUS, N, seed, table_1m)
        for theta in thetas.tolist():
            cv = variance.conditional_variance(values, theta, spec, table_1m)
            smallest = min(smallest, cv)
            hits += cv >= low
            total += 1
    _criterion(
        "conditional variance floor",
        hits / total >= 0.95,
        f"{hits}/{total} cases >= 1/13 - 0.02 = {low:.4f} (min observed {smallest:.4f})",
    )


# --- lower-bound experiment ---------------------------------------------------------


def test_lower_bound_fractions(table_100k):
    worst = 1.0
    details = []
    for kind in (RmfKind.STEINHAUS, RmfKind.RADEMACHER):
        config = ExperimentConfig(
            experiment=Experiment.LOWER_BOUND,
            kind=kind,
            N_values=(4096, 16384, 65536),
            trials=50,
            epsilon=0.0,
            master_seed=MASTER,
            threads=4,
        )
        records = runner.run_lower_bound(config, table_100k)
        c = runner.LOWER_BOUND_CONSTANTS[kind]
        for N in config.N_values:
            vals = [r.value for r in records if r.N == N]
            frac = sum(v >= c for v in vals) / len(vals)
            worst = min(worst, frac)
            details.append(f"{kind.value[:4]}/{N}: {frac:.2f}")
    _criterion(
        "grid maximum exceeds its constant",
        worst >= 0.95,
        "fraction at or above the constant per (kind, N): " + ", ".join(details),
    )


# --- trend reports ----------------------------------------------------------------


def _trend(records, N_values):
    per_n = [max(r.value for r in records if r.N == N) for N in N_values]
    growth = max(
        per_n[j] / per_n[i] for i in range(len(per_n)) for j in range(i + 1, len(per_n))
    )
    return per_n, growth


def test_trend_reports(table_100k, tmp_path):
    N_values = (1024, 2048, 4096, 8192, 16384, 32768, 65536)
    outcomes = []
    for experiment, drive in (
        (Experiment.UPPER_BOUND, runner.run_upper_bound),
        (Experiment.VARIANCE_MAX, runner.run_variance_max),
    ):
        config = ExperimentConfig(
            experiment=experiment,
            kind=RmfKind.STEINHAUS,
            N_values=N_values,
            trials=3,
            epsilon=0.25,
            master_seed=MASTER,
            subsample=10**4,
            threads=4,
        )
        records = drive(config, table_100k)
        path = tmp_path / f"{experiment.value}.csv"
        io.write_output(records, experiment.value, str(path), "csv")
        finite = all(math.isfinite(r.value) for r in records)
        per_n, growth = _trend(records, N_values)
        outcomes.append((experiment.value, finite, growth))
    ok = all(finite and growth <= 2.0 for _, finite, growth in outcomes)
    detail = ", ".join(
        f"{name}: finite={finite}, max growth {growth:.2f}x (<=2x)"
        for name, finite, growth in outcomes
    )
    _criterion("normalized trend stays bounded", ok, detail)


# --- clt ---------------------------------------------------------------------------


def test_clt_normality(table_100k):
    t0 = time.time()
    config = ExperimentConfig(
        experiment=Experiment.CLT,
        kind=RmfKind.STEINHAUS,
        N_values=(65536,),
        trials=2000,
        epsilon=0.0,
        master_seed=MASTER,
    )
    records = runner.run_clt(config, table_100k)
    ks = records[-1].value
    elapsed = time.time() - t0
    _criterion(
        "clt distance to normal",
        ks < 0.05 and elapsed < 120,
        f"KS = {ks:.4f} (<0.05) for 2000 draws at N=2^16, {elapsed:.1f}s (<120s)",
    )


# --- gaussian maximum --------------------------------------------------------------


def test_gauss_max_probability():
    # closed-form cross-check at n=2 first
    small = runner.run_gauss_max(2, 0.0, 0.01, 40000, 123)
    t = math.sqrt((2.0 - 0.01) * math.log(2.0))
    closed = normal_cdf(t) ** 2
    se = math.sqrt(closed * (1.0 - closed) / 40000)
    n2_ok = abs(small.prob_below - closed) <= 4 * se

    result = runner.run_gauss_max(10**5, 1e-3, 0.1, 10**4, MASTER)
    # the exact iid value at these parameters is Phi(sqrt(1.9 ln 1e5))^1e5
    # = 0.8646, nowhere near the < 0.05 regime (that onset needs far larger n)
    _criterion(
        "gaussian maximum probability",
        n2_ok and result.prob_below < 0.05,
        f"n=2 closed-form dev {(small.prob_below - closed) / se:+.2f} sigma; "
        f"P(max <= threshold) = {result.prob_below:.4f} (<0.05) at n=1e5",
    )


# --- reproducibility --------------------------------------------------------------


def test_reproducibility_byte_identical(table_1k):
    campaigns = []
    for threads in (1, 4):
        config = ExperimentConfig(
            experiment=Experiment.LOWER_BOUND,
            kind=RmfKind.RADEMACHER,
            N_values=(256, 512),
            trials=4,
            epsilon=0.0,
            master_seed=MASTER,
            threads=threads,
        )
        records = runner.run_lower_bound(config, table_1k)
        campaigns.append(io.records_to_csv(records, "lowerbound"))
    rerun = io.records_to_csv(
        runner.run_lower_bound(
            ExperimentConfig(
                experiment=Experiment.LOWER_BOUND,
                kind=RmfKind.RADEMACHER,
                N_values=(256, 512),
                trials=4,
                epsilon=0.0,
                master_seed=MASTER,
                threads=1,
            ),
            table_1k,
        ),
        "lowerbound",
    )
    clt_config = ExperimentConfig(
        experiment=Experiment.CLT,
        kind=RmfKind.STEINHAUS,
        N_values=(128,),
        trials=50,
        epsilon=0.0,
        master_seed=MASTER,
    )
    clt_a = io.records_to_json(runner.run_clt(clt_config, table_1k), "clt")
    clt_b = io.records_to_json(runner.run_clt(clt_config, table_1k), "clt")
    gauss_a = io.gauss_result_row(runner.run_gauss_max(100, 0.0, 0.01, 2000, 7))
    gauss_b = io.gauss_result_row(runner.run_gauss_max(100, 0.0, 0.01, 2000, 7))
    ok = (
        campaigns[0] == campaigns[1] == rerun
        and clt_a == clt_b
        and gauss_a == gauss_b
    )
    _criterion(
        "byte-identical reproducibility",
        ok,
        "csv identical across thread counts and re-runs; json and wide rows identical",
    )
