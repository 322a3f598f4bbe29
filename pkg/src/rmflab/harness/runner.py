"""Campaign drivers: one deterministic record stream per experiment.

Trials are keyed by derive_seed(master_seed, N, trial), a pure function, so a
record depends only on its coordinates and never on scheduling.  Workers run
under a thread pool when config.threads > 1; records are re-sorted by
(N, trial) before they are returned, so output bytes are identical for any
thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import expsum, rng
from ..errors import UnsupportedModelError
from ..expsum import ALL_COEFFICIENTS, CoefficientFilter, DiscretizationSet
from ..ntcore import PrimeTable, build_prime_table
from ..rmf import RmfKind, sample_values
from ..variance import Normalization, VarianceSpec, max_variance_over_D
from .config import Experiment, ExperimentConfig
from .stats import SummaryStats, ks_distance_normal, normal_quantile

__all__ = [
    "GaussMaxResult",
    "LOWER_BOUND_CONSTANTS",
    "TrialRecord",
    "campaign_seeds",
    "run_clt",
    "run_gauss_max",
    "run_lower_bound",
    "run_upper_bound",
    "run_variance_max",
    "summarize_values",
]

# Lower-bound comparison constants: limiting fractions of sqrt(log N) that the
# maximum of |P_N| should exceed for the two coefficient models.
LOWER_BOUND_CONSTANTS = {
    RmfKind.STEINHAUS: 4.0 / 29.0,
    RmfKind.RADEMACHER: 4.0 * math.sqrt(6.0) / (29.0 * math.pi),
}

_OVERSAMPLE = 4.0 * math.pi
_ROUGH_EXPONENT = 0.8
# Derivation tags for per-N auxiliary streams; trial seeds use indices below
# 2^32 (config.MAX_TRIALS), so these can never collide with them.
_THETA_STREAM = 1 << 32
_SUBSAMPLE_STREAM = (1 << 32) + 1


@dataclass(frozen=True)
class TrialRecord:
    """One scalar outcome of one trial, plus its provenance coordinates."""

    experiment: str
    kind: str
    N: int
    trial: int
    seed: int
    statistic: str
    value: float
    auxiliary: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError(f"trial value must be finite, got {self.value}")


@dataclass(frozen=True)
class GaussMaxResult:
    """Outcome of the correlated-Gaussian maximum experiment."""

    n: int
    eps: float
    delta: float
    trials: int
    seed: int
    threshold: float
    prob_below: float
    stats: SummaryStats


def campaign_seeds(master_seed: int, N_values, trials: int) -> list[int]:
    """Every derived trial seed of a campaign, in (N, trial) order."""
    return [
        rng.derive_seed(master_seed, N, trial)
        for N in N_values
        for trial in range(trials)
    ]


def summarize_values(records: list[TrialRecord], threshold: float = 0.0) -> SummaryStats:
    """Recompute a summary from record values (pure, order-independent)."""
    return SummaryStats.from_values(
        np.array([r.value for r in records], dtype=np.float64), threshold
    )


def _table_for(config: ExperimentConfig, table: PrimeTable | None) -> PrimeTable:
    if table is None:
        table = build_prime_table(max(config.N_values))
    elif table.limit < max(config.N_values):
        raise ValueError(
            f"prime table limit {table.limit} below largest size {max(config.N_values)}"
        )
    return table


def _run_tasks(fn, tasks, threads: int):
    if threads <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks))


def _check_experiment(config: ExperimentConfig, expected: Experiment) -> None:
    if config.experiment is not expected:
        raise ValueError(
            f"config is for {config.experiment.value!r}, runner expects {expected.value!r}"
        )


def run_lower_bound(
    config: ExperimentConfig, table: PrimeTable | None = None
) -> list[TrialRecord]:
    """Max of |P_N| on a certified grid, as a multiple of sqrt(log N).

    Per (N, trial): a fresh coefficient sample, the grid maximum at
    oversampling 4*pi over all coefficients, and the record value
    max|P_N| / sqrt(log N).  The summary of interest downstream is the
    fraction of trials at or above LOWER_BOUND_CONSTANTS[kind].
    """
    _check_experiment(config, Experiment.LOWER_BOUND)
    table = _table_for(config, table)

    def one(task: tuple[int, int]) -> TrialRecord:
        N, trial = task
        seed = rng.derive_seed(config.master_seed, N, trial)
        values = sample_values(config.kind, N, seed, table)
        theta_star, magnitude = max_modulus_all(values, table)
        return TrialRecord(
            experiment=Experiment.LOWER_BOUND.value,
            kind=config.kind.value,
            N=N,
            trial=trial,
            seed=seed,
            statistic="max_ratio",
            value=magnitude / math.sqrt(math.log(N)),
            auxiliary={"theta_star": theta_star},
        )

    tasks = [(N, t) for N in config.N_values for t in range(config.trials)]
    records = _run_tasks(one, tasks, config.threads)
    records.sort(key=lambda r: (r.N, r.trial))
    return records


def max_modulus_all(values, table: PrimeTable) -> tuple[float, float]:
    """Certified-grid maximum of |P_N| over all coefficients."""
    return expsum.max_modulus(values, ALL_COEFFICIENTS, _OVERSAMPLE, table)


def _campaign_points(config: ExperimentConfig, N: int) -> DiscretizationSet:
    """The (optionally subsampled) evaluation set for one size N.

    The subsample seed depends on (master_seed, N) only, so every trial at a
    given N scans the same point set and trials stay comparable.
    """
    Q = expsum.default_denominator_bound(N)
    if config.subsample is None:
        return expsum.build_discretization(N, Q)
    sub_seed = rng.derive_seed(config.master_seed, N, _SUBSAMPLE_STREAM)
    return expsum.subsample_discretization(N, Q, config.subsample, sub_seed)


def run_upper_bound(
    config: ExperimentConfig, table: PrimeTable | None = None
) -> list[TrialRecord]:
    """Max over the discretization of the rough-part sum, normalized.

    Steinhaus only: the bound being probed is proved for that model alone, and
    the Rademacher analogue is an open problem, so requesting it is an error
    rather than a silently different experiment.  Per (N, trial) the value is
    max over theta in the point set of |P_N^rough(theta)| divided by
    (log N)^{7/4 + epsilon}, with the rough part keeping n whose least prime
    factor is at least N^0.8.
    """
    _check_experiment(config, Experiment.UPPER_BOUND)
    if config.kind is not RmfKind.STEINHAUS:
        raise UnsupportedModelError(
            "the upper-bound experiment is defined for the Steinhaus model only"
        )
    table = _table_for(config, table)
    rough = CoefficientFilter.rough_at_least(_ROUGH_EXPONENT)
    exponent = 7.0 / 4.0 + config.epsilon
    by_N = {N: _campaign_points(config, N) for N in config.N_values}

    def one(task: tuple[int, int]) -> TrialRecord:
        N, trial = task
        seed = rng.derive_seed(config.master_seed, N, trial)
        values = sample_values(config.kind, N, seed, table)
        thetas = by_N[N].thetas
        mags = np.abs(expsum.eval_points(values, rough, thetas, table))
        idx = int(np.argmax(mags))
        return TrialRecord(
            experiment=Experiment.UPPER_BOUND.value,
            kind=config.kind.value,
            N=N,
            trial=trial,
            seed=seed,
            statistic="normalized_max",
            value=float(mags[idx]) / math.log(N) ** exponent,
            auxiliary={
                "theta_star": float(thetas[idx]),
                "epsilon": config.epsilon,
                "subsample": len(by_N[N]),
            },
        )

    tasks = [(N, t) for N in config.N_values for t in range(config.trials)]
    records = _run_tasks(one, tasks, config.threads)
    records.sort(key=lambda r: (r.N, r.trial))
    return records


def run_clt(config: ExperimentConfig, table: PrimeTable | None = None) -> list[TrialRecord]:
    """Distribution of sqrt(2) * Re P_N(Theta) for uniform random Theta.

    One coefficient sample per N (seeded by trial index 0); `trials` many
    Theta draws from a separate derived stream.  Each draw yields one record,
    and a closing record at trial index = trials carries the Kolmogorov-
    Smirnov distance of the batch against the standard normal (the sqrt(2)
    factor maps E|P_N|^2 = 1 to unit variance per real part).
    """
    _check_experiment(config, Experiment.CLT)
    table = _table_for(config, table)

    def one(N: int) -> list[TrialRecord]:
        f_seed = rng.derive_seed(config.master_seed, N, 0)
        values = sample_values(config.kind, N, f_seed, table)
        theta_seed = rng.derive_seed(config.master_seed, N, _THETA_STREAM)
        thetas = rng.uniforms(theta_seed, 0, config.trials)
        samples = math.sqrt(2.0) * np.real(
            expsum.eval_points(values, ALL_COEFFICIENTS, thetas, table)
        )
        out = [
            TrialRecord(
                experiment=Experiment.CLT.value,
                kind=config.kind.value,
                N=N,
                trial=j,
                seed=rng.derive_seed(config.master_seed, N, j),
                statistic="sqrt2_re_pn",
                value=float(samples[j]),
                auxiliary={"theta": float(thetas[j])},
            )
            for j in range(config.trials)
        ]
        out.append(
            TrialRecord(
                experiment=Experiment.CLT.value,
                kind=config.kind.value,
                N=N,
                trial=config.trials,
                seed=rng.derive_seed(config.master_seed, N, config.trials),
                statistic="ks_distance",
                value=ks_distance_normal(samples),
            )
        )
        return out

    batches = _run_tasks(one, list(config.N_values), config.threads)
    records = [r for batch in batches for r in batch]
    records.sort(key=lambda r: (r.N, r.trial))
    return records


def run_variance_max(
    config: ExperimentConfig, table: PrimeTable | None = None
) -> list[TrialRecord]:
    """Max conditional variance over the discretization, normalized.

    Steinhaus only, matching the bound being probed.  Per (N, trial) the value
    is max over the point set of the rough-part conditional variance divided
    by (log N)^{5/2 + epsilon}.
    """
    _check_experiment(config, Experiment.VARIANCE_MAX)
    if config.kind is not RmfKind.STEINHAUS:
        raise UnsupportedModelError(
            "the variance-maximum experiment is defined for the Steinhaus model only"
        )
    table = _table_for(config, table)
    exponent = 5.0 / 2.0 + config.epsilon
    by_N = {N: _campaign_points(config, N) for N in config.N_values}

    def one(task: tuple[int, int]) -> TrialRecord:
        N, trial = task
        seed = rng.derive_seed(config.master_seed, N, trial)
        values = sample_values(config.kind, N, seed, table)
        spec = VarianceSpec(_ROUGH_EXPONENT, Normalization.FULL, config.kind)
        theta_star, best = max_variance_over_D(
            values, by_N[N], spec, None, 0, table
        )
        return TrialRecord(
            experiment=Experiment.VARIANCE_MAX.value,
            kind=config.kind.value,
            N=N,
            trial=trial,
            seed=seed,
            statistic="normalized_var_max",
            value=best / math.log(N) ** exponent,
            auxiliary={
                "theta_star": theta_star,
                "epsilon": config.epsilon,
                "subsample": len(by_N[N]),
            },
        )

    tasks = [(N, t) for N in config.N_values for t in range(config.trials)]
    records = _run_tasks(one, tasks, config.threads)
    records.sort(key=lambda r: (r.N, r.trial))
    return records


def run_gauss_max(
    n: int, eps: float, delta: float, trials: int, seed: int
) -> GaussMaxResult:
    """Empirical P(max of n equicorrelated standard normals <= threshold).

    The covariance model is equicorrelated at level eps: X_i = sqrt(eps) * Z0
    + sqrt(1 - eps) * Z_i with iid standard normal Z's, which has unit
    variances and every off-diagonal correlation equal to eps.  The common
    term shifts all coordinates together, so max_i X_i = sqrt(eps) * Z0 +
    sqrt(1 - eps) * M_n where M_n is the max of n iid normals — and M_n is
    drawn exactly through its distribution function via M_n =
    quantile(U^(1/n)), U uniform.  One uniform and one normal per trial give
    an exact sampler at any n.

    The threshold is sqrt((2 - delta) * log n); delta must lie between
    100 * eps and 1/100 (whichever order those take).
    """
    if n < 2:
        raise ValueError(f"population size must be at least 2, got {n}")
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"correlation level must lie in [0, 1), got {eps}")
    lo, hi = sorted((100.0 * eps, 0.01))
    if not lo <= delta <= hi:
        raise ValueError(
            f"delta must lie between 100*eps and 1/100 (here [{lo:g}, {hi:g}]), got {delta}"
        )
    threshold = math.sqrt((2.0 - delta) * math.log(n))
    us = rng.uniforms(rng.derive_seed(seed, 1), 0, trials)
    z0 = rng.normals(rng.derive_seed(seed, 2), 0, trials)
    inv_n = 1.0 / n
    iid_max = np.array([normal_quantile(float(u) ** inv_n) for u in us])
    maxima = math.sqrt(eps) * z0 + math.sqrt(1.0 - eps) * iid_max
    return GaussMaxResult(
        n=n,
        eps=eps,
        delta=delta,
        trials=trials,
        seed=seed,
        threshold=threshold,
        prob_below=float(np.mean(maxima <= threshold)),
        stats=SummaryStats.from_values(maxima, threshold),
    )
