"""Experiment configuration shared by the campaign runners and the CLI."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from ..rmf import RmfKind

__all__ = ["Experiment", "ExperimentConfig", "geometric_range"]

# Trial indices must stay below this so the per-campaign derived-seed streams
# (theta draws, discretization subsampling) never collide with trial seeds.
MAX_TRIALS = 1 << 32


class Experiment(str, enum.Enum):
    LOWER_BOUND = "lowerbound"
    UPPER_BOUND = "upperbound"
    CLT = "clt"
    VARIANCE_MAX = "variancemax"
    GAUSS_MAX = "gaussmax"
    VERIFY = "verify"


def geometric_range(n_min: int, n_max: int, factor: float) -> tuple[int, ...]:
    """Ascending integer sizes n_min, ~n_min*factor, ... capped at n_max."""
    if n_min < 2:
        raise ValueError(f"smallest size must be at least 2, got {n_min}")
    if n_max < n_min:
        raise ValueError(f"size range is empty: {n_min}..{n_max}")
    if factor <= 1.0:
        raise ValueError(f"step factor must exceed 1, got {factor}")
    values = [n_min]
    while True:
        nxt = max(round(values[-1] * factor), values[-1] + 1)
        if nxt > n_max:
            break
        values.append(nxt)
    return tuple(values)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a campaign needs to be re-run byte-identically.

    epsilon enters only the upper-bound and variance normalizations
    (log N)^{7/4+eps} and (log N)^{5/2+eps}; delta only the Gaussian-maximum
    threshold.  subsample of None evaluates the full discretization.
    """

    experiment: Experiment
    kind: RmfKind
    N_values: tuple[int, ...]
    trials: int
    epsilon: float
    master_seed: int
    subsample: int | None = None
    output_path: str | None = None
    delta: float = 0.1
    threads: int = 1
    fmt: str = "csv"

    def __post_init__(self) -> None:
        object.__setattr__(self, "N_values", tuple(int(n) for n in self.N_values))
        if not self.N_values:
            raise ValueError("at least one size N is required")
        if any(n < 2 for n in self.N_values):
            raise ValueError("every N must be at least 2")
        if any(b <= a for a, b in zip(self.N_values, self.N_values[1:])):
            raise ValueError("sizes must be strictly ascending")
        if not 1 <= self.trials < MAX_TRIALS:
            raise ValueError(f"trials must lie in [1, {MAX_TRIALS}), got {self.trials}")
        if not (math.isfinite(self.epsilon) and self.epsilon >= 0.0):
            raise ValueError(f"epsilon must be a finite real >= 0, got {self.epsilon}")
        if self.subsample is not None and self.subsample < 1:
            raise ValueError(f"subsample count must be positive, got {self.subsample}")
        if self.threads < 1:
            raise ValueError(f"thread count must be positive, got {self.threads}")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.fmt!r}")
