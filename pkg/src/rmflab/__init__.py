"""Desk-scale experiments on random multiplicative functions.

Samplers for Rademacher and Steinhaus random multiplicative functions,
FFT-based evaluation and maximization of the normalized exponential sums
P_N(theta), the shifted-Farey discretization of the circle, conditional
variance functionals over large primes, classical number-theoretic bounds as
executable oracles, and a reproducible Monte Carlo campaign harness with a
CLI (`rmflab`).

Submodules: ntcore (sieves and arithmetic functions), rng (counter-based
randomness), rmf (samplers), expsum (evaluation/maximization), variance,
estimates (bound oracles), harness (campaigns, CLI).
"""

from .errors import ResourceLimitError, UnsupportedModelError

__version__ = "0.1.0"

__all__ = ["ResourceLimitError", "UnsupportedModelError", "__version__"]
