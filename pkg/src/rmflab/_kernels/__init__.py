"""Kernel backend selection.

Two interchangeable implementations of the numeric kernels exist: a compiled
extension (built from _ckernels.pyx) and a pure-Python/numpy fallback.  The
environment variable RMFLAB_BACKEND picks one at import time:

    auto (default) -- compiled if built, else fallback
    c              -- compiled, ImportError if the extension is missing
    py             -- fallback

Both modules stay importable (when built) so equivalence tests and benchmarks
can compare them directly.
"""

from __future__ import annotations

import os

from . import pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None  # type: ignore[assignment]

_requested = os.environ.get("RMFLAB_BACKEND", "auto").strip().lower()
if _requested in ("", "auto"):
    _impl = _ckernels if _ckernels is not None else pykernels
elif _requested == "py":
    _impl = pykernels
elif _requested == "c":
    if _ckernels is None:
        raise ImportError(
            "RMFLAB_BACKEND=c requested but the compiled kernel extension is "
            "not built; install the package with Cython and a C compiler "
            "available, or unset RMFLAB_BACKEND"
        )
    _impl = _ckernels
else:
    raise ImportError(
        f"unknown RMFLAB_BACKEND value {_requested!r}; expected auto, c, or py"
    )

BACKEND = "c" if _impl is not pykernels else "py"

sieve_spf = _impl.sieve_spf
lpf_from_spf = _impl.lpf_from_spf
extend_values = _impl.extend_values
eval_points_sum = _impl.eval_points_sum
inner_sums = _impl.inner_sums
gauss_max_trials = _impl.gauss_max_trials


def available_backends() -> tuple[str, ...]:
    """Names of the kernel backends importable in this installation."""
    return ("c", "py") if _ckernels is not None else ("py",)


def backend_module(name: str):
    """The kernel module for an explicit backend name ('c' or 'py')."""
    if name == "py":
        return pykernels
    if name == "c":
        if _ckernels is None:
            raise ImportError("compiled kernel extension is not built")
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
