"""Record persistence: fixed CSV schemas and a JSON mirror.

Floats are serialized with 17 significant digits (round-trip exact for IEEE
doubles), line endings are LF, and rows arrive pre-sorted by (N, trial), so a
campaign's output is byte-identical across re-runs and thread counts.
"""

from __future__ import annotations

import json
import sys
from typing import IO, Iterable

from .config import Experiment
from .runner import GaussMaxResult, TrialRecord

__all__ = [
    "CSV_SCHEMAS",
    "format_float",
    "gauss_result_row",
    "records_to_csv",
    "records_to_json",
    "write_output",
    "write_gauss_output",
]

# Column order per experiment; the first seven columns are shared.
_BASE = ("experiment", "kind", "N", "trial", "seed", "statistic", "value")
CSV_SCHEMAS: dict[str, tuple[str, ...]] = {
    Experiment.LOWER_BOUND.value: _BASE + ("theta_star",),
    Experiment.UPPER_BOUND.value: _BASE + ("theta_star", "epsilon", "subsample"),
    Experiment.VARIANCE_MAX.value: _BASE + ("theta_star", "epsilon", "subsample"),
    Experiment.CLT.value: _BASE + ("theta",),
    Experiment.GAUSS_MAX.value: (
        "experiment",
        "n",
        "eps",
        "delta",
        "trials",
        "seed",
        "threshold",
        "prob_below",
        "count",
        "mean",
        "std",
        "min",
        "max",
        "q05",
        "q50",
        "q95",
    ),
}


def format_float(x: float) -> str:
    """17-significant-digit decimal form, enough to round-trip a double."""
    return "%.17g" % x


def _cell(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _record_cells(record: TrialRecord, columns: tuple[str, ...]) -> list[str]:
    base = {
        "experiment": record.experiment,
        "kind": record.kind,
        "N": record.N,
        "trial": record.trial,
        "seed": record.seed,
        "statistic": record.statistic,
        "value": record.value,
    }
    cells = []
    for col in columns:
        if col in base:
            cells.append(_cell(base[col]))
        else:
            cells.append(_cell(record.auxiliary.get(col)))
    return cells


def records_to_csv(records: Iterable[TrialRecord], experiment: str) -> str:
    """Render records under the experiment's fixed schema (LF endings)."""
    columns = CSV_SCHEMAS[experiment]
    lines = [",".join(columns)]
    for record in records:
        lines.append(",".join(_record_cells(record, columns)))
    return "\n".join(lines) + "\n"


def _record_dict(record: TrialRecord, columns: tuple[str, ...]) -> dict:
    out: dict = {
        "experiment": record.experiment,
        "kind": record.kind,
        "N": record.N,
        "trial": record.trial,
        "seed": record.seed,
        "statistic": record.statistic,
        "value": record.value,
    }
    for col in columns[len(out):]:
        out[col] = record.auxiliary.get(col)
    return out


def records_to_json(records: Iterable[TrialRecord], experiment: str) -> str:
    columns = CSV_SCHEMAS[experiment]
    payload = {
        "experiment": experiment,
        "records": [_record_dict(r, columns) for r in records],
    }
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def gauss_result_row(result: GaussMaxResult) -> dict:
    """The wide single-row form shared by the CSV and JSON writers."""
    s = result.stats
    return {
        "experiment": Experiment.GAUSS_MAX.value,
        "n": result.n,
        "eps": result.eps,
        "delta": result.delta,
        "trials": result.trials,
        "seed": result.seed,
        "threshold": result.threshold,
        "prob_below": result.prob_below,
        "count": s.count,
        "mean": s.mean,
        "std": s.std,
        "min": s.minimum,
        "max": s.maximum,
        "q05": s.q05,
        "q50": s.q50,
        "q95": s.q95,
    }


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def write_text(text: str, path: str | None) -> None:
    handle, owned = _open_out(path)
    try:
        handle.write(text)
    finally:
        if owned:
            handle.close()


def write_output(
    records: list[TrialRecord], experiment: str, path: str | None, fmt: str = "csv"
) -> None:
    """Persist a record batch to a file, or stdout for path None or '-'."""
    if fmt == "csv":
        write_text(records_to_csv(records, experiment), path)
    elif fmt == "json":
        write_text(records_to_json(records, experiment), path)
    else:
        raise ValueError(f"format must be csv or json, got {fmt!r}")


def write_gauss_output(result: GaussMaxResult, path: str | None, fmt: str = "csv") -> None:
    row = gauss_result_row(result)
    if fmt == "csv":
        columns = CSV_SCHEMAS[Experiment.GAUSS_MAX.value]
        text = ",".join(columns) + "\n" + ",".join(_cell(row[c]) for c in columns) + "\n"
        write_text(text, path)
    elif fmt == "json":
        write_text(json.dumps(row, indent=2) + "\n", path)
    else:
        raise ValueError(f"format must be csv or json, got {fmt!r}")
