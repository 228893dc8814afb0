"""Reading failure records and configs; writing results as JSON or CSV.

Records are CSV with a header row and two columns, system id and failure
state index::

    system_id,failure_state_index
    bar1,1
    bar2,3

Structured results are JSON. JSON floats use Python's shortest round-trip
repr, so reading back is lossless; CSV tables carry 12 significant digits.
"""
from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .errors import ParseError
from .grid import FailureRecord, StateGrid
from .inference import BetaStacySpec, PredictiveDistribution
from .montecarlo import McReport
from .rup import RupConfig

RECORD_HEADER = ("system_id", "failure_state_index")


def ingest(path, grid: StateGrid) -> FailureRecord:
    """Parse a record CSV; system ids must be unique, indices on ``grid``."""
    text = Path(path).read_text()
    return parse_record(text, grid)


def parse_record(text: str, grid: StateGrid) -> FailureRecord:
    rows = list(csv.reader(_io.StringIO(text)))
    if not rows or len(rows[0]) != 2:
        raise ParseError("expected a two-column header row", line=1)
    seen = set()
    indices = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", line=lineno)
        sid, raw = row[0].strip(), row[1].strip()
        if not sid:
            raise ParseError("empty system id", line=lineno)
        if sid in seen:
            raise ParseError(f"duplicate system id {sid!r}", line=lineno)
        seen.add(sid)
        try:
            idx = int(raw)
        except ValueError:
            raise ParseError(f"failure state index {raw!r} is not an integer", line=lineno) from None
        if idx < 0:
            raise ParseError(f"negative failure state index {idx}", line=lineno)
        indices.append(idx)
    # off-grid indices raise UnknownStateError
    return FailureRecord(grid, tuple(indices))


def record_to_csv(record: FailureRecord, ids=None) -> str:
    ids = ids or [f"sys{i + 1}" for i in range(record.m)]
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECORD_HEADER)
    for sid, idx in zip(ids, record.indices):
        w.writerow((sid, idx))
    return buf.getvalue()


def _floats(a) -> list:
    return [float(x) for x in np.asarray(a, dtype=float)]


def to_jsonable(result):
    """Plain-JSON view of a result object."""
    if isinstance(result, PredictiveDistribution):
        return {
            "kind": "predictive",
            "grid": list(result.grid.values),
            "pmf": _floats(result.pmf),
            "survival": _floats(result.survival),
            "tail": float(result.tail),
            "mean_on_grid": result.mean_on_grid,
            "note": result.tail_mass_note,
        }
    if isinstance(result, BetaStacySpec):
        return {
            "kind": "beta_stacy",
            "grid": None if result.grid is None else list(result.grid.values),
            "failure": _floats(result.failure),
            "survival": _floats(result.survival),
        }
    if isinstance(result, McReport):
        return {
            "kind": "mc_report",
            "labels": [x if isinstance(x, str) else float(x) for x in result.labels],
            "estimate": _floats(result.estimate),
            "std_error": _floats(result.std_error),
            "analytic": _floats(result.analytic),
            "z_scores": _floats(result.z_scores),
            "replicates": result.replicates,
            "seed": result.seed,
            "z_bound": result.z_bound,
            "max_abs_z": result.max_abs_z,
            "verdict": result.verdict,
        }
    if isinstance(result, FailureRecord):
        return {"kind": "record", "grid": list(result.grid.values), "indices": list(result.indices)}
    if isinstance(result, RupConfig):
        return {"grid": list(result.grid.values), "priors": [[p.white, p.black] for p in result.priors], "s": result.s}
    if isinstance(result, dict):
        return {k: to_jsonable(v) for k, v in result.items()}
    if isinstance(result, (list, tuple)):
        return [to_jsonable(v) for v in result]
    if isinstance(result, np.ndarray):
        return to_jsonable(result.tolist())
    if isinstance(result, np.integer):
        return int(result)
    if isinstance(result, np.floating):
        return float(result)
    return result


def from_jsonable(obj):
    """Inverse of :func:`to_jsonable` for records, specs and predictive distributions."""
    kind = obj.get("kind")
    if kind == "record":
        return FailureRecord(StateGrid(obj["grid"]), tuple(obj["indices"]))
    if kind == "beta_stacy":
        grid = None if obj["grid"] is None else StateGrid(obj["grid"])
        return BetaStacySpec(grid, obj["failure"], obj["survival"])
    if kind == "predictive":
        return PredictiveDistribution(
            StateGrid(obj["grid"]), np.array(obj["pmf"]), np.array(obj["survival"]), float(obj["tail"])
        )
    raise ValueError(f"cannot rebuild object of kind {kind!r}")


def dumps(result) -> str:
    return json.dumps(to_jsonable(result), indent=2, allow_nan=True) + "\n"


def _csv_table(result) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    g = lambda x: f"{float(x):.12g}"
    if isinstance(result, FailureRecord):
        return record_to_csv(result)
    if isinstance(result, PredictiveDistribution):
        w.writerow(("state", "pmf", "survival"))
        for v, p, sv in zip(result.grid.values, result.pmf, result.survival):
            w.writerow((g(v), g(p), g(sv)))
        w.writerow(("tail", g(result.tail), ""))
    elif isinstance(result, BetaStacySpec):
        w.writerow(("state", "failure_shape", "survival_shape"))
        labels = result.grid.values if result.grid is not None else range(len(result.failure))
        for v, a, b in zip(labels, result.failure, result.survival):
            w.writerow((g(v), g(a), g(b)))
    elif isinstance(result, McReport):
        w.writerow(("label", "estimate", "std_error", "analytic", "z"))
        for row in zip(result.labels, result.estimate, result.std_error, result.analytic, result.z_scores):
            label = row[0] if isinstance(row[0], str) else g(row[0])
            w.writerow((label,) + tuple(g(x) for x in row[1:]))
    else:
        raise TypeError(f"no CSV layout for {type(result).__name__}")
    return buf.getvalue()


def emit(result, path=None, format: str = "json") -> str:
    """Serialize ``result``; write it to ``path`` when given. Returns the text."""
    if format == "json":
        text = dumps(result)
    elif format == "csv":
        text = _csv_table(result)
    else:
        raise ValueError(f"unknown format {format!r}")
    if path is not None:
        Path(path).write_text(text)
    return text


def config_from_dict(d: dict) -> RupConfig:
    """``{"grid": [...], "priors": [[w, b], ...] | {"white": w, "black": b}, "s": s}``."""
    grid = StateGrid(d["grid"])
    priors = d.get("priors", {"white": 1.0, "black": 1.0})
    s = float(d.get("s", 1.0))
    if isinstance(priors, dict):
        return RupConfig.uniform(grid, float(priors["white"]), float(priors["black"]), s)
    return RupConfig(grid, tuple((float(w), float(b)) for w, b in priors), s)


def load_config(path) -> dict:
    """Read a JSON config file; ``"rup"`` holds the parsed :class:`RupConfig` if a grid is given."""
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ValueError("config file must hold a JSON object")
    out = dict(raw)
    if "grid" in raw:
        out["rup"] = config_from_dict(raw)
    return out
