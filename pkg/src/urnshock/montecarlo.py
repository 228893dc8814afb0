"""Monte Carlo checks of the analytic predictive formulas.

Replicates run in fixed-size chunks; chunk ``c`` draws from
``rng.child(c)``. Results therefore do not depend on how many workers
process the chunks.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import GridExhaustedError
from .grid import FailureRecord
from .inference import predictive_distribution, sufficient_counts
from .rng import RngStream
from .rup import RupConfig, RupState, run_block

CHUNK_SIZE = 4096
DEFAULT_Z_BOUND = 3.0


@dataclass(frozen=True, eq=False)
class McReport:
    labels: tuple
    estimate: np.ndarray
    std_error: np.ndarray
    analytic: np.ndarray
    z_scores: np.ndarray
    replicates: int
    seed: dict = field(default_factory=dict)
    z_bound: float = DEFAULT_Z_BOUND

    @property
    def max_abs_z(self) -> float:
        return float(np.max(np.abs(self.z_scores))) if len(self.z_scores) else 0.0

    @property
    def verdict(self) -> str:
        return "pass" if self.max_abs_z < self.z_bound else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def compare_frequencies(
    counts, analytic, replicates: int, labels=None, seed=None, z_bound: float = DEFAULT_Z_BOUND
) -> McReport:
    """Build a report from category counts and reference probabilities.

    The standard error is the plug-in ``sqrt(phat (1 - phat) / n)``. Where
    it is zero (a category never or always observed) the z-score falls back
    on the reference standard error ``sqrt(p (1 - p) / n)``.
    """
    counts = np.asarray(counts, dtype=float)
    analytic = np.asarray(analytic, dtype=float)
    n = replicates
    phat = counts / n
    se = np.sqrt(phat * (1 - phat) / n)
    se_ref = np.sqrt(analytic * (1 - analytic) / n)
    denom = np.where(se > 0, se, se_ref)
    diff = phat - analytic
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(denom > 0, diff / denom, np.where(diff == 0, 0.0, np.inf))
    if labels is None:
        labels = tuple(range(len(counts)))
    return McReport(tuple(labels), phat, se, analytic, z, n, dict(seed or {}), z_bound)


def replay_priors(config: RupConfig, record: FailureRecord) -> RupConfig:
    """Urn compositions after the systems in ``record`` have run.

    Adds ``s`` once per reinforcement, exactly as the simulated process
    does, so the result matches any :func:`run_systems` path realizing the
    record bit for bit.
    """
    c = sufficient_counts(record)
    s = config.s
    white, black = [], []
    for urn, f, d in zip(config.priors, c.f, c.d):
        w, b = urn.white, urn.black
        for _ in range(int(f)):
            w += s
        for _ in range(int(d)):
            b += s
        white.append(w)
        black.append(b)
    return config.with_priors(white, black)


def _chunks(replicates: int):
    n_full, rest = divmod(replicates, CHUNK_SIZE)
    sizes = [CHUNK_SIZE] * n_full + ([rest] if rest else [])
    return list(enumerate(sizes))


def _next_block_chunk(args):
    config, rng, n = args
    R = config.grid.R
    counts = np.zeros(R + 2, dtype=np.int64)
    for _ in range(n):
        state = RupState.fresh(config, keep_history=False)
        try:
            block, _ = run_block(state, rng)
            counts[block.xi] += 1
        except GridExhaustedError:
            counts[R + 1] += 1
    return counts


def _map(fn, jobs, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def _as_stream(rng) -> RngStream:
    if isinstance(rng, RngStream):
        return rng
    return RngStream(int(rng))


def next_failure_counts(config: RupConfig, replicates: int, rng, workers: int = 1) -> np.ndarray:
    """Counts of the next failure index over fresh blocks; last slot is ``xi > v_R``."""
    rng = _as_stream(rng)
    jobs = [(config, rng.child(c), n) for c, n in _chunks(replicates)]
    return np.sum(_map(_next_block_chunk, jobs, workers), axis=0)


def estimate_predictive(
    config: RupConfig,
    record: FailureRecord,
    replicates: int,
    rng,
    z_bound: float = DEFAULT_Z_BOUND,
    workers: int = 1,
) -> McReport:
    """Simulate the next system after replaying ``record`` and compare with the analytic law."""
    if replicates < 1000:
        raise ValueError("need at least 1000 replicates")
    rng = _as_stream(rng)
    replayed = replay_priors(config, record)
    counts = next_failure_counts(replayed, replicates, rng, workers)
    dist = predictive_distribution(config, record)
    analytic = np.concatenate((dist.pmf, [dist.tail]))
    labels = tuple(config.grid.values) + ("tail",)
    return compare_frequencies(counts, analytic, replicates, labels, rng.describe(), z_bound)


def _records_chunk(args):
    config, k, rng, n = args
    R = config.grid.R
    out = np.full((n, k), -1, dtype=np.int64)
    for i in range(n):
        state = RupState.fresh(config, keep_history=False)
        for j in range(k):
            try:
                block, state = run_block(state, rng)
            except GridExhaustedError:
                out[i, j] = R + 1
                break
            out[i, j] = block.xi
    return out


def simulate_records(config: RupConfig, k: int, replicates: int, rng, workers: int = 1) -> np.ndarray:
    """Failure indices of ``k`` successive systems for many independent processes.

    Shape ``(replicates, k)``. A system that walks off the top of the grid is
    coded ``R + 1``; systems after it in the same replicate are coded -1.
    """
    rng = _as_stream(rng)
    jobs = [(config, k, rng.child(c), n) for c, n in _chunks(replicates)]
    return np.concatenate(_map(_records_chunk, jobs, workers), axis=0)
