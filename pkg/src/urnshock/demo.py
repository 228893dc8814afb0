"""Metal-bar loading scenario.

Bars are loaded at increasing levels until they crack. Each load level
owns an urn; a crack is a black draw. After some bars the predictive law
of the next bar's breaking load and the beta-Stacy posterior summarize what
was learned, and re-running the update with several reinforcement sizes
shows how ``s`` weighs observations against the prior.
"""
from __future__ import annotations

import numpy as np

from .grid import StateGrid
from .inference import (
    beta_stacy_posterior,
    beta_stacy_prior,
    mean_cdf,
    predictive_distribution,
)
from .rup import RupConfig, run_systems

DEFAULT_LOADS = (100, 150, 200, 250, 300, 350, 400, 450)


def default_bar_config(loads=DEFAULT_LOADS, s: float = 1.0) -> RupConfig:
    """Prior where cracking gets likelier with load and the top load always cracks the bar."""
    grid = StateGrid(loads)
    R = grid.R
    return RupConfig(grid, tuple((float(R - i), 1.0) for i in range(R + 1)), s)


def run_demo_bar_loading(config: RupConfig, bars: int, rng, calibration=(0.1, 1.0, 10.0)) -> dict:
    record, state = run_systems(config, bars, rng, keep_history=False)
    prior = beta_stacy_prior(config)
    post = beta_stacy_posterior(prior, record, config.s)
    nxt = predictive_distribution(config, record)
    calib = []
    for s in calibration:
        alt = RupConfig(config.grid, config.priors, s)
        d = predictive_distribution(alt, record)
        calib.append({"s": float(s), "pmf": d.pmf, "tail": d.tail, "mean_on_grid": d.mean_on_grid})
    return {
        "scenario": "bar-loading",
        "loads": list(config.grid.values),
        "s": config.s,
        "bars": bars,
        "failure_loads": list(record.values),
        "failure_indices": list(record.indices),
        "prior_predictive": predictive_distribution(config),
        "next_bar_predictive": nxt,
        "posterior": post,
        "posterior_mean_cdf": mean_cdf(post),
        "calibration": calib,
        "urn_visits": np.asarray(state.visits),
    }
