# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Extreme shock models
#
# Classical: fail at the first shock above `t`. Generalized: shocks above
# `beta` damage the system and lower the fatal threshold.

# %%
import numpy as np

from urnshock import (
    Exponential,
    GeneralizedRupSpec,
    RngStream,
    ShockStream,
    StateGrid,
    ThresholdSchedule,
    Uniform,
    discretize,
    simulate_classical,
    simulate_generalized,
    ubgesm_lifetimes,
)

stream = ShockStream(Exponential(1.0), Uniform(0.5, 1.5))
schedule = ThresholdSchedule(t=2.0, beta=1.0, alpha=(2.0, 1.6, 1.3))

classical = [simulate_classical(stream, 2.0, RngStream(1, i)) for i in range(5000)]
general = [simulate_generalized(stream, schedule, RngStream(1, i)) for i in range(5000)]
print("mean tau classical:", np.mean([o.tau for o in classical]), "(e^2 =", np.e**2, ")")
print("mean tau generalized:", np.mean([o.tau for o in general]))
print("mean failure time generalized:", np.mean([o.T_tau for o in general]))

# %% [markdown]
# Failure times mapped onto a grid become records for the urn model.

# %%
grid = StateGrid(np.arange(0, 41, 2.0))
times = [o.T_tau for o in general[:10] if o.T_tau <= 40]
print(discretize(times, grid).indices)

# %% [markdown]
# The three-color shock urn run as a chain of urns, against the single urn.

# %%
spec = GeneralizedRupSpec((8, 1, 1), s=2, p=1)
chain = ubgesm_lifetimes(spec, 20_000, RngStream(2), horizon=20, method="chain")
single = ubgesm_lifetimes(spec, 20_000, RngStream(3), horizon=20, method="single")
print("chain :", np.bincount(chain, minlength=22)[1:8] / 20_000)
print("single:", np.bincount(single, minlength=22)[1:8] / 20_000)
