# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Reinforced urn process and predictive failure laws
#
# One urn per state. A system walks up the states until a black ball is
# drawn; that state is its failure state. Urns keep their reinforcement, so
# each observed system sharpens the law of the next one.

# %%
import numpy as np

from urnshock import (
    FailureRecord,
    RngStream,
    RupConfig,
    StateGrid,
    check_recurrence,
    estimate_predictive,
    predictive_distribution,
    predictive_mean,
    run_systems,
    zero_blocks,
)

grid = StateGrid.range(6)
# the top state has no white balls, so every system fails on the grid
config = RupConfig(grid, ((1, 1),) * 5 + ((0, 1),), s=1)

record, state = run_systems(config, k=8, rng=RngStream(1))
print("path:", state.history)
print("failure states:", record.indices)
print("blocks:", [b.states for b in zero_blocks(state.history).blocks])

# %% [markdown]
# Predictive law of the ninth system. The tail is the mass beyond the last
# grid state and is kept separate from the mean.

# %%
dist = predictive_distribution(config, record)
for v, p in zip(grid, dist.pmf):
    print(f"P(xi = {v:g}) = {p:.4f}")
print("tail:", dist.tail)
print("mean on grid, tail:", predictive_mean(config, record))

# %% [markdown]
# Monte Carlo check: replay the observed counts into the urns and simulate
# the next block many times.

# %%
report = estimate_predictive(config, record, replicates=100_000, rng=RngStream(5))
for label, est, ref, z in zip(report.labels, report.estimate, report.analytic, report.z_scores):
    print(f"{label!s:>5} mc={est:.4f} exact={ref:.4f} z={z:+.2f}")
print("verdict:", report.verdict)

# %% [markdown]
# Recurrence: the probability of walking forever without a black ball is the
# product of white fractions.

# %%
rep = check_recurrence(lambda i: (np.ones(i.shape), i.astype(float) ** 2 + 1), horizon=10**5)
print("white product", rep.white_product, "black product", rep.black_product)
print("recurrent:", rep.recurrent, "products disagree:", rep.discrepancy)
