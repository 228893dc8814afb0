# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Beta-Stacy prior and posterior
#
# The failure-state distribution is random: independent Beta hazards at each
# state build `F(v_k) = 1 - prod_{j<=k} (1 - Y_j)`. Observing failures updates
# the hazard shapes by simple counting.

# %%
import numpy as np

from urnshock import (
    FailureRecord,
    RngStream,
    RupConfig,
    StateGrid,
    beta_stacy_posterior,
    beta_stacy_prior,
    mean_cdf,
    predictive_distribution,
    sample_cdfs,
)

config = RupConfig(StateGrid.range(5), ((4, 1), (3, 1), (2, 1), (1, 1), (0, 1)), s=1)
record = FailureRecord(config.grid, (1, 2, 2, 3))

prior = beta_stacy_prior(config)
post = beta_stacy_posterior(prior, record, config.s)
print("prior shapes (failure, survival):", list(zip(prior.failure, prior.survival)))
print("posterior shapes:", list(zip(post.failure, post.survival)))

# %% [markdown]
# The posterior mean CDF is the predictive CDF of the next system.

# %%
print(mean_cdf(post))
print(predictive_distribution(config, record).cdf)

# %%
draws = sample_cdfs(post, 20_000, RngStream(9))
print("MC mean CDF:", draws.mean(axis=0))
print("5% / 95% bands:")
print(np.quantile(draws, [0.05, 0.95], axis=0))
