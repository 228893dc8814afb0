# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Polya urns and their limit
#
# A Polya urn returns each drawn ball together with `s` extra balls of the
# same color. The black fraction is a martingale and converges to a Beta
# random variable whose mean is the starting black fraction.

# %%
import numpy as np
from scipy import stats

from urnshock import (
    Color,
    ReinforcementMatrix,
    RngStream,
    UrnComposition,
    draw_probability,
    limit_distribution_parameters,
    matrix_draw,
    polya_black_fractions,
    polya_draw,
)

urn = UrnComposition.two_color(white=3, black=1)
print("P(black) =", draw_probability(urn, Color.BLACK))

rng = RngStream(seed=1)
for _ in range(5):
    color, urn = polya_draw(urn, s=1, rng=rng)
    print(color, urn.as_dict())

# %% [markdown]
# Many urns run for 10 000 draws; the black fractions should look like
# Beta(1, 3).

# %%
a, b = limit_distribution_parameters(UrnComposition.two_color(3, 1), s=1)
z = polya_black_fractions(3, 1, 1, steps=10_000, replicates=10_000, rng=RngStream(7))
print("limit shapes:", (a, b))
print("mean of Z_T:", z.mean(), "expected", a / (a + b))
print("KS distance:", stats.kstest(z, stats.beta(a, b).cdf).statistic)

hist, edges = np.histogram(z, bins=10, range=(0, 1))
for lo, count in zip(edges, hist):
    print(f"{lo:.1f} {'#' * (count // 100)}")

# %% [markdown]
# The three-color matrix urn: a risky (red) draw adds `r = s - p` risky balls
# and `p` default balls.

# %%
M = ReinforcementMatrix.ubgesm(s=2, p=1)
print(M.entries)
urn3 = UrnComposition.three_color(8, 1, 1)
color, urn3 = matrix_draw(urn3, M, RngStream(3))
print(color, urn3.as_dict(), "total", urn3.total)
