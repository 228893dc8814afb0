# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Metal bars under increasing load
#
# Each bar is loaded at 100, 150, ... until it cracks. A crack at a load is
# a black ball from that load's urn. After a batch of bars we predict the
# breaking load of the next one, and see how the reinforcement size `s`
# trades data against prior.

# %%
from urnshock import RngStream
from urnshock.demo import default_bar_config, run_demo_bar_loading

config = default_bar_config(s=1.0)
report = run_demo_bar_loading(config, bars=12, rng=RngStream(2026))
print("failure loads:", report["failure_loads"])

nxt = report["next_bar_predictive"]
prior = report["prior_predictive"]
for load, p0, p1 in zip(report["loads"], prior.pmf, nxt.pmf):
    print(f"{load:5.0f}  prior {p0:.3f}  next bar {p1:.3f}")

# %%
for row in report["calibration"]:
    print(f"s={row['s']:>4}: mean breaking load on grid {row['mean_on_grid']:.1f}")
