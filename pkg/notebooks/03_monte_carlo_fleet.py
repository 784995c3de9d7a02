# %% [markdown]
# # Monte Carlo over a device fleet
#
# 10,000 agentic devices, 365 Pareto-sized tasks each, every task sent to
# the edge with probability 0.8. Each device has its own random stream
# derived from the master seed, so the result does not depend on how many
# workers run it.

# %%
from dataclasses import replace

from hecsim import ParetoParams, Scenario, analytic_scenario, compare_with_analytic, run_fleet

scenario = Scenario()  # agentic, p_edge=0.8, alpha=2, 10,000 devices, seed 42
agg = run_fleet(scenario)
ar = analytic_scenario(scenario.profile, scenario.energy, scenario.cost, scenario.split)

print(f"mean hybrid energy {agg.energy_hec.mean:.1f} +/- {agg.energy_hec.ci_half_width:.1f} kWh"
      f" (analytic {ar.energy_hec:.1f})")
print(f"energy saving {agg.savings_energy:.4f} vs {ar.savings_energy_fraction:.4f}")
print(f"cost saving   {agg.savings_cost:.4f} vs {ar.savings_cost_fraction:.4f}")

# %% [markdown]
# ## Deviation report

# %%
for d in compare_with_analytic(agg, ar).deviations:
    print(f"{d.quantity:15s} rel dev {d.rel_dev:.2e}  within 95% CI: {d.within_ci}")

# %% [markdown]
# Seed 42 lands about 2.2 standard errors from the analytic value, so the
# 95% interval misses it; all five rows move together because the
# realized edge share drives every one of them. Pooling more seeds shows
# the share is unbiased:

# %%
from hecsim.simulation import RunningStats

pooled = RunningStats()
for seed in range(1000, 1010):
    pooled = pooled.merge(run_fleet(replace(scenario, master_seed=seed, n_devices=2000)).realized_edge_fraction)
z = (pooled.mean - scenario.split.p_edge) / (pooled.std / pooled.n ** 0.5)
print(f"pooled edge share over {pooled.n} devices: {pooled.mean:.5f} (z = {z:+.2f})")

# %% [markdown]
# ## Does the tail shape matter?
#
# Normalizing each device to a fixed annual volume removes most of the
# effect of `alpha`.

# %%
agg3 = run_fleet(replace(scenario, pareto=ParetoParams(3.0)))
print(f"energy saving alpha=2 {agg.savings_energy:.4f}, alpha=3 {agg3.savings_energy:.4f}")
print(f"per-device spread of realized edge share: alpha=2 {agg.realized_edge_fraction.std:.4f},"
      f" alpha=3 {agg3.realized_edge_fraction.std:.4f}")

# %% [markdown]
# The fleet means agree; the heavier tail (alpha=2) only widens the
# per-device spread, because a few big tasks decide where most GB go.
