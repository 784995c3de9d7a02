# %% [markdown]
# # Savings across edge splits, and the published headline figures

# %%
import sys

from hecsim import Scenario, render_table, reproduce_published, sweep_edge_split
from hecsim.reporting import render_report

splits = [0.5, 0.6, 0.7, 0.8, 0.9]
base = Scenario(n_devices=2000)

# %% [markdown]
# ## Analytic vs. simulated sweep

# %%
rows = []
for a, m in zip(sweep_edge_split(base, splits, "analytic"),
                sweep_edge_split(base, splits, "monte_carlo")):
    rows += [a, m]
sys.stdout.write(render_table(rows, "text").decode())

# %% [markdown]
# The CSV form feeds straight into a plotting tool:

# %%
sys.stdout.write(render_table(rows[::2], "csv").decode())

# %% [markdown]
# ## Headline figures
#
# Figures the closed-form model reproduces are marked MATCH. Figures it
# cannot produce from the stated rates are marked KNOWN ERRATUM.

# %%
sys.stdout.write(render_report(reproduce_published(n_devices=2000), "text").decode())
