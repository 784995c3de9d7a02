# %% [markdown]
# # Pareto task sizes
#
# Task sizes follow a Pareto law with shape `alpha` and minimum `x_min`.
# Sampling goes through the inverse CDF; each device's tasks are then
# rescaled so they add up to the device's annual volume.

# %%
import numpy as np
from scipy import stats

from hecsim import ParetoParams, normalize_to_annual, pareto_cdf, sample_tasks

rng = np.random.default_rng(42)

# %% [markdown]
# ## Sample moments and a KS check against the analytic CDF

# %%
for alpha in (2.0, 3.0):
    pp = ParetoParams(alpha, 1.0)
    x = sample_tasks(rng, 100_000, pp)
    ks = stats.kstest(x, lambda v: pareto_cdf(v, pp)).statistic
    print(f"alpha={alpha:g}: mean {x.mean():.4f} (analytic {pp.mean:.4f}), "
          f"KS {ks:.4f}, min {x.min():.4f}")

# %% [markdown]
# With alpha=2 the variance is infinite, so the sample mean wanders more
# than with alpha=3.
#
# ## Heavy tail: how much volume do the largest tasks carry?

# %%
x = np.sort(sample_tasks(rng, 365, ParetoParams(2.0, 1.0)))[::-1]
top = x[: len(x) // 5].sum() / x.sum()
print(f"top 20% of tasks carry {top:.1%} of the volume")

# %% [markdown]
# ## Normalizing one device-year to 7,300 GB

# %%
sizes = normalize_to_annual(x, 7300.0)
print(f"sum after normalization: {sizes.sum():.6f} GB, largest task {sizes.max():.1f} GB")
