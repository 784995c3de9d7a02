# %% [markdown]
# # Closed-form energy and cost
#
# Cloud-only vs. hybrid edge-cloud for one device, using the default
# rates: 0.7 kWh/GB to transmit, 1.5 kWh/GB to process in the cloud,
# 0.5 kWh/GB to process on the device; $0.10/GB bandwidth, $0.20/GB
# hosting, $0.02/GB device software.

# %%
from hecsim import (
    AGENTIC,
    TRADITIONAL,
    CostParams,
    EnergyParams,
    SplitPolicy,
    analytic_scenario,
)

ep, cp = EnergyParams(), CostParams()

# %% [markdown]
# ## Both profiles at an 80% edge split

# %%
for profile in (TRADITIONAL, AGENTIC):
    ar = analytic_scenario(profile, ep, cp, SplitPolicy(0.8))
    print(f"{profile.label:12s} {profile.annual_gb:7.0f} GB/yr")
    print(f"  energy  cloud {ar.energy_cloud_only:9.2f} kWh   hybrid {ar.energy_hec:9.2f} kWh"
          f"   saving {ar.savings_energy_fraction:.2%}")
    print(f"  cost    cloud {ar.cost_cloud_only:9.2f} USD   hybrid {ar.cost_hec:9.2f} USD"
          f"   saving {ar.savings_cost_fraction:.2%}")

# %% [markdown]
# Savings fractions do not depend on the data volume: both profiles save
# the same share, only the absolute numbers scale.
#
# ## When local processing is the expensive path
#
# The model does not clamp savings at zero. With a device that burns more
# energy per GB than the cloud path, the saving turns negative.

# %%
hungry_device = EnergyParams(e_transmit=0.2, e_cloud=0.3, e_local=0.8)
ar = analytic_scenario(AGENTIC, hungry_device, cp, SplitPolicy(0.8))
print(f"energy saving with a power-hungry device: {ar.savings_energy_fraction:.2%}")
