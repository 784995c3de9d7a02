"""Energy and cost of hybrid edge-cloud processing vs. cloud-only, analytic and Monte Carlo."""
from hecsim.errors import DomainError, InvalidParameterError
from hecsim.model import (
    AGENTIC,
    PROFILES,
    TRADITIONAL,
    AnalyticResult,
    CostParams,
    EnergyParams,
    SplitPolicy,
    WorkloadProfile,
    analytic_scenario,
    annualize,
    cost_cloud,
    cost_hec,
    energy_cloud,
    energy_hec,
    savings_cost_fraction,
    savings_energy_fraction,
)
from hecsim.reporting import (
    ReproductionReport,
    SweepRow,
    render_table,
    reproduce_published,
    sweep_edge_split,
)
from hecsim.simulation import (
    DeviceResult,
    DeviationReport,
    FleetAggregate,
    Scenario,
    compare_with_analytic,
    run_fleet,
    simulate_device,
)
from hecsim.workload import (
    ParetoParams,
    TaskSet,
    allocate,
    edge_cloud_volumes,
    normalize_to_annual,
    pareto_cdf,
    pareto_pdf,
    pareto_quantile,
    sample_tasks,
)

__version__ = "0.1.0"
