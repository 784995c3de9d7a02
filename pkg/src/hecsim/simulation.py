"""Per-device Monte Carlo over a fleet, with streaming aggregation.

Each device draws from its own stream, derived from ``(master_seed,
device_index)`` through :class:`numpy.random.SeedSequence`. Devices are
evaluated in fixed-size blocks and block statistics are merged in index
order, so the aggregate is bit-identical for any worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from hecsim.errors import InvalidParameterError
from hecsim.model import (
    AGENTIC,
    AnalyticResult,
    CostParams,
    EnergyParams,
    SplitPolicy,
    WorkloadProfile,
    cost_cloud,
    cost_hec,
    energy_cloud,
    energy_hec,
)
from hecsim.workload import (
    ParetoParams,
    allocate,
    edge_cloud_volumes,
    normalize_to_annual,
    sample_tasks,
    split_volume,
)

Z_95 = 1.96
BLOCK_SIZE = 1024
ALLOCATION_MODES = ("task", "volume")


@dataclass(frozen=True)
class Scenario:
    profile: WorkloadProfile = AGENTIC
    energy: EnergyParams = field(default_factory=EnergyParams)
    cost: CostParams = field(default_factory=CostParams)
    split: SplitPolicy = field(default_factory=SplitPolicy)
    pareto: ParetoParams = field(default_factory=ParetoParams)
    n_tasks: int = 365
    n_devices: int = 10_000
    master_seed: int = 42
    # "task": Bernoulli label per task; "volume": deterministic p_edge share of GB
    allocation: str = "task"

    def __post_init__(self):
        if self.n_tasks < 1:
            raise InvalidParameterError(f"n_tasks must be >= 1, got {self.n_tasks}")
        if self.n_devices < 1:
            raise InvalidParameterError(f"n_devices must be >= 1, got {self.n_devices}")
        if not 0 <= self.master_seed < 2**64:
            raise InvalidParameterError(f"master_seed must fit in 64 unsigned bits, got {self.master_seed}")
        if self.allocation not in ALLOCATION_MODES:
            raise InvalidParameterError(f"allocation must be one of {ALLOCATION_MODES}, got {self.allocation!r}")

    def with_split(self, p_edge: float) -> "Scenario":
        return replace(self, split=SplitPolicy(p_edge))


@dataclass(frozen=True)
class DeviceResult:
    d_edge: float
    d_cloud: float
    energy_hec: float
    cost_hec: float
    realized_edge_fraction: float


def device_rng(master_seed: int, device_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(device_index,)))


def simulate_device(scenario: Scenario, device_index: int) -> DeviceResult:
    if not 0 <= device_index < scenario.n_devices:
        raise InvalidParameterError(
            f"device_index {device_index} out of range for {scenario.n_devices} devices"
        )
    rng = device_rng(scenario.master_seed, device_index)
    sizes = sample_tasks(rng, scenario.n_tasks, scenario.pareto)
    sizes = normalize_to_annual(sizes, scenario.profile.annual_gb)
    if scenario.allocation == "task":
        d_edge, d_cloud = edge_cloud_volumes(allocate(rng, sizes, scenario.split))
    else:
        d_edge, d_cloud = split_volume(sizes, scenario.split)
    return DeviceResult(
        d_edge=d_edge,
        d_cloud=d_cloud,
        energy_hec=energy_hec(d_edge, d_cloud, scenario.energy),
        cost_hec=cost_hec(d_edge, d_cloud, scenario.cost),
        realized_edge_fraction=d_edge / (d_edge + d_cloud),
    )


@dataclass(frozen=True)
class RunningStats:
    """Count, mean and sum of squared deviations; mergeable (Chan et al.)."""

    n: int = 0
    mean: float = 0.0
    m2: float = 0.0

    @classmethod
    def from_values(cls, values) -> "RunningStats":
        x = np.asarray(values, dtype=float)
        if x.size == 0:
            return cls()
        # shift by the first value: identical inputs give an exact mean and m2 == 0
        shifted = x - x[0]
        mean = x[0] + shifted.mean()
        return cls(int(x.size), float(mean), float(np.sum((x - mean) ** 2)))

    def merge(self, other: "RunningStats") -> "RunningStats":
        if other.n == 0:
            return self
        if self.n == 0:
            return other
        n = self.n + other.n
        delta = other.mean - self.mean
        mean = self.mean + delta * (other.n / n)
        m2 = self.m2 + other.m2 + delta * delta * (self.n * other.n / n)
        return RunningStats(n, mean, m2)

    @property
    def std(self) -> float:
        return math.sqrt(self.m2 / (self.n - 1)) if self.n > 1 else 0.0

    @property
    def ci_half_width(self) -> float:
        return Z_95 * self.std / math.sqrt(self.n) if self.n else 0.0


@dataclass(frozen=True)
class FleetAggregate:
    n_devices: int
    energy_hec: RunningStats
    cost_hec: RunningStats
    realized_edge_fraction: RunningStats
    energy_cloud_only: float
    cost_cloud_only: float

    @property
    def savings_energy(self) -> float:
        return 1.0 - self.energy_hec.mean / self.energy_cloud_only

    @property
    def savings_cost(self) -> float:
        return 1.0 - self.cost_hec.mean / self.cost_cloud_only


_BlockStats = tuple[RunningStats, RunningStats, RunningStats]


def _simulate_block(scenario: Scenario, start: int, stop: int) -> _BlockStats:
    results = [simulate_device(scenario, i) for i in range(start, stop)]
    return (
        RunningStats.from_values([r.energy_hec for r in results]),
        RunningStats.from_values([r.cost_hec for r in results]),
        RunningStats.from_values([r.realized_edge_fraction for r in results]),
    )


def _blocks(n: int, size: int = BLOCK_SIZE) -> list[tuple[int, int]]:
    return [(s, min(s + size, n)) for s in range(0, n, size)]


def _reduce(scenario: Scenario, block_stats) -> FleetAggregate:
    energy, cost, frac = RunningStats(), RunningStats(), RunningStats()
    for e, c, f in block_stats:
        energy, cost, frac = energy.merge(e), cost.merge(c), frac.merge(f)
    d_total = scenario.profile.annual_gb
    return FleetAggregate(
        n_devices=scenario.n_devices,
        energy_hec=energy,
        cost_hec=cost,
        realized_edge_fraction=frac,
        energy_cloud_only=energy_cloud(d_total, scenario.energy),
        cost_cloud_only=cost_cloud(d_total, scenario.cost),
    )


def run_fleet(
    scenario: Scenario,
    workers: int = 1,
    executor: Executor | None = None,
    block_size: int = BLOCK_SIZE,
) -> FleetAggregate:
    """Simulate every device of ``scenario`` and aggregate the results.

    ``workers > 1`` spins up a process pool; alternatively pass any
    ``concurrent.futures.Executor``. The output does not depend on either.
    ``block_size`` fixes the reduction tree and may move the last bits.
    """
    if block_size < 1:
        raise InvalidParameterError(f"block_size must be >= 1, got {block_size}")
    blocks = _blocks(scenario.n_devices, block_size)
    starts = [b[0] for b in blocks]
    stops = [b[1] for b in blocks]
    scenarios = [scenario] * len(blocks)
    if executor is not None:
        stats = list(executor.map(_simulate_block, scenarios, starts, stops))
    elif workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(_simulate_block, scenarios, starts, stops))
    else:
        stats = [_simulate_block(scenario, a, b) for a, b in blocks]
    return _reduce(scenario, stats)


@dataclass(frozen=True)
class Deviation:
    quantity: str
    simulated: float
    analytic: float
    abs_dev: float
    rel_dev: float
    ci_half_width: float
    within_ci: bool


@dataclass(frozen=True)
class DeviationReport:
    deviations: tuple[Deviation, ...]

    def __getitem__(self, quantity: str) -> Deviation:
        for d in self.deviations:
            if d.quantity == quantity:
                return d
        raise KeyError(quantity)

    @property
    def all_within_ci(self) -> bool:
        return all(d.within_ci for d in self.deviations)


def _deviation(quantity, simulated, analytic, half_width) -> Deviation:
    abs_dev = abs(simulated - analytic)
    if analytic != 0:
        rel_dev = abs_dev / abs(analytic)
    else:
        rel_dev = 0.0 if abs_dev == 0 else math.inf
    # float slack so degenerate (zero-width) intervals still admit rounding noise
    within = abs_dev <= half_width + 1e-12 * abs(analytic)
    return Deviation(quantity, simulated, analytic, abs_dev, rel_dev, half_width, within)


def compare_with_analytic(agg: FleetAggregate, ar: AnalyticResult) -> DeviationReport:
    """Deviation of fleet means from the closed-form values, with 95% CI checks."""
    d_total = ar.d_edge + ar.d_cloud
    p_edge = ar.d_edge / d_total if d_total > 0 else 0.0
    return DeviationReport((
        _deviation("energy_hec", agg.energy_hec.mean, ar.energy_hec, agg.energy_hec.ci_half_width),
        _deviation("cost_hec", agg.cost_hec.mean, ar.cost_hec, agg.cost_hec.ci_half_width),
        _deviation(
            "energy_savings", agg.savings_energy, ar.savings_energy_fraction,
            agg.energy_hec.ci_half_width / agg.energy_cloud_only,
        ),
        _deviation(
            "cost_savings", agg.savings_cost, ar.savings_cost_fraction,
            agg.cost_hec.ci_half_width / agg.cost_cloud_only,
        ),
        _deviation(
            "edge_fraction", agg.realized_edge_fraction.mean, p_edge,
            agg.realized_edge_fraction.ci_half_width,
        ),
    ))
