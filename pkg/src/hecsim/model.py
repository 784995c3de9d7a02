"""Closed-form energy and cost model for cloud-only vs. hybrid edge-cloud.

Every quantity is a plain ``float``; the aliases below only document units.
All functions are pure and deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from hecsim.errors import InvalidParameterError

GB = float
KWh = float
USD = float
Fraction = float

DAYS_PER_YEAR = 365


def _check_nonneg(name: str, value: float) -> None:
    if not math.isfinite(value) or value < 0:
        raise InvalidParameterError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class EnergyParams:
    """Per-GB energy rates in kWh/GB."""

    e_transmit: float = 0.7
    e_cloud: float = 1.5
    e_local: float = 0.5

    def __post_init__(self):
        for name in ("e_transmit", "e_cloud", "e_local"):
            _check_nonneg(name, getattr(self, name))

    @property
    def cloud_path(self) -> float:
        return self.e_transmit + self.e_cloud


@dataclass(frozen=True)
class CostParams:
    """Per-GB monetary rates in USD/GB."""

    c_bandwidth: float = 0.10
    c_hosting: float = 0.20
    c_software: float = 0.02

    def __post_init__(self):
        for name in ("c_bandwidth", "c_hosting", "c_software"):
            _check_nonneg(name, getattr(self, name))

    @property
    def cloud_path(self) -> float:
        return self.c_bandwidth + self.c_hosting


@dataclass(frozen=True)
class WorkloadProfile:
    label: str
    daily_gb: GB
    annual_gb: GB = field(init=False)

    def __post_init__(self):
        if not math.isfinite(self.daily_gb) or self.daily_gb <= 0:
            raise InvalidParameterError(f"daily_gb must be finite and > 0, got {self.daily_gb!r}")
        object.__setattr__(self, "annual_gb", annualize(self.daily_gb))


@dataclass(frozen=True)
class SplitPolicy:
    """Probability that a task runs on the device instead of the cloud."""

    p_edge: Fraction = 0.8

    def __post_init__(self):
        p = self.p_edge
        if not math.isfinite(p) or not 0.0 <= p <= 1.0:
            raise InvalidParameterError(f"p_edge must lie in [0, 1], got {p!r}")

    @property
    def p_cloud(self) -> Fraction:
        return 1.0 - self.p_edge


@dataclass(frozen=True)
class AnalyticResult:
    d_edge: GB
    d_cloud: GB
    energy_cloud_only: KWh
    energy_hec: KWh
    cost_cloud_only: USD
    cost_hec: USD
    savings_energy_fraction: Fraction
    savings_cost_fraction: Fraction

    @property
    def energy_saved(self) -> KWh:
        return self.energy_cloud_only - self.energy_hec

    @property
    def cost_saved(self) -> USD:
        return self.cost_cloud_only - self.cost_hec


def annualize(daily_gb: GB) -> GB:
    """Convert a per-day volume to a per-year volume (365-day year)."""
    _check_nonneg("daily_gb", daily_gb)
    return daily_gb * DAYS_PER_YEAR


TRADITIONAL = WorkloadProfile("traditional", 2.4)
AGENTIC = WorkloadProfile("agentic", 20.0)
PROFILES = {p.label: p for p in (TRADITIONAL, AGENTIC)}


def energy_cloud(d_total: GB, ep: EnergyParams) -> KWh:
    _check_nonneg("d_total", d_total)
    return d_total * ep.cloud_path


def energy_hec(d_edge: GB, d_cloud: GB, ep: EnergyParams) -> KWh:
    _check_nonneg("d_edge", d_edge)
    _check_nonneg("d_cloud", d_cloud)
    return d_edge * ep.e_local + d_cloud * ep.cloud_path


def cost_cloud(d_total: GB, cp: CostParams) -> USD:
    _check_nonneg("d_total", d_total)
    return d_total * cp.cloud_path


def cost_hec(d_edge: GB, d_cloud: GB, cp: CostParams) -> USD:
    _check_nonneg("d_edge", d_edge)
    _check_nonneg("d_cloud", d_cloud)
    return d_cloud * cp.cloud_path + d_edge * cp.c_software


def _check_probability(p: float) -> None:
    if not math.isfinite(p) or not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"p_edge must lie in [0, 1], got {p!r}")


def savings_energy_fraction(ep: EnergyParams, p_edge: Fraction) -> Fraction:
    """Fractional energy saving of the hybrid setup at edge split ``p_edge``.

    Negative when local processing costs more energy per GB than the
    cloud path; that result is returned as-is.
    """
    _check_probability(p_edge)
    path = ep.cloud_path
    if path == 0:
        raise ZeroDivisionError("energy savings undefined: e_transmit + e_cloud is 0")
    return (path - ep.e_local) / path * p_edge


def savings_cost_fraction(cp: CostParams, p_edge: Fraction) -> Fraction:
    _check_probability(p_edge)
    path = cp.cloud_path
    if path == 0:
        raise ZeroDivisionError("cost savings undefined: c_bandwidth + c_hosting is 0")
    return (path - cp.c_software) / path * p_edge


def analytic_scenario(
    profile: WorkloadProfile,
    ep: EnergyParams,
    cp: CostParams,
    split: SplitPolicy,
) -> AnalyticResult:
    """Evaluate every closed-form quantity for one profile and split.

    The savings fields come from the closed-form fraction formulas and are
    cross-checked against ``1 - hec / cloud_only``.
    """
    d_total = profile.annual_gb
    d_edge = split.p_edge * d_total
    d_cloud = split.p_cloud * d_total

    e_cloud = energy_cloud(d_total, ep)
    e_hec = energy_hec(d_edge, d_cloud, ep)
    c_cloud = cost_cloud(d_total, cp)
    c_hec = cost_hec(d_edge, d_cloud, cp)
    s_energy = savings_energy_fraction(ep, split.p_edge)
    s_cost = savings_cost_fraction(cp, split.p_edge)

    for name, closed, cloud_only, hec in (
        ("energy", s_energy, e_cloud, e_hec),
        ("cost", s_cost, c_cloud, c_hec),
    ):
        if cloud_only > 0:
            ratio = 1.0 - hec / cloud_only
            if not math.isclose(closed, ratio, rel_tol=1e-12, abs_tol=1e-14):
                raise ArithmeticError(
                    f"{name} savings disagree: closed form {closed!r} vs ratio {ratio!r}"
                )

    return AnalyticResult(
        d_edge=d_edge,
        d_cloud=d_cloud,
        energy_cloud_only=e_cloud,
        energy_hec=e_hec,
        cost_cloud_only=c_cloud,
        cost_hec=c_hec,
        savings_energy_fraction=s_energy,
        savings_cost_fraction=s_cost,
    )
