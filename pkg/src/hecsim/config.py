"""TOML scenario files with layered precedence: defaults < file < overrides.

A scenario file looks like::

    [profile]
    label = "agentic"
    daily_gb = 20.0

    [energy]
    e_transmit = 0.7
    e_cloud = 1.5
    e_local = 0.5

    [cost]
    c_bandwidth = 0.10
    c_hosting = 0.20
    c_software = 0.02

    [pareto]
    alpha = 2.0
    x_min = 1.0

    [split]
    p_edge = 0.8

    [sim]
    n_tasks = 365
    n_devices = 10000
    master_seed = 42
    allocation = "task"

Every key is optional.
"""
from __future__ import annotations

import copy
import json
from dataclasses import asdict
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from hecsim.errors import InvalidParameterError
from hecsim.model import PROFILES, CostParams, EnergyParams, SplitPolicy, WorkloadProfile
from hecsim.simulation import Scenario
from hecsim.workload import ParetoParams


class ConfigError(InvalidParameterError):
    pass


DEFAULTS: dict[str, dict] = {
    "profile": {"label": "agentic", "daily_gb": None},
    "energy": {"e_transmit": 0.7, "e_cloud": 1.5, "e_local": 0.5},
    "cost": {"c_bandwidth": 0.10, "c_hosting": 0.20, "c_software": 0.02},
    "pareto": {"alpha": 2.0, "x_min": 1.0},
    "split": {"p_edge": 0.8},
    "sim": {"n_tasks": 365, "n_devices": 10_000, "master_seed": 42, "allocation": "task"},
}


def merge(base: dict, layer: dict, origin: str = "config") -> dict:
    """Overlay ``layer`` onto ``base``; unknown sections or keys are errors."""
    out = copy.deepcopy(base)
    for section, values in layer.items():
        if section not in DEFAULTS:
            raise ConfigError(f"{origin}: unknown section {section!r}")
        if not isinstance(values, dict):
            raise ConfigError(f"{origin}: section {section!r} must be a table")
        for key, value in values.items():
            if key not in DEFAULTS[section]:
                raise ConfigError(f"{origin}: unknown key {section}.{key}")
            if value is not None:
                out[section][key] = value
    return out


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> dict:
    cfg = copy.deepcopy(DEFAULTS)
    if path is not None:
        try:
            with open(path, "rb") as fh:
                layer = tomllib.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        cfg = merge(cfg, layer, origin=str(path))
    if overrides:
        cfg = merge(cfg, overrides, origin="override")
    return cfg


def _number(section: str, key: str, value, kind=float):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}.{key} must be a number, got {value!r}")
    if kind is int:
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError(f"{section}.{key} must be an integer, got {value!r}")
        return int(value)
    return float(value)


def scenario_from_config(cfg: dict) -> Scenario:
    prof = cfg["profile"]
    label = str(prof["label"])
    daily = prof["daily_gb"]
    if daily is None:
        if label not in PROFILES:
            raise ConfigError(f"profile {label!r} is not built in; set profile.daily_gb")
        daily = PROFILES[label].daily_gb
    sim = cfg["sim"]
    return Scenario(
        profile=WorkloadProfile(label, _number("profile", "daily_gb", daily)),
        energy=EnergyParams(**{k: _number("energy", k, v) for k, v in cfg["energy"].items()}),
        cost=CostParams(**{k: _number("cost", k, v) for k, v in cfg["cost"].items()}),
        split=SplitPolicy(_number("split", "p_edge", cfg["split"]["p_edge"])),
        pareto=ParetoParams(**{k: _number("pareto", k, v) for k, v in cfg["pareto"].items()}),
        n_tasks=_number("sim", "n_tasks", sim["n_tasks"], int),
        n_devices=_number("sim", "n_devices", sim["n_devices"], int),
        master_seed=_number("sim", "master_seed", sim["master_seed"], int),
        allocation=str(sim["allocation"]),
    )


def config_from_scenario(scenario: Scenario) -> dict:
    return {
        "profile": {"label": scenario.profile.label, "daily_gb": scenario.profile.daily_gb},
        "energy": asdict(scenario.energy),
        "cost": asdict(scenario.cost),
        "pareto": asdict(scenario.pareto),
        "split": {"p_edge": scenario.split.p_edge},
        "sim": {
            "n_tasks": scenario.n_tasks,
            "n_devices": scenario.n_devices,
            "master_seed": scenario.master_seed,
            "allocation": scenario.allocation,
        },
    }


def dumps(cfg: dict) -> str:
    """Write a config dict as TOML (flat sections of scalars only)."""
    lines = []
    for section, values in cfg.items():
        lines.append(f"[{section}]")
        for key, value in values.items():
            if value is None:
                continue
            if isinstance(value, str):
                lines.append(f"{key} = {json.dumps(value)}")
            elif isinstance(value, bool):
                lines.append(f"{key} = {str(value).lower()}")
            else:
                lines.append(f"{key} = {value!r}")
        lines.append("")
    return "\n".join(lines)
