"""Command-line interface: analytic, simulate, sweep, dist-check, reproduce.

Exit codes: 0 success, 1 usage or config error, 2 published-figure
mismatch, 3 distribution check failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict

import numpy as np
from scipy import stats

from hecsim.config import ConfigError, load_config, scenario_from_config
from hecsim.errors import InvalidParameterError
from hecsim.model import PROFILES, analytic_scenario
from hecsim.reporting import (
    FORMATS,
    SOURCES,
    render_records,
    render_report,
    render_table,
    reproduce_published,
    sweep_edge_split,
)
from hecsim.simulation import compare_with_analytic, run_fleet
from hecsim.workload import ParetoParams, pareto_cdf, sample_tasks

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_DIST = 3

KS_LIMIT = 0.01
DEFAULT_SAMPLE_SIZE = 100_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# (flag, section, key, type)
_SCENARIO_FLAGS = [
    ("--daily-gb", "profile", "daily_gb", float),
    ("--e-transmit", "energy", "e_transmit", float),
    ("--e-cloud", "energy", "e_cloud", float),
    ("--e-local", "energy", "e_local", float),
    ("--c-bandwidth", "cost", "c_bandwidth", float),
    ("--c-hosting", "cost", "c_hosting", float),
    ("--c-software", "cost", "c_software", float),
    ("--alpha", "pareto", "alpha", float),
    ("--x-min", "pareto", "x_min", float),
    ("--p-edge", "split", "p_edge", float),
    ("--n-tasks", "sim", "n_tasks", int),
    ("--n-devices", "sim", "n_devices", int),
]


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="TOML scenario file")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--seed", type=int, help="master seed (overrides sim.master_seed)")
    p.add_argument("--out", help="write output here instead of stdout")
    return p


def _scenario_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--profile", choices=sorted(PROFILES))
    for flag, _, _, typ in _SCENARIO_FLAGS:
        p.add_argument(flag, type=typ)
    p.add_argument("--allocation", choices=("task", "volume"))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hecsim", description="Hybrid edge-cloud energy and cost model.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    glob, scen = _global_flags(), _scenario_flags()

    sub.add_parser("analytic", parents=[glob, scen], help="closed-form evaluation")

    p = sub.add_parser("simulate", parents=[glob, scen], help="Monte Carlo fleet run")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sweep", parents=[glob, scen], help="savings over a range of edge splits")
    p.add_argument("--from", dest="start", type=float, default=0.5)
    p.add_argument("--to", dest="stop", type=float, default=0.9)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--source", choices=(*SOURCES, "both"), default="analytic")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("dist-check", parents=[glob], help="validate the Pareto sampler")
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--x-min", type=float, default=1.0)
    p.add_argument("--sample-size", type=int, default=DEFAULT_SAMPLE_SIZE)

    p = sub.add_parser("reproduce", parents=[glob], help="check published headline figures")
    p.add_argument("--n-devices", type=int, default=10_000)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _overrides(args) -> dict:
    layer: dict[str, dict] = {}
    for flag, section, key, _ in _SCENARIO_FLAGS:
        value = getattr(args, flag.lstrip("-").replace("-", "_"))
        if value is not None:
            layer.setdefault(section, {})[key] = value
    if args.profile is not None:
        prof = layer.setdefault("profile", {})
        prof["label"] = args.profile
        prof.setdefault("daily_gb", PROFILES[args.profile].daily_gb)
    if args.allocation is not None:
        layer.setdefault("sim", {})["allocation"] = args.allocation
    if args.seed is not None:
        layer.setdefault("sim", {})["master_seed"] = args.seed
    return layer


def _scenario(args):
    return scenario_from_config(load_config(args.config, _overrides(args)))


def _key_value_text(record: dict, units: dict) -> bytes:
    width = max(len(k) for k in record)
    lines = []
    for key, value in record.items():
        unit = units.get(key, "")
        if unit == "fraction":
            lines.append(f"{key.ljust(width)}  {value:.4f}  ({value * 100:.2f}%)")
        elif isinstance(value, float):
            lines.append(f"{key.ljust(width)}  {value:.2f} {unit}".rstrip())
        else:
            lines.append(f"{key.ljust(width)}  {value}")
    return ("\n".join(lines) + "\n").encode()


_ANALYTIC_UNITS = {
    "d_edge": "GB", "d_cloud": "GB",
    "energy_cloud_only": "kWh", "energy_hec": "kWh", "energy_saved": "kWh",
    "cost_cloud_only": "USD", "cost_hec": "USD", "cost_saved": "USD",
    "savings_energy_fraction": "fraction", "savings_cost_fraction": "fraction",
}


def cmd_analytic(args) -> tuple[bytes, int]:
    sc = _scenario(args)
    ar = analytic_scenario(sc.profile, sc.energy, sc.cost, sc.split)
    record = {"profile": sc.profile.label, "annual_gb": sc.profile.annual_gb, "p_edge": sc.split.p_edge}
    record.update(asdict(ar))
    record["energy_saved"] = ar.energy_saved
    record["cost_saved"] = ar.cost_saved
    if args.format == "text":
        return _key_value_text(record, {**_ANALYTIC_UNITS, "annual_gb": "GB", "p_edge": "fraction"}), EXIT_OK
    if args.format == "json":
        return _json_object(record), EXIT_OK
    return render_records([record], "csv"), EXIT_OK


def _json_object(record: dict) -> bytes:
    return (json.dumps({k: round(v, 4) if isinstance(v, float) else v for k, v in record.items()}, indent=2) + "\n").encode()


def _general_cell(column: str, value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def cmd_simulate(args) -> tuple[bytes, int]:
    sc = _scenario(args)
    agg = run_fleet(sc, workers=args.workers)
    ar = analytic_scenario(sc.profile, sc.energy, sc.cost, sc.split)
    report = compare_with_analytic(agg, ar)
    std = {
        "energy_hec": agg.energy_hec.std,
        "cost_hec": agg.cost_hec.std,
        "energy_savings": agg.energy_hec.std / agg.energy_cloud_only,
        "cost_savings": agg.cost_hec.std / agg.cost_cloud_only,
        "edge_fraction": agg.realized_edge_fraction.std,
    }
    records = [
        {
            "quantity": d.quantity,
            "simulated_mean": d.simulated,
            "std": std[d.quantity],
            "ci95_half_width": d.ci_half_width,
            "analytic": d.analytic,
            "abs_dev": d.abs_dev,
            "rel_dev": d.rel_dev,
            "within_ci": d.within_ci,
        }
        for d in report.deviations
    ]
    if args.format == "text":
        head = (
            f"profile {sc.profile.label} ({sc.profile.annual_gb:g} GB/yr), p_edge {sc.split.p_edge:g}, "
            f"alpha {sc.pareto.alpha:g}, x_min {sc.pareto.x_min:g}, {sc.n_devices} devices x "
            f"{sc.n_tasks} tasks, seed {sc.master_seed}\n"
            f"cloud-only baseline: {agg.energy_cloud_only:.2f} kWh, {agg.cost_cloud_only:.2f} USD per device\n\n"
        )
        body = render_records(records, "text", text_cell=_general_cell).decode()
        return (head + body).encode(), EXIT_OK
    return render_records(records, args.format), EXIT_OK


def split_range(start: float, stop: float, step: float) -> list[float]:
    """Inclusive range of splits; tolerant to float drift in ``step``."""
    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)):
        raise UsageError("split range must be finite")
    if step <= 0:
        raise UsageError(f"--step must be > 0, got {step}")
    if start > stop:
        raise UsageError(f"--from ({start}) must not exceed --to ({stop})")
    if start < 0 or stop > 1:
        raise UsageError("splits must lie in [0, 1]")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def cmd_sweep(args) -> tuple[bytes, int]:
    sc = _scenario(args)
    splits = split_range(args.start, args.stop, args.step)
    if args.source == "both":
        analytic = sweep_edge_split(sc, splits, "analytic")
        mc = sweep_edge_split(sc, splits, "monte_carlo", workers=args.workers)
        rows = [r for pair in zip(analytic, mc) for r in pair]
    else:
        rows = sweep_edge_split(sc, splits, args.source, workers=args.workers)
    return render_table(rows, args.format), EXIT_OK


def dist_check(pp: ParetoParams, sample_size: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    x = sample_tasks(rng, sample_size, pp)
    ks = stats.kstest(x, lambda v: pareto_cdf(v, pp)).statistic
    limit = max(KS_LIMIT, 1.628 / math.sqrt(sample_size))  # 1% critical value below 100k draws
    return {
        "alpha": pp.alpha,
        "x_min": pp.x_min,
        "sample_size": sample_size,
        "sample_mean": float(x.mean()),
        "analytic_mean": pp.mean,
        "ks_statistic": float(ks),
        "ks_limit": limit,
        "sample_min": float(x.min()),
        "passed": bool(ks < limit and x.min() >= pp.x_min),
    }


def cmd_dist_check(args) -> tuple[bytes, int]:
    if args.sample_size < 1000:
        raise UsageError(f"--sample-size must be >= 1000, got {args.sample_size}")
    pp = ParetoParams(args.alpha, args.x_min)
    seed = args.seed if args.seed is not None else 42
    result = dist_check(pp, args.sample_size, seed)
    code = EXIT_OK if result["passed"] else EXIT_DIST
    if args.format == "text":
        text = (
            f"Pareto(alpha={pp.alpha:g}, x_min={pp.x_min:g}), {args.sample_size} draws, seed {seed}\n"
            f"sample mean   {result['sample_mean']:.6f}\n"
            f"analytic mean {result['analytic_mean']:.6f}\n"
            f"KS statistic  {result['ks_statistic']:.6f} (limit {result['ks_limit']:.4f})\n"
            f"sample min    {result['sample_min']:.6f} (x_min {pp.x_min:g})\n"
            f"{'PASS' if result['passed'] else 'FAIL'}\n"
        )
        return text.encode(), code
    if args.format == "json":
        return (json.dumps(result, indent=2) + "\n").encode(), code
    return render_records([result], "csv"), code


def cmd_reproduce(args) -> tuple[bytes, int]:
    report = reproduce_published(n_devices=args.n_devices, workers=args.workers)
    return render_report(report, args.format), EXIT_OK if report.ok else EXIT_MISMATCH


COMMANDS = {
    "analytic": cmd_analytic,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "dist-check": cmd_dist_check,
    "reproduce": cmd_reproduce,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = COMMANDS[args.command](args)
    except (UsageError, ConfigError, InvalidParameterError, ZeroDivisionError) as exc:
        print(f"hecsim {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(out)
    else:
        sys.stdout.buffer.write(out)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
