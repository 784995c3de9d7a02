"""Split sweeps, published-figure checks, and table rendering (csv / json / text)."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from hecsim.errors import InvalidParameterError
from hecsim.model import (
    AGENTIC,
    TRADITIONAL,
    CostParams,
    EnergyParams,
    SplitPolicy,
    analytic_scenario,
)
from hecsim.simulation import Scenario, run_fleet
from hecsim.workload import ParetoParams

FORMATS = ("csv", "json", "text")
SOURCES = ("analytic", "monte_carlo")
SWEEP_COLUMNS = ("p_edge", "energy_hec_kwh", "cost_hec_usd", "energy_savings", "cost_savings", "source")


@dataclass(frozen=True)
class SweepRow:
    p_edge: float
    energy_hec: float
    cost_hec: float
    energy_savings: float
    cost_savings: float
    source: str

    def as_record(self) -> dict:
        return {
            "p_edge": self.p_edge,
            "energy_hec_kwh": self.energy_hec,
            "cost_hec_usd": self.cost_hec,
            "energy_savings": self.energy_savings,
            "cost_savings": self.cost_savings,
            "source": self.source,
        }


def split_seed(master_seed: int, split_index: int) -> int:
    """Seed for the ``split_index``-th point of a Monte Carlo sweep."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(split_index,))
    return int(ss.generate_state(1, np.uint64)[0])


def sweep_edge_split(
    base: Scenario,
    splits: Sequence[float],
    source: str = "analytic",
    workers: int = 1,
) -> list[SweepRow]:
    """One row per edge split, every other scenario parameter held fixed.

    Monte Carlo rows use a different derived seed for each split.
    """
    if source not in SOURCES:
        raise InvalidParameterError(f"source must be one of {SOURCES}, got {source!r}")
    if len(splits) == 0:
        raise InvalidParameterError("at least one split is required")
    policies = [SplitPolicy(float(p)) for p in splits]

    rows = []
    for i, split in enumerate(policies):
        if source == "analytic":
            ar = analytic_scenario(base.profile, base.energy, base.cost, split)
            rows.append(SweepRow(
                split.p_edge, ar.energy_hec, ar.cost_hec,
                ar.savings_energy_fraction, ar.savings_cost_fraction, source,
            ))
        else:
            scenario = replace(base, split=split, master_seed=split_seed(base.master_seed, i))
            agg = run_fleet(scenario, workers=workers)
            rows.append(SweepRow(
                split.p_edge, agg.energy_hec.mean, agg.cost_hec.mean,
                agg.savings_energy, agg.savings_cost, source,
            ))
    return rows


# -- published-figure checks -------------------------------------------------

@dataclass(frozen=True)
class ReferenceCheck:
    label: str
    computed: float
    published: float
    published_text: str
    location: str
    tolerance: float
    # "abs": |computed - published| <= tol; "rel": relative; "at_least": computed >= published
    kind: str = "abs"
    erratum: bool = False
    note: str = ""

    @property
    def match(self) -> bool:
        if self.kind == "abs":
            return abs(self.computed - self.published) <= self.tolerance
        if self.kind == "rel":
            return abs(self.computed - self.published) <= self.tolerance * abs(self.published)
        if self.kind == "at_least":
            return self.computed >= self.published
        raise ValueError(f"unknown comparison kind {self.kind!r}")

    @property
    def status(self) -> str:
        if self.match:
            return "MATCH"
        return "KNOWN ERRATUM" if self.erratum else "MISMATCH"


@dataclass(frozen=True)
class ReproductionReport:
    checks: tuple[ReferenceCheck, ...]

    def __getitem__(self, label: str) -> ReferenceCheck:
        for c in self.checks:
            if c.label == label:
                return c
        raise KeyError(label)

    @property
    def unexpected_mismatches(self) -> list[ReferenceCheck]:
        return [c for c in self.checks if not c.match and not c.erratum]

    @property
    def ok(self) -> bool:
        return not self.unexpected_mismatches

    def as_records(self) -> list[dict]:
        out = []
        for c in self.checks:
            rec = asdict(c)
            rec["match"] = c.match
            rec["status"] = c.status
            out.append(rec)
        return out


def reproduce_published(n_devices: int = 10_000, workers: int = 1) -> ReproductionReport:
    """Recompute the published headline figures at default parameters.

    Figures the closed-form model does not produce are flagged as errata;
    they are neither adopted nor silently corrected.
    """
    ep, cp = EnergyParams(), CostParams()
    at80 = SplitPolicy(0.8)
    trad = analytic_scenario(TRADITIONAL, ep, cp, at80)
    agen = analytic_scenario(AGENTIC, ep, cp, at80)
    agen30 = analytic_scenario(AGENTIC, ep, cp, SplitPolicy(0.3))

    mc_base = Scenario(profile=AGENTIC, split=at80, n_devices=n_devices)
    mc2 = run_fleet(mc_base, workers=workers)
    mc3 = run_fleet(replace(mc_base, pareto=ParetoParams(alpha=3.0)), workers=workers)

    num_trad = "numerical results, traditional workloads"
    num_agen = "numerical results, agentic workloads"
    sim = "simulation results"
    checks = [
        ReferenceCheck("traditional cloud energy", trad.energy_cloud_only, 1927.0,
                       "1,927 kWh/device/year", f"{num_trad}, energy costs", 0.5),
        ReferenceCheck("traditional HEC energy", trad.energy_hec, 674.0,
                       "674 kWh/device/year", f"{num_trad}, energy costs", 0.5, erratum=True,
                       note="80% split; model gives 175.2*2.2 + 700.8*0.5 = 735.84"),
        ReferenceCheck("traditional energy savings", trad.savings_energy_fraction, 0.65,
                       "65%", f"{num_trad}, energy costs", 0.005, erratum=True,
                       note="80% split; model gives (2.2-0.5)/2.2*0.8 = 61.82%"),
        ReferenceCheck("traditional cloud cost", trad.cost_cloud_only, 263.0,
                       "$263 per device per year", f"{num_trad}, bandwidth & hosting cost", 0.5),
        ReferenceCheck("traditional HEC cost", trad.cost_hec, 66.0,
                       "$66 per device per year", f"{num_trad}, bandwidth & hosting cost", 1.0,
                       note="whole dollars, truncated"),
        ReferenceCheck("traditional cost saved", trad.cost_saved, 200.0,
                       "about $200 per device per year", f"{num_trad}, bandwidth & hosting cost",
                       0.05, kind="rel"),
        ReferenceCheck("traditional cost savings", trad.savings_cost_fraction, 0.75,
                       "approximately 75%", f"{num_trad}, bandwidth & hosting cost", 0.005),
        ReferenceCheck("agentic cost savings", agen.savings_cost_fraction, 0.75,
                       "same as traditional (approximately 75%)", f"{num_agen}, saving comparison", 0.005),
        ReferenceCheck("agentic energy savings", agen.savings_energy_fraction, 0.62,
                       "about 62%", f"{num_agen}, saving comparison", 0.005),
        ReferenceCheck("agentic energy saved", agen.energy_saved, 10_000.0,
                       "up to 10,000 kWh per year", f"{num_agen}, saving comparison", 0.01, kind="rel"),
        ReferenceCheck("agentic cost saved", agen.cost_saved, 1_500.0,
                       "$1,500 per year per device", f"{num_agen}, saving comparison", 0.10, kind="rel"),
        ReferenceCheck("agentic cloud energy", agen.energy_cloud_only, 16_060.0,
                       "16,060", f"{num_agen}, edge split table reference", 1e-9),
        ReferenceCheck("agentic cloud cost", agen.cost_cloud_only, 2_190.0,
                       "$2,190", f"{num_agen}, edge split table reference", 1e-9),
        ReferenceCheck("cost savings at 30% split", agen30.savings_cost_fraction, 0.275,
                       "25%-30%", f"{num_agen}, low edge splits", 0.025),
        ReferenceCheck("simulated cost savings", mc2.savings_cost, 0.75,
                       "almost 75%", f"{sim}, cost efficiency", 0.01,
                       note=f"alpha=2, {n_devices} devices, 80% split"),
        ReferenceCheck("alpha=2 vs alpha=3 energy savings gap", abs(mc2.savings_energy - mc3.savings_energy),
                       0.0, "almost identical", f"{sim}, shape parameters", 0.005),
        ReferenceCheck("agentic cloud energy lower bound", agen.energy_cloud_only, 16_000.0,
                       "over 16,000 kWh", "conclusion", 0.0, kind="at_least"),
        ReferenceCheck("agentic cloud cost lower bound", agen.cost_cloud_only, 2_000.0,
                       "over $2,000", "conclusion", 0.0, kind="at_least"),
        ReferenceCheck("headline cost reduction", agen.savings_cost_fraction, 0.80,
                       "exceeding 80%", "abstract", 0.0, kind="at_least", erratum=True,
                       note="80% split gives 74.67%; needs p_edge > 0.857"),
        ReferenceCheck("agentic energy reduction", agen.savings_energy_fraction, 0.75,
                       "approximately 75%", "discussion, energy efficiency", 0.005, erratum=True,
                       note="80% split; model gives 61.82%"),
        ReferenceCheck("traditional energy savings upper claim", trad.savings_energy_fraction, 0.80,
                       "as much as 80%", "discussion, energy efficiency", 0.005, erratum=True,
                       note="80% split; model gives 61.82%"),
        ReferenceCheck("transmission energy rate", ep.e_transmit, 5.0,
                       "5 kWh/GB", "discussion, energy efficiency", 1e-9, erratum=True,
                       note="contradicts the 0.7 kWh/GB assumption used everywhere else"),
    ]
    return ReproductionReport(tuple(checks))


# -- rendering ---------------------------------------------------------------

def _round4(v):
    return round(float(v), 4) if isinstance(v, (float, np.floating)) else v


def _records_csv(records: list[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([f"{rec[c]:.4f}" if isinstance(rec[c], float) else rec[c] for c in columns])
    return buf.getvalue()


def _records_text(records: list[dict], columns: Sequence[str], fmt_cell) -> str:
    cells = [[fmt_cell(c, rec[c]) for c in columns] for rec in records]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells)
    return "\n".join(lines) + "\n"


def _text_cell(column: str, value) -> str:
    if isinstance(value, bool) or not isinstance(value, float):
        return str(value)
    if "savings" in column or "fraction" in column:
        return f"{value * 100:.2f}%"
    return f"{value:.2f}"


def render_records(
    records: list[dict],
    fmt: str,
    columns: Sequence[str] | None = None,
    text_cell=_text_cell,
) -> bytes:
    """Render homogeneous dict records; floats carry 4 decimals in csv and json."""
    if not records:
        raise InvalidParameterError("nothing to render")
    if fmt not in FORMATS:
        raise InvalidParameterError(f"format must be one of {FORMATS}, got {fmt!r}")
    columns = list(columns or records[0].keys())
    if fmt == "csv":
        out = _records_csv(records, columns)
    elif fmt == "json":
        out = json.dumps([{c: _round4(r[c]) for c in columns} for r in records], indent=2) + "\n"
    else:
        out = _records_text(records, columns, text_cell)
    return out.encode()


def render_table(rows: Iterable[SweepRow], fmt: str = "csv") -> bytes:
    records = [r.as_record() for r in rows]
    return render_records(records, fmt, SWEEP_COLUMNS)


def parse_sweep_csv(data: bytes) -> list[SweepRow]:
    reader = csv.DictReader(io.StringIO(data.decode()))
    return [
        SweepRow(
            float(r["p_edge"]), float(r["energy_hec_kwh"]), float(r["cost_hec_usd"]),
            float(r["energy_savings"]), float(r["cost_savings"]), r["source"],
        )
        for r in reader
    ]


def render_report(report: ReproductionReport, fmt: str = "text") -> bytes:
    if fmt == "text":
        lines = []
        for c in report.checks:
            line = f"{c.label}: {round(c.computed, 6)} vs {c.published_text} | {c.status}"
            if c.note:
                line += f" ({c.note})"
            lines.append(line)
        bad = len(report.unexpected_mismatches)
        errata = sum(1 for c in report.checks if c.erratum and not c.match)
        lines.append(f"{len(report.checks)} checks, {bad} unexpected mismatches, {errata} known errata")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        return (json.dumps(report.as_records(), indent=2) + "\n").encode()
    return render_records(report.as_records(), fmt)
