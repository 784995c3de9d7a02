import json
import subprocess
import sys

import pytest

from hecsim import cli
from hecsim.config import (
    ConfigError,
    DEFAULTS,
    config_from_scenario,
    dumps,
    load_config,
    scenario_from_config,
)
from hecsim.model import EnergyParams
from hecsim.simulation import Scenario


def run(argv, tmp_path):
    out = tmp_path / "out.txt"
    code = cli.main([*argv, "--out", str(out)])
    return code, out.read_bytes() if out.exists() else b""


def write(tmp_path, text, name="sc.toml"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestConfig:
    def test_defaults(self):
        sc = scenario_from_config(load_config())
        assert sc == Scenario()

    def test_round_trip(self, tmp_path):
        cfg = config_from_scenario(Scenario())
        path = write(tmp_path, dumps(cfg))
        back = load_config(path)
        assert back["energy"] == {"e_transmit": 0.7, "e_cloud": 1.5, "e_local": 0.5}
        assert scenario_from_config(back) == Scenario()
        assert scenario_from_config(back).energy == EnergyParams()

    def test_precedence(self, tmp_path):
        path = write(tmp_path, "[split]\np_edge = 0.6\n[pareto]\nalpha = 3.0\n")
        cfg = load_config(path, {"split": {"p_edge": 0.7}})
        assert cfg["split"]["p_edge"] == 0.7  # override beats file
        assert cfg["pareto"]["alpha"] == 3.0  # file beats default
        assert cfg["pareto"]["x_min"] == DEFAULTS["pareto"]["x_min"]  # default survives

    def test_unknown_key(self, tmp_path):
        path = write(tmp_path, "[energy]\ne_local = 0.5\ne_teleport = 1.0\n")
        with pytest.raises(ConfigError, match="energy.e_teleport"):
            load_config(path)

    def test_unknown_section(self, tmp_path):
        with pytest.raises(ConfigError, match="network"):
            load_config(write(tmp_path, "[network]\nx = 1\n"))

    def test_custom_profile_needs_volume(self, tmp_path):
        with pytest.raises(ConfigError, match="daily_gb"):
            scenario_from_config(load_config(write(tmp_path, '[profile]\nlabel = "drone"\n')))
        sc = scenario_from_config(load_config(write(tmp_path, '[profile]\nlabel = "drone"\ndaily_gb = 1.0\n')))
        assert sc.profile.annual_gb == 365.0

    def test_bad_type(self, tmp_path):
        with pytest.raises(ConfigError, match="n_devices"):
            scenario_from_config(load_config(write(tmp_path, "[sim]\nn_devices = 2.5\n")))


class TestAnalytic:
    def test_traditional_text(self, tmp_path):
        code, out = run(["analytic", "--profile", "traditional", "--p-edge", "0.8"], tmp_path)
        assert code == 0
        assert "cost_hec                 66.58 USD" in out.decode()

    def test_zero_split(self, tmp_path):
        code, out = run(["analytic", "--p-edge", "0", "--format", "json"], tmp_path)
        rec = json.loads(out)
        assert rec["energy_hec"] == rec["energy_cloud_only"]
        assert rec["cost_hec"] == rec["cost_cloud_only"]

    def test_agentic_json(self, tmp_path):
        code, out = run(["analytic", "--profile", "agentic", "--p-edge", "0.8", "--format", "json"], tmp_path)
        assert json.loads(out)["savings_energy_fraction"] == 0.6182

    def test_csv(self, tmp_path):
        code, out = run(["analytic", "--format", "csv"], tmp_path)
        header, row = out.decode().splitlines()
        assert "energy_hec" in header.split(",")

    def test_three_layers(self, tmp_path):
        path = write(tmp_path, '[profile]\nlabel = "traditional"\n[split]\np_edge = 0.5\n')
        _, from_file = run(["analytic", "--config", str(path), "--format", "json"], tmp_path)
        rec = json.loads(from_file)
        assert rec["profile"] == "traditional" and rec["p_edge"] == 0.5
        _, flag = run(["analytic", "--config", str(path), "--p-edge", "0.8", "--format", "json"], tmp_path)
        assert json.loads(flag)["p_edge"] == 0.8
        assert json.loads(flag)["annual_gb"] == 876.0

    def test_invalid_config_exit(self, tmp_path, capsys):
        path = write(tmp_path, "[sim]\nbogus = 1\n")
        code, _ = run(["analytic", "--config", str(path)], tmp_path)
        assert code == 1
        assert "sim.bogus" in capsys.readouterr().err

    def test_invalid_split_exit(self, tmp_path, capsys):
        code, _ = run(["analytic", "--p-edge", "1.5"], tmp_path)
        assert code == 1
        assert "p_edge" in capsys.readouterr().err


class TestSimulate:
    def test_trivial(self, tmp_path):
        code, out = run(["simulate", "--n-devices", "1", "--p-edge", "1.0", "--format", "json"], tmp_path)
        assert code == 0
        recs = {r["quantity"]: r for r in json.loads(out)}
        assert recs["energy_hec"]["std"] == 0.0
        assert recs["energy_hec"]["simulated_mean"] == 7300 * 0.5

    def test_small_fleet_close(self, tmp_path):
        code, out = run(["simulate", "--n-devices", "2000", "--format", "json"], tmp_path)
        recs = {r["quantity"]: r for r in json.loads(out)}
        assert abs(recs["energy_savings"]["simulated_mean"] - 0.6182) < 0.01

    def test_byte_identical(self, tmp_path):
        argv = ["simulate", "--n-devices", "300", "--seed", "7"]
        assert run(argv, tmp_path)[1] == run(argv, tmp_path)[1]


class TestSweep:
    def test_five_rows(self, tmp_path):
        code, out = run(["sweep", "--from", "0.5", "--to", "0.9", "--step", "0.1",
                         "--source", "analytic", "--format", "csv"], tmp_path)
        lines = out.decode().splitlines()
        assert code == 0 and len(lines) == 6
        assert [line.split(",")[0] for line in lines[1:]] == ["0.5000", "0.6000", "0.7000", "0.8000", "0.9000"]

    def test_single_row(self, tmp_path):
        _, out = run(["sweep", "--from", "0.8", "--to", "0.8", "--step", "0.1", "--format", "csv"], tmp_path)
        assert len(out.decode().splitlines()) == 2

    def test_both(self, tmp_path):
        _, out = run(["sweep", "--from", "0.5", "--to", "0.9", "--step", "0.2", "--source", "both",
                      "--n-devices", "1500", "--format", "json"], tmp_path)
        rows = json.loads(out)
        assert [r["source"] for r in rows] == ["analytic", "monte_carlo"] * 3
        for a, m in zip(rows[::2], rows[1::2]):
            assert a["p_edge"] == m["p_edge"]
            assert abs(a["energy_savings"] - m["energy_savings"]) < 0.01

    @pytest.mark.parametrize("argv", [
        ["--from", "0.9", "--to", "0.5"],
        ["--step", "0"],
        ["--step", "-0.1"],
        ["--to", "1.2"],
    ])
    def test_malformed(self, argv, tmp_path):
        code, _ = run(["sweep", *argv], tmp_path)
        assert code == 1

    def test_range(self):
        assert cli.split_range(0.5, 0.9, 0.1) == [0.5, 0.6, 0.7, 0.8, 0.9]
        assert cli.split_range(0.0, 1.0, 0.25) == [0.0, 0.25, 0.5, 0.75, 1.0]


class TestDistCheck:
    def test_alpha2(self, tmp_path):
        code, out = run(["dist-check", "--alpha", "2", "--x-min", "1", "--format", "json"], tmp_path)
        rep = json.loads(out)
        assert code == 0 and rep["analytic_mean"] == 2.0

    def test_alpha3(self, tmp_path):
        code, out = run(["dist-check", "--alpha", "3", "--format", "json"], tmp_path)
        rep = json.loads(out)
        assert code == 0 and rep["analytic_mean"] == 1.5 and rep["ks_statistic"] < 0.01
        assert rep["sample_min"] >= 1.0

    def test_infinite_mean(self, tmp_path, capsys):
        code, _ = run(["dist-check", "--alpha", "0.9"], tmp_path)
        assert code == 1
        assert "infinite mean" in capsys.readouterr().err

    def test_small_sample_rejected(self, tmp_path):
        assert run(["dist-check", "--sample-size", "10"], tmp_path)[0] == 1

    def test_failure_exit(self, tmp_path, monkeypatch):
        def bad_sampler(rng, n, pp):
            return rng.random(n) + pp.x_min

        monkeypatch.setattr(cli, "sample_tasks", bad_sampler)
        assert run(["dist-check"], tmp_path)[0] == cli.EXIT_DIST


class TestReproduce:
    def test_text_and_json(self, tmp_path):
        code, text = run(["reproduce", "--n-devices", "1000"], tmp_path)
        assert code == 0
        text = text.decode()
        assert "agentic cloud energy: 16060.0 vs 16,060 | MATCH" in text
        assert "traditional HEC energy: 735.84 vs 674 kWh/device/year | KNOWN ERRATUM" in text
        code, js = run(["reproduce", "--n-devices", "1000", "--format", "json"], tmp_path)
        recs = {r["label"]: r for r in json.loads(js)}
        assert recs["agentic cloud energy"]["status"] == "MATCH"
        assert recs["traditional HEC energy"]["computed"] == pytest.approx(735.84)

    def test_mismatch_exit(self, tmp_path, monkeypatch):
        from dataclasses import replace

        from hecsim.reporting import ReproductionReport, reproduce_published

        def broken(**kw):
            rep = reproduce_published(**kw)
            return ReproductionReport((replace(rep.checks[0], published=0.0),) + rep.checks[1:])

        monkeypatch.setattr(cli, "reproduce_published", broken)
        assert run(["reproduce", "--n-devices", "100"], tmp_path)[0] == cli.EXIT_MISMATCH


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "hecsim", "nonsense"], capture_output=True)
    assert proc.returncode == 1 and proc.stderr


def test_module_entry_stdout():
    proc = subprocess.run(
        [sys.executable, "-m", "hecsim", "analytic", "--format", "json"], capture_output=True, check=True
    )
    assert json.loads(proc.stdout)["energy_saved"] == 9928.0
