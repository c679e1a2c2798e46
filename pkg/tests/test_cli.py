"""Tests for the command-line front end: config handling, artifacts, exit codes."""

import json
import subprocess
import sys

import numpy as np
import pytest

from qillum.cli import ConfigError, build_config, main


def run_cli(*argv):
    return main(list(argv))


class TestConfigAssembly:
    def test_defaults(self):
        cfg = build_config("utraj", None, [], None, None, None, None)
        assert cfg.bath.eta == 0.2
        assert cfg.bath.s == 0.8
        assert cfg.illum.beta == 2.0
        assert cfg.t_max == 400.0
        assert cfg.dt is None
        assert cfg.regimes == ("ideal", "bma", "volterra")

    def test_preset_layer(self):
        cfg = build_config("fig1b", None, [], None, None, None, None)
        assert cfg.bath.eta == 0.05
        assert cfg.illum.beta == 1.0

    def test_config_file_and_override_priority(self, tmp_path):
        ini = tmp_path / "run.ini"
        ini.write_text("[bath]\neta = 0.11\ns = 1.5\n\n[grid]\nt_max = 20\n")
        cfg = build_config(
            "utraj", str(ini), ["bath.eta=0.13"], None, None, None, 30.0
        )
        assert cfg.bath.eta == 0.13  # override beats file
        assert cfg.bath.s == 1.5  # file beats default
        assert cfg.t_max == 30.0  # flag beats file

    def test_unknown_section_rejected(self, tmp_path):
        ini = tmp_path / "run.ini"
        ini.write_text("[bathh]\neta = 0.1\n")
        with pytest.raises(ConfigError, match="unknown section"):
            build_config("utraj", str(ini), [], None, None, None, None)

    def test_unknown_key_rejected(self, tmp_path):
        ini = tmp_path / "run.ini"
        ini.write_text("[bath]\netaa = 0.1\n")
        with pytest.raises(ConfigError, match="unknown key bath.etaa"):
            build_config("utraj", str(ini), [], None, None, None, None)

    def test_bad_value_rejected(self):
        with pytest.raises(ConfigError, match="must be a number"):
            build_config("utraj", None, ["bath.eta=fast"], None, None, None, None)
        with pytest.raises(ConfigError):
            build_config("utraj", None, ["bath.eta=-1"], None, None, None, None)

    def test_bad_override_shape_rejected(self):
        with pytest.raises(ConfigError, match="section.key=value"):
            build_config("utraj", None, ["eta=0.1"], None, None, None, None)

    def test_unknown_regime_rejected(self):
        with pytest.raises(ConfigError, match="unknown regime"):
            build_config(
                "utraj", None, ["dynamics.regimes=ideal,markov"], None, None, None, None
            )

    def test_sweep_validation(self):
        with pytest.raises(ConfigError, match="sweep.values required"):
            build_config("spectrum", None, ["sweep.parameter=eta"], None, None, None, None)
        with pytest.raises(ConfigError, match="without sweep.parameter"):
            build_config("spectrum", None, ["sweep.values=0.1,0.2"], None, None, None, None)
        with pytest.raises(ConfigError, match="eta, s, or r"):
            build_config(
                "spectrum",
                None,
                ["sweep.parameter=xi", "sweep.values=0.1"],
                None,
                None,
                None,
                None,
            )

    def test_out_dir_priority(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QILLUM_OUT", str(tmp_path / "env"))
        cfg = build_config("utraj", None, [], None, None, None, None)
        assert cfg.out_dir == tmp_path / "env"
        cfg = build_config("utraj", None, [], str(tmp_path / "flag"), None, None, None)
        assert cfg.out_dir == tmp_path / "flag"
        monkeypatch.delenv("QILLUM_OUT")
        monkeypatch.chdir(tmp_path)
        cfg = build_config("utraj", None, [], None, None, None, None)
        assert cfg.out_dir == tmp_path


class TestSpectrumCommand:
    def test_sweep_and_meta(self, tmp_path):
        code = run_cli(
            "spectrum",
            "--out",
            str(tmp_path),
            "--override",
            "sweep.parameter=eta",
            "--override",
            "sweep.values=0.05,0.2",
        )
        assert code == 0
        lines = (tmp_path / "spectrum.csv").read_text().splitlines()
        assert lines[0].startswith("# ")
        assert lines[1] == "param,E_b,Z,exists"
        below = lines[2].split(",")
        above = lines[3].split(",")
        assert below == ["0.050000000000000003", "", "", "false"]
        assert above[3] == "true"
        assert float(above[1]) < 0.0
        assert 0.0 < float(above[2]) <= 1.0
        meta = json.loads((tmp_path / "spectrum_meta.json").read_text())
        assert meta["sweep_parameter"] == "eta"
        assert meta["analytic_threshold"]["eta_c"] == pytest.approx(0.08589, abs=1e-4)
        assert "tolerances" in meta

    def test_s_sweep_meta_has_threshold_per_value(self, tmp_path):
        code = run_cli(
            "spectrum",
            "--out",
            str(tmp_path),
            "--override",
            "sweep.parameter=s",
            "--override",
            "sweep.values=0.5,2.5",
            "--override",
            "bath.omega_c=5",
        )
        assert code == 0
        meta = json.loads((tmp_path / "spectrum_meta.json").read_text())
        per_value = meta["analytic_threshold"]["eta_c_per_value"]
        assert set(per_value) == {"0.5", "2.5"}

    def test_missing_sweep_is_config_error(self, tmp_path, capsys):
        code = run_cli("spectrum", "--out", str(tmp_path))
        assert code == 2
        assert "sweep" in capsys.readouterr().err

    def test_determinism(self, tmp_path):
        args = [
            "spectrum",
            "--override",
            "sweep.parameter=eta",
            "--override",
            "sweep.values=0.05,0.12,0.3",
        ]
        for sub in ("a", "b"):
            assert run_cli(*args, "--out", str(tmp_path / sub)) == 0
        assert (tmp_path / "a/spectrum.csv").read_bytes() == (
            tmp_path / "b/spectrum.csv"
        ).read_bytes()
        assert (tmp_path / "a/spectrum_meta.json").read_bytes() == (
            tmp_path / "b/spectrum_meta.json"
        ).read_bytes()


class TestUtrajCommand:
    def test_zero_coupling_all_regimes(self, tmp_path):
        code = run_cli(
            "utraj",
            "--out",
            str(tmp_path),
            "--t-max",
            "4",
            "--dt",
            "0.5",
            "--override",
            "bath.eta=0",
            "--override",
            "dynamics.regimes=ideal,bma,volterra,asymptotic",
        )
        assert code == 0
        for regime in ("ideal", "bma", "volterra", "asymptotic"):
            lines = (tmp_path / f"utraj_{regime}.csv").read_text().splitlines()
            assert lines[1] == "t,re_u,im_u,abs_u,source"
            for row in lines[2:]:
                assert float(row.split(",")[3]) == pytest.approx(1.0, abs=1e-12)
        meta = json.loads((tmp_path / "utraj_meta.json").read_text())
        assert set(meta) == {"ideal", "bma", "volterra", "asymptotic"}
        assert meta["volterra"]["refinements"] == 0

    def test_env_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QILLUM_OUT", str(tmp_path / "from_env"))
        code = run_cli(
            "utraj",
            "--t-max",
            "2",
            "--dt",
            "0.5",
            "--override",
            "bath.eta=0",
            "--override",
            "dynamics.regimes=ideal",
        )
        assert code == 0
        assert (tmp_path / "from_env" / "utraj_ideal.csv").exists()

    def test_nonconvergence_exit_code(self, tmp_path, capsys):
        code = run_cli(
            "utraj",
            "--out",
            str(tmp_path),
            "--t-max",
            "10",
            "--dt",
            "2.5",
            "--override",
            "bath.eta=0.3",
            "--override",
            "dynamics.regimes=volterra",
        )
        assert code == 1
        assert "computation failed" in capsys.readouterr().err


class TestIlluminateCommand:
    def test_series_csv_format(self, tmp_path):
        code = run_cli(
            "illuminate",
            "--out",
            str(tmp_path),
            "--t-max",
            "2",
            "--override",
            "dynamics.regimes=ideal,volterra",
        )
        assert code == 0
        lines = (tmp_path / "illuminate_volterra.csv").read_text().splitlines()
        assert lines[0].startswith("# eta=")
        assert lines[1] == "t,f_minus,method,regime"
        first = lines[2].split(",")
        assert first[2] == "approx_leading_order"
        assert first[3] == "nonmarkov"
        assert 0.0 <= float(first[1]) <= 0.5
        ideal = (tmp_path / "illuminate_ideal.csv").read_text().splitlines()
        vals = {row.split(",")[1] for row in ideal[2:]}
        assert len(vals) == 1  # ideal series is constant

    def test_r_sweep_files(self, tmp_path):
        code = run_cli(
            "illuminate",
            "--out",
            str(tmp_path),
            "--t-max",
            "1",
            "--dt",
            "0.5",
            "--override",
            "dynamics.regimes=ideal",
            "--override",
            "sweep.parameter=r",
            "--override",
            "sweep.values=0.5,1.5",
        )
        assert code == 0
        assert (tmp_path / "illuminate_ideal_r0.5.csv").exists()
        assert (tmp_path / "illuminate_ideal_r1.5.csv").exists()

    def test_exact_method(self, tmp_path):
        code = run_cli(
            "illuminate",
            "--out",
            str(tmp_path),
            "--t-max",
            "1",
            "--dt",
            "0.5",
            "--override",
            "dynamics.regimes=ideal",
            "--override",
            "illumination.method=exact_fidelity",
        )
        assert code == 0
        lines = (tmp_path / "illuminate_ideal.csv").read_text().splitlines()
        assert lines[2].split(",")[2] == "exact_fidelity"

    def test_eta_sweep_rejected(self, tmp_path, capsys):
        code = run_cli(
            "illuminate",
            "--out",
            str(tmp_path),
            "--override",
            "sweep.parameter=eta",
            "--override",
            "sweep.values=0.1",
        )
        assert code == 2
        assert "only an r sweep" in capsys.readouterr().err


class TestFigureCommands:
    def test_fig1b_structure(self, tmp_path):
        code = run_cli("fig1b", "--out", str(tmp_path), "--t-max", "2")
        assert code == 0
        lines = (tmp_path / "fig1b.csv").read_text().splitlines()
        assert lines[1] == "t,f_minus,regime,r"
        rows = [line.split(",") for line in lines[2:]]
        n_t = 21  # t in [0, 2] at stride 0.1
        assert len(rows) == n_t * 2 * 3
        ideal = {}
        for t, f, regime, r in rows:
            if regime == "ideal":
                ideal.setdefault(r, set()).add(f)
        assert set(ideal) == {"0.5", "1", "1.5"}
        for vals in ideal.values():
            assert len(vals) == 1  # constant in t
        heights = [float(next(iter(ideal[r]))) for r in ("0.5", "1", "1.5")]
        assert heights[0] > heights[1] > heights[2]

    def test_fig2_eq13_column(self, tmp_path):
        code = run_cli(
            "fig2",
            "--out",
            str(tmp_path),
            "--t-max",
            "2",
            "--dt",
            "0.01",
            "--override",
            "fig2.eta_values=0.05,0.2",
            "--override",
            "fig2.s_values=1.0",
        )
        assert code == 0
        rows = [
            line.split(",")
            for line in (tmp_path / "fig2b.csv").read_text().splitlines()[2:]
        ]
        below = [row for row in rows if row[2] == "0.05"]
        above = [row for row in rows if row[2] == "0.2"]
        assert below and above
        assert all(row[3] == "" for row in below)  # no bound state, no level
        levels = {row[3] for row in above}
        assert len(levels) == 1 and "" not in levels
        # fig2d: s=1.0 at eta=0.2, omega_c=5 sits exactly on the boundary
        rows_d = [
            line.split(",")
            for line in (tmp_path / "fig2d.csv").read_text().splitlines()[2:]
        ]
        assert all(row[3] == "" for row in rows_d)

    def test_fig3_structure(self, tmp_path):
        code = run_cli(
            "fig3",
            "--out",
            str(tmp_path),
            "--t-max",
            "2",
            "--dt",
            "0.05",
            "--override",
            "fig3.eta_values=0.2",
            "--override",
            "fig3.r_values=0,1,2",
        )
        assert code == 0
        lines = (tmp_path / "fig3.csv").read_text().splitlines()
        assert lines[1] == "param,r,f_minus_steady,eq13_prediction"
        rows = [line.split(",") for line in lines[2:]]
        assert [row[1] for row in rows] == ["0", "1", "2"]
        predictions = [float(row[3]) for row in rows]
        assert predictions[0] > predictions[1] > predictions[2]

    def test_fig1b_determinism(self, tmp_path):
        for sub in ("a", "b"):
            assert run_cli("fig1b", "--out", str(tmp_path / sub), "--t-max", "3") == 0
        assert (tmp_path / "a/fig1b.csv").read_bytes() == (
            tmp_path / "b/fig1b.csv"
        ).read_bytes()


class TestEntryPoints:
    def test_module_invocation(self, tmp_path):
        result = subprocess.run(
            [
                sys.executable,
                "-m",
                "qillum",
                "spectrum",
                "--out",
                str(tmp_path),
                "--override",
                "sweep.parameter=eta",
                "--override",
                "sweep.values=0.2",
            ],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert (tmp_path / "spectrum.csv").exists()

    def test_module_invocation_config_error(self):
        result = subprocess.run(
            [sys.executable, "-m", "qillum", "spectrum"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 2
        assert "config error" in result.stderr

    def test_console_script_help(self):
        result = subprocess.run(
            ["qillum", "--help"], capture_output=True, text=True
        )
        assert result.returncode == 0
        for name in ("spectrum", "utraj", "illuminate", "fig1b", "fig2", "fig3"):
            assert name in result.stdout
