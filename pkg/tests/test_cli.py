"""Command-line interface: parsing, formats, exit codes, figure data."""

from __future__ import annotations

import csv
import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from cavitytherm import cli
from cavitytherm.analytic import Timescales

REPO_ROOT = Path(__file__).resolve().parent.parent
SHIPPED_CONFIG = REPO_ROOT / "configs" / "fig_rho01.cfg"

RUN_FIELDS = [
    "t", "pe", "temperature", "inverted", "collapse_completed",
    "within_half_revival", "pulse_residual_ok", "pulse_residual",
    "pre_x", "pre_y", "pre_z", "post_x", "post_y", "post_z",
]

UNITS_LINE = "# units: temperatures in delta_e/k_B, times in 1/g"


def run_cli(capsys, *args: str) -> tuple[int, str, str]:
    code = cli.main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text: str) -> tuple[list[str], list[dict]]:
    lines = text.splitlines()
    assert lines[0] == UNITS_LINE
    reader = csv.DictReader(lines[1:])
    rows = list(reader)
    return list(reader.fieldnames), rows


@pytest.fixture(scope="module")
def validate_run(tmp_path_factory):
    out_path = tmp_path_factory.mktemp("validate") / "report.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "cavitytherm", "validate", "--out", str(out_path)],
        capture_output=True, text=True, timeout=120,
    )
    _, rows = parse_csv(out_path.read_text(encoding="utf-8"))
    return proc, rows


class TestConfigFile:
    def test_shipped_config_is_accepted(self, capsys):
        code, out, _ = run_cli(
            capsys, "run", "--config", str(SHIPPED_CONFIG), "--time", "0")
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 1

    def test_flags_override_config(self, capsys, tmp_path):
        cfg = tmp_path / "base.cfg"
        cfg.write_text("n_bar = 25  # overridden below\n", encoding="utf-8")
        code, out, _ = run_cli(
            capsys, "fig-tmin", "--config", str(cfg), "--n-bar", "46")
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 1
        assert float(rows[0]["n_bar"]) == 46.0

    def test_config_can_set_format(self, capsys, tmp_path):
        cfg = tmp_path / "json.cfg"
        cfg.write_text("format = json\n", encoding="utf-8")
        code, out, _ = run_cli(
            capsys, "run", "--config", str(cfg), "--time", "0")
        assert code == 0
        assert json.loads(out)["rows"]

    @pytest.mark.parametrize("content", [
        "unknown_key = 3\n",
        "n_bar three\n",
        "n_bar = not_a_number\n",
    ])
    def test_bad_config_contents(self, capsys, tmp_path, content):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text(content, encoding="utf-8")
        code, _, err = run_cli(capsys, "run", "--config", str(cfg))
        assert code == 2
        assert "error:" in err

    def test_missing_config_file(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "run", "--config", str(tmp_path / "absent.cfg"))
        assert code == 2
        assert "error:" in err

    def test_conflicting_initial_state(self, capsys, tmp_path):
        cfg = tmp_path / "beta.cfg"
        cfg.write_text("initial_beta = 1.0\n", encoding="utf-8")
        code, _, err = run_cli(
            capsys, "run", "--config", str(cfg), "--pe0", "0.3")
        assert code == 2
        assert "at most one" in err


class TestRunCommand:
    def test_zero_time_echoes_initial_temperature(self, capsys):
        code, out, _ = run_cli(capsys, "run", "--time", "0")
        assert code == 0
        fieldnames, rows = parse_csv(out)
        assert fieldnames == RUN_FIELDS
        assert len(rows) == 1
        assert float(rows[0]["temperature"]) == pytest.approx(1.0, abs=1e-12)
        assert rows[0]["inverted"] == "false"

    def test_output_is_byte_stable(self, capsys):
        args = ("run", "--time", "9", "--serial")
        code_a, out_a, _ = run_cli(capsys, *args)
        code_b, out_b, _ = run_cli(capsys, *args)
        assert code_a == code_b == 0
        assert out_a == out_b

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "run", "--time", "9", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["units"] == {"temperature": "delta_e/k_B", "time": "1/g"}
        assert len(payload["rows"]) == 1
        row = payload["rows"][0]
        assert isinstance(row["pe"], float)
        assert 0.0 <= row["pe"] <= 0.5 + 1e-12

    def test_infinite_temperature_token_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "run", "--time", "0", "--pe0", "0.5",
            "--pulse-mode", "diagonalize")
        assert code == 0
        _, rows = parse_csv(out)
        assert rows[0]["temperature"] == "inf"

    def test_infinite_temperature_token_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "run", "--time", "0", "--pe0", "0.5",
            "--pulse-mode", "diagonalize", "--format", "json")
        assert code == 0
        assert json.loads(out)["rows"][0]["temperature"] == "inf"

    def test_every_csv_cell_is_finite_or_inf_token(self, capsys):
        _, out, _ = run_cli(capsys, "run", "--time", "4")
        _, rows = parse_csv(out)
        for key, cell in rows[0].items():
            assert cell != ""
            assert cell.lower() != "nan"

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "run.csv"
        code, out, _ = run_cli(capsys, "run", "--time", "0", "--out", str(target))
        assert code == 0
        assert out == ""
        _, rows = parse_csv(target.read_text(encoding="utf-8"))
        assert len(rows) == 1

    def test_nonpositive_coupling_is_config_error(self, capsys):
        code, _, err = run_cli(capsys, "run", "--g", "-1")
        assert code == 2
        assert "error:" in err

    def test_insufficient_cutoff_is_numeric_failure(self, capsys):
        code, _, err = run_cli(capsys, "run", "--time", "1", "--cutoff", "5")
        assert code == 3
        assert "numeric failure" in err


class TestFigRho01:
    def test_row_count_matches_grid(self, capsys):
        code, out, _ = run_cli(capsys, "fig-rho01", "--grid-points", "40")
        assert code == 0
        fieldnames, rows = parse_csv(out)
        assert fieldnames == ["t", "re_num", "im_num", "re_analytic", "im_analytic"]
        assert len(rows) == 40

    def test_both_levels_output(self, capsys):
        code, out, _ = run_cli(capsys, "fig-rho01", "--initial-level", "both")
        assert code == 0
        fieldnames, rows = parse_csv(out)
        assert fieldnames == [
            "t", "re_num_e", "im_num_e", "re_num_g", "im_num_g",
            "re_analytic", "im_analytic",
        ]
        assert len(rows) == 400

        scales = Timescales(36.0)
        t = np.array([float(r["t"]) for r in rows])
        diff = np.maximum(
            np.abs(np.array([float(r["re_num_e"]) for r in rows])
                   - np.array([float(r["re_num_g"]) for r in rows])),
            np.abs(np.array([float(r["im_num_e"]) for r in rows])
                   - np.array([float(r["im_num_g"]) for r in rows])),
        )
        early = t < scales.collapse_complete
        # The two initial levels disagree strongly during the collapse and
        # become indistinguishable afterwards.
        assert diff[early].max() > 0.5
        assert diff[~early].max() <= 0.02

        # Inside the working window the closed form tracks the numerics.
        window = (t >= scales.collapse_complete) & (
            t <= scales.half_revival - scales.collapse_complete)
        for comp in ("re", "im"):
            num = np.array([float(r[f"{comp}_num_e"]) for r in rows])
            ana = np.array([float(r[f"{comp}_analytic"]) for r in rows])
            assert np.abs(num - ana)[window].max() <= 0.02

    def test_grid_spans_expected_range(self, capsys):
        code, out, _ = run_cli(capsys, "fig-rho01", "--grid-points", "10")
        assert code == 0
        _, rows = parse_csv(out)
        t = [float(r["t"]) for r in rows]
        assert t[0] == 0.0
        assert t[-1] == pytest.approx(0.6 * Timescales(36.0).tau_revival)


class TestFigTmin:
    def test_default_grid(self, capsys):
        code, out, _ = run_cli(capsys, "fig-tmin")
        assert code == 0
        fieldnames, rows = parse_csv(out)
        assert fieldnames == ["n_bar", "t_min"]
        assert len(rows) == 20
        n_bar = [float(r["n_bar"]) for r in rows]
        temps = [float(r["t_min"]) for r in rows]
        assert n_bar[0] == pytest.approx(10.0)
        assert n_bar[-1] == pytest.approx(1000.0)
        assert all(b < a for a, b in zip(temps, temps[1:]))

    def test_single_point_grid(self, capsys):
        code, out, _ = run_cli(capsys, "fig-tmin", "--n-bar", "46")
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 1
        assert float(rows[0]["t_min"]) == pytest.approx(0.2001, abs=1e-3)


class TestFigTmax:
    def test_both_variants_monotone(self, capsys):
        code, out, _ = run_cli(capsys, "fig-tmax", "--grid-points", "8")
        assert code == 0
        fieldnames, rows = parse_csv(out)
        assert fieldnames == ["n_bar", "t_max_numeric", "t_max_closed_form"]
        assert len(rows) == 8
        for column in ("t_max_numeric", "t_max_closed_form"):
            temps = [float(r[column]) for r in rows]
            assert all(b > a for a, b in zip(temps, temps[1:]))


class TestSweep:
    def test_grid_and_fields(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--grid-points", "25")
        assert code == 0
        fieldnames, rows = parse_csv(out)
        assert fieldnames == RUN_FIELDS + ["error"]
        assert len(rows) == 25
        t = [float(r["t"]) for r in rows]
        assert all(b > a for a, b in zip(t, t[1:]))
        assert all(r["error"] == "" for r in rows)

    def test_json_sweep(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--grid-points", "5", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["rows"]) == 5


class TestValidate:
    def test_exit_code_tracks_check_outcomes(self, validate_run):
        proc, rows = validate_run
        all_passed = all(r["passed"] == "true" for r in rows)
        assert proc.returncode == (0 if all_passed else 1)

    def test_reports_at_least_fifteen_distinct_checks(self, validate_run):
        _, rows = validate_run
        names = {r["name"] for r in rows}
        assert len(names) >= 15
        assert len(names) == len(rows)

    def test_human_readable_report(self, validate_run):
        proc, rows = validate_run
        assert "PASS" in proc.stdout
        summary = proc.stdout.strip().splitlines()[-1]
        assert f"{len(rows)} checks" in summary

    def test_failures_name_the_check_and_measurement(self, validate_run):
        proc, rows = validate_run
        for row in rows:
            if row["passed"] != "true":
                assert row["name"] in proc.stdout
                assert row["detail"] != ""


class TestArgumentParsing:
    def test_missing_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == 2

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["explode"])
        assert exc.value.code == 2

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["--version"])
        assert exc.value.code == 0

    def test_bad_format_rejected_by_parser(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["run", "--format", "yaml"])
        assert exc.value.code == 2
