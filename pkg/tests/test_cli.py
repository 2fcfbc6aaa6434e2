"""End-to-end checks of the command-line front end (in-process)."""

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from boolebell import SignSequence, correlation
from boolebell.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBasicCommands:
    def test_witness_right_angle(self, capsys):
        code, out, err = invoke(capsys, "witness", "--a", "[1,0,0]", "--b", "[0,1,0]")
        assert code == 0
        assert "case=right" in out
        assert "lhs=1.414214" in out
        assert "assignment=uxv" in out
        assert err == ""

    def test_bruteforce_prints_unit_max(self, capsys):
        code, out, _ = invoke(capsys, "bruteforce", "--n", "8")
        assert code == 0
        assert "max_lhs=1.000000" in out

    def test_check_boole_pass(self, capsys):
        code, out, _ = invoke(
            capsys, "check-boole", "--f", "+--+", "--g", "++++", "--h=----"
        )
        assert code == 0
        assert "verdict=PASS" in out
        assert "lhs=" in out

    def test_correlate_text_and_csv(self, capsys):
        code, out, _ = invoke(capsys, "correlate", "--f", "++--", "--g", "+-+-")
        assert code == 0
        assert "value=0.000000" in out
        code, out, _ = invoke(
            capsys, "correlate", "--f", "++--", "--g", "+-+-", "--format", "csv"
        )
        assert code == 0
        header, row = out.strip().splitlines()
        assert header == "n,value,stderr"
        assert row.split(",")[0] == "4"

    def test_correlate_reads_sequence_files(self, capsys, tmp_path):
        path = tmp_path / "f.txt"
        path.write_text("++--+\n")
        code, out, _ = invoke(capsys, "correlate", "--f", f"@{path}", "--g", "++--+")
        assert code == 0
        assert "value=1.000000" in out

    def test_witness_sweep_csv(self, capsys):
        code, out, _ = invoke(
            capsys, "witness", "--sweep", "30:150:30", "--format", "csv"
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["theta_deg"] for r in rows] == ["30.0", "60.0", "90.0", "120.0", "150.0"]
        for r in rows:
            assert float(r["lhs_optimal"]) >= float(r["lhs_geometric"]) - 1e-12
            assert float(r["lhs_geometric"]) > 1.0

    def test_witness_sweep_plot_files(self, capsys, tmp_path):
        prefix = str(tmp_path / "sweep")
        code, _, _ = invoke(
            capsys, "witness", "--sweep", "45:135:45", "--plot", prefix, "--out",
            str(tmp_path / "sweep.txt")
        )
        assert code == 0
        for series in ("geometric", "optimal"):
            lines = (tmp_path / f"sweep_{series}.dat").read_text().splitlines()
            assert len(lines) == 3
            x, y = lines[1].split()
            assert float(x) == 90.0
            assert abs(float(y) - math.sqrt(2)) < 1e-9


class TestSamplingCommands:
    def test_simulate_prepared_dump_roundtrip(self, capsys, tmp_path):
        u_path, x_path = tmp_path / "u.txt", tmp_path / "x.txt"
        code, out, _ = invoke(
            capsys,
            "simulate-prepared", "--axis", "[0,0,1]", "--alpha", "[1,0,0]",
            "--n", "500", "--seed", "5",
            "--dump-u", str(u_path), "--dump-x", str(x_path),
            "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        u = SignSequence.from_text(u_path.read_text())
        x = SignSequence.from_text(x_path.read_text())
        assert len(u) == len(x) == 500
        assert correlation(u, x).value == doc["estimate"]

    def test_simulate_singlet_csv_columns(self, capsys):
        code, out, _ = invoke(
            capsys,
            "simulate-singlet", "--alpha", "[0,0,1]", "--beta", "[0,0,1]",
            "--n", "200", "--seed", "3", "--format", "csv",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 1
        row = rows[0]
        for column in ("direction_alpha", "direction_beta", "n", "correlation", "stderr"):
            assert column in row
        # aligned wings are exactly anticorrelated
        assert float(row["correlation"]) == -1.0
        assert row["seed"] == "3"

    def test_lhv_dump_lambdas(self, capsys, tmp_path):
        lam_path = tmp_path / "lam.csv"
        code, out, _ = invoke(
            capsys,
            "lhv", "--model", "sign-sphere", "--alpha", "[1,0,0]", "--beta", "[0,1,0]",
            "--n", "300", "--seed", "12", "--dump-lambdas", str(lam_path),
        )
        assert code == 0
        assert "closed_form=0.000000" in out
        rows = list(csv.reader(io.StringIO(lam_path.read_text())))
        assert rows[0] == ["lambda_x", "lambda_y", "lambda_z"]
        assert len(rows) == 301
        for row in rows[1:5]:
            norm = sum(float(c) ** 2 for c in row)
            assert abs(norm - 1.0) < 1e-12


class TestCertifyAndExperiment:
    def test_certify_ap_json_envelope(self, capsys):
        code, out, _ = invoke(
            capsys,
            "certify-ap", "--axis", "[0,0,1]",
            "--directions", "[[0,0,1],[1,0,0]]",
            "--n", "5000", "--seed", "21", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        for key in ("command", "version", "seed", "config_hash", "certificate"):
            assert key in doc
        assert doc["seed"] == 21
        assert doc["certificate"]["pass"] is True
        assert len(doc["certificate"]["rows"]) == 2

    def test_certify_ap_config_file_with_flag_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "seed": 1, "n": 2000, "sigma_k": 5.0,
            "directions": [[0, 0, 1], [0.6, 0, 0.8]],
        }))
        code, out, _ = invoke(
            capsys,
            "certify-ap", "--axis", "[0,0,1]", "--config", str(cfg),
            "--seed", "99", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["seed"] == 99

    def test_certify_ap_needs_exactly_one_mode(self, capsys):
        code, _, err = invoke(
            capsys, "certify-ap", "--directions", "[[0,0,1]]", "--n", "200"
        )
        assert code == 2
        assert err.startswith("error:")

    def test_experiment_contradiction_exit_code(self, capsys, tmp_path):
        summary_path = tmp_path / "summary.json"
        code, out, _ = invoke(
            capsys,
            "experiment", "--a", "[1,0,0]", "--b", "[0,1,0]",
            "--n", "5000", "--seed", "31", "--summary", str(summary_path),
        )
        # a certificate fails by construction: that is the demonstration
        assert code == 1
        assert "contradiction_closed=yes" in out
        doc = json.loads(summary_path.read_text())
        assert doc["target_lhs"] == pytest.approx(math.sqrt(2), abs=1e-12)
        assert doc["empirical_lhs"] <= 1.0
        assert doc["contradiction_closed"] is True
        assert doc["certificate_u_pass"] is False or doc["certificate_v_pass"] is False

    def test_experiment_csv_sections(self, capsys):
        code, out, _ = invoke(
            capsys,
            "experiment", "--a", "[1,0,0]", "--b", "[0,1,0]",
            "--n", "2000", "--seed", "8", "--format", "csv",
        )
        assert code == 1
        rows = list(csv.DictReader(io.StringIO(out)))
        sections = {r["section"] for r in rows}
        assert sections == {"triangle", "certificate_u", "certificate_v"}
        assert sum(r["section"] == "triangle" for r in rows) == 3


class TestContractDetails:
    def test_byte_identical_reruns(self, capsys, tmp_path):
        argv = [
            "simulate-singlet", "--alpha", "[1,0,0]", "--beta", "[0.6,0,0.8]",
            "--n", "4000", "--seed", "77", "--format", "json",
        ]
        out_a = tmp_path / "a.json"
        out_b = tmp_path / "b.json"
        assert run(argv + ["--out", str(out_a)]) == 0
        assert run(argv + ["--out", str(out_b)]) == 0
        capsys.readouterr()
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_usage_error_exits_two(self, capsys):
        code, _, err = invoke(capsys, "correlate", "--f", "++x", "--g", "++-")
        assert code == 2
        assert err.count("\n") == 1

    def test_length_mismatch_exits_two(self, capsys):
        code, _, err = invoke(capsys, "correlate", "--f", "++", "--g", "+++")
        assert code == 2
        assert err.startswith("error:")

    def test_colinear_witness_exits_two(self, capsys):
        code, _, err = invoke(capsys, "witness", "--a", "[1,0,0]", "--b", "[-1,0,0]")
        assert code == 2
        assert "colinear" in err

    def test_unknown_command_exits_two(self, capsys):
        assert invoke(capsys, "frobnicate")[0] == 2

    def test_console_entry_point(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "boolebell", "bruteforce", "--n", "5"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "max_lhs=1.000000" in proc.stdout
