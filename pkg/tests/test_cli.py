import csv
import io
import json
import math

import pytest

from curveq.cli import main

HELIX_VERIFY = {
    "curve": {"builtin": "helix", "R": 3.0, "C": 4.0, "turns": 1.0},
    "constants": {"hbar": 1.0, "mass": 1.0},
    "grid": {"refinements": [64, 128, 256]},
}


def write_config(tmp_path, obj, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGeometry:
    def test_csv_output(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {
                "curve": {"builtin": "circle", "size": 2.0},
                "grid": {"n": 16, "bc": "periodic"},
            },
        )
        code, out, _ = run(["geometry", "--config", cfg, "--format", "csv"], capsys)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 16
        for row in rows:
            assert float(row["kappa"]) == pytest.approx(0.5, rel=1e-12)
            assert float(row["tau"]) == pytest.approx(0.0, abs=1e-12)
            assert float(row["geometric_potential"]) == pytest.approx(
                -0.5**2 / 8.0, rel=1e-12
            )

    def test_straight_line(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {"curve": {"builtin": "line", "size": 2.0}, "grid": {"n": 8}},
        )
        code, out, _ = run(["geometry", "--config", cfg], capsys)
        assert code == 0
        report = json.loads(out)
        assert all(r["kappa"] == 0.0 for r in report["rows"])


class TestSpectrum:
    def test_circle_against_analytic(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {
                "curve": {"builtin": "circle", "size": 1.0},
                "grid": {"n": 500, "bc": "periodic"},
                "k": 3,
            },
        )
        code, out, _ = run(["spectrum", "--config", cfg], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["rows"][0]["analytic"] == pytest.approx(-0.125, rel=1e-15)
        for row in report["rows"]:
            assert abs(row["delta"]) < 1e-4

    def test_helix_periodic_fixture(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {
                "curve": {"builtin": "helix", "R": 3.0, "C": 4.0},
                "grid": {"n": 512, "bc": "periodic"},
                "k": 3,
            },
        )
        code, out, _ = run(["spectrum", "--config", cfg], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["rows"][0]["analytic"] == pytest.approx(-0.0018, rel=1e-12)
        assert abs(report["rows"][0]["delta"]) < 1e-10
        assert report["rows"][1]["analytic"] == pytest.approx(0.0182, rel=1e-12)


class TestVerify:
    def test_helix_passes_and_is_deterministic(self, tmp_path, capsys):
        cfg = write_config(tmp_path, HELIX_VERIFY)
        code1, out1, err1 = run(["verify", "--config", cfg], capsys)
        code2, out2, _ = run(["verify", "--config", cfg], capsys)
        assert code1 == code2 == 0
        assert out1 == out2  # byte-identical reports
        report = json.loads(out1)
        assert report["summary"]["all_passed"] is True
        assert "wall time" in err1  # timing goes to stderr only

    def test_corrupted_curvature_fails(self, tmp_path, capsys):
        bad = dict(HELIX_VERIFY, corrupt_kappa=1.05)
        bad["grid"] = {"refinements": [64, 128]}
        cfg = write_config(tmp_path, bad)
        code, out, _ = run(["verify", "--config", cfg], capsys)
        assert code == 1
        report = json.loads(out)
        failed = [r["name"] for r in report["rows"] if not r["passed"]]
        assert failed == ["helix: force identity"]

    def test_expression_curve(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {
                "curve": {
                    "expressions": {
                        "ax": "cos(t)",
                        "ay": "sin(t)",
                        "az": "0*t",
                    },
                    "t_min": 0.0,
                    "t_max": 2 * math.pi,
                    "closed": True,
                },
                "grid": {"refinements": [32, 64, 128]},
            },
        )
        code, out, _ = run(["verify", "--config", cfg], capsys)
        assert code == 0
        assert json.loads(out)["summary"]["all_passed"] is True


class TestHelixCheck:
    def test_side_by_side(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {"curve": {"builtin": "helix", "R": 3.0, "C": 4.0}, "grid": {"n": 128}},
        )
        code, out, _ = run(["helix-check", "--config", cfg], capsys)
        assert code == 0
        report = json.loads(out)
        for row in report["rows"]:
            if row["informational"]:
                continue
            assert abs(row["delta"]) < 1e-5, row["quantity"]

    def test_requires_helix(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"curve": {"builtin": "circle", "size": 1.0}})
        code, _, err = run(["helix-check", "--config", cfg], capsys)
        assert code == 2
        assert "helix" in err


class TestConfigErrors:
    def test_missing_file(self, capsys):
        code, _, err = run(["verify", "--config", "/nonexistent.json"], capsys)
        assert code == 2
        assert "config error" in err

    def test_bad_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _, _ = run(["verify", "--config", str(path)], capsys)
        assert code == 2

    def test_bad_expression(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {
                "curve": {
                    "expressions": {"ax": "cos(", "ay": "0*t", "az": "0*t"},
                    "t_min": 0.0,
                    "t_max": 1.0,
                },
            },
        )
        code, _, err = run(["geometry", "--config", cfg], capsys)
        assert code == 2

    def test_periodic_on_open_curve(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {
                "curve": {"builtin": "line", "size": 1.0},
                "grid": {"n": 32, "bc": "periodic"},
            },
        )
        code, _, _ = run(["geometry", "--config", cfg], capsys)
        assert code == 2

    def test_unknown_builtin(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"curve": {"builtin": "torus"}})
        code, _, _ = run(["geometry", "--config", cfg], capsys)
        assert code == 2

    def test_output_file(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {"curve": {"builtin": "line", "size": 1.0}, "grid": {"n": 8}},
        )
        out_path = tmp_path / "report.json"
        code, out, _ = run(
            ["geometry", "--config", cfg, "--output", str(out_path)], capsys
        )
        assert code == 0
        assert out == ""
        report = json.loads(out_path.read_text())
        assert report["task"] == "geometry"
        assert len(report["config_digest"]) == 16
