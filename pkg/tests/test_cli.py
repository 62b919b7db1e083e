import json
import math
from pathlib import Path

import jsonschema
import pytest

from spherebv.cli import run

SCHEMA = json.loads(
    (Path(__file__).resolve().parents[1] / "src/spherebv/schemas/report.schema.json").read_text()
)


@pytest.fixture()
def weight_file(tmp_path):
    p = tmp_path / "w.json"
    p.write_text(json.dumps({"family": "gevrey", "s": 2.0, "p_max": 200}))
    return str(p)


@pytest.fixture()
def delta_file(tmp_path):
    p = tmp_path / "delta.json"
    p.write_text(
        json.dumps(
            {
                "n": 3,
                "kind": "dual",
                "format": "zonal",
                "entries": [],
                "tail": {"poles": [{"w": 1.0 / (4 * math.pi), "p": [0.0, 0.0, 1.0]}]},
            }
        )
    )
    return str(p)


@pytest.fixture()
def coeff_file(tmp_path):
    entries = [{"j": j, "c": [2.0**-j] + [0.0] * (2 * j)} for j in range(13)]
    p = tmp_path / "func.json"
    p.write_text(json.dumps({"n": 3, "kind": "function", "format": "coeffs", "entries": entries}))
    return str(p)


def load_report(tmp_path, command):
    report = json.loads((tmp_path / f"{command}_report.json").read_text())
    jsonschema.validate(report, SCHEMA)
    return report


class TestExitCodes:
    def test_no_arguments_usage(self, capsys):
        assert run([]) == 1

    def test_unknown_flag(self):
        with pytest.raises(SystemExit) as exc:
            run(["dims", "--bogus", "3"])
        assert exc.value.code == 1

    def test_malformed_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code = run(["classify", "--weights", str(bad), "--expansion", str(bad)])
        assert code == 1
        assert "line" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        assert run(["growth", "--weights", "/nope.json", "--expansion", "/nope.json"]) == 1


class TestDims:
    def test_table_values(self, tmp_path):
        assert run(["--out", str(tmp_path), "dims", "--n", "3", "--jmax", "5"]) == 0
        rep = load_report(tmp_path, "dims")
        assert [row["d"] for row in rep["results"]] == [1, 3, 5, 7, 9, 11]

    def test_csv_format(self, tmp_path):
        assert (
            run(["--out", str(tmp_path), "--format", "csv", "dims", "--n", "2", "--jmax", "3"])
            == 0
        )
        csv = (tmp_path / "dims.csv").read_text().strip().splitlines()
        assert csv[0] == "j,d"
        assert csv[1:] == ["0,1", "1,2", "2,2", "3,2"]


class TestSubcommands:
    def test_basis(self, tmp_path):
        assert run(["--out", str(tmp_path), "basis", "--n", "3", "--j", "2"]) == 0
        rep = load_report(tmp_path, "basis")
        assert rep["results"]["dim"] == 5
        assert rep["results"]["gram_identity_certificate"] is True

    def test_weights_check_and_evals(self, tmp_path, weight_file):
        code = run(
            [
                "--out",
                str(tmp_path),
                "weights",
                "--weights",
                weight_file,
                "--check",
                "--eval-m",
                "4.0",
                "--eval-mstar",
                "3.0",
                "--pv-search",
            ]
        )
        assert code == 0
        rep = load_report(tmp_path, "weights")
        res = rep["results"]
        assert res["conditions"]["m1"] is True
        assert res["m"]["value"] == pytest.approx(math.log(4.0), rel=1e-12)
        assert res["mstar"]["value"] == pytest.approx(math.log(4.5), rel=1e-12)
        assert res["pv_search"]["holds"] is True

    def test_classify(self, tmp_path, weight_file, coeff_file):
        code = run(
            ["--out", str(tmp_path), "classify", "--weights", weight_file, "--expansion", coeff_file]
        )
        assert code == 0
        rep = load_report(tmp_path, "classify")
        assert "analytic-function" in rep["results"]["satisfied"]

    def test_verify_bounds(self, tmp_path):
        code = run(
            [
                "--seed",
                "3",
                "--out",
                str(tmp_path),
                "verify-bounds",
                "--inequality",
                "step",
                "--trials",
                "12",
            ]
        )
        assert code == 0
        rep = load_report(tmp_path, "verify-bounds")
        assert rep["results"]["summary"]["failures"] == 0
        assert len(rep["results"]["verdicts"]) == 12

    def test_poisson_circle_case(self, tmp_path):
        entries = [{"j": 2, "c": [1.0, 0.0]}]
        f = tmp_path / "circle.json"
        f.write_text(
            json.dumps({"n": 2, "kind": "function", "format": "coeffs", "entries": entries})
        )
        code = run(
            [
                "--out",
                str(tmp_path),
                "--format",
                "csv",
                "poisson",
                "--expansion",
                str(f),
                "--r",
                "0.4",
                "--grid",
                "12",
            ]
        )
        assert code == 0
        lines = (tmp_path / "poisson_samples.csv").read_text().strip().splitlines()
        assert lines[0] == "theta1,value"
        assert len(lines) == 13

    def test_poisson_csv(self, tmp_path, delta_file):
        code = run(
            [
                "--out",
                str(tmp_path),
                "--format",
                "csv",
                "poisson",
                "--expansion",
                delta_file,
                "--r",
                "0.5",
                "--grid",
                "8",
            ]
        )
        assert code == 0
        lines = (tmp_path / "poisson_samples.csv").read_text().strip().splitlines()
        assert lines[0] == "theta1,theta2,value"
        assert len(lines) == 65

    def test_growth(self, tmp_path, delta_file, weight_file):
        code = run(
            ["--out", str(tmp_path), "growth", "--weights", weight_file, "--expansion", delta_file]
        )
        assert code == 0
        rep = load_report(tmp_path, "growth")
        assert rep["results"]["verdict"] == "roumieu-boundary-values"

    def test_support(self, tmp_path, delta_file):
        code = run(
            [
                "--out",
                str(tmp_path),
                "support",
                "--expansion",
                delta_file,
                "--delta",
                "0.1",
                "--tau",
                "1e-6",
                "--profiles",
            ]
        )
        assert code == 0
        rep = load_report(tmp_path, "support")
        assert len(rep["results"]["support_caps"]) == 1
        assert (tmp_path / "support_profiles.csv").exists()

    def test_roundtrip(self, tmp_path):
        code = run(
            ["--seed", "5", "--out", str(tmp_path), "roundtrip", "--trials", "3", "--jmax", "4"]
        )
        assert code == 0
        rep = load_report(tmp_path, "roundtrip")
        assert rep["results"]["holds"] is True
        assert rep["results"]["max_deviation"] < 1e-9


class TestDeterminism:
    def test_byte_identical_reports(self, tmp_path, delta_file):
        args_sets = [
            ["--seed", "11", "verify-bounds", "--inequality", "step", "--trials", "8"],
            ["--seed", "11", "dims", "--n", "4", "--jmax", "6"],
            ["--seed", "11", "support", "--expansion", delta_file, "--delta", "0.2"],
        ]
        for args in args_sets:
            out1 = tmp_path / "run1"
            out2 = tmp_path / "run2"
            assert run(["--out", str(out1)] + args) == 0
            assert run(["--out", str(out2)] + args) == 0
            f1 = sorted(p.name for p in out1.iterdir())
            f2 = sorted(p.name for p in out2.iterdir())
            assert f1 == f2
            for name in f1:
                assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
