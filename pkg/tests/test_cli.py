import json
import math

import pytest

from suitaverify.cli import run


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


class TestKernelCommand:
    def test_g2(self, capsys):
        assert run(["kernel", "--g2"]) == 0
        payload = _json_out(capsys)
        assert payload["value"] == pytest.approx(2.0 / math.pi**2)

    def test_annulus_sqrt_point(self, capsys):
        assert run(["kernel", "--annulus", "0.2", "--w", "sqrt"]) == 0
        payload = _json_out(capsys)
        assert payload["method"] == "annulus-series"
        assert payload["value"] > 0
        assert payload["error_bound"] < 1e-10

    def test_reinhardt_domain(self, capsys):
        dom = '{"variant": "ellipsoid", "p": [0.5, 1.0]}'
        assert run(["kernel", "--domain", dom, "--w", "[0.3, 0]"]) == 0
        payload = _json_out(capsys)
        expected = (1 + 1) / (4 * math.pi**2 * 0.3) * ((0.7) ** -3 - (1.3) ** -3)
        assert payload["value"] == pytest.approx(expected, rel=1e-8)

    def test_missing_selector_is_validation_error(self, capsys):
        assert run(["kernel"]) == 1
        assert "error" in capsys.readouterr().err

    def test_bad_radius(self, capsys):
        assert run(["kernel", "--annulus", "1.5"]) == 1

    def test_boundary_point_is_validation_error(self, capsys):
        dom = '{"variant": "ellipsoid", "p": [1.0]}'
        assert run(["kernel", "--domain", dom, "--w", "[1.0]"]) == 1


class TestGreenCommand:
    def test_capacity_and_bound(self, capsys):
        assert run(["green", "--r", "0.2", "--w", "sqrt"]) == 0
        payload = _json_out(capsys)
        assert payload["capacity"] <= payload["covering_bound"]
        assert payload["capacity"] == pytest.approx(payload["covering_bound"], rel=1e-3)

    def test_levels(self, capsys):
        assert run(["green", "--r", "0.2", "--levels=-1,-2"]) == 0
        payload = _json_out(capsys)
        assert len(payload["levels"]) == 2
        for row in payload["levels"]:
            assert row["flux"] == pytest.approx(2 * math.pi, abs=1e-6)
            assert row["iso_ratio"] >= 1.0 - 1e-9

    def test_near_critical_level_is_numerical_failure(self, capsys):
        # the saddle of the r=0.2 annulus sits near t = -0.0087
        assert run(["green", "--r", "0.2", "--levels=-0.0087"]) == 2
        assert "numerical failure" in capsys.readouterr().err

    def test_pole_outside_is_validation_error(self, capsys):
        assert run(["green", "--r", "0.2", "--w", "0.1"]) == 1

    def test_output_file(self, tmp_path, capsys):
        out = tmp_path / "green.json"
        assert run(["green", "--r", "0.2", "--out", str(out)]) == 0
        assert json.loads(out.read_text())["r"] == 0.2


class TestIndicatrixCommand:
    def test_ell1_closed_vs_quadrature(self, capsys):
        assert run(["indicatrix", "--family", "ell1", "--m", "1", "--n", "3", "--b", "0.4"]) == 0
        payload = _json_out(capsys)
        assert payload["volume_closed"] == pytest.approx(payload["volume_quadrature"], rel=1e-8)

    def test_g2(self, capsys):
        assert run(["indicatrix", "--family", "g2"]) == 0
        payload = _json_out(capsys)
        assert payload["volume"] == pytest.approx(2 * math.pi**2 / 3, rel=1e-9)

    def test_p_family_numeric(self, capsys):
        assert run(["indicatrix", "--family", "p", "--m", "1", "--b", "0.4"]) == 0
        payload = _json_out(capsys)
        assert payload["volume_numeric"] == pytest.approx(
            math.pi**2 / 2 * (1 - 0.16) ** 3, rel=1e-4
        )

    def test_profile_csv(self, tmp_path, capsys):
        out = tmp_path / "profile.csv"
        code = run(
            ["indicatrix", "--family", "ell1", "--b", "0.3", "--out", str(out), "--format", "csv"]
        )
        assert code == 0
        assert out.read_text().startswith("r,gamma")

    def test_invalid_b(self, capsys):
        assert run(["indicatrix", "--family", "ell1", "--b", "1.5"]) == 1


class TestSuitaFCommand:
    def test_g2_value(self, capsys):
        assert run(["suita-f", "--g2"]) == 0
        out = capsys.readouterr().out
        assert "F = 1.1547005" in out

    def test_annulus(self, capsys):
        assert run(["suita-f", "--annulus", "0.2", "--w", "sqrt"]) == 0
        out = capsys.readouterr().out
        payload = json.loads(out[out.index("{") :])
        assert payload["F"] >= 1.0
        assert payload["n"] == 1

    def test_ellipsoid_axis(self, capsys):
        dom = '{"variant": "ellipsoid", "p": [0.5, 1.0]}'
        assert run(["suita-f", "--domain", dom, "--b", "0.3"]) == 0
        out = capsys.readouterr().out
        payload = json.loads(out[out.index("{") :])
        assert 1.0 < payload["F"] < 4.0
        assert payload["classification"] == "convex"

    def test_center_default(self, capsys):
        dom = '{"variant": "polydisk", "n": 2}'
        assert run(["suita-f", "--domain", dom]) == 0
        out = capsys.readouterr().out
        payload = json.loads(out[out.index("{") :])
        assert payload["F"] == 1.0
        assert payload["classification"] == "symmetric"


class TestScanCommand:
    def test_ell1_json(self, capsys):
        assert run(["scan", "--family", "ell1", "--n", "2..3", "--grid", "12"]) == 0
        payload = _json_out(capsys)
        assert payload["verdicts"]["all_at_least_one"] is True
        assert len(payload["samples"]) == 24

    def test_csv_artifacts(self, tmp_path, capsys):
        out = tmp_path / "scan.csv"
        code = run(
            ["scan", "--family", "ell1", "--n", "2..2", "--grid", "8", "--out", str(out), "--format", "csv"]
        )
        assert code == 0
        assert out.read_text().startswith("curve,b,F")
        assert json.loads((tmp_path / "scan.csv.json").read_text())["kind"] == "figure-scan"

    def test_grid_too_small(self, capsys):
        assert run(["scan", "--family", "ell1", "--grid", "1"]) == 1


class TestExperimentCommand:
    def test_monotonicity_passes(self, tmp_path, capsys):
        out = tmp_path / "exp.json"
        code = run(
            [
                "experiment",
                "--r",
                "0.2",
                "--t-grid=-4,-3,-2",
                "--samples",
                str(2**16),
                "--out",
                str(out),
            ]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["verdicts"]["normalized_non_decreasing_3sigma"] is True

    def test_deterministic_across_runs(self, tmp_path):
        outs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            run(
                ["experiment", "--r", "0.2", "--t-grid=-3,-2", "--samples", str(2**14), "--out", str(out)]
            )
            outs.append(out.read_text())
        assert outs[0] == outs[1]

    def test_seed_changes_samples(self, tmp_path):
        outs = []
        for seed in ("0", "1"):
            out = tmp_path / f"s{seed}.json"
            run(
                [
                    "experiment",
                    "--r",
                    "0.2",
                    "--t-grid=-3,-2",
                    "--samples",
                    str(2**14),
                    "--seed",
                    seed,
                    "--out",
                    str(out),
                ]
            )
            outs.append(json.loads(out.read_text()))
        assert outs[0]["samples"] != outs[1]["samples"]


class TestParser:
    def test_unknown_command(self, capsys):
        assert run(["frobnicate"]) == 1

    def test_bad_flag_value(self, capsys):
        assert run(["green", "--r", "zebra"]) == 1

    def test_bad_base_point(self, capsys):
        assert run(["kernel", "--annulus", "0.2", "--w", "zebra"]) == 1
