"""Command-line surface: JSON shapes, exit codes, determinism."""

import json
import subprocess
import sys
from pathlib import Path as FsPath

import pytest

from algmult.cli import main

DATA = FsPath(__file__).resolve().parent.parent / "src" / "algmult" / "data"


def write_problem(tmp_path, payload, name="problem.json"):
    target = tmp_path / name
    target.write_text(json.dumps(payload), encoding="utf-8")
    return str(target)


def running_problem(tmp_path):
    return write_problem(
        tmp_path,
        {
            "field": "Q",
            "size": 2,
            "coeffs": [[["1", "0"], ["0", "0"]], [["0", "1"], ["1", "0"]]],
            "center": "0",
        },
    )


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestChi:
    def test_running_example_certificate(self, tmp_path, capsys):
        code, out, _ = run_cli(capsys, ["chi", "--input", running_problem(tmp_path)])
        assert code == 0
        payload = json.loads(out)
        assert payload["chi_det"] == 2
        assert payload["chi_schur"] == 2
        assert payload["kappa"] == [2]
        assert payload["M"] == 2
        assert payload["index"] == 2
        assert payload["agree"] is True
        assert payload["lambda0"] == "0"
        assert len(payload["chi_schur_pairs"]) == 6

    def test_invertible_center_all_zero(self, tmp_path, capsys):
        problem = write_problem(
            tmp_path,
            {"field": "Q", "size": 1, "coeffs": [[["1"]], [["1"]]]},
        )
        code, out, _ = run_cli(capsys, ["chi", "--input", problem, "--lambda0", "0"])
        payload = json.loads(out)
        assert code == 0
        assert payload["chi_det"] == 0
        assert payload["kappa"] == []
        assert payload["agree"] is True

    def test_normalization_instance_all_ones(self, tmp_path, capsys):
        # (lambda - lam0) * Pi + I - Pi for the rank-one projection onto e1
        problem = write_problem(
            tmp_path,
            {
                "field": "Q",
                "size": 2,
                "coeffs": [[["0", "0"], ["0", "1"]], [["1", "0"], ["0", "0"]]],
            },
        )
        code, out, _ = run_cli(capsys, ["chi", "--input", problem])
        payload = json.loads(out)
        assert code == 0
        assert payload["chi_det"] == 1
        assert payload["chi_schur"] == 1
        assert payload["index"] == 1

    def test_degenerate_exits_2(self, tmp_path, capsys):
        problem = write_problem(
            tmp_path,
            {
                "field": "Q",
                "size": 2,
                "coeffs": [[["0", "0"], ["0", "0"]], [["1", "1"], ["1", "1"]]],
            },
        )
        code, out, _ = run_cli(capsys, ["chi", "--input", problem])
        assert code == 2
        assert json.loads(out)["error"] == "Σ(𝔏)=Ω"

    def test_parse_error_exits_1(self, tmp_path, capsys):
        problem = write_problem(
            tmp_path, {"field": "Q", "size": 1, "coeffs": [[["nope"]]]}
        )
        code, _, err = run_cli(capsys, ["chi", "--input", problem])
        assert code == 1
        assert "coeffs[0][0][0]" in err

    def test_gaussian_center_flag(self, tmp_path, capsys):
        problem = write_problem(
            tmp_path,
            {
                "field": "Qi",
                "size": 1,
                "coeffs": [[[{"re": "1", "im": "0"}]], [[{"re": "0", "im": "1"}]]],
            },
        )
        # path is [1 + i*lambda], singular at lambda = i (1 + i*i = 0)
        code, out, _ = run_cli(
            capsys,
            ["chi", "--input", problem, "--lambda0", '{"re": "0", "im": "1"}'],
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["chi_det"] == 1

    def test_json_out_written(self, tmp_path, capsys):
        out_file = tmp_path / "cert.json"
        code, out, _ = run_cli(
            capsys,
            [
                "chi",
                "--input",
                running_problem(tmp_path),
                "--json-out",
                str(out_file),
            ],
        )
        assert code == 0
        assert json.loads(out_file.read_text()) == json.loads(out)


class TestSpectrum:
    def test_two_eigenvalues(self, tmp_path, capsys):
        problem = write_problem(
            tmp_path,
            {
                "field": "Q",
                "size": 2,
                "coeffs": [[["-1", "0"], ["0", "-2"]], [["1", "0"], ["0", "1"]]],
            },
        )
        code, out, _ = run_cli(capsys, ["spectrum", "--input", problem])
        payload = json.loads(out)
        assert code == 0
        assert payload["eigenvalues"] == [
            {"value": "1", "chi": 1},
            {"value": "2", "chi": 1},
        ]

    def test_residual_reported(self, tmp_path, capsys):
        problem = write_problem(
            tmp_path,
            {"field": "Q", "size": 1, "coeffs": [[["-2"]], [["0"]], [["1"]]]},
        )
        code, out, _ = run_cli(capsys, ["spectrum", "--input", problem])
        payload = json.loads(out)
        assert payload["eigenvalues"] == []
        assert payload["residual"] == "λ^2 - 2"


class TestSchurAndSmith:
    def test_schur_dump(self, tmp_path, capsys):
        code, out, _ = run_cli(capsys, ["schur", "--input", running_problem(tmp_path)])
        payload = json.loads(out)
        assert code == 0
        assert payload["size"] == 1
        assert payload["matrix"] == [["-λ^2"]]
        assert payload["inverse_identity"] is True

    def test_smith_dump(self, tmp_path, capsys):
        code, out, _ = run_cli(capsys, ["smith", "--input", running_problem(tmp_path)])
        payload = json.loads(out)
        assert code == 0
        assert payload["kappa"] == [2]
        assert payload["M"] == 2
        assert payload["linearization"] == [["0", "1"], ["0", "0"]]


class TestTangent:
    def test_three_block(self, tmp_path, capsys):
        problem = write_problem(
            tmp_path,
            {
                "field": "Q",
                "size": 3,
                "pencil": [["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]],
            },
        )
        code, out, _ = run_cli(
            capsys, ["tangent", "--input", problem, "--lambda0", "0"]
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["order"] == 3
        assert payload["intersection_index"] == 3
        assert not payload["combinatorial_route_skipped"]

    def test_large_pencil_skips_combinatorial_route(self, tmp_path, capsys):
        n = 5
        grid = [["0"] * n for _ in range(n)]
        for i in range(n):
            grid[i][i] = str(i)
        problem = write_problem(
            tmp_path, {"field": "Q", "size": n, "pencil": grid}
        )
        code, out, _ = run_cli(
            capsys, ["tangent", "--input", problem, "--lambda0", "0"]
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["order"] == 1
        assert payload["combinatorial_route_skipped"] is True
        assert payload["per_order"][0]["methods"] == ["derivative-of-det"]


class TestBifurcate:
    def test_pitchfork_file(self, capsys):
        code, out, _ = run_cli(
            capsys, ["bifurcate", "--input", str(DATA / "pitchfork.json")]
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["chi"] == 1
        assert payload["odd"] is True
        assert payload["sign_change"] is True
        assert payload["verdict"] == "nonlinear eigenvalue"
        branch_values = sorted(b["u"][0] for b in payload["branches"] if b["lambda"] > 0)
        assert len(branch_values) == 2
        assert abs(branch_values[0] + 0.1) <= 1e-6
        assert abs(branch_values[1] - 0.1) <= 1e-6

    def test_even_file(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["bifurcate", "--input", str(DATA / "even_quadratic_touch.json")],
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["chi"] == 2
        assert payload["odd"] is False
        assert payload["sign_change"] is False
        assert payload["verdict"] == "not a nonlinear eigenvalue"

    def test_missing_nonlinearity_exits_1(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys, ["bifurcate", "--input", running_problem(tmp_path)]
        )
        assert code == 1
        assert "nonlinearity" in err

    def test_complex_field_exits_1(self, tmp_path, capsys):
        problem = write_problem(
            tmp_path,
            {
                "field": "Qi",
                "size": 1,
                "coeffs": [[[{"re": "0", "im": "0"}]], [[{"re": "1", "im": "0"}]]],
                "nonlinearity": [[{"coeff": 1, "lambda_power": 0, "u_powers": [2]}]],
            },
        )
        code, _, err = run_cli(capsys, ["bifurcate", "--input", problem])
        assert code == 1
        assert "real field" in err

    def test_degenerate_path_exits_2(self, tmp_path, capsys):
        problem = write_problem(
            tmp_path,
            {
                "field": "Q",
                "size": 2,
                "coeffs": [[["0", "0"], ["0", "0"]], [["1", "1"], ["1", "1"]]],
                "nonlinearity": [
                    [{"coeff": 1, "lambda_power": 0, "u_powers": [2, 0]}],
                    [{"coeff": 1, "lambda_power": 0, "u_powers": [0, 2]}],
                ],
            },
        )
        code, out, _ = run_cli(capsys, ["bifurcate", "--input", problem])
        assert code == 2


class TestVerify:
    def test_small_run_passes(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["verify", "--seed", "7", "--count", "3", "--size", "3", "--degree", "2"],
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["summary"] == "3/3 pass"
        assert all(item["ok"] for item in payload["instances"])

    def test_zero_count_trivially_passes(self, capsys):
        code, out, _ = run_cli(capsys, ["verify", "--count", "0"])
        payload = json.loads(out)
        assert code == 0
        assert payload["summary"] == "0/0 pass"

    def test_planted_three_two_reproduces_five_on_all_routes(self):
        import random

        from algmult import planted_path, QQ
        from algmult.cli import build_certificate

        inst = planted_path(random.Random(3), QQ, 3, 0, (3, 2))
        assert inst is not None and inst.chi == 5
        cert = build_certificate(inst.path, inst.center)
        assert cert.agree
        assert int(cert.chi_det) == 5
        assert sum(cert.kappas) == 5
        assert cert.intersection_index == 5

    def test_byte_identical_across_runs(self):
        cmd = [
            sys.executable,
            "-m",
            "algmult.cli",
            "verify",
            "--seed",
            "42",
            "--count",
            "3",
            "--size",
            "3",
            "--degree",
            "2",
        ]
        first = subprocess.run(cmd, capture_output=True, check=True)
        second = subprocess.run(cmd, capture_output=True, check=True)
        assert first.stdout == second.stdout
        assert first.stdout


class TestParserShape:
    def test_unknown_command_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["frobnicate"])
