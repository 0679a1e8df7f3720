"""Problem file parsing, rendering, and error locations."""

import json
from fractions import Fraction

import pytest

from algmult import GaussianRational, Poly, ProblemFormatError, QQ
from algmult.problems import load_problem, parse_problem, render_path


def running_dict():
    return {
        "field": "Q",
        "size": 2,
        "coeffs": [
            [["1", "0"], ["0", "0"]],
            [["0", "1"], ["1", "0"]],
        ],
        "center": "0",
    }


class TestParsing:
    def test_running_example(self):
        problem = parse_problem(running_dict())
        path = problem.require_path()
        assert path.size == 2
        assert path.matrix[0, 1] == Poly.variable(QQ)
        assert problem.center == 0

    def test_fractional_scalars(self):
        data = running_dict()
        data["coeffs"][0][0][0] = "-3/7"
        path = parse_problem(data).require_path()
        assert path.matrix[0, 0].coefficient(0) == Fraction(-3, 7)

    def test_gaussian_scalars(self):
        data = {
            "field": "Qi",
            "size": 1,
            "coeffs": [[[{"re": "1/2", "im": "-2"}]]],
        }
        path = parse_problem(data).require_path()
        assert path.matrix[0, 0].coefficient(0) == GaussianRational(
            Fraction(1, 2), -2
        )

    def test_pencil(self):
        data = {"field": "Q", "size": 2, "pencil": [["0", "1"], ["0", "0"]]}
        pencil = parse_problem(data).require_pencil()
        assert pencil[0, 1] == 1

    def test_nonlinearity(self):
        data = {
            "field": "Q",
            "size": 1,
            "coeffs": [[["0"]], [["1"]]],
            "nonlinearity": [[{"coeff": -1, "lambda_power": 0, "u_powers": [3]}]],
        }
        problem = parse_problem(data)
        nlp = problem.nonlinear_problem(0)
        assert nlp.terms[0][0].coeff == -1.0
        assert nlp.terms[0][0].u_powers == (3,)

    def test_seed_passthrough(self):
        data = running_dict()
        data["seed"] = 99
        assert parse_problem(data).seed == 99


class TestErrors:
    def test_bad_field(self):
        with pytest.raises(ProblemFormatError, match="field"):
            parse_problem({"field": "R", "size": 1, "coeffs": [[["0"]]]})

    def test_bad_size(self):
        with pytest.raises(ProblemFormatError, match="size"):
            parse_problem({"field": "Q", "size": 0, "coeffs": []})

    def test_ragged_grid_located(self):
        data = running_dict()
        data["coeffs"][1][0] = ["0"]
        with pytest.raises(ProblemFormatError, match=r"coeffs\[1\]\[0\]"):
            parse_problem(data)

    def test_unparseable_scalar_located(self):
        data = running_dict()
        data["coeffs"][0][1][1] = "one"
        with pytest.raises(ProblemFormatError, match=r"coeffs\[0\]\[1\]\[1\]"):
            parse_problem(data)

    def test_complex_scalar_in_rational_field(self):
        data = running_dict()
        data["coeffs"][0][0][0] = {"re": "1", "im": "1"}
        with pytest.raises(ProblemFormatError):
            parse_problem(data)

    def test_missing_nonlinearity(self):
        problem = parse_problem(running_dict())
        with pytest.raises(ProblemFormatError, match="nonlinearity"):
            problem.nonlinear_problem(0)

    def test_wrong_component_count(self):
        data = running_dict()
        data["nonlinearity"] = [[]]
        with pytest.raises(ProblemFormatError, match="nonlinearity"):
            parse_problem(data)


class TestRoundTrip:
    def test_render_then_parse(self):
        problem = parse_problem(running_dict())
        path = problem.require_path()
        rendered = render_path(path, center=problem.center, seed=7)
        again = parse_problem(rendered)
        assert again.require_path().matrix == path.matrix
        assert again.center == problem.center
        assert again.seed == 7

    def test_load_from_file(self, tmp_path):
        target = tmp_path / "problem.json"
        target.write_text(json.dumps(running_dict()), encoding="utf-8")
        problem = load_problem(str(target))
        assert problem.require_path().size == 2

    def test_missing_file(self):
        with pytest.raises(ProblemFormatError):
            load_problem("/nonexistent/nothing.json")

    def test_invalid_json(self, tmp_path):
        target = tmp_path / "broken.json"
        target.write_text("{", encoding="utf-8")
        with pytest.raises(ProblemFormatError):
            load_problem(str(target))
