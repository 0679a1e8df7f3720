"""Problem file reading and writing.

The on-disk contract is UTF-8 JSON with string-encoded exact scalars:

  field         "Q" or "Qi"
  size          n
  coeffs        list of n x n scalar grids, one per power of lambda
  center        optional scalar (the default center, 0 when absent)
  pencil        optional constant n x n grid (geometry commands)
  nonlinearity  optional list of per-component term lists, each term an
                object {"coeff", "lambda_power", "u_powers"}
  seed          optional integer

Scalars are "a/b" or "a" strings over Q and {"re", "im"} objects over Qi.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Tuple

from .bifurcation import MonomialTerm, NonlinearProblem
from .errors import ProblemFormatError
from .matrices import ConstMat, MatPoly
from .scalars import FIELDS, Field, Poly
from .spectral import Path


@dataclass
class ProblemInput:
    """Parsed problem file."""

    field: Field
    size: int
    path: Optional[Path]
    center: Optional[object]
    pencil: Optional[ConstMat]
    nonlinearity: Optional[Tuple[Tuple[MonomialTerm, ...], ...]]
    seed: Optional[int]

    def require_path(self) -> Path:
        if self.path is None:
            raise ProblemFormatError("coeffs", "this command needs a path")
        return self.path

    def require_pencil(self) -> ConstMat:
        if self.pencil is None:
            raise ProblemFormatError("pencil", "this command needs a pencil matrix")
        return self.pencil

    def nonlinear_problem(self, center) -> NonlinearProblem:
        if self.nonlinearity is None:
            raise ProblemFormatError(
                "nonlinearity", "this command needs a nonlinearity"
            )
        return NonlinearProblem(self.require_path(), center, self.nonlinearity)


def _parse_scalar(field: Field, obj, location: str):
    try:
        return field.parse(obj)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ProblemFormatError(location, str(exc)) from None


def _parse_grid(field: Field, obj, n: int, location: str):
    if not isinstance(obj, list) or len(obj) != n:
        raise ProblemFormatError(location, f"expected a list of {n} rows")
    grid = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != n:
            raise ProblemFormatError(
                f"{location}[{i}]", f"expected a list of {n} scalars"
            )
        grid.append(
            [
                _parse_scalar(field, entry, f"{location}[{i}][{j}]")
                for j, entry in enumerate(row)
            ]
        )
    return grid


def parse_problem(data: dict) -> ProblemInput:
    if not isinstance(data, dict):
        raise ProblemFormatError("$", "problem file must be a JSON object")
    tag = data.get("field")
    if tag not in FIELDS:
        raise ProblemFormatError("field", f'expected "Q" or "Qi", got {tag!r}')
    field = FIELDS[tag]
    size = data.get("size")
    if not isinstance(size, int) or size < 1:
        raise ProblemFormatError("size", f"expected a positive integer, got {size!r}")

    path = None
    if "coeffs" in data:
        coeffs = data["coeffs"]
        if not isinstance(coeffs, list) or not coeffs:
            raise ProblemFormatError("coeffs", "expected a nonempty list of grids")
        grids = [
            _parse_grid(field, grid, size, f"coeffs[{k}]")
            for k, grid in enumerate(coeffs)
        ]
        rows = []
        for i in range(size):
            row = []
            for j in range(size):
                row.append(Poly(field, [grid[i][j] for grid in grids]))
            rows.append(row)
        path = Path(MatPoly(field, rows, ncols=size))

    center = None
    if "center" in data:
        center = _parse_scalar(field, data["center"], "center")

    pencil = None
    if "pencil" in data:
        pencil = ConstMat(
            field, _parse_grid(field, data["pencil"], size, "pencil"), ncols=size
        )

    nonlinearity = None
    if "nonlinearity" in data:
        raw = data["nonlinearity"]
        if not isinstance(raw, list) or len(raw) != size:
            raise ProblemFormatError(
                "nonlinearity", f"expected {size} per-component term lists"
            )
        comps = []
        for i, comp in enumerate(raw):
            if not isinstance(comp, list):
                raise ProblemFormatError(
                    f"nonlinearity[{i}]", "expected a list of terms"
                )
            terms = []
            for k, term in enumerate(comp):
                loc = f"nonlinearity[{i}][{k}]"
                if not isinstance(term, dict):
                    raise ProblemFormatError(loc, "expected a term object")
                try:
                    coeff = float(
                        term["coeff"]
                        if isinstance(term["coeff"], (int, float))
                        else str(term["coeff"])
                    )
                    lambda_power = int(term.get("lambda_power", 0))
                    u_powers = tuple(int(p) for p in term["u_powers"])
                except (KeyError, ValueError, TypeError) as exc:
                    raise ProblemFormatError(loc, f"bad term: {exc}") from None
                terms.append(
                    MonomialTerm(
                        coeff=coeff, lambda_power=lambda_power, u_powers=u_powers
                    )
                )
            comps.append(tuple(terms))
        nonlinearity = tuple(comps)

    seed = data.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise ProblemFormatError("seed", "seed must be an integer")

    return ProblemInput(
        field=field,
        size=size,
        path=path,
        center=center,
        pencil=pencil,
        nonlinearity=nonlinearity,
        seed=seed,
    )


def load_problem(path: str) -> ProblemInput:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ProblemFormatError(path, f"cannot read file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(path, f"invalid JSON: {exc}") from None
    return parse_problem(data)


def render_path(path: Path, center=None, seed=None) -> dict:
    """Serialize a path back into the problem-file format (round-trips)."""
    field = path.field
    n = path.size
    top_degree = int(path.matrix.degree) if path.matrix.degree >= 0 else 0
    coeffs = []
    for k in range(top_degree + 1):
        coeffs.append(
            [
                [field.render(path.matrix[i, j].coefficient(k)) for j in range(n)]
                for i in range(n)
            ]
        )
    out = {"field": field.tag, "size": n, "coeffs": coeffs}
    if center is not None:
        out["center"] = field.render(center)
    if seed is not None:
        out["seed"] = seed
    return out
