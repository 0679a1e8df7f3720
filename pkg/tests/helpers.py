"""Independent oracles and small generators shared across the test suite.

The oracles here deliberately avoid the library's algorithms: the cofactor
determinant expands recursively along the first row (the library uses
fraction-free elimination), and the geometric series builder sums the series
directly (the library divides power series).
"""

from __future__ import annotations

import random
from fractions import Fraction

from algmult import ConstMat, MatPoly, Poly, GaussianRational


def cofactor_det(rows, zero):
    """Recursive first-row cofactor expansion; entries need +, -, *."""
    n = len(rows)
    if n == 0:
        raise ValueError("cofactor oracle needs explicit entries")
    if n == 1:
        return rows[0][0]
    total = zero
    for j in range(n):
        minor = [
            [rows[i][k] for k in range(n) if k != j] for i in range(1, n)
        ]
        term = rows[0][j] * cofactor_det(minor, zero)
        total = total + term if j % 2 == 0 else total - term
    return total


def matpoly_cofactor_det(m: MatPoly) -> Poly:
    return cofactor_det([list(r) for r in m.rows], Poly.zero(m.field))


def constmat_cofactor_det(m: ConstMat):
    return cofactor_det([list(r) for r in m.rows], m.field.zero())


def geometric_series_coeffs(terms: int):
    """Coefficients of 1/(x - 1) = -(1 + x + x^2 + ...) around 0."""
    return [Fraction(-1)] * terms


def random_matpoly(rng: random.Random, field, n: int, degree: int, height=2) -> MatPoly:
    def rand_scalar():
        if field.is_complex:
            return GaussianRational(rng.randint(-height, height), rng.randint(-height, height))
        return Fraction(rng.randint(-height, height))

    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            row.append(Poly(field, [rand_scalar() for _ in range(degree + 1)]))
        rows.append(row)
    return MatPoly(field, rows, ncols=n)


def random_constmat(rng: random.Random, field, n: int, height=3) -> ConstMat:
    def rand_scalar():
        if field.is_complex:
            return GaussianRational(rng.randint(-height, height), rng.randint(-height, height))
        return Fraction(rng.randint(-height, height))

    return ConstMat(field, [[rand_scalar() for _ in range(n)] for _ in range(n)])
