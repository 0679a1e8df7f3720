"""Determinant differentials, tangent orders, and the intersection index of
a pencil line against the determinantal variety.

Two independent differentiation routes are kept side by side: the
combinatorial sum of diagonal mixed partials of the determinant (each one a
complementary principal minor, or zero on a repeated index), and the plain
derivative of the characteristic polynomial.  The intersection index runs a
third route: eliminate the linear equations of the pencil line from the
determinant ideal, reduce to one variable, and read off a vanishing order
together with its monomial-basis certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Tuple

from .errors import CapExceededError, InvariantViolationError
from .matrices import ConstMat, MatPoly
from .scalars import Poly, Scalar, _ord_int
from .smith import build_linearization, local_smith_of_schur
from .spectral import Path, ProjectionPair, chi_via_det

SUM_DIMENSION_CAP = 4
SUM_ORDER_CAP = 6


@dataclass(frozen=True)
class DetDifferentialReport:
    """Value of the k-th differential of the determinant map at `base`,
    applied to the identity direction."""

    base: ConstMat
    order: int
    value: Scalar
    method: str  # "combinatorial-sum" | "derivative-of-det" | "both"


@dataclass(frozen=True)
class TangentOrderReport:
    """Minimal order at which the scalar line escapes the tangent varieties
    of the determinant map at L(lam0); equals the classical multiplicity."""

    t: ConstMat
    center: object
    order: int  # 0 means lam0 is not an eigenvalue
    per_order: Tuple[DetDifferentialReport, ...]
    line_memberships: Tuple[bool, ...]  # line lies in the i-th tangent variety


@dataclass(frozen=True)
class IntersectionIndexResult:
    """Local intersection index of the pencil line with the determinantal
    variety, with the reduced univariate generator as certificate."""

    index: int
    generator: Poly
    shifted_center: object
    monomial_basis_size: int


def det_differential_sum(l: ConstMat, k: int) -> Scalar:
    """Sum over all k-tuples of diagonal indices of the k-th mixed partials
    of the determinant, evaluated at l.

    A mixed partial with a repeated diagonal index vanishes (the determinant
    is multilinear); for distinct indices it is the complementary principal
    minor.  Feasibility is capped at dimension 4 and order 6.
    """
    if not l.is_square:
        raise ValueError("determinant differentials need a square matrix")
    n = l.nrows
    if k < 1:
        raise ValueError("differential order must be at least 1")
    if n > SUM_DIMENSION_CAP or k > SUM_ORDER_CAP:
        raise CapExceededError(
            f"combinatorial sum capped at dimension {SUM_DIMENSION_CAP} "
            f"and order {SUM_ORDER_CAP} (got n={n}, k={k})"
        )
    minors = {}
    total = l.field.zero()
    for tup in itertools.product(range(n), repeat=k):
        s = frozenset(tup)
        if len(s) != k:
            continue  # repeated diagonal variable: the partial is zero
        if s not in minors:
            keep = [i for i in range(n) if i not in s]
            sub = ConstMat(
                l.field,
                [[l[i, j] for j in keep] for i in keep],
                ncols=len(keep),
            )
            minors[s] = sub.det()
        total = total + minors[s]
    return total


def charpoly(t: ConstMat) -> Poly:
    """det(lambda I - T), exactly."""
    return MatPoly.lambda_identity_minus(t).det()


def det_derivative(t: ConstMat, lam0, r: int) -> Scalar:
    """r-th derivative of det(lambda I - T) at lam0 (independent route)."""
    if r < 0:
        raise ValueError("derivative order must be nonnegative")
    p = charpoly(t)
    for _ in range(r):
        p = p.derivative()
    return p.evaluate(t.field.coerce(lam0))


def tangent_order(t: ConstMat, lam0) -> TangentOrderReport:
    """Scan differential orders until the identity direction leaves the
    tangent variety; cross-check both routes inside the cap."""
    if not t.is_square:
        raise ValueError("tangent order needs a square matrix")
    field = t.field
    lam0 = field.coerce(lam0)
    n = t.nrows
    c = charpoly(t)
    if c.evaluate(lam0):
        return TangentOrderReport(t, lam0, 0, (), ())
    base = MatPoly.lambda_identity_minus(t).eval(lam0)
    reports = []
    memberships = []
    order = None
    for r in range(1, n + 1):
        derivative_value = det_derivative(t, lam0, r)
        method = "derivative-of-det"
        if n <= SUM_DIMENSION_CAP and r <= SUM_ORDER_CAP:
            sum_value = det_differential_sum(base, r)
            if sum_value != derivative_value:
                raise InvariantViolationError(
                    "differential sum disagrees with the derivative route"
                )
            method = "both"
        reports.append(DetDifferentialReport(base, r, derivative_value, method))
        memberships.append(not derivative_value)
        if derivative_value:
            order = r
            break
    if order is None:
        raise InvariantViolationError(
            "characteristic polynomial has vanishing derivatives up to its degree"
        )
    return TangentOrderReport(
        t, lam0, order, tuple(reports), tuple(memberships)
    )


def intersection_index_pencil(t: ConstMat, lam0) -> IntersectionIndexResult:
    """Eliminate the pencil line's linear equations from the determinant
    ideal and read the index off the reduced univariate generator.

    The substitution pins every coordinate to the first diagonal one, so the
    generator is det L(x1 + t11) as a polynomial in x1, the local ring
    collapses to one variable, and the index is the vanishing order at the
    shifted center lam0 - t11, certified by the monomial basis
    (1, x1, ..., x1^(index-1)).
    """
    if not t.is_square:
        raise ValueError("intersection index needs a square matrix")
    field = t.field
    lam0 = field.coerce(lam0)
    t11 = t[0, 0]
    c = charpoly(t)
    generator = c.shift(t11)  # generator(x1) = det L(x1 + t11)
    shifted_center = lam0 - t11
    if generator.evaluate(shifted_center):
        index = 0
    else:
        index = _ord_int(generator, shifted_center)
    return IntersectionIndexResult(
        index=index,
        generator=generator,
        shifted_center=shifted_center,
        monomial_basis_size=index,
    )


def pencil_routes_agree(t: ConstMat, lam0) -> bool:
    """Three-way agreement on a pencil: determinant order, tangent order,
    intersection index."""
    path = Path(MatPoly.lambda_identity_minus(t), label="pencil")
    chi = chi_via_det(path, lam0)
    order = tangent_order(t, lam0).order
    index = intersection_index_pencil(t, lam0).index
    return chi == order and order == index


def chi_via_intersection(
    path: Path, pair: ProjectionPair
) -> IntersectionIndexResult:
    """Full pipeline: Schur operator, local partial multiplicities, Jordan
    linearization, then the pencil intersection index at the center."""
    lsf = local_smith_of_schur(path, pair)
    if not lsf.kappas:
        return IntersectionIndexResult(
            index=0,
            generator=Poly.one(path.field),
            shifted_center=pair.center,
            monomial_basis_size=0,
        )
    lin = build_linearization(lsf)
    return intersection_index_pencil(lin.lin, pair.center)
