"""Schur operator, local determinant, and the multiplicity route through it.

Eliminating the invertible top-left block of the adapted path leaves an
effective operator on the kernel: the Schur operator.  Its determinant order
at the center reproduces the multiplicity, the product of the block
determinant with it acts as a local determinant, and the whole path factors
exactly through unit-triangular witnesses.  Every identity returned here is
verified exactly before it leaves the module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import (
    DegeneratePathError,
    InvariantViolationError,
    RegularityError,
)
from .matrices import MatPoly, RatMat
from .roots import field_roots
from .scalars import ExtendedNat, Poly, RationalFunction, _ord_int
from .spectral import (
    Path,
    ProjectionPair,
    adapted_matrix,
    block_split,
    validate_projection_pair,
)


@dataclass(frozen=True)
class SchurOperator:
    """Effective operator on the kernel after eliminating the invertible
    block, expressed in the adapted bases."""

    matrix: RatMat
    center: object
    pair: ProjectionPair
    bad_points: Tuple[object, ...]  # field roots of det L11: poles of validity

    @property
    def size(self) -> int:
        return self.matrix.nrows

    def is_valid_at(self, lam) -> bool:
        return self.matrix.is_regular_at(lam)


@dataclass(frozen=True)
class FactorizationWitness:
    """Unit-triangular factors and the block-diagonal middle with
    left * middle * right equal to the adapted path, exactly."""

    left: RatMat
    middle: RatMat
    right: RatMat
    adapted: MatPoly


@dataclass(frozen=True)
class LocalDeterminant:
    """det(L11) * det(Schur), a scalar-valued determinant surrogate that is
    regular at the center."""

    value: RationalFunction
    center: object
    block_det: Poly
    schur_det: RationalFunction


def _checked_blocks(path: Path, pair: ProjectionPair):
    if not validate_projection_pair(path, pair):
        raise ValueError("projection pair is not valid for this path")
    return block_split(path, pair)


def schur_operator(path: Path, pair: ProjectionPair) -> SchurOperator:
    """The kernel-sized operator L22 - L21 * L11^{-1} * L12 as exact
    rational functions; 0x0 with determinant 1 when the center is
    invertible."""
    l11, l12, l21, l22 = _checked_blocks(path, pair)
    k = pair.kernel_dim
    field = path.field
    if l11.nrows == 0:
        s = l22.to_ratmat()
    else:
        l11_inv = l11.inverse()
        s = l22.to_ratmat() - l21.to_ratmat() * l11_inv * l12.to_ratmat()
    for row in s.rows:
        for entry in row:
            if not entry.is_regular_at(pair.center):
                raise InvariantViolationError(
                    "Schur operator has a pole at its own center"
                )
    if s.nrows != k:
        raise InvariantViolationError("Schur operator size != kernel dimension")
    bad = tuple(r for r, _ in field_roots(l11.det())[0]) if l11.nrows else ()
    return SchurOperator(matrix=s, center=pair.center, pair=pair, bad_points=bad)


def local_determinant(path: Path, pair: ProjectionPair) -> LocalDeterminant:
    """det(L11(lambda)) * det(Schur(lambda)); its vanishing order at the
    center equals the order of det L(lambda) there."""
    s = schur_operator(path, pair)
    l11 = block_split(path, pair)[0]
    block_det = l11.det()
    schur_det = s.matrix.det()
    value = schur_det * block_det
    if not value.is_regular_at(pair.center):
        raise InvariantViolationError("local determinant has a pole at the center")
    return LocalDeterminant(
        value=value, center=pair.center, block_det=block_det, schur_det=schur_det
    )


def invertibility_via_localdet(path: Path, pair: ProjectionPair, lam) -> bool:
    """Decide invertibility of L(lam) from the local determinant alone.

    Only valid where the Schur operator is regular; the verdict is
    cross-checked against the direct determinant, and a mismatch would be an
    internal error.
    """
    lam = path.field.coerce(lam)
    ld = local_determinant(path, pair)
    s = schur_operator(path, pair)
    if not (s.matrix.is_regular_at(lam) and ld.value.is_regular_at(lam)):
        raise RegularityError(f"{lam} lies outside the validity region")
    verdict = bool(ld.value.evaluate(lam))
    direct = bool(path.eval(lam).det())
    if verdict != direct:
        raise InvariantViolationError(
            "local determinant disagrees with the direct determinant"
        )
    return verdict


def factorization_witness(path: Path, pair: ProjectionPair) -> FactorizationWitness:
    """Unit-triangular factorization of the adapted path around the
    block-diagonal of L11 and the Schur operator, verified exactly."""
    l11, l12, l21, l22 = _checked_blocks(path, pair)
    field = path.field
    n = path.size
    r = n - pair.kernel_dim
    s = schur_operator(path, pair)
    eye_r = RatMat.identity(field, r)
    eye_k = RatMat.identity(field, pair.kernel_dim)
    if r == 0:
        left = RatMat.identity(field, n)
        right = RatMat.identity(field, n)
        middle = s.matrix
    else:
        l11_inv = l11.inverse()
        lower = l21.to_ratmat() * l11_inv
        upper = l11_inv * l12.to_ratmat()
        zeros_top = RatMat.zeros(field, r, pair.kernel_dim)
        left = RatMat(
            field,
            [
                list(eye_r.rows[i]) + list(zeros_top.rows[i])
                for i in range(r)
            ]
            + [
                list(lower.rows[i]) + list(eye_k.rows[i])
                for i in range(pair.kernel_dim)
            ],
            ncols=n,
        )
        right = RatMat(
            field,
            [
                list(eye_r.rows[i]) + list(upper.rows[i])
                for i in range(r)
            ]
            + [
                list(RatMat.zeros(field, pair.kernel_dim, r).rows[i])
                + list(eye_k.rows[i])
                for i in range(pair.kernel_dim)
            ],
            ncols=n,
        )
        middle = l11.to_ratmat().direct_sum(s.matrix)
    adapted = adapted_matrix(path, pair)
    product = left * middle * right
    if product != adapted.to_ratmat():
        raise InvariantViolationError("block factorization identity failed")
    one = RationalFunction.one(field)
    if left.det() != one or right.det() != one:
        raise InvariantViolationError("triangular witnesses are not unimodular")
    return FactorizationWitness(left=left, middle=middle, right=right, adapted=adapted)


def schur_inverse_identity(path: Path, pair: ProjectionPair) -> bool:
    """Exact identity: the inverse of the Schur operator equals the
    kernel-to-kernel corner P L^{-1} (I - Q) of the inverse path, in the
    adapted bases."""
    if path.is_degenerate:
        raise DegeneratePathError("identity needs det L(lambda) != 0")
    if pair.kernel_dim < 1:
        raise ValueError("identity needs a nontrivial kernel")
    s = schur_operator(path, pair)
    n = path.size
    r = n - pair.kernel_dim
    adapted_inv = adapted_matrix(path, pair).inverse()
    corner = adapted_inv.block(r, n, r, n)
    return s.matrix.inverse() == corner


def chi_via_schur(path: Path, pair: ProjectionPair) -> ExtendedNat:
    """Multiplicity as the vanishing order of det(Schur) at the center."""
    if path.is_degenerate:
        raise DegeneratePathError("path is identically singular")
    s = schur_operator(path, pair)
    d = s.matrix.det()
    if d.is_zero:
        raise InvariantViolationError(
            "Schur determinant vanished identically for a nondegenerate path"
        )
    num_ord = _ord_int(d.num, pair.center)
    den_ord = _ord_int(d.den, pair.center)
    if den_ord != 0:
        raise InvariantViolationError("Schur determinant has a pole at the center")
    return ExtendedNat(num_ord - den_ord)
