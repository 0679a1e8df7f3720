"""Smith normal form over the polynomial ring, local partial multiplicities,
and the constant linearization built from them.

The global Smith form (with polynomial unimodular witnesses, verified
exactly) is the computational vehicle: vanishing orders of the invariant
factors at a center are the local partial multiplicities there.  Stacking
one Jordan block per partial multiplicity yields a constant matrix whose
shifted pencil is unimodularly equivalent to the local diagonal padded with
the identity; the equivalence witnesses are assembled blockwise and checked
before they are returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .errors import (
    DegeneratePathError,
    InvariantViolationError,
    RegularityError,
)
from .matrices import ConstMat, MatPoly, RatMat
from .scalars import ExtendedNat, Field, Poly, _ord_int, poly_gcdex
from .schur import schur_operator
from .spectral import Path, ProjectionPair


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d1 | d2 | ... | dn (monic) with unimodular
    witnesses: left * A * right = diag(d)."""

    factors: Tuple[Poly, ...]
    left: MatPoly
    right: MatPoly

    @property
    def diagonal(self) -> MatPoly:
        field = self.left.field
        return MatPoly.diag(field, self.factors)


@dataclass(frozen=True)
class LocalSmithForm:
    """Partial multiplicities kappa_1 >= ... >= kappa_N >= 1 at a center."""

    center: object
    kappas: Tuple[int, ...]
    witnesses: SmithForm

    @property
    def total(self) -> int:
        return sum(self.kappas)

    @property
    def count(self) -> int:
        return len(self.kappas)


@dataclass(frozen=True)
class Linearization:
    """Constant block-Jordan matrix realizing the local diagonal.

    size = sum of partial multiplicities; p1 and p2 are unimodular with
    diag((lambda-c)^kappa_i) + identity padding = p1 (lambda I - lin) p2.
    """

    size: int
    lin: ConstMat
    p1: MatPoly
    p2: MatPoly
    center: object
    kappas: Tuple[int, ...]


class _SmithWorker:
    """Mutable state of the unimodular reduction; rows of `m` and `left`
    move together, columns of `m` and `right` move together.

    Clearing uses extended-gcd (Bezout) two-row and two-column transforms:
    each one either eliminates an entry outright (pivot divides it) or
    strictly drops the pivot degree, so every loop here terminates.
    """

    def __init__(self, a: MatPoly, center):
        self.field = a.field
        self.n = a.nrows
        self.m = [list(row) for row in a.rows]
        self.left = [list(row) for row in MatPoly.identity(self.field, self.n).rows]
        self.right = [list(row) for row in MatPoly.identity(self.field, self.n).rows]
        self.center = center

    # elementary operations

    def swap_rows(self, i, j):
        if i != j:
            self.m[i], self.m[j] = self.m[j], self.m[i]
            self.left[i], self.left[j] = self.left[j], self.left[i]

    def swap_cols(self, i, j):
        if i != j:
            for row in self.m:
                row[i], row[j] = row[j], row[i]
            for row in self.right:
                row[i], row[j] = row[j], row[i]

    def add_row_multiple(self, target, source, q: Poly):
        if q.is_zero:
            return
        self.m[target] = [a + q * b for a, b in zip(self.m[target], self.m[source])]
        self.left[target] = [
            a + q * b for a, b in zip(self.left[target], self.left[source])
        ]

    def add_col_multiple(self, target, source, q: Poly):
        if q.is_zero:
            return
        for row in self.m:
            row[target] = row[target] + q * row[source]
        for row in self.right:
            row[target] = row[target] + q * row[source]

    def scale_row(self, i, c):
        self.m[i] = [e * c for e in self.m[i]]
        self.left[i] = [e * c for e in self.left[i]]

    def _combine_rows(self, k, i, s, t, u, v):
        """(row_k, row_i) <- (s*row_k + t*row_i, -v*row_k + u*row_i); the
        2x2 block has determinant s*u + t*v = 1, so this is unimodular."""
        for grid in (self.m, self.left):
            rk, ri = grid[k], grid[i]
            grid[k] = [s * a + t * b for a, b in zip(rk, ri)]
            grid[i] = [u * b - v * a for a, b in zip(rk, ri)]

    def _combine_cols(self, k, j, s, t, u, v):
        for grid in (self.m, self.right):
            for row in grid:
                a, b = row[k], row[j]
                row[k] = s * a + t * b
                row[j] = u * b - v * a

    def _bezout_row(self, k, i) -> bool:
        """Zero out m[i][k] against the pivot; True when the pivot changed."""
        z = self.m[i][k]
        if z.is_zero:
            return False
        p = self.m[k][k]
        q, r = divmod(z, p)
        if r.is_zero:
            self.add_row_multiple(i, k, -q)
            return False
        g, s, t = poly_gcdex(p, z)
        self._combine_rows(k, i, s, t, p.exact_div(g), z.exact_div(g))
        return True

    def _bezout_col(self, k, j) -> bool:
        z = self.m[k][j]
        if z.is_zero:
            return False
        p = self.m[k][k]
        q, r = divmod(z, p)
        if r.is_zero:
            self.add_col_multiple(j, k, -q)
            return False
        g, s, t = poly_gcdex(p, z)
        self._combine_cols(k, j, s, t, p.exact_div(g), z.exact_div(g))
        return True

    def _pivot_key(self, i, j):
        entry = self.m[i][j]
        local = _ord_int(entry, self.center) if self.center is not None else 0
        return (local, entry.degree, i, j)

    def _select_pivot(self, k) -> Optional[Tuple[int, int]]:
        best = None
        best_key = None
        for i in range(k, self.n):
            for j in range(k, self.n):
                if self.m[i][j].is_zero:
                    continue
                key = self._pivot_key(i, j)
                if best_key is None or key < best_key:
                    best, best_key = (i, j), key
        return best

    def _clear_cross(self, k):
        """Zero out row k and column k outside the pivot.  Column passes can
        refill the row and vice versa, but only by shrinking the pivot, so
        the alternation stops."""
        while True:
            pivot_changed = False
            for i in range(k + 1, self.n):
                pivot_changed |= self._bezout_row(k, i)
            for j in range(k + 1, self.n):
                pivot_changed |= self._bezout_col(k, j)
            row_clear = all(self.m[k][j].is_zero for j in range(k + 1, self.n))
            col_clear = all(self.m[i][k].is_zero for i in range(k + 1, self.n))
            if row_clear and col_clear and not pivot_changed:
                return

    def _divisibility_defect(self, k) -> Optional[int]:
        for i in range(k + 1, self.n):
            for j in range(k + 1, self.n):
                if self.m[i][j].is_zero:
                    continue
                if not (self.m[i][j] % self.m[k][k]).is_zero:
                    return i
        return None

    def reduce(self):
        for k in range(self.n):
            pos = self._select_pivot(k)
            if pos is None:
                break  # lower-right block is identically zero from here on
            self.swap_rows(k, pos[0])
            self.swap_cols(k, pos[1])
            while True:
                self._clear_cross(k)
                bad = self._divisibility_defect(k)
                if bad is None:
                    break
                self.add_row_multiple(k, bad, Poly.one(self.field))
            if not self.m[k][k].is_zero:
                lead = self.m[k][k].leading
                if lead != self.field.one():
                    self.scale_row(k, self.field.one() / lead)


def smith_form(a: MatPoly, center=None) -> SmithForm:
    """Smith normal form with exact unimodular witnesses.

    The pivot rule prefers entries of minimal vanishing order at `center`
    (ties: minimal degree, then row-major position), which keeps local
    orders visible early; without a center it is plain minimal degree.
    Identically singular input is rejected.
    """
    if not a.is_square:
        raise ValueError("Smith reduction needs a square matrix")
    worker = _SmithWorker(a, a.field.coerce(center) if center is not None else None)
    worker.reduce()
    factors = tuple(worker.m[k][k] for k in range(worker.n))
    if any(f.is_zero for f in factors):
        raise DegeneratePathError("matrix is identically singular")
    left = MatPoly(a.field, worker.left, ncols=worker.n)
    right = MatPoly(a.field, worker.right, ncols=worker.n)
    _verify_smith(a, factors, left, right)
    return SmithForm(factors=factors, left=left, right=right)


def _verify_smith(a, factors, left, right):
    field = a.field
    for i in range(len(factors) - 1):
        if not (factors[i + 1] % factors[i]).is_zero:
            raise InvariantViolationError("invariant factors fail the divisibility chain")
    for f in factors:
        if not f.is_zero and f.leading != field.one():
            raise InvariantViolationError("invariant factor is not monic")
    for name, w in (("left", left), ("right", right)):
        d = w.det()
        if d.degree != 0:
            raise InvariantViolationError(f"{name} witness is not unimodular")
    if left * a * right != MatPoly.diag(field, factors):
        raise InvariantViolationError("Smith witnesses do not reproduce the diagonal")


def local_partial_multiplicities(
    a: Union[MatPoly, RatMat], lam0
) -> LocalSmithForm:
    """Partial multiplicities of a matrix (regular at lam0) at lam0.

    Rational input is cleared by its scalar common denominator, which must
    be a unit at lam0 and therefore changes no local order.  Nonsingular
    input yields the empty list.
    """
    if isinstance(a, RatMat):
        field = a.field
        lam0 = field.coerce(lam0)
        cleared, den = a.clear_denominators()
        if not den.evaluate(lam0):
            raise RegularityError("matrix has a pole at the requested center")
        work = cleared
    else:
        field = a.field
        lam0 = field.coerce(lam0)
        work = a
    sf = smith_form(work, center=lam0)
    orders = [_ord_int(f, lam0) for f in sf.factors]
    kappas = tuple(sorted((o for o in orders if o > 0), reverse=True))
    return LocalSmithForm(center=lam0, kappas=kappas, witnesses=sf)


def local_smith_of_schur(path: Path, pair: ProjectionPair) -> LocalSmithForm:
    """Partial multiplicities of the Schur operator at the center; there is
    exactly one per kernel direction."""
    if path.is_degenerate:
        raise DegeneratePathError("path is identically singular")
    s = schur_operator(path, pair)
    if s.size == 0:
        return LocalSmithForm(
            center=pair.center,
            kappas=(),
            witnesses=SmithForm(
                factors=(),
                left=MatPoly.identity(path.field, 0),
                right=MatPoly.identity(path.field, 0),
            ),
        )
    lsf = local_partial_multiplicities(s.matrix, pair.center)
    if lsf.count != s.size:
        raise InvariantViolationError(
            "Schur operator must vanish at the center in every kernel direction"
        )
    return lsf


def _jordan_block(field: Field, size: int, eigenvalue) -> ConstMat:
    rows = []
    zero, one = field.zero(), field.one()
    for i in range(size):
        row = [zero] * size
        row[i] = field.coerce(eigenvalue)
        if i + 1 < size:
            row[i + 1] = one
        rows.append(row)
    return ConstMat(field, rows, ncols=size)


def _permutation_matpoly(field: Field, perm: List[int]) -> MatPoly:
    """Matrix with entry (perm[j], j) = 1: sends source slot j to target
    slot perm[j] under left multiplication."""
    n = len(perm)
    zero, one = Poly.zero(field), Poly.one(field)
    rows = [[zero] * n for _ in range(n)]
    for j, i in enumerate(perm):
        rows[i][j] = one
    return MatPoly(field, rows, ncols=n)


def build_linearization(lsf: LocalSmithForm) -> Linearization:
    """One Jordan block per partial multiplicity, plus exact unimodular
    witnesses aligning the shifted pencil with the local diagonal."""
    if not lsf.kappas:
        raise ValueError("linearization needs at least one partial multiplicity")
    field = lsf.witnesses.left.field
    center = lsf.center
    total = lsf.total
    blocks = [_jordan_block(field, k, center) for k in lsf.kappas]
    lin_rows: List[List] = []
    offset = 0
    zero = field.zero()
    for block in blocks:
        for i in range(block.nrows):
            row = [zero] * total
            for j in range(block.ncols):
                row[offset + j] = block[i, j]
            lin_rows.append(row)
        offset += block.nrows
    lin = ConstMat(field, lin_rows, ncols=total)

    # per-block Smith reduction of (lambda I - J): diagonal (1, ..., 1, t^k)
    left_blocks: List[MatPoly] = []
    right_blocks: List[MatPoly] = []
    for block, k in zip(blocks, lsf.kappas):
        pencil = MatPoly.lambda_identity_minus(block)
        sf = smith_form(pencil, center=center)
        expected = [Poly.one(field)] * (k - 1) + [
            Poly(field, (-field.coerce(center), field.one())) ** k
        ]
        if list(sf.factors) != expected:
            raise InvariantViolationError(
                "Jordan pencil has unexpected invariant factors"
            )
        left_blocks.append(sf.left)
        right_blocks.append(sf.right)
    big_left = left_blocks[0]
    big_right = right_blocks[0]
    for lb, rb in zip(left_blocks[1:], right_blocks[1:]):
        big_left = big_left.direct_sum(lb)
        big_right = big_right.direct_sum(rb)

    # blockwise diagonal is (1,..,1,t^k1, 1,..,1,t^k2, ...); send each t^k
    # slot to the leading positions, the padding 1s to the tail, in order
    perm = [0] * total
    offset = 0
    pad = lsf.count
    for idx, k in enumerate(lsf.kappas):
        for j in range(k - 1):
            perm[offset + j] = pad
            pad += 1
        perm[offset + k - 1] = idx
        offset += k
    p_left = _permutation_matpoly(field, perm)
    p_right = _transpose_matpoly(p_left)

    p1 = p_left * big_left
    p2 = big_right * p_right

    shift = Poly(field, (-field.coerce(center), field.one()))
    target_entries = [shift**k for k in lsf.kappas] + [Poly.one(field)] * (
        total - lsf.count
    )
    target = MatPoly.diag(field, target_entries)
    pencil = MatPoly.lambda_identity_minus(lin)
    if p1 * pencil * p2 != target:
        raise InvariantViolationError("linearization equivalence failed")
    char = pencil.det()
    if char != shift**total:
        raise InvariantViolationError(
            "linearization characteristic polynomial is wrong"
        )
    return Linearization(
        size=total, lin=lin, p1=p1, p2=p2, center=center, kappas=lsf.kappas
    )


def _transpose_matpoly(a: MatPoly) -> MatPoly:
    return MatPoly(
        a.field,
        [[a.rows[i][j] for i in range(a.nrows)] for j in range(a.ncols)],
        ncols=a.nrows,
    )


def chi_via_smith(path: Path, pair: ProjectionPair) -> ExtendedNat:
    """Multiplicity as the sum of the partial multiplicities of the Schur
    operator at the center."""
    lsf = local_smith_of_schur(path, pair)
    return ExtendedNat(lsf.total)
