"""Exact matrices over scalars, polynomials, and rational functions.

Three layers share one storage convention (tuple-of-tuples rows plus an
explicit column count, so zero-row and zero-column shapes survive block
arithmetic):

* ConstMat: entries in the coefficient field; row reduction, rank, kernel
  and column-space bases, determinant, inverse.
* MatPoly: entries in Poly; fraction-free determinant, adjugate or
  elimination inverse, Taylor recentering, direct sums.
* RatMat: entries in RationalFunction; products, determinant by clearing
  row denominators, Gauss-Jordan inverse, evaluation away from poles.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence, Tuple

from .errors import DegeneratePathError, RegularityError
from .scalars import Field, Poly, RationalFunction, Scalar, poly_lcm

Vector = Tuple[Scalar, ...]


class _MatBase:
    """Shape bookkeeping shared by the three matrix layers."""

    __slots__ = ("field", "rows", "_ncols")

    def _init_grid(self, field: Field, rows, coerce, ncols):
        grid = tuple(tuple(coerce(field, entry) for entry in row) for row in rows)
        if grid:
            width = len(grid[0])
            if any(len(row) != width for row in grid):
                raise ValueError("ragged matrix rows")
            if ncols is not None and ncols != width:
                raise ValueError("declared column count does not match rows")
            ncols = width
        else:
            ncols = ncols or 0
        self.field = field
        self.rows = grid
        self._ncols = ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (
            self.field == other.field
            and self._ncols == other._ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((type(self).__name__, self.field.tag, self._ncols, self.rows))

    def _check_same_shape(self, other):
        if type(other) is not type(self) or self.field != other.field:
            raise ValueError("incompatible matrices")
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")

    def _check_inner(self, other):
        if type(other) is not type(self) or self.field != other.field:
            raise ValueError("incompatible matrices")
        if self.ncols != other.nrows:
            raise ValueError(
                f"dimension mismatch: {self.nrows}x{self.ncols} times "
                f"{other.nrows}x{other.ncols}"
            )


def _mat_add(cls, a, b, op):
    a._check_same_shape(b)
    return cls(
        a.field,
        [[op(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a.rows, b.rows)],
        ncols=a.ncols,
    )


def _mat_mul(cls, a, b, zero):
    a._check_inner(b)
    cols = b.ncols
    out = []
    for row in a.rows:
        new = [zero] * cols
        for k, entry in enumerate(row):
            if not entry:
                continue
            brow = b.rows[k]
            for j in range(cols):
                if brow[j]:
                    new[j] = new[j] + entry * brow[j]
        out.append(new)
    return cls(a.field, out, ncols=cols)


def _mat_direct_sum(cls, a, b, zero):
    top = [list(r) + [zero] * b.ncols for r in a.rows]
    bottom = [[zero] * a.ncols + list(r) for r in b.rows]
    return cls(a.field, top + bottom, ncols=a.ncols + b.ncols)


class ConstMat(_MatBase):
    """Constant matrix over the coefficient field."""

    __slots__ = ()

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols=None):
        self._init_grid(field, rows, lambda f, e: f.coerce(e), ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "ConstMat":
        one, zero = field.one(), field.zero()
        return cls(
            field,
            [[one if i == j else zero for j in range(n)] for i in range(n)],
            ncols=n,
        )

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "ConstMat":
        zero = field.zero()
        return cls(field, [[zero] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def diag(cls, field: Field, entries: Sequence) -> "ConstMat":
        n = len(entries)
        zero = field.zero()
        return cls(
            field,
            [[entries[i] if i == j else zero for j in range(n)] for i in range(n)],
            ncols=n,
        )

    @classmethod
    def from_columns(
        cls, field: Field, columns: Sequence[Vector], nrows: int
    ) -> "ConstMat":
        for col in columns:
            if len(col) != nrows:
                raise ValueError("column length does not match row count")
        return cls(
            field,
            [[col[i] for col in columns] for i in range(nrows)],
            ncols=len(columns),
        )

    @property
    def is_zero(self) -> bool:
        return all(not e for row in self.rows for e in row)

    def __add__(self, other):
        return _mat_add(ConstMat, self, other, lambda a, b: a + b)

    def __sub__(self, other):
        return _mat_add(ConstMat, self, other, lambda a, b: a - b)

    def __neg__(self):
        return ConstMat(
            self.field, [[-e for e in row] for row in self.rows], ncols=self.ncols
        )

    def __mul__(self, other):
        if isinstance(other, ConstMat):
            return _mat_mul(ConstMat, self, other, self.field.zero())
        return NotImplemented

    def scale(self, c) -> "ConstMat":
        c = self.field.coerce(c)
        return ConstMat(
            self.field, [[e * c for e in row] for row in self.rows], ncols=self.ncols
        )

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.ncols:
            raise ValueError("vector length does not match column count")
        zero = self.field.zero()
        return tuple(
            sum((a * x for a, x in zip(row, v)), zero) for row in self.rows
        )

    def transpose(self) -> "ConstMat":
        return ConstMat(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> Tuple[Vector, ...]:
        return tuple(self.column(j) for j in range(self.ncols))

    # row reduction

    def rref(self):
        """Reduced row echelon form; returns (rref rows, pivot column list)."""
        rows = [list(r) for r in self.rows]
        nr, nc = self.nrows, self.ncols
        pivots = []
        r = 0
        for c in range(nc):
            if r == nr:
                break
            pivot_row = next((i for i in range(r, nr) if rows[i][c]), None)
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            inv = self.field.one() / rows[r][c]
            rows[r] = [e * inv for e in rows[r]]
            for i in range(nr):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        return rows, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def null_basis(self) -> Tuple[Vector, ...]:
        """Exact kernel basis, one vector per free column."""
        rows, pivots = self.rref()
        nc = self.ncols
        free = [c for c in range(nc) if c not in pivots]
        basis = []
        zero, one = self.field.zero(), self.field.one()
        for fc in free:
            v = [zero] * nc
            v[fc] = one
            for r, pc in enumerate(pivots):
                v[pc] = -rows[r][fc]
            basis.append(tuple(v))
        return tuple(basis)

    def column_basis(self) -> Tuple[Vector, ...]:
        """Basis of the column space: the original pivot columns."""
        _, pivots = self.rref()
        return tuple(self.column(c) for c in pivots)

    def pivot_columns(self) -> Tuple[int, ...]:
        return tuple(self.rref()[1])

    def det(self) -> Scalar:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return self.field.one()
        rows = [list(r) for r in self.rows]
        sign = 1
        acc = self.field.one()
        for k in range(n):
            pivot_row = next((i for i in range(k, n) if rows[i][k]), None)
            if pivot_row is None:
                return self.field.zero()
            if pivot_row != k:
                rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
                sign = -sign
            p = rows[k][k]
            acc = acc * p
            inv = self.field.one() / p
            for i in range(k + 1, n):
                if rows[i][k]:
                    f = rows[i][k] * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[k])]
        return acc if sign > 0 else -acc

    def inverse(self) -> "ConstMat":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        if n == 0:
            return self
        eye = ConstMat.identity(self.field, n)
        aug = ConstMat(
            self.field,
            [list(self.rows[i]) + list(eye.rows[i]) for i in range(n)],
            ncols=2 * n,
        )
        rows, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return ConstMat(self.field, [row[n:] for row in rows], ncols=n)

    def to_matpoly(self) -> "MatPoly":
        return MatPoly(
            self.field,
            [[Poly.constant(self.field, e) for e in row] for row in self.rows],
            ncols=self.ncols,
        )

    def __repr__(self):
        return f"ConstMat({self.nrows}x{self.ncols}, {self.rows!r})"


class MatPoly(_MatBase):
    """Matrix with polynomial entries; houses a path lambda -> L(lambda)."""

    __slots__ = ()

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols=None):
        def coerce(f, e):
            if isinstance(e, Poly):
                if e.field != f:
                    raise ValueError("entry over a different field")
                return e
            if isinstance(e, RationalFunction):
                return e.as_poly()
            return Poly.constant(f, e)

        self._init_grid(field, rows, coerce, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatPoly":
        one, zero = Poly.one(field), Poly.zero(field)
        return cls(
            field,
            [[one if i == j else zero for j in range(n)] for i in range(n)],
            ncols=n,
        )

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "MatPoly":
        zero = Poly.zero(field)
        return cls(field, [[zero] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def diag(cls, field: Field, entries: Sequence) -> "MatPoly":
        n = len(entries)
        zero = Poly.zero(field)
        return cls(
            field,
            [[entries[i] if i == j else zero for j in range(n)] for i in range(n)],
            ncols=n,
        )

    @classmethod
    def lambda_identity_minus(cls, t: ConstMat) -> "MatPoly":
        """The pencil lambda*I - T."""
        if not t.is_square:
            raise ValueError("pencil needs a square matrix")
        field = t.field
        rows = []
        for i in range(t.nrows):
            row = []
            for j in range(t.ncols):
                coeffs = [-t[i, j]] + ([1] if i == j else [])
                row.append(Poly(field, coeffs))
            rows.append(row)
        return cls(field, rows, ncols=t.ncols)

    @property
    def degree(self):
        return max(
            (e.degree for row in self.rows for e in row), default=float("-inf")
        )

    def __add__(self, other):
        return _mat_add(MatPoly, self, other, lambda a, b: a + b)

    def __sub__(self, other):
        return _mat_add(MatPoly, self, other, lambda a, b: a - b)

    def __neg__(self):
        return MatPoly(
            self.field, [[-e for e in row] for row in self.rows], ncols=self.ncols
        )

    def __mul__(self, other):
        if isinstance(other, MatPoly):
            return _mat_mul(MatPoly, self, other, Poly.zero(self.field))
        return NotImplemented

    def scale(self, c) -> "MatPoly":
        if not isinstance(c, Poly):
            c = Poly.constant(self.field, c)
        return MatPoly(
            self.field, [[e * c for e in row] for row in self.rows], ncols=self.ncols
        )

    def direct_sum(self, other: "MatPoly") -> "MatPoly":
        return _mat_direct_sum(MatPoly, self, other, Poly.zero(self.field))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "MatPoly":
        return MatPoly(
            self.field,
            [[self.rows[i][j] for j in col_idx] for i in row_idx],
            ncols=len(col_idx),
        )

    def eval(self, x) -> ConstMat:
        x = self.field.coerce(x)
        return ConstMat(
            self.field,
            [[e.evaluate(x) for e in row] for row in self.rows],
            ncols=self.ncols,
        )

    def det(self) -> Poly:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return Poly.one(self.field)
        rows = [list(r) for r in self.rows]
        sign = 1
        prev = Poly.one(self.field)
        for k in range(n - 1):
            pivot_row = next(
                (i for i in range(k, n) if not rows[i][k].is_zero), None
            )
            if pivot_row is None:
                return Poly.zero(self.field)
            if pivot_row != k:
                rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
                sign = -sign
            pivot = rows[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = rows[i][j] * pivot - rows[i][k] * rows[k][j]
                    rows[i][j] = num.exact_div(prev)
                rows[i][k] = Poly.zero(self.field)
            prev = pivot
        d = rows[n - 1][n - 1]
        return d if sign > 0 else -d

    def _adjugate_inverse(self, d: Poly) -> "RatMat":
        n = self.nrows
        idx = list(range(n))
        entries = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = self.submatrix(
                    [r for r in idx if r != j], [c for c in idx if c != i]
                ).det()
                if (i + j) % 2:
                    minor = -minor
                row.append(RationalFunction(minor, d))
            entries.append(row)
        return RatMat(self.field, entries, ncols=n)

    def _elimination_inverse(self) -> "RatMat":
        return self.to_ratmat().inverse()

    def inverse(self) -> "RatMat":
        """Exact inverse as a matrix of rational functions.

        Rejects identically singular input with DegeneratePathError (the
        path has no invertible value anywhere).
        """
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        if n == 0:
            return RatMat(self.field, [])
        d = self.det()
        if d.is_zero:
            raise DegeneratePathError("matrix is identically singular")
        if n <= 6:
            return self._adjugate_inverse(d)
        return self._elimination_inverse()

    def taylor_coefficients(self, center) -> "TaylorCoefficients":
        center = self.field.coerce(center)
        shifted = [[e.shift(center) for e in row] for row in self.rows]
        top = max((p.degree for row in shifted for p in row), default=0)
        count = int(top) + 1 if top != float("-inf") else 1
        mats = []
        for k in range(count):
            mats.append(
                ConstMat(
                    self.field,
                    [[p.coefficient(k) for p in row] for row in shifted],
                    ncols=self.ncols,
                )
            )
        return TaylorCoefficients(center, tuple(mats))

    def to_ratmat(self) -> "RatMat":
        return RatMat(
            self.field,
            [[RationalFunction(e) for e in row] for row in self.rows],
            ncols=self.ncols,
        )

    def map_entries(self, fn: Callable[[Poly], Poly]) -> "MatPoly":
        return MatPoly(
            self.field, [[fn(e) for e in row] for row in self.rows], ncols=self.ncols
        )

    def to_string_rows(self, var: str = "λ"):
        return [[e.to_string(var) for e in row] for row in self.rows]

    def __repr__(self):
        return f"MatPoly({self.nrows}x{self.ncols}, {self.to_string_rows()!r})"


class TaylorCoefficients:
    """Constant coefficient matrices of a recentered polynomial matrix."""

    __slots__ = ("center", "mats")

    def __init__(self, center, mats: Tuple[ConstMat, ...]):
        self.center = center
        self.mats = mats

    def __len__(self):
        return len(self.mats)

    def __getitem__(self, k: int) -> ConstMat:
        return self.mats[k]

    def coefficient(self, k: int) -> ConstMat:
        """k-th coefficient, zero beyond the stored degree."""
        if k < len(self.mats):
            return self.mats[k]
        first = self.mats[0]
        return ConstMat.zeros(first.field, first.nrows, first.ncols)

    def reconstruct(self) -> MatPoly:
        """Reassemble sum_j A_j (lambda - center)^j; must reproduce the input."""
        field = self.mats[0].field
        shift = Poly(field, (-self.center, 1))
        acc = MatPoly.zeros(field, self.mats[0].nrows, self.mats[0].ncols)
        power = Poly.one(field)
        for mat in self.mats:
            acc = acc + mat.to_matpoly().scale(power)
            power = power * shift
        return acc


class RatMat(_MatBase):
    """Matrix with rational-function entries."""

    __slots__ = ()

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols=None):
        def coerce(f, e):
            if isinstance(e, RationalFunction):
                if e.field != f:
                    raise ValueError("entry over a different field")
                return e
            if isinstance(e, Poly):
                return RationalFunction(e)
            return RationalFunction(Poly.constant(f, e))

        self._init_grid(field, rows, coerce, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "RatMat":
        one = RationalFunction.one(field)
        zero = RationalFunction.zero(field)
        return cls(
            field,
            [[one if i == j else zero for j in range(n)] for i in range(n)],
            ncols=n,
        )

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "RatMat":
        zero = RationalFunction.zero(field)
        return cls(field, [[zero] * ncols for _ in range(nrows)], ncols=ncols)

    def __add__(self, other):
        return _mat_add(RatMat, self, other, lambda a, b: a + b)

    def __sub__(self, other):
        return _mat_add(RatMat, self, other, lambda a, b: a - b)

    def __neg__(self):
        return RatMat(
            self.field, [[-e for e in row] for row in self.rows], ncols=self.ncols
        )

    def __mul__(self, other):
        if isinstance(other, RatMat):
            return _mat_mul(RatMat, self, other, RationalFunction.zero(self.field))
        return NotImplemented

    def scale(self, c) -> "RatMat":
        if not isinstance(c, RationalFunction):
            if isinstance(c, Poly):
                c = RationalFunction(c)
            else:
                c = RationalFunction(Poly.constant(self.field, c))
        return RatMat(
            self.field, [[e * c for e in row] for row in self.rows], ncols=self.ncols
        )

    def direct_sum(self, other: "RatMat") -> "RatMat":
        return _mat_direct_sum(RatMat, self, other, RationalFunction.zero(self.field))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "RatMat":
        return RatMat(
            self.field, [row[c0:c1] for row in self.rows[r0:r1]], ncols=c1 - c0
        )

    @property
    def is_polynomial(self) -> bool:
        return all(e.is_polynomial for row in self.rows for e in row)

    def to_matpoly(self) -> MatPoly:
        """Lossless when every denominator is 1."""
        return MatPoly(
            self.field,
            [[e.as_poly() for e in row] for row in self.rows],
            ncols=self.ncols,
        )

    def eval(self, x) -> ConstMat:
        x = self.field.coerce(x)
        for row in self.rows:
            for e in row:
                if not e.is_regular_at(x):
                    raise RegularityError(f"entry has a pole at {x}")
        return ConstMat(
            self.field,
            [[e.evaluate(x) for e in row] for row in self.rows],
            ncols=self.ncols,
        )

    def is_regular_at(self, x) -> bool:
        x = self.field.coerce(x)
        return all(e.is_regular_at(x) for row in self.rows for e in row)

    def common_denominator(self) -> Poly:
        d = Poly.one(self.field)
        for row in self.rows:
            for e in row:
                d = poly_lcm(d, e.den)
        return d

    def clear_denominators(self) -> Tuple[MatPoly, Poly]:
        """Returns (d * self as MatPoly, d) for the common denominator d."""
        d = self.common_denominator()
        cleared = MatPoly(
            self.field,
            [[e.num * d.exact_div(e.den) for e in row] for row in self.rows],
            ncols=self.ncols,
        )
        return cleared, d

    def det(self) -> RationalFunction:
        """Determinant computed by clearing row denominators and running the
        fraction-free polynomial determinant."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        if self.nrows == 0:
            return RationalFunction.one(self.field)
        cleared = []
        den_product = Poly.one(self.field)
        for row in self.rows:
            d = Poly.one(self.field)
            for e in row:
                d = poly_lcm(d, e.den)
            cleared.append([e.num * d.exact_div(e.den) for e in row])
            den_product = den_product * d
        poly_det = MatPoly(self.field, cleared, ncols=self.ncols).det()
        return RationalFunction(poly_det, den_product)

    def inverse(self) -> "RatMat":
        """Gauss-Jordan over the rational-function field."""
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        if n == 0:
            return self
        eye = RatMat.identity(self.field, n)
        rows = [list(self.rows[i]) + list(eye.rows[i]) for i in range(n)]
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if not rows[i][c].is_zero), None)
            if pivot_row is None:
                raise DegeneratePathError("matrix of rational functions is singular")
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            inv = RationalFunction.one(self.field) / rows[c][c]
            rows[c] = [e * inv for e in rows[c]]
            for i in range(n):
                if i != c and not rows[i][c].is_zero:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return RatMat(self.field, [row[n:] for row in rows], ncols=n)

    def to_string_rows(self, var: str = "λ"):
        return [[e.to_string(var) for e in row] for row in self.rows]

    def __repr__(self):
        return f"RatMat({self.nrows}x{self.ncols}, {self.to_string_rows()!r})"


def mat_product(a, b):
    """Exact product of two matrices of the same kind."""
    return a * b


def direct_sum(a, b):
    """Block-diagonal concatenation of two matrices of the same kind."""
    return a.direct_sum(b)
