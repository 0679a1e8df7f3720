"""Generalized spectrum, projection pairs, and the multiplicity engine.

The central objects are square polynomial paths lambda -> L(lambda).  This
module computes kernels and ranges of the frozen operator L(lam0), builds
idempotent projection pairs adapted to them, splits the path into the four
blocks induced by a pair, and delivers the multiplicity by determinant
order, the pole order of the inverse, and the nested-kernel transversality
test, together with the product-formula and direct-sum property checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import DegeneratePathError
from .matrices import ConstMat, MatPoly, RatMat, Vector
from .roots import field_roots
from .scalars import ExtendedNat, Field, Poly, ord_at, pole_order


class Path:
    """A square polynomial path with its field tag and a description label."""

    __slots__ = ("matrix", "label", "det")

    def __init__(self, matrix: MatPoly, label: str = ""):
        if not matrix.is_square or matrix.nrows < 1:
            raise ValueError("a path must be square of size at least 1")
        self.matrix = matrix
        self.label = label
        self.det = matrix.det()

    @property
    def field(self) -> Field:
        return self.matrix.field

    @property
    def size(self) -> int:
        return self.matrix.nrows

    @property
    def is_degenerate(self) -> bool:
        """True when det L(lambda) is identically zero (spectrum = whole domain)."""
        return self.det.is_zero

    def eval(self, lam) -> ConstMat:
        return self.matrix.eval(lam)

    def inverse(self) -> RatMat:
        if self.is_degenerate:
            raise DegeneratePathError("path is identically singular")
        return self.matrix.inverse()

    def taylor(self, center):
        return self.matrix.taylor_coefficients(center)

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"Path({self.size}x{self.size} over {self.field.tag}{tag})"


def kernel_basis(a: ConstMat) -> Tuple[Vector, ...]:
    """Exact basis of the null space; empty iff the matrix is injective."""
    return a.null_basis()


def range_basis(a: ConstMat) -> Tuple[Vector, ...]:
    """Exact basis of the column space."""
    return a.column_basis()


@dataclass(frozen=True)
class ProjectionPair:
    """Idempotents P (onto the kernel) and Q (onto the range) of L(lam0),
    together with the adapted bases that realize the two splittings."""

    center: object
    p: ConstMat
    q: ConstMat
    kernel: Tuple[Vector, ...]
    range_: Tuple[Vector, ...]
    kernel_complement: Tuple[Vector, ...]
    range_complement: Tuple[Vector, ...]
    domain_basis: ConstMat
    codomain_basis: ConstMat
    codomain_basis_inv: ConstMat

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)

    @property
    def size(self) -> int:
        return self.p.nrows

    def to_adapted_domain(self, v: Vector) -> Vector:
        """Ambient domain vector -> (complement, kernel) coordinates."""
        return self.domain_basis.inverse().apply(v)

    def from_adapted_domain(self, coords: Vector) -> Vector:
        return self.domain_basis.apply(coords)

    def to_adapted_codomain(self, v: Vector) -> Vector:
        """Ambient codomain vector -> (range, complement) coordinates."""
        return self.codomain_basis_inv.apply(v)

    def from_adapted_codomain(self, coords: Vector) -> Vector:
        return self.codomain_basis.apply(coords)


def _projection_matrix(field, n, target, complement) -> ConstMat:
    basis = ConstMat.from_columns(field, list(complement) + list(target), n)
    selector = ConstMat.diag(
        field, [field.zero()] * len(complement) + [field.one()] * len(target)
    )
    return basis * selector * basis.inverse()


def _random_vector(rng: random.Random, field, n) -> Vector:
    if field.is_complex:
        from .scalars import GaussianRational

        return tuple(
            GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
            for _ in range(n)
        )
    return tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))


def _random_complement(rng, field, fixed: Tuple[Vector, ...], n) -> Tuple[Vector, ...]:
    """Random vectors completing `fixed` to a basis of the ambient space."""
    want = n - len(fixed)
    for _ in range(1000):
        cand = tuple(_random_vector(rng, field, n) for _ in range(want))
        full = ConstMat.from_columns(field, list(cand) + list(fixed), n)
        if full.rank() == n:
            return cand
    raise AssertionError("failed to sample a complement (should be immediate)")


def _random_mix(rng, field, vectors: Tuple[Vector, ...]) -> Tuple[Vector, ...]:
    """Random invertible recombination of a basis (same span)."""
    d = len(vectors)
    if d == 0:
        return vectors
    for _ in range(1000):
        mix = ConstMat(
            field, [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
        )
        if mix.det():
            b = ConstMat.from_columns(field, vectors, len(vectors[0]))
            return (b * mix).columns()
    raise AssertionError("failed to sample an invertible mix")


def projection_pair(
    path: Path, lam0, seed: Optional[int] = None
) -> ProjectionPair:
    """A valid projection pair for the path at lam0.

    Without a seed this is the canonical pair: complements are spanned by the
    standard coordinates picked by exact elimination.  With a seed, the
    complements (and the kernel/range bases) are randomized but stay valid,
    which drives the projection-invariance tests.
    """
    field = path.field
    lam0 = field.coerce(lam0)
    n = path.size
    t = path.eval(lam0)
    ker = t.null_basis()
    rng_basis = t.column_basis()
    pivots = t.pivot_columns()
    eye = ConstMat.identity(field, n)
    if seed is None:
        kernel_comp = tuple(eye.column(j) for j in pivots)
        ext = ConstMat.from_columns(
            field, list(rng_basis) + list(eye.columns()), n
        )
        ext_pivots = ext.pivot_columns()
        range_comp = tuple(
            eye.column(j - len(rng_basis))
            for j in ext_pivots
            if j >= len(rng_basis)
        )
    else:
        rng = random.Random(seed)
        ker = _random_mix(rng, field, ker)
        rng_basis = _random_mix(rng, field, rng_basis)
        kernel_comp = _random_complement(rng, field, ker, n)
        range_comp = _random_complement(rng, field, rng_basis, n)
    p = _projection_matrix(field, n, ker, kernel_comp)
    q = _projection_matrix(field, n, rng_basis, range_comp)
    domain = ConstMat.from_columns(field, list(kernel_comp) + list(ker), n)
    codomain = ConstMat.from_columns(field, list(rng_basis) + list(range_comp), n)
    return ProjectionPair(
        center=lam0,
        p=p,
        q=q,
        kernel=ker,
        range_=rng_basis,
        kernel_complement=kernel_comp,
        range_complement=range_comp,
        domain_basis=domain,
        codomain_basis=codomain,
        codomain_basis_inv=codomain.inverse(),
    )


def validate_projection_pair(path: Path, pair: ProjectionPair) -> bool:
    """Exact check of every pair invariant against the path."""
    t = path.eval(pair.center)
    n = path.size
    p, q = pair.p, pair.q
    if p * p != p or q * q != q:
        return False
    if not (t * p).is_zero:
        return False
    if q * t != t:
        return False
    if p.rank() + q.rank() != n:
        return False
    if p.rank() != len(pair.kernel) or q.rank() != len(pair.range_):
        return False
    all_cols = list(pair.kernel_complement) + list(pair.kernel)
    if ConstMat.from_columns(path.field, all_cols, n).rank() != n:
        return False
    all_cols = list(pair.range_) + list(pair.range_complement)
    if ConstMat.from_columns(path.field, all_cols, n).rank() != n:
        return False
    return True


def adapted_matrix(path: Path, pair: ProjectionPair) -> MatPoly:
    """The path rewritten in the adapted bases
    (kernel complement + kernel) -> (range + range complement)."""
    b = pair.domain_basis.to_matpoly()
    c_inv = pair.codomain_basis_inv.to_matpoly()
    return c_inv * path.matrix * b


def block_split(
    path: Path, pair: ProjectionPair
) -> Tuple[MatPoly, MatPoly, MatPoly, MatPoly]:
    """The four blocks of the adapted path; the top-left block is invertible
    at the center."""
    m = adapted_matrix(path, pair)
    n = path.size
    r = n - pair.kernel_dim
    rows = range(n)
    l11 = m.submatrix(range(0, r), range(0, r))
    l12 = m.submatrix(range(0, r), range(r, n))
    l21 = m.submatrix(range(r, n), range(0, r))
    l22 = m.submatrix(range(r, n), range(r, n))
    return l11, l12, l21, l22


def chi_via_det(path: Path, lam0) -> ExtendedNat:
    """Multiplicity as the vanishing order of det L(lambda) at lam0."""
    return ord_at(path.det, lam0)


def algebraic_order(path: Path, lam0) -> int:
    """Maximal pole order of the inverse path at lam0.

    This is the blow-up exponent of the inverse near lam0: the bound
    ||L^{-1}(lambda)|| < C / |lambda - lam0|^k holds exactly for k equal to
    the largest entrywise pole order.
    """
    if path.is_degenerate:
        raise DegeneratePathError("path is identically singular")
    field = path.field
    lam0 = field.coerce(lam0)
    if path.eval(lam0).det():
        return 0
    inv = path.inverse()
    worst = 0
    for row in inv.rows:
        for entry in row:
            if not entry.is_zero:
                worst = max(worst, pole_order(entry, lam0))
    return worst


@dataclass(frozen=True)
class TransversalityStage:
    """Data of one step j: the nested kernel entering it and its image."""

    index: int
    nested_kernel: Tuple[Vector, ...]
    image: Tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.image)


@dataclass(frozen=True)
class TransversalityReport:
    center: object
    verdict: str  # "nonsingular" | "transversal" | "not_transversal"
    kappa: Optional[int]
    chi: Optional[int]
    stages: Tuple[TransversalityStage, ...]
    max_kappa_tried: int

    @property
    def is_transversal(self) -> bool:
        return self.verdict == "transversal"


def _image_basis(field, mat: ConstMat, vectors) -> Tuple[Vector, ...]:
    cols = [mat.apply(v) for v in vectors]
    return ConstMat.from_columns(field, cols, mat.nrows).column_basis()


def _intersect_with_kernel(field, mat: ConstMat, vectors) -> Tuple[Vector, ...]:
    if not vectors:
        return ()
    b = ConstMat.from_columns(field, vectors, len(vectors[0]))
    coeff_kernel = (mat * b).null_basis()
    return tuple(b.apply(c) for c in coeff_kernel)


def transversality(path: Path, lam0) -> TransversalityReport:
    """Nested-kernel transversality test at lam0.

    Scans candidate depths kappa = 1..deg L.  At depth kappa it requires the
    images of the nested kernels under the Taylor coefficients, together with
    the range of the frozen operator, to fill the whole space as a direct
    sum, with a nonzero top image.  When that holds, the multiplicity is
    sum_j j * dim(image_j).
    """
    if path.is_degenerate:
        raise DegeneratePathError("path is identically singular")
    field = path.field
    lam0 = field.coerce(lam0)
    n = path.size
    taylor = path.taylor(lam0)
    l0 = taylor.coefficient(0)
    if l0.det():
        return TransversalityReport(lam0, "nonsingular", None, 0, (), 0)
    range0 = l0.column_basis()
    max_kappa = max(1, len(taylor) - 1)
    nested = l0.null_basis()
    stages = []
    for j in range(1, max_kappa + 1):
        lj = taylor.coefficient(j)
        image = _image_basis(field, lj, nested)
        stages.append(TransversalityStage(j, nested, image))
        nested = _intersect_with_kernel(field, lj, nested)
        # test depth kappa = j
        vectors = list(range0)
        total = len(range0)
        for stage in stages:
            vectors.extend(stage.image)
            total += stage.dim
        if total == n and stages[-1].dim > 0:
            stacked = ConstMat.from_columns(field, vectors, n)
            if stacked.rank() == n:
                chi = sum(s.index * s.dim for s in stages)
                return TransversalityReport(
                    lam0, "transversal", j, chi, tuple(stages), j
                )
    return TransversalityReport(
        lam0, "not_transversal", None, None, tuple(stages), max_kappa
    )


def check_product_formula(l: Path, m: Path, lam0) -> bool:
    """Multiplicity of the pointwise product equals the sum of
    multiplicities."""
    if l.size != m.size:
        raise ValueError("paths must have the same size")
    if l.is_degenerate or m.is_degenerate:
        raise DegeneratePathError("product formula needs nondegenerate paths")
    combined = Path(l.matrix * m.matrix)
    return chi_via_det(combined, lam0) == chi_via_det(l, lam0) + chi_via_det(
        m, lam0
    )


def check_direct_sum(l: Path, p: Path, lam0) -> bool:
    """Multiplicity is additive across block-diagonal direct sums."""
    if l.is_degenerate or p.is_degenerate:
        raise DegeneratePathError("direct-sum check needs nondegenerate paths")
    combined = Path(l.matrix.direct_sum(p.matrix))
    return chi_via_det(combined, lam0) == chi_via_det(l, lam0) + chi_via_det(
        p, lam0
    )


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues found inside the coefficient field, each with its
    multiplicity, plus the factor of the determinant with no field roots."""

    field_tag: str
    degenerate: bool
    eigenvalues: Tuple[Tuple[object, int], ...]
    residual: Poly


def generalized_spectrum(path: Path) -> SpectrumReport:
    """All field eigenvalues of the path with multiplicities.

    A degenerate path (identically zero determinant) is flagged rather than
    rejected: its spectrum is the whole domain.
    """
    if path.is_degenerate:
        return SpectrumReport(path.field.tag, True, (), Poly.zero(path.field))
    roots, residual = field_roots(path.det)
    return SpectrumReport(path.field.tag, False, tuple(roots), residual)
