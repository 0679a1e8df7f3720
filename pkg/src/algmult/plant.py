"""Random instances with planted, exactly known multiplicity.

A planted path is E(lambda) * diag((lambda-c)^k_i) * F(lambda) with E and F
random unimodular factors built from elementary row operations of bounded
count and coefficient height.  Unimodular factors contribute nothing to any
vanishing order, so the multiplicity at the center is the planted sum of
exponents, which makes these instances ground truth for every route.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .matrices import ConstMat, MatPoly
from .scalars import Field, GaussianRational, Poly, QQ
from .spectral import Path

_CENTER_CHOICES = (0, 1, -1, 2, Fraction(1, 2), -2)


def random_scalar(rng: random.Random, field: Field, lo=-3, hi=3):
    if field.is_complex:
        return GaussianRational(rng.randint(lo, hi), rng.randint(lo, hi))
    return Fraction(rng.randint(lo, hi))


def random_nonzero_scalar(rng: random.Random, field: Field, lo=-3, hi=3):
    while True:
        s = random_scalar(rng, field, lo, hi)
        if s:
            return s


def random_center(rng: random.Random, field: Field):
    base = rng.choice(_CENTER_CHOICES)
    if field.is_complex and rng.random() < 0.5:
        return GaussianRational(base, rng.randint(-1, 1))
    return field.coerce(base)


def random_unimodular(
    rng: random.Random,
    field: Field,
    n: int,
    ops: int = 3,
    max_deg: int = 1,
    height: int = 2,
) -> MatPoly:
    """Product of elementary row operations, hence determinant a nonzero
    constant."""
    rows = [list(r) for r in MatPoly.identity(field, n).rows]
    for _ in range(ops):
        kind = rng.choice(("swap", "scale", "add")) if n > 1 else "scale"
        if kind == "swap":
            i, j = rng.sample(range(n), 2)
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == "scale":
            i = rng.randrange(n)
            c = random_nonzero_scalar(rng, field, -height, height)
            rows[i] = [e * c for e in rows[i]]
        else:
            i, j = rng.sample(range(n), 2)
            deg = rng.randint(0, max_deg)
            q = Poly(
                field,
                [random_scalar(rng, field, -height, height) for _ in range(deg + 1)],
            )
            rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
    return MatPoly(field, rows, ncols=n)


@dataclass(frozen=True)
class PlantedInstance:
    """A path whose multiplicity at `center` is known by construction."""

    path: Path
    center: object
    orders: Tuple[int, ...]
    chi: int

    @property
    def field(self) -> Field:
        return self.path.field


def planted_path(
    rng: random.Random,
    field: Field,
    n: int,
    center,
    orders: Sequence[int],
    max_degree: Optional[int] = None,
    ops: int = 3,
) -> Optional[PlantedInstance]:
    """One attempt at a planted instance; None when the degree cap fails."""
    center = field.coerce(center)
    if len(orders) > n:
        raise ValueError("more planted orders than diagonal slots")
    padded = list(orders) + [0] * (n - len(orders))
    shift = Poly(field, (-center, field.one()))
    diag = MatPoly.diag(field, [shift**k for k in padded])
    e = random_unimodular(rng, field, n, ops=ops)
    f = random_unimodular(rng, field, n, ops=ops)
    matrix = e * diag * f
    if max_degree is not None and matrix.degree > max_degree:
        return None
    path = Path(matrix, label="planted")
    chi = sum(padded)
    return PlantedInstance(path=path, center=center, orders=tuple(orders), chi=chi)


def random_planted_instance(
    rng: random.Random,
    field: Field = QQ,
    max_size: int = 5,
    max_degree: int = 4,
    max_total_order: int = 8,
    size: Optional[int] = None,
    center=None,
    regular_fraction: float = 0.15,
) -> PlantedInstance:
    """Planted instance within the certified envelope; retries degenerate
    draws until the degree cap holds, relaxing the factor complexity if the
    cap keeps failing.  Size and center can be pinned (for companion
    instances sharing a center).  A `regular_fraction` share of draws is
    recentered at a regular point, so chi = 0 instances appear too."""
    make_regular = rng.random() < regular_fraction
    for attempt in range(200):
        n = size if size is not None else rng.randint(1, max_size)
        slots = rng.randint(1, n)
        budget = min(max_total_order, max(1, max_degree - 1) * slots)
        orders = []
        remaining = budget
        for s in range(slots):
            if remaining <= 0:
                break
            hi = min(max(1, max_degree - 1), remaining)
            k = rng.randint(1, hi)
            orders.append(k)
            remaining -= k
        orders.sort(reverse=True)
        lam0 = center if center is not None else random_center(rng, field)
        ops = 3 if attempt < 100 else 1
        inst = planted_path(
            rng, field, n, lam0, orders, max_degree=max_degree, ops=ops
        )
        if inst is None:
            continue
        if make_regular and center is None:
            regular = _recenter_at_regular_point(rng, inst)
            if regular is not None:
                return regular
        return inst
    raise AssertionError("planted generation failed to satisfy the degree cap")


def _recenter_at_regular_point(
    rng: random.Random, inst: PlantedInstance
) -> Optional[PlantedInstance]:
    """Move the center to a point where the path is invertible (chi = 0)."""
    field = inst.field
    for _ in range(20):
        lam0 = random_center(rng, field)
        if inst.path.eval(lam0).det():
            return PlantedInstance(
                path=inst.path, center=lam0, orders=(), chi=0
            )
    return None


def random_invertible_const(
    rng: random.Random, field: Field, n: int, height: int = 2
) -> ConstMat:
    while True:
        m = ConstMat(
            field,
            [
                [random_scalar(rng, field, -height, height) for _ in range(n)]
                for _ in range(n)
            ],
        )
        if m.det():
            return m


def random_jordan_pencil(
    rng: random.Random,
    field: Field = QQ,
    max_size: int = 4,
    max_block: int = 4,
) -> Tuple[ConstMat, object, int]:
    """A conjugated Jordan matrix T with a chosen eigenvalue; returns
    (T, eigenvalue, its classical multiplicity)."""
    n = rng.randint(1, max_size)
    lam0 = field.coerce(rng.choice(_CENTER_CHOICES))
    blocks = []
    remaining = n
    target_mult = 0
    while remaining > 0:
        size = rng.randint(1, min(max_block, remaining))
        use_target = rng.random() < 0.7 or not blocks
        eig = lam0 if use_target else field.coerce(lam0 + rng.randint(1, 3))
        if eig == lam0:
            target_mult += size
        blocks.append((size, eig))
        remaining -= size
    if target_mult == 0:
        blocks[0] = (blocks[0][0], lam0)
        target_mult = blocks[0][0]
    total = sum(b[0] for b in blocks)
    offset = 0
    zero = field.zero()
    grid = [[zero] * total for _ in range(total)]
    for size, eig in blocks:
        for i in range(size):
            grid[offset + i][offset + i] = eig
            if i + 1 < size:
                grid[offset + i][offset + i + 1] = field.one()
        offset += size
    j = ConstMat(field, grid, ncols=total)
    s = random_invertible_const(rng, field, total)
    t = s * j * s.inverse()
    return t, lam0, target_mult


def random_rank_one_projection(rng: random.Random, field: Field, n: int) -> ConstMat:
    """Random idempotent of rank one: v * w with w . v = 1."""
    while True:
        v = tuple(random_scalar(rng, field) for _ in range(n))
        w = tuple(random_scalar(rng, field) for _ in range(n))
        dot = sum((a * b for a, b in zip(w, v)), field.zero())
        if dot:
            break
    w = tuple(a / dot for a in w)
    return ConstMat(field, [[v[i] * w[j] for j in range(n)] for i in range(n)])


def normalization_path(field: Field, projection: ConstMat, lam0) -> Path:
    """The normalization instance (lambda - lam0) * Pi + I - Pi for a rank
    one idempotent Pi; its multiplicity at lam0 is 1."""
    n = projection.nrows
    lam0 = field.coerce(lam0)
    shift = Poly(field, (-lam0, field.one()))
    eye = ConstMat.identity(field, n)
    matrix = projection.to_matpoly().scale(shift) + (eye - projection).to_matpoly()
    return Path(matrix, label="normalization")
