"""Exact root extraction inside the coefficient field.

Rational roots come from the classical divisor test on a primitive integer
form of the polynomial.  Gaussian-rational roots come from the same test run
in Z[i]: divisor enumeration works through factoring norms, splitting each
rational prime into Gaussian primes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .scalars import GaussianRational, Poly, _ord_int


def field_roots(p: Poly) -> Tuple[List[Tuple[object, int]], Poly]:
    """All roots of p lying in its coefficient field, with multiplicities.

    Returns (sorted [(root, multiplicity), ...], monic residual factor with
    no roots in the field).  Rejects the zero polynomial.
    """
    if p.is_zero:
        raise ValueError("root extraction needs a nonzero polynomial")
    field = p.field
    if p.degree == 0:
        return [], Poly.one(field)
    candidates = (
        _gaussian_candidates(p) if field.is_complex else _rational_candidates(p)
    )
    found = []
    for c in candidates:
        if not p.evaluate(c):
            found.append((c, _ord_int(p, c)))
    found.sort(key=lambda item: _sort_key(item[0]))
    residual = p
    for root, mult in found:
        factor = Poly(field, (-field.coerce(root), field.one())) ** mult
        residual = residual.exact_div(factor)
    return found, residual.monic()


def _sort_key(x):
    if isinstance(x, GaussianRational):
        return (x.re, x.im)
    return (x, Fraction(0))


def _int_divisors(n: int) -> List[int]:
    """Positive divisors of |n|, n != 0, by trial-division factorization."""
    n = abs(n)
    factors: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    divisors = [1]
    for prime, exp in factors.items():
        divisors = [d * prime**k for d in divisors for k in range(exp + 1)]
    return divisors


def _rational_candidates(p: Poly) -> List[Fraction]:
    denom_lcm = 1
    for c in p.coeffs:
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in p.coeffs]
    first = next(k for k, c in enumerate(ints) if c)
    candidates = [Fraction(0)] if first > 0 else []
    stripped = ints[first:]
    a0, ad = stripped[0], stripped[-1]
    for num in _int_divisors(a0):
        for den in _int_divisors(ad):
            candidates.append(Fraction(num, den))
            candidates.append(Fraction(-num, den))
    return sorted(set(candidates))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# Gaussian integers as plain (re, im) int pairs.

GInt = Tuple[int, int]


def _g_mul(a: GInt, b: GInt) -> GInt:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _g_norm(a: GInt) -> int:
    return a[0] * a[0] + a[1] * a[1]


def _g_exact_div(z: GInt, d: GInt):
    """z / d in Z[i] or None when d does not divide z."""
    n = _g_norm(d)
    w = _g_mul(z, (d[0], -d[1]))
    if w[0] % n or w[1] % n:
        return None
    return (w[0] // n, w[1] // n)


def _split_prime(p: int) -> GInt:
    """A Gaussian prime above a rational prime p = 1 mod 4 (or p = 2)."""
    if p == 2:
        return (1, 1)
    for x in range(1, int(p**0.5) + 1):
        y_sq = p - x * x
        y = int(y_sq**0.5)
        while y * y < y_sq:
            y += 1
        if y * y == y_sq:
            return (x, y)
    raise AssertionError(f"prime {p} = 1 mod 4 must split in Z[i]")


def _gaussian_factor(z: GInt) -> List[Tuple[GInt, int]]:
    """Prime factorization of a nonzero Gaussian integer, up to units."""
    n = _g_norm(z)
    rational_factors: Dict[int, int] = {}
    m, d = n, 2
    while d * d <= m:
        while m % d == 0:
            rational_factors[d] = rational_factors.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        rational_factors[m] = rational_factors.get(m, 0) + 1
    out: List[Tuple[GInt, int]] = []
    for p in sorted(rational_factors):
        if p % 4 == 3:
            out.append(((p, 0), rational_factors[p] // 2))
            continue
        if p == 2:
            primes = [(1, 1)]
        else:
            pi = _split_prime(p)
            primes = sorted({pi, (pi[0], -pi[1])})
        for prime in primes:
            count = 0
            w = z
            while True:
                q = _g_exact_div(w, prime)
                if q is None:
                    break
                w = q
                count += 1
            if count:
                out.append((prime, count))
    return out


def _gaussian_divisors(z: GInt) -> List[GInt]:
    """Divisors of z up to unit multiples."""
    divisors = [(1, 0)]
    for prime, exp in _gaussian_factor(z):
        power = (1, 0)
        powers = []
        for _ in range(exp + 1):
            powers.append(power)
            power = _g_mul(power, prime)
        divisors = [_g_mul(d, pw) for d in divisors for pw in powers]
    return divisors


_UNITS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _gaussian_candidates(p: Poly) -> List[GaussianRational]:
    denom_lcm = 1
    for c in p.coeffs:
        for part in (c.re, c.im):
            denom_lcm = denom_lcm * part.denominator // _gcd(
                denom_lcm, part.denominator
            )
    ints = [
        (int(c.re * denom_lcm), int(c.im * denom_lcm)) for c in p.coeffs
    ]
    first = next(k for k, c in enumerate(ints) if c != (0, 0))
    candidates = {GaussianRational()} if first > 0 else set()
    stripped = ints[first:]
    for num in _gaussian_divisors(stripped[0]):
        for den in _gaussian_divisors(stripped[-1]):
            dn = _g_norm(den)
            for u in _UNITS:
                b = _g_mul(_g_mul(num, u), (den[0], -den[1]))
                candidates.add(
                    GaussianRational(Fraction(b[0], dn), Fraction(b[1], dn))
                )
    return sorted(candidates, key=_sort_key)
