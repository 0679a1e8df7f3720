"""Exact scalars, univariate polynomials, rational functions, local expansions.

Everything in this module is exact: values are rationals or Gaussian
rationals built on arbitrary-precision integers, and no operation ever
rounds.  Canonical forms (reduced fractions, positive denominators, trimmed
coefficient lists, monic denominators) are enforced at construction time, so
equality of equal values is plain structural equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

from .errors import RegularityError

NEG_INF = float("-inf")


class GaussianRational:
    """Element a + b*i of Q(i), stored as a reduced (re, im) pair."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    def __add__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm re^2 + im^2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def _as_gaussian(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return NotImplemented


Scalar = Union[Fraction, GaussianRational]


class Field:
    """Coefficient field tag: rationals ("Q") or Gaussian rationals ("Qi")."""

    __slots__ = ("tag",)

    def __init__(self, tag: str):
        self.tag = tag

    @property
    def is_complex(self) -> bool:
        return self.tag == "Qi"

    def zero(self) -> Scalar:
        return GaussianRational() if self.is_complex else Fraction(0)

    def one(self) -> Scalar:
        return GaussianRational(1) if self.is_complex else Fraction(1)

    def i(self) -> Scalar:
        if not self.is_complex:
            raise ValueError("the rational field has no imaginary unit")
        return GaussianRational(0, 1)

    def coerce(self, x) -> Scalar:
        """Convert x into a canonical element of this field."""
        if self.is_complex:
            if isinstance(x, GaussianRational):
                return x
            if isinstance(x, (int, Fraction)):
                return GaussianRational(x)
        else:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
            if isinstance(x, GaussianRational) and x.im == 0:
                return x.re
        raise TypeError(f"cannot coerce {x!r} into field {self.tag}")

    def parse(self, obj) -> Scalar:
        """Parse the scalar text format: "a/b", "a", or {"re": .., "im": ..}."""
        if isinstance(obj, dict):
            if not self.is_complex:
                raise ValueError("complex scalar given for field Q")
            if set(obj) - {"re", "im"}:
                raise ValueError(f"unexpected keys in scalar object: {sorted(obj)}")
            re = Fraction(str(obj.get("re", "0")))
            im = Fraction(str(obj.get("im", "0")))
            return GaussianRational(re, im)
        if isinstance(obj, bool):
            raise ValueError(f"not a scalar: {obj!r}")
        if isinstance(obj, (str, int)):
            return self.coerce(Fraction(str(obj)))
        raise ValueError(f"not a scalar: {obj!r}")

    def render(self, x):
        """Inverse of parse: a string for Q, an {"re","im"} object for Qi."""
        x = self.coerce(x)
        if self.is_complex:
            return {"re": str(x.re), "im": str(x.im)}
        return str(x)

    def conjugate(self, x) -> Scalar:
        x = self.coerce(x)
        return x.conjugate() if self.is_complex else x

    def __repr__(self):
        return f"Field({self.tag})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)


QQ = Field("Q")
QQI = Field("Qi")
FIELDS = {"Q": QQ, "Qi": QQI}


@total_ordering
class ExtendedNat:
    """A nonnegative integer extended with the absorbing value Infinite."""

    __slots__ = ("_value",)

    def __init__(self, value=None):
        if value is not None:
            if isinstance(value, ExtendedNat):
                value = value._value
            elif not isinstance(value, int) or value < 0:
                raise ValueError(f"ExtendedNat needs a nonnegative int, got {value!r}")
        self._value = value

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def value(self) -> int:
        if self._value is None:
            raise ValueError("infinite multiplicity has no integer value")
        return self._value

    def __add__(self, other):
        other = ExtendedNat(other) if not isinstance(other, ExtendedNat) else other
        if self.is_infinite or other.is_infinite:
            return INFINITE
        return ExtendedNat(self._value + other._value)

    __radd__ = __add__

    def __eq__(self, other):
        if isinstance(other, ExtendedNat):
            return self._value == other._value
        if isinstance(other, int):
            return self._value == other
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, ExtendedNat):
            other = ExtendedNat(other)
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self._value < other._value

    def __hash__(self):
        return hash(self._value)

    def __int__(self):
        return self.value

    def __repr__(self):
        return "Infinite" if self.is_infinite else str(self._value)


INFINITE = ExtendedNat()


class Poly:
    """Dense univariate polynomial over an exact field.

    Coefficients are indexed by power, trailing zeros trimmed, so the leading
    coefficient is nonzero unless the polynomial is zero.  The degree of the
    zero polynomial is -inf.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # constructors

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def constant(cls, field: Field, c) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def variable(cls, field: Field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field: Field, power: int, c=1) -> "Poly":
        return cls(field, (0,) * power + (c,))

    @classmethod
    def from_roots(cls, field: Field, roots: Sequence) -> "Poly":
        p = cls.one(field)
        for r in roots:
            p = p * cls(field, (-field.coerce(r), 1))
        return p

    # structure

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero()

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == Poly.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.tag, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # arithmetic

    def __add__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(self.field, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._as_poly(other))

    def __rsub__(self, other):
        return self._as_poly(other) - self

    def __neg__(self):
        return Poly(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = self.field.coerce(other)
            return Poly(self.field, tuple(a * c for a in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly.zero(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        """Euclidean division; the divisor must be nonzero."""
        other = self._as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd, dv = len(rem) - 1, other.degree
        quot = [self.field.zero()] * max(0, dd - dv + 1)
        inv_lead = self.field.one() / other.leading
        for k in range(dd - dv, -1, -1):
            c = rem[dv + k] * inv_lead
            if c:
                quot[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(self.field, quot), Poly(self.field, rem[:dv])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("exact polynomial division left a remainder")
        return q

    def _as_poly(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Poly.constant(self.field, other)
        return NotImplemented

    # calculus and evaluation

    def evaluate(self, x) -> Scalar:
        x = self.field.coerce(x)
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(
            self.field, tuple(k * c for k, c in enumerate(self.coeffs) if k > 0)
        )

    def shift(self, center) -> "Poly":
        """Recenter: returns q with q(t) = p(center + t), computed exactly."""
        center = self.field.coerce(center)
        if not center:
            return self
        rem = list(self.coeffs)
        out = []
        for _ in range(len(self.coeffs)):
            # synthetic division by (lambda - center); remainder is next coeff
            carry = self.field.zero()
            for k in range(len(rem) - 1, -1, -1):
                carry = rem[k] + carry * center
                rem[k] = carry
            out.append(rem[0])
            rem = rem[1:]
        return Poly(self.field, out)

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        inv = self.field.one() / self.leading
        return self * inv

    def to_string(self, var: str = "λ") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                term = _scalar_str(c)
            else:
                base = var if k == 1 else f"{var}^{k}"
                if c == 1:
                    term = base
                elif c == -1:
                    term = f"-{base}"
                else:
                    term = f"{_scalar_str(c)}*{base}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def __repr__(self):
        return f"Poly({self.to_string()})"


def _scalar_str(c: Scalar) -> str:
    if isinstance(c, GaussianRational) and c.im != 0:
        return repr(c)
    return str(c)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor.

    Over the rationals this runs a subresultant remainder sequence on
    cleared integer coefficients, which keeps intermediate sizes bounded;
    over the Gaussian rationals it falls back to a monic-normalized
    Euclidean loop (adequate at the small sizes that field sees).
    """
    if a.field != b.field:
        raise ValueError("gcd of polynomials over different fields")
    if a.is_zero:
        return b.monic() if not b.is_zero else b
    if b.is_zero:
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return Poly.one(a.field)
    if not a.field.is_complex:
        return _rational_gcd(a, b)
    while not b.is_zero:
        a, b = b, (a % b)
        if not b.is_zero:
            b = b.monic()
    return a.monic()


def _int_coeffs(p: Poly):
    """Clear denominators and content: a primitive integer coefficient list."""
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    content = 0
    for c in ints:
        content = _int_gcd(content, c)
    return [c // content for c in ints]


def _int_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _int_prem(a, b):
    """Pseudo-remainder of integer coefficient lists: lc(b)^(da-db+1) * a
    reduced modulo b, all divisions exact."""
    db = len(b) - 1
    lb = b[db]
    r = list(a)
    scale_left = len(a) - len(b) + 1
    while True:
        while r and r[-1] == 0:
            r.pop()
        dr = len(r) - 1
        if dr < db:
            break
        lead = r[dr]
        r = [c * lb for c in r]
        for j in range(db + 1):
            r[dr - db + j] -= lead * b[j]
        scale_left -= 1
    if scale_left > 0 and r:
        factor = lb**scale_left
        r = [c * factor for c in r]
    return r


def _rational_gcd(a: Poly, b: Poly) -> Poly:
    """Subresultant polynomial remainder sequence over the integers."""
    fa, fb = _int_coeffs(a), _int_coeffs(b)
    if len(fa) < len(fb):
        fa, fb = fb, fa
    g, h = 1, 1
    while True:
        delta = (len(fa) - 1) - (len(fb) - 1)
        rem = _int_prem(fa, fb)
        if not rem:
            break
        divisor = g * h**delta
        fa, fb = fb, [c // divisor for c in rem]
        if len(fb) == 1:
            return Poly.one(a.field)
        g = fa[-1]
        h = g**delta // h ** (delta - 1) if delta > 0 else h
    lead = Fraction(fb[-1])
    return Poly(a.field, [Fraction(c) / lead for c in fb])


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        return Poly.zero(a.field)
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def poly_gcdex(a: Poly, b: Poly):
    """Extended Euclid: (g, s, t) with s*a + t*b = g and g monic (or zero)."""
    field = a.field
    old_r, r = a, b
    old_s, s = Poly.one(field), Poly.zero(field)
    old_t, t = Poly.zero(field), Poly.one(field)
    while not r.is_zero:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r.is_zero:
        return old_r, old_s, old_t
    inv = field.one() / old_r.leading
    return old_r * inv, old_s * inv, old_t * inv


def ord_at(p: Poly, lam0) -> ExtendedNat:
    """Largest k with (lambda - lam0)^k dividing p; Infinite for the zero
    polynomial."""
    if p.is_zero:
        return INFINITE
    return ExtendedNat(_ord_int(p, lam0))


def _ord_int(p: Poly, lam0) -> int:
    """ord_at for a known-nonzero polynomial, as a plain int."""
    shifted = p.shift(lam0)
    for k, c in enumerate(shifted.coeffs):
        if c:
            return k
    raise AssertionError("nonzero polynomial with all-zero shifted coefficients")


def mult_via_gcd(p: Poly, lam0) -> ExtendedNat:
    """Root multiplicity via repeated gcd with the derivative.

    Independent of ord_at: each gcd(q, q') pass strips exactly one power of
    every root, so the number of passes until lam0 stops being a root is the
    multiplicity.  Rejects the zero polynomial.
    """
    if p.is_zero:
        raise ValueError("multiplicity of the zero polynomial is undefined")
    lam0 = p.field.coerce(lam0)
    count = 0
    q = p
    while not q.evaluate(lam0):
        q = poly_gcd(q, q.derivative())
        count += 1
        if q.is_zero:
            raise AssertionError("gcd chain hit zero for a nonzero polynomial")
    return ExtendedNat(count)


class RationalFunction:
    """Reduced fraction of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None):
        if den is None:
            den = Poly.one(num.field)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.field != den.field:
            raise ValueError("numerator and denominator over different fields")
        if num.is_zero:
            den = Poly.one(num.field)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.leading
            if lead != den.field.one():
                inv = den.field.one() / lead
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def from_scalar(cls, field: Field, c) -> "RationalFunction":
        return cls(Poly.constant(field, c))

    @classmethod
    def _from_coprime(cls, num: Poly, den: Poly) -> "RationalFunction":
        """Constructor for parts already known coprime; only normalizes the
        denominator to monic."""
        out = cls.__new__(cls)
        if num.is_zero:
            out.num = num
            out.den = Poly.one(num.field)
            return out
        lead = den.leading
        if lead != den.field.one():
            inv = den.field.one() / lead
            num = num * inv
            den = den * inv
        out.num = num
        out.den = den
        return out

    @classmethod
    def zero(cls, field: Field) -> "RationalFunction":
        return cls(Poly.zero(field))

    @classmethod
    def one(cls, field: Field) -> "RationalFunction":
        return cls(Poly.one(field))

    @property
    def field(self) -> Field:
        return self.num.field

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial:
            raise ValueError("rational function has a nontrivial denominator")
        return self.num

    def _add_signed(self, other, sign: int):
        # Knuth's scheme: reduce against gcd(d1, d2) only, so the final
        # result never needs a full-size gcd.
        na, da = self.num, self.den
        nb, db = other.num, other.den
        if sign < 0:
            nb = -nb
        g = poly_gcd(da, db)
        if g.degree == 0:
            return RationalFunction._from_coprime(na * db + nb * da, da * db)
        s = da.exact_div(g)
        t = na * db.exact_div(g) + nb * s
        g2 = poly_gcd(t, g)
        if g2.degree == 0:
            return RationalFunction._from_coprime(t, s * db)
        return RationalFunction._from_coprime(
            t.exact_div(g2), s * db.exact_div(g2)
        )

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._add_signed(other, +1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._add_signed(other, -1)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RationalFunction.zero(self.field)
        # cross-cancel before multiplying to keep intermediate degrees low
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RationalFunction._from_coprime(num, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return self * RationalFunction(other.den, other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return RationalFunction(Poly.constant(self.field, other))
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero

    def evaluate(self, x) -> Scalar:
        d = self.den.evaluate(x)
        if not d:
            raise RegularityError(f"pole at evaluation point {x}")
        return self.num.evaluate(x) / d

    def is_regular_at(self, x) -> bool:
        return bool(self.den.evaluate(x))

    def to_string(self, var: str = "λ") -> str:
        ns = self.num.to_string(var)
        if self.is_polynomial:
            return ns
        return f"({ns})/({self.den.to_string(var)})"

    def __repr__(self):
        return f"RationalFunction({self.to_string()})"


def pole_order(f: RationalFunction, lam0) -> int:
    """Pole order of a nonzero rational function at lam0 (0 if regular)."""
    if f.is_zero:
        raise ValueError("pole order of the zero function is undefined")
    return max(0, _ord_int(f.den, lam0) - _ord_int(f.num, lam0))


class LocalExpansion:
    """Truncated Laurent expansion around a center.

    `lowest_exponent` is the exponent of the first nonzero coefficient (0 for
    an expansion that is identically zero up to the truncation order), and
    `coeffs[k]` is the coefficient of (lambda - center)^(lowest_exponent + k)
    up to and including the truncation order.
    """

    __slots__ = ("field", "center", "lowest_exponent", "coeffs", "order")

    def __init__(self, field, center, lowest_exponent, coeffs, order):
        self.field = field
        self.center = field.coerce(center)
        self.lowest_exponent = lowest_exponent
        self.coeffs = tuple(field.coerce(c) for c in coeffs)
        self.order = order

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Scalar:
        """Coefficient of (lambda - center)^k; zero outside the stored window."""
        if k > self.order:
            raise ValueError(f"exponent {k} beyond truncation order {self.order}")
        idx = k - self.lowest_exponent
        if 0 <= idx < len(self.coeffs):
            return self.coeffs[idx]
        return self.field.zero()

    def truncate(self, order: int) -> "LocalExpansion":
        if order > self.order:
            raise ValueError("cannot extend an expansion by truncating")
        keep = list(self.coeffs[: max(0, order - self.lowest_exponent + 1)])
        while keep and not keep[-1]:
            keep.pop()
        if not keep:
            return LocalExpansion(self.field, self.center, 0, (), order)
        return LocalExpansion(
            self.field, self.center, self.lowest_exponent, keep, order
        )

    def __eq__(self, other):
        if not isinstance(other, LocalExpansion):
            return NotImplemented
        return (
            self.field == other.field
            and self.center == other.center
            and self.lowest_exponent == other.lowest_exponent
            and self.coeffs == other.coeffs
            and self.order == other.order
        )

    def __repr__(self):
        return (
            f"LocalExpansion(center={self.center}, low={self.lowest_exponent}, "
            f"coeffs={self.coeffs}, order={self.order})"
        )


def laurent_expand(f: RationalFunction, lam0, order: int) -> LocalExpansion:
    """Exact Laurent coefficients of f around lam0 up to the given order."""
    field = f.field
    if f.is_zero:
        return LocalExpansion(field, lam0, 0, (), order)
    num = f.num.shift(lam0)
    den = f.den.shift(lam0)
    a = next(k for k, c in enumerate(num.coeffs) if c)
    b = next(k for k, c in enumerate(den.coeffs) if c)
    lowest = a - b
    if order < lowest:
        raise ValueError(
            f"truncation order {order} below the leading exponent {lowest}"
        )
    num1 = list(num.coeffs[a:])
    den1 = list(den.coeffs[b:])
    n_terms = order - lowest + 1
    inv0 = field.one() / den1[0]
    series = []
    for k in range(n_terms):
        acc = num1[k] if k < len(num1) else field.zero()
        for j in range(1, min(k, len(den1) - 1) + 1):
            acc = acc - den1[j] * series[k - j]
        series.append(acc * inv0)
    while series and not series[-1]:
        series.pop()
    if not series:
        return LocalExpansion(field, lam0, 0, (), order)
    return LocalExpansion(field, lam0, lowest, series, order)
