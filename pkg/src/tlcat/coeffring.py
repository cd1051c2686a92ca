"""Exact scalars: rationals, polynomials in the loop parameter, and their fractions.

Two coefficient fields are supported. The generic field is Q(δ), the field of
rational functions in an indeterminate δ, represented by :class:`RatFunc`. A
specialized field fixes δ to a rational number and works with
:class:`fractions.Fraction`. Both kinds of scalar support the usual Python
operators, so downstream linear algebra is written once against ``field.zero``,
``field.one`` and ``field.delta_pow``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence, Union

DELTA = "δ"


def _norm(c) -> Rational:
    # integral values are kept as int: they are much faster than Fraction
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"not an exact rational: {c!r}")


def _strip(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class DeltaPoly:
    """Polynomial in δ with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([_norm(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "DeltaPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "DeltaPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "DeltaPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, DeltaPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((_norm(other),) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("DeltaPoly", self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"DeltaPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if k == 0:
                body = str(a)
            else:
                mono = DELTA if k == 1 else f"{DELTA}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self) -> "DeltaPoly":
        return DeltaPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "DeltaPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = _norm(out[i] + c)
        return DeltaPoly._raw(_strip(out))

    __radd__ = __add__

    def __sub__(self, other) -> "DeltaPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "DeltaPoly":
        return (-self) + other

    def __mul__(self, other) -> "DeltaPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DeltaPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = ONE_POLY
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "DeltaPoly":
        if c == 0:
            return ZERO_POLY
        return DeltaPoly._raw(tuple(_norm(x * c) for x in self.coeffs))

    def divmod(self, other: "DeltaPoly") -> tuple["DeltaPoly", "DeltaPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.lead
        if len(rem) - 1 < db:
            return ZERO_POLY, self
        quot = [0] * (len(rem) - db)
        bc = other.coeffs
        unit = lead == 1 or lead == -1
        inv_lead = lead if unit else Fraction(1, 1) / lead
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if c == 0:
                continue
            q = c * inv_lead if unit else _norm(c * inv_lead)
            quot[k] = q
            for i, b in enumerate(bc):
                if b:
                    rem[k + i] -= q * b
        if not unit or any(type(c) is not int for c in rem):
            rem = [_norm(c) for c in rem]
            quot = [_norm(c) for c in quot]
        return DeltaPoly._raw(_strip(quot)), DeltaPoly._raw(_strip(rem[:db]))

    def exact_div(self, other: "DeltaPoly") -> "DeltaPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "DeltaPoly":
        if self.is_zero() or self.lead == 1:
            return self
        return self.scale(Fraction(1) / self.lead)

    def __call__(self, q):
        return specialize(self, q)


def _as_poly(x):
    if isinstance(x, DeltaPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return DeltaPoly.constant(x)
    return NotImplemented


ZERO_POLY = DeltaPoly()
ONE_POLY = DeltaPoly((1,))
DELTA_POLY = DeltaPoly((0, 1))


def poly_mul(a: DeltaPoly, b: DeltaPoly) -> DeltaPoly:
    """Product of two polynomials in δ."""
    if not a.coeffs or not b.coeffs:
        return ZERO_POLY
    ac, bc = a.coeffs, b.coeffs
    if len(ac) == 1:
        return b.scale(ac[0])
    if len(bc) == 1:
        return a.scale(bc[0])
    out = [0] * (len(ac) + len(bc) - 1)
    for i, x in enumerate(ac):
        if x:
            for j, y in enumerate(bc):
                out[i + j] += x * y
    if any(type(c) is not int for c in out):
        out = [_norm(c) for c in out]
    return DeltaPoly._raw(_strip(out))


def poly_gcd(a: DeltaPoly, b: DeltaPoly) -> DeltaPoly:
    """Monic gcd (zero only when both inputs are zero)."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def specialize(p: DeltaPoly, q) -> Fraction:
    """Evaluate ``p`` at δ = q by Horner's scheme."""
    q = _norm(q)
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * q + c
    return Fraction(acc)


class RatFunc:
    """Reduced fraction num/den of polynomials in δ with a monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: DeltaPoly, den: DeltaPoly = ONE_POLY, *, reduced: bool = False):
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_poly(cls, p: DeltaPoly) -> "RatFunc":
        return cls(p, ONE_POLY, reduced=True)

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def is_polynomial(self) -> bool:
        return self.den.coeffs == (1,)

    def __bool__(self) -> bool:
        return bool(self.num.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, DeltaPoly):
            return self.is_polynomial() and self.num == other
        if isinstance(other, (int, Fraction)):
            return self.is_polynomial() and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("RatFunc", self.num.coeffs, self.den.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if not other.num.coeffs:
            return self
        if not self.num.coeffs:
            return other
        if self.den == other.den:
            if self.den.coeffs == (1,):
                return RatFunc(self.num + other.num, ONE_POLY, reduced=True)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if not self.num.coeffs or not other.num.coeffs:
            return ZERO
        if self.den.coeffs == (1,) and other.den.coeffs == (1,):
            return RatFunc(self.num * other.num, ONE_POLY, reduced=True)
        # cross-cancel so the product is already reduced
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        lc = den.lead
        if lc != 1:
            inv = Fraction(1) / lc
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc(num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        num, den = self.den, self.num
        lc = den.lead
        if lc != 1:
            inv = Fraction(1) / lc
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc(num, den, reduced=True)

    def __truediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k, reduced=True)

    def specialize(self, q) -> Fraction:
        d = specialize(self.den, q)
        if d == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at δ={q}")
        return specialize(self.num, q) / d


def _reduce(num: DeltaPoly, den: DeltaPoly) -> tuple[DeltaPoly, DeltaPoly]:
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return ZERO_POLY, ONE_POLY
    if den.degree > 0:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
    lc = den.lead
    if lc != 1:
        inv = Fraction(1) / lc
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def ratfunc_normalize(num: DeltaPoly, den: DeltaPoly) -> RatFunc:
    """Reduce ``num/den`` to lowest terms with a monic denominator."""
    return RatFunc(num, den)


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, DeltaPoly):
        return RatFunc.from_poly(x)
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_poly(DeltaPoly.constant(x))
    return NotImplemented


ZERO = RatFunc(ZERO_POLY, ONE_POLY, reduced=True)
ONE = RatFunc(ONE_POLY, ONE_POLY, reduced=True)

Scalar = Union[RatFunc, Fraction]


# --------------------------------------------------------------------------
# coefficient fields


class GenericField:
    """Q(δ) with δ an indeterminate."""

    generic = True
    zero = ZERO
    one = ONE

    def __repr__(self) -> str:
        return "GenericField()"

    def __eq__(self, other) -> bool:
        return isinstance(other, GenericField)

    def __hash__(self) -> int:
        return hash("GenericField")

    @property
    def label(self) -> str:
        return "generic"

    @property
    def delta(self) -> RatFunc:
        return self.delta_pow(1)

    @staticmethod
    @lru_cache(maxsize=None)
    def delta_pow(k: int) -> RatFunc:
        return RatFunc(DeltaPoly.monomial(k), ONE_POLY, reduced=True)

    def from_int(self, c) -> RatFunc:
        return _as_ratfunc(_norm(c))

    def from_poly(self, p: DeltaPoly) -> RatFunc:
        return RatFunc.from_poly(p)

    def is_member(self, x) -> bool:
        return isinstance(x, RatFunc)


class SpecializedField:
    """Q with δ fixed to a rational value."""

    generic = False

    def __init__(self, q):
        self.q = Fraction(q)
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self._pows: dict[int, Fraction] = {}

    def __repr__(self) -> str:
        return f"SpecializedField({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, SpecializedField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("SpecializedField", self.q))

    @property
    def label(self) -> str:
        return f"delta={self.q}"

    @property
    def delta(self) -> Fraction:
        return self.q

    def delta_pow(self, k: int) -> Fraction:
        v = self._pows.get(k)
        if v is None:
            v = self._pows[k] = self.q**k
        return v

    def from_int(self, c) -> Fraction:
        return Fraction(c)

    def from_poly(self, p: DeltaPoly) -> Fraction:
        return specialize(p, self.q)

    def is_member(self, x) -> bool:
        return isinstance(x, Fraction)


Field = Union[GenericField, SpecializedField]
GENERIC = GenericField()


def make_field(delta=None) -> Field:
    """``None`` or ``"generic"`` gives Q(δ); anything else is parsed as a rational."""
    if delta is None or delta == "generic":
        return GENERIC
    return SpecializedField(parse_rational(delta))


# --------------------------------------------------------------------------
# serialization


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    return Fraction(str(s).strip())


def rational_to_str(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def scalar_to_json(x: Scalar):
    if isinstance(x, RatFunc):
        return {
            "num": [rational_to_str(c) for c in x.num.coeffs],
            "den": [rational_to_str(c) for c in x.den.coeffs],
        }
    if isinstance(x, (int, Fraction)):
        return rational_to_str(x)
    raise TypeError(f"not a scalar: {x!r}")


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, dict):
        num = DeltaPoly(parse_rational(c) for c in obj["num"])
        den = DeltaPoly(parse_rational(c) for c in obj["den"])
        return RatFunc(num, den)
    return parse_rational(obj)


def poly_from_ints(coeffs: Sequence[int]) -> DeltaPoly:
    return DeltaPoly(coeffs)
