"""Exact scalars: rationals and the eighth cyclotomic field Q(zeta_8).

Rationals are :class:`fractions.Fraction`. A :class:`Cyc8` is stored in the
basis ``1, z, z^2, z^3`` with ``z = exp(i*pi/4)`` and reduction ``z^4 = -1``,
so ``i = z^2`` and ``sqrt(2) = z - z^3``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

_RAT_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


def rat_arith(op: str, p, q) -> Fraction:
    p, q = as_fraction(p), as_fraction(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "div":
        if q == 0:
            raise ZeroDivisionError("rational division by zero")
        return p / q
    raise ValueError(f"unknown rational op {op!r}")


def rat_to_str(x) -> str:
    """Encode as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(as_fraction(x))


def rat_from_str(s: str) -> Fraction:
    if not isinstance(s, str) or not _RAT_RE.match(s):
        raise ValueError(f"malformed rational string {s!r}")
    value = Fraction(s.replace(" ", ""))
    return value


class Cyc8:
    """Element ``c0 + c1 z + c2 z^2 + c3 z^3`` of Q(zeta_8)."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (as_fraction(c0), as_fraction(c1), as_fraction(c2), as_fraction(c3))

    @classmethod
    def _raw(cls, c):
        obj = object.__new__(cls)
        obj.c = c
        return obj

    @classmethod
    def coerce(cls, x) -> "Cyc8":
        if isinstance(x, Cyc8):
            return x
        return cls._raw((as_fraction(x), _ZERO, _ZERO, _ZERO))

    @classmethod
    def zeta(cls, k: int = 1) -> "Cyc8":
        k %= 8
        sign = 1
        if k >= 4:
            k -= 4
            sign = -1
        c = [_ZERO] * 4
        c[k] = Fraction(sign)
        return cls._raw(tuple(c))

    @classmethod
    def from_gauss(cls, a, b) -> "Cyc8":
        """Embed ``a + b i`` (``i = z^2``)."""
        return cls(a, 0, b, 0)

    # -- predicates ---------------------------------------------------------

    def is_rational(self) -> bool:
        c = self.c
        return not (c[1] or c[2] or c[3])

    def is_real(self) -> bool:
        """True iff the element lies in the real subfield Q(sqrt 2)."""
        c = self.c
        return c[2] == 0 and c[3] == -c[1]

    def is_zero(self) -> bool:
        c = self.c
        return not (c[0] or c[1] or c[2] or c[3])

    def __bool__(self):
        return not self.is_zero()

    # -- extraction ---------------------------------------------------------

    def as_rational(self) -> Fraction:
        c = self.c
        if c[1] or c[2] or c[3]:
            bad = {f"z^{k}": str(c[k]) for k in (1, 2, 3) if c[k]}
            raise ValueError(f"element {self} is not rational; nonzero coordinates {bad}")
        return c[0]

    def real_parts(self) -> tuple[Fraction, Fraction]:
        """Return ``(p, q)`` with ``self = p + q sqrt(2)``; requires realness."""
        if not self.is_real():
            raise ValueError(f"element {self} is not real")
        return self.c[0], self.c[1]

    def sign(self) -> int:
        """Exact sign of a real element."""
        p, q = self.real_parts()
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with 2 q^2
        d = p * p - 2 * q * q
        return sp if d > 0 else sq

    def to_complex(self) -> complex:
        r = 0.5 ** 0.5
        c0, c1, c2, c3 = (float(x) for x in self.c)
        return complex(c0 + r * (c1 - c3), c2 + r * (c1 + c3))

    # -- field operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Cyc8):
            try:
                f = as_fraction(other)
            except TypeError:
                return NotImplemented
            c = self.c
            return Cyc8._raw((c[0] + f, c[1], c[2], c[3]))
        a, b = self.c, other.c
        return Cyc8._raw((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __neg__(self):
        c = self.c
        return Cyc8._raw((-c[0], -c[1], -c[2], -c[3]))

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Cyc8):
            try:
                other = Cyc8.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.c, other.c
        return Cyc8._raw((a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, Cyc8):
            try:
                f = as_fraction(other)
            except TypeError:
                return NotImplemented
            c = self.c
            return Cyc8._raw((c[0] * f, c[1] * f, c[2] * f, c[3] * f))
        a, b = self.c, other.c
        if not (b[1] or b[2] or b[3]):
            f = b[0]
            return Cyc8._raw((a[0] * f, a[1] * f, a[2] * f, a[3] * f))
        if not (a[1] or a[2] or a[3]):
            f = a[0]
            return Cyc8._raw((b[0] * f, b[1] * f, b[2] * f, b[3] * f))
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        return Cyc8._raw((
            a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        ))

    __rmul__ = __mul__

    def conj(self) -> "Cyc8":
        c0, c1, c2, c3 = self.c
        return Cyc8._raw((c0, -c3, -c2, -c1))

    def galois(self, k: int) -> "Cyc8":
        """Apply the automorphism ``z -> z^k`` for odd ``k``."""
        k %= 8
        c0, c1, c2, c3 = self.c
        if k == 1:
            return self
        if k == 3:
            return Cyc8._raw((c0, c3, -c2, c1))
        if k == 5:
            return Cyc8._raw((c0, -c1, c2, -c3))
        if k == 7:
            return Cyc8._raw((c0, -c3, -c2, -c1))
        raise ValueError("Galois exponent must be odd")

    def norm(self) -> Fraction:
        """Field norm down to Q (product of all four conjugates)."""
        prod = self * self.galois(3) * self.galois(5) * self.galois(7)
        return prod.as_rational()

    def inverse(self) -> "Cyc8":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_8)")
        c = self.c
        if not (c[1] or c[2] or c[3]):
            return Cyc8._raw((1 / c[0], _ZERO, _ZERO, _ZERO))
        others = self.galois(3) * self.galois(5) * self.galois(7)
        n = (self * others).as_rational()
        return others * (1 / n)

    def __truediv__(self, other):
        if not isinstance(other, Cyc8):
            try:
                f = as_fraction(other)
            except TypeError:
                return NotImplemented
            if f == 0:
                raise ZeroDivisionError("division by zero in Q(zeta_8)")
            return self * (1 / f)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyc8.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Cyc8):
            return self.c == other.c
        try:
            f = as_fraction(other)
        except TypeError:
            return NotImplemented
        c = self.c
        return c[0] == f and not (c[1] or c[2] or c[3])

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def __repr__(self):
        return f"Cyc8({', '.join(str(x) for x in self.c)})"

    def __str__(self):
        if self.is_rational():
            return str(self.c[0])
        names = ("", "z", "z^2", "z^3")
        parts = []
        for x, name in zip(self.c, names):
            if not x:
                continue
            if not name:
                parts.append(str(x))
            elif x == 1:
                parts.append(name)
            elif x == -1:
                parts.append("-" + name)
            else:
                coef = f"({x})" if x.denominator != 1 else str(x)
                parts.append(f"{coef}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list[str]:
        return [rat_to_str(x) for x in self.c]

    @classmethod
    def from_json(cls, data) -> "Cyc8":
        if isinstance(data, str):
            return cls(rat_from_str(data))
        if not isinstance(data, (list, tuple)) or len(data) != 4:
            raise ValueError(f"Cyc8 must be a 4-element array, got {data!r}")
        return cls(*(rat_from_str(s) for s in data))


_ZERO = Fraction(0)
ZERO = Cyc8()
ONE = Cyc8(1)
ZETA = Cyc8.zeta(1)
I = Cyc8.zeta(2)
SQRT2 = ZETA - Cyc8.zeta(3)


def cyc8_arith(op: str, u, v) -> Cyc8:
    u, v = Cyc8.coerce(u), Cyc8.coerce(v)
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    raise ValueError(f"unknown Cyc8 op {op!r}")


def cyc8_conj(u) -> Cyc8:
    return Cyc8.coerce(u).conj()


def cyc8_inverse(u) -> Cyc8:
    return Cyc8.coerce(u).inverse()


def cyc8_from_gauss(a, b) -> Cyc8:
    return Cyc8.from_gauss(a, b)


def cyc8_as_rational(u) -> Fraction:
    return Cyc8.coerce(u).as_rational()
