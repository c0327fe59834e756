"""Univariate rational polynomials with Sturm root counting, and sparse
bivariate polynomials over Q(zeta_8).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional

from .scalar import Cyc8, as_fraction, rat_from_str, rat_to_str

DEFAULT_WIDTH = Fraction(1, 10**8)


class UniPoly:
    """Polynomial with rational coefficients, ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots) -> "UniPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == UniPoly.const(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.pretty()

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}" if mag.denominator == 1 else f"({mag})*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly(
            (a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            f = as_fraction(other)
            return UniPoly(c * f for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UniPoly((1,))
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other):
        return uni_div_rem(self, other)

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            raise ValueError("zero polynomial has no monic form")
        return self * (1 / self.leading())

    def compose(self, q: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def to_json(self) -> dict:
        return {"coeffs": [rat_to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "UniPoly":
        if not isinstance(data, dict) or not isinstance(data.get("coeffs"), list):
            raise ValueError("polynomial JSON must be an object with a 'coeffs' list")
        return cls(rat_from_str(s) for s in data["coeffs"])


def uni_div_rem(p: UniPoly, q: UniPoly) -> tuple[UniPoly, UniPoly]:
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dq = q.degree
    lq = q.leading()
    if len(rem) - 1 < dq:
        return UniPoly(), p
    quot = [Fraction(0)] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        f = c / lq
        quot[k - dq] = f
        for j, qc in enumerate(q.coeffs):
            rem[k - dq + j] -= f * qc
    return UniPoly(quot), UniPoly(rem[:dq])


def uni_arith(op: str, p: UniPoly, q: UniPoly):
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "div_rem":
        return uni_div_rem(p, q)
    raise ValueError(f"unknown polynomial op {op!r}")


def uni_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm over Q."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    while not q.is_zero():
        p, q = q, _primitive(uni_div_rem(p, q)[1])
    return p.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree < 1:
        return p
    return uni_div_rem(p, uni_gcd(p, p.derivative()))[0]


def _primitive(p: UniPoly) -> UniPoly:
    # Scale by a positive rational so coefficients are coprime integers; sign kept.
    if p.is_zero():
        return p
    den = reduce(math.lcm, (c.denominator for c in p.coeffs), 1)
    nums = [c.numerator * (den // c.denominator) for c in p.coeffs]
    g = reduce(math.gcd, nums, 0)
    return UniPoly(Fraction(n // g) for n in nums)


def primitive_integer_form(p: UniPoly) -> UniPoly:
    """Integer coefficients with gcd 1 and positive leading coefficient."""
    if p.is_zero():
        raise ValueError("zero polynomial has no primitive form")
    q = _primitive(p)
    return -q if q.leading() < 0 else q


def integer_coeffs(p: UniPoly) -> list[int]:
    out = []
    for c in p.coeffs:
        if c.denominator != 1:
            raise ValueError(f"non-integer coefficient {c}")
        out.append(c.numerator)
    return out


# -- Sturm sequences ---------------------------------------------------------


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [_primitive(p)]
    if p.degree == 0:
        return chain
    chain.append(_primitive(p.derivative()))
    while chain[-1].degree > 0:
        rem = uni_div_rem(chain[-2], chain[-1])[1]
        if rem.is_zero():
            break
        chain.append(_primitive(-rem))
    g = chain[-1]
    if g.degree > 0:
        # repeated roots: divide through by the gcd so every endpoint evaluates cleanly
        chain = [_primitive(uni_div_rem(q, g)[0]) for q in chain]
    return chain


def _is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def _sign_at(p: UniPoly, x) -> int:
    if x is None or _is_inf(x):
        positive = x is None or x > 0
        lc = 1 if p.leading() > 0 else -1
        if positive or p.degree % 2 == 0:
            return lc
        return -lc
    return p.sign_at(x)


def _variations(chain: list[UniPoly], x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _normalize_lo(lo):
    if lo is None:
        return -math.inf
    return lo if _is_inf(lo) else as_fraction(lo)


def _normalize_hi(hi):
    if hi is None:
        return math.inf
    return hi if _is_inf(hi) else as_fraction(hi)


def _count(chain: list[UniPoly], lo, hi) -> int:
    # Correct for the half-open interval (lo, hi] even when hi is a root.
    return _variations(chain, lo) - _variations(chain, hi)


def sturm_count(p: UniPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    ``None`` or ``float('inf')`` stand for the infinite endpoints. Finite
    endpoints must not be roots of ``p``.
    """
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    lo, hi = _normalize_lo(lo), _normalize_hi(hi)
    for name, e in (("lower", lo), ("upper", hi)):
        if not _is_inf(e) and p(e) == 0:
            raise ValueError(
                f"{name} endpoint {e} is a root; perturb the rational endpoint"
            )
    if not _is_inf(lo) and not _is_inf(hi) and lo >= hi:
        return 0
    return _count(sturm_chain(p), lo, hi)


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every complex root has modulus strictly below it."""
    lc = abs(p.leading())
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational of least denominator in the closed interval ``[lo, hi]``."""
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = math.floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo and hi share the integer part; recurse on reciprocals of the fractional parts
    inner = simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / inner


@dataclass(frozen=True)
class IsolatingInterval:
    """Interval ``(lo, hi]`` holding exactly one root of ``poly``.

    ``exact`` is set when the root was found to be the rational ``hi``.
    """

    lo: Fraction
    hi: Fraction
    poly: UniPoly
    exact: Optional[Fraction] = None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return float((self.lo + self.hi) / 2)

    def verify(self) -> bool:
        if not self.lo < self.hi or self.poly(self.lo) == 0:
            return False
        if self.exact is not None and (self.exact != self.hi or self.poly(self.hi) != 0):
            return False
        return _count(sturm_chain(self.poly), self.lo, self.hi) == 1

    def refine(self, width) -> "IsolatingInterval":
        width = as_fraction(width)
        if width <= 0:
            raise ValueError("width must be positive")
        if self.exact is not None:
            if self.width <= width:
                return self
            return IsolatingInterval(self.hi - width, self.hi, self.poly, self.exact)
        chain = sturm_chain(self.poly)
        lo, hi = self.lo, self.hi
        while hi - lo > width:
            mid = (lo + hi) / 2
            if self.poly(mid) == 0:
                return IsolatingInterval(mid - width, mid, self.poly, mid)
            if _count(chain, lo, mid) >= 1:
                hi = mid
            else:
                lo = mid
        return IsolatingInterval(lo, hi, self.poly)

    def bisect_once(self) -> "IsolatingInterval":
        return self.refine(self.width / 2)

    def __str__(self):
        if self.exact is not None:
            return f"{self.exact} (exact)"
        return f"({self.lo}, {self.hi}] ~ {self.midpoint():.6e}"


def isolate_smallest_root(p: UniPoly, lower_bound=0, width=DEFAULT_WIDTH) -> IsolatingInterval:
    """Isolate the least root of ``p`` strictly above ``lower_bound``."""
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if p.is_zero() or p.degree < 1:
        raise ValueError("polynomial has no roots")
    lo = as_fraction(lower_bound)
    if p(lo) == 0:
        # shift below the root so that it does not sit on an endpoint
        raise ValueError(f"lower bound {lo} is a root; perturb the rational endpoint")
    chain = sturm_chain(p)
    hi = max(root_bound(p), lo + 1)
    if _count(chain, lo, hi) == 0:
        raise ValueError(f"no real root above {lo}")
    while True:
        if p(hi) == 0 and _count(chain, lo, hi) == 1:
            return IsolatingInterval(lo, hi, p, hi).refine(width)
        if hi - lo <= width and _count(chain, lo, hi) == 1:
            break
        mid = (lo + hi) / 2
        if _count(chain, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    # report a rational root exactly when one is present in the final interval
    r = simplest_between(lo, hi)
    if lo < r and p(r) == 0:
        return IsolatingInterval(r - width, r, p, r)
    return IsolatingInterval(lo, hi, p)


# -- bivariate polynomials ---------------------------------------------------


class BiPoly:
    """Sparse polynomial in two commuting real variables over Q(zeta_8).

    ``names`` labels the variables: ``("a", "b")`` for ``alpha = a + i b``,
    or ``("s", "r")`` for ``s = |alpha|^2`` and ``r = alpha + conj(alpha)``.
    """

    __slots__ = ("terms", "names")

    def __init__(self, terms=None, names=("a", "b")):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Cyc8.coerce(c)
            if not c.is_zero():
                clean[tuple(mono)] = c
        self.terms = clean
        self.names = tuple(names)

    @classmethod
    def const(cls, c, names=("a", "b")) -> "BiPoly":
        return cls({(0, 0): c}, names)

    @classmethod
    def var(cls, k: int, names=("a", "b")) -> "BiPoly":
        return cls({(1, 0) if k == 0 else (0, 1): 1}, names)

    @classmethod
    def generators(cls, names=("a", "b")) -> tuple["BiPoly", "BiPoly"]:
        return cls.var(0, names), cls.var(1, names)

    def _coerce(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            if other.names != self.names:
                raise ValueError(f"variable mismatch {self.names} vs {other.names}")
            return other
        return BiPoly.const(other, self.names)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return BiPoly(out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({m: -c for m, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            try:
                c = Cyc8.coerce(other)
            except TypeError:
                return NotImplemented
            return BiPoly({m: v * c for m, v in self.terms.items()}, self.names)
        other = self._coerce(other)
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return BiPoly(out, self.names)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BiPoly.const(1, self.names)
        for _ in range(n):
            result = result * self
        return result

    def conj(self) -> "BiPoly":
        """Complex conjugate, treating both variables as real."""
        return BiPoly({m: c.conj() for m, c in self.terms.items()}, self.names)

    def degree_in(self, k: int) -> int:
        return max((m[k] for m in self.terms), default=-1)

    def __call__(self, u, v):
        acc = Cyc8()
        for (i, j), c in self.terms.items():
            acc = acc + c * (Cyc8.coerce(u) ** i) * (Cyc8.coerce(v) ** j)
        return acc

    def divide_exact(self, divisor: "BiPoly") -> "BiPoly":
        """Exact quotient by ``divisor`` (lex order, first variable highest)."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = max(divisor.terms)
        lead_c = divisor.terms[lead]
        rem = BiPoly(dict(self.terms), self.names)
        quot = BiPoly({}, self.names)
        stuck = BiPoly({}, self.names)
        while not rem.is_zero():
            m = max(rem.terms)
            c = rem.terms[m]
            if m[0] >= lead[0] and m[1] >= lead[1]:
                t = BiPoly({(m[0] - lead[0], m[1] - lead[1]): c / lead_c}, self.names)
                quot = quot + t
                rem = rem - t * divisor
            else:
                stuck = stuck + BiPoly({m: c}, self.names)
                rem = rem - BiPoly({m: c}, self.names)
        if not stuck.is_zero():
            raise ValueError(f"not exactly divisible; remainder {stuck}")
        return quot

    def __repr__(self):
        return f"BiPoly({self}, names={self.names})"

    def __str__(self):
        if not self.terms:
            return "0"
        x, y = self.names
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            c = self.terms[(i, j)]
            mono = "*".join(
                p for p in (
                    (x if i == 1 else f"{x}^{i}") if i else "",
                    (y if j == 1 else f"{y}^{j}") if j else "",
                ) if p
            )
            cs = str(c)
            if not c.is_rational():
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def alpha_generators() -> tuple[BiPoly, BiPoly, BiPoly]:
    """Return ``(alpha, conj(alpha), |alpha|^2)`` in the variables a, b."""
    a, b = BiPoly.generators()
    i = Cyc8.zeta(2)
    alpha = a + b * i
    return alpha, alpha.conj(), a * a + b * b


def bi_expand(expr: BiPoly) -> BiPoly:
    """Canonical expanded form. Arithmetic already expands eagerly, so this
    only drops zero terms and returns a fresh copy."""
    return BiPoly(dict(expr.terms), expr.names)


def bi_substitute(expr: BiPoly) -> BiPoly:
    """Map a polynomial in ``(s, r)`` to ``(a, b)`` via ``s = a^2+b^2``, ``r = 2a``."""
    if expr.names != ("s", "r"):
        raise ValueError(f"expected variables (s, r), got {expr.names}")
    a, b = BiPoly.generators()
    s = a * a + b * b
    r = a * 2
    out = BiPoly({})
    for (i, j), c in expr.terms.items():
        out = out + (s ** i) * (r ** j) * c
    return out


def bi_realness_check(expr: BiPoly) -> BiPoly:
    """Require all coefficients rational; returns the polynomial unchanged."""
    for mono, c in sorted(expr.terms.items()):
        if not c.is_rational():
            x, y = expr.names
            raise ValueError(
                f"non-real coefficient {c} on monomial {x}^{mono[0]}*{y}^{mono[1]}"
            )
    return BiPoly(dict(expr.terms), expr.names)
