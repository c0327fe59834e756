"""Certificates about real algebraic numbers and polynomial positivity.

An algebraic number is never written in radicals: it is a polynomial together
with a rational interval that provably holds exactly one of its roots. All
comparisons, multiplicities and signs reduce to gcds and Sturm counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from .linalg import ExactMatrix, charpoly
from .poly import (
    DEFAULT_WIDTH,
    BiPoly,
    IsolatingInterval,
    UniPoly,
    _count,
    bi_substitute,
    isolate_smallest_root,
    root_bound,
    sturm_chain,
    sturm_count,
    uni_gcd,
)
from .scalar import as_fraction

COMPARE_BUDGET = 64


@dataclass(frozen=True)
class AlgebraicScalar:
    interval: IsolatingInterval

    @classmethod
    def from_rational(cls, r) -> "AlgebraicScalar":
        r = as_fraction(r)
        return cls(IsolatingInterval(r - 1, r, UniPoly((-r, 1)), r))

    @property
    def poly(self) -> UniPoly:
        return self.interval.poly

    @property
    def lo(self) -> Fraction:
        return self.interval.lo

    @property
    def hi(self) -> Fraction:
        return self.interval.hi

    @property
    def exact(self) -> Optional[Fraction]:
        return self.interval.exact

    def refine(self, width) -> "AlgebraicScalar":
        return AlgebraicScalar(self.interval.refine(width))

    def halve(self) -> "AlgebraicScalar":
        return AlgebraicScalar(self.interval.bisect_once())

    def __float__(self):
        return self.interval.midpoint()

    def __str__(self):
        return str(self.interval)


def _as_algebraic(x) -> AlgebraicScalar:
    if isinstance(x, AlgebraicScalar):
        return x
    if isinstance(x, IsolatingInterval):
        return AlgebraicScalar(x)
    return AlgebraicScalar.from_rational(x)


def _has_common_root(x: AlgebraicScalar, y: AlgebraicScalar) -> bool:
    lo, hi = max(x.lo, y.lo), min(x.hi, y.hi)
    if lo >= hi:
        return False
    g = uni_gcd(x.poly, y.poly)
    if g.degree < 1:
        return False
    return _count(sturm_chain(g), lo, hi) >= 1


def compare(x, y, budget: int = COMPARE_BUDGET) -> int:
    """Return -1, 0 or 1 as ``x < y``, ``x == y`` or ``x > y``.

    Bisects the wider interval until the two separate; after ``budget``
    rounds a gcd test settles equality, so the loop always terminates.
    """
    x, y = _as_algebraic(x), _as_algebraic(y)
    if x.exact is not None and y.exact is not None:
        return (x.exact > y.exact) - (x.exact < y.exact)
    steps = 0
    while True:
        # x <= x.hi <= y.lo < y
        if x.hi <= y.lo:
            return -1
        if y.hi <= x.lo:
            return 1
        if steps == budget and _has_common_root(x, y):
            return 0
        steps += 1
        if x.hi - x.lo >= y.hi - y.lo:
            x = x.halve()
        else:
            y = y.halve()


def strict_less(x, y, budget: int = COMPARE_BUDGET) -> bool:
    return compare(x, y, budget) < 0


def algebraic_equal(x, y, budget: int = COMPARE_BUDGET) -> bool:
    return compare(x, y, budget) == 0


def is_root(lam: AlgebraicScalar, p: UniPoly) -> bool:
    """Whether the algebraic number ``lam`` is a root of ``p``."""
    if p.is_zero():
        return True
    if lam.exact is not None:
        return p(lam.exact) == 0
    g = uni_gcd(p, lam.poly)
    if g.degree < 1:
        return False
    return _count(sturm_chain(g), lam.lo, lam.hi) >= 1


def multiplicity(lam, p: UniPoly) -> int:
    """Multiplicity of ``lam`` as a root of ``p``, via the chain
    ``p, gcd(p, p'), gcd(g, g'), ...``."""
    lam = _as_algebraic(lam)
    m = 0
    g = p
    while g.degree >= 1 and is_root(lam, g):
        m += 1
        g = uni_gcd(g, g.derivative())
    return m


def _hermitian_charpoly(H: ExactMatrix) -> UniPoly:
    if not H.is_hermitian():
        raise ValueError("matrix is not Hermitian")
    return charpoly(H)


def smallest_eigenvalue(H: ExactMatrix, width=DEFAULT_WIDTH) -> AlgebraicScalar:
    p = _hermitian_charpoly(H)
    return AlgebraicScalar(isolate_smallest_root(p, -root_bound(p), width))


def shifted_rank(H: ExactMatrix, lam) -> int:
    """``rank(H - lam I)`` for Hermitian ``H``."""
    p = _hermitian_charpoly(H)
    return H.rows - multiplicity(lam, p)


def shifted_psd(H: ExactMatrix, lam, width=DEFAULT_WIDTH) -> bool:
    """Whether ``H - lam I`` is positive semidefinite."""
    return compare(lam, smallest_eigenvalue(H, width)) <= 0


def sign(lam) -> int:
    return compare(lam, 0)


# -- positivity scripts ------------------------------------------------------


@dataclass(frozen=True)
class FactorOutS:
    """Target equals ``constant * s * quotient`` with ``s = a^2 + b^2``."""

    constant: Fraction = Fraction(1)


@dataclass(frozen=True)
class SplitSquares:
    """Current form minus ``sum w |L|^2`` equals ``remainder`` (in s, r)."""

    squares: tuple = ()
    remainder: Optional[BiPoly] = None


@dataclass(frozen=True)
class AffineLowerBoundInR:
    """Bound an expression affine in ``r`` using ``|r| <= 2 t``, ``s = t^2``."""


@dataclass(frozen=True)
class UnivariatePositive:
    """Terminal polynomial, up to a positive factor, is positive on ``[0, oo)``."""

    expected: UniPoly


Step = Union[FactorOutS, SplitSquares, AffineLowerBoundInR, UnivariatePositive]


@dataclass(frozen=True)
class PositivityScript:
    name: str
    target: BiPoly
    steps: tuple


@dataclass
class ScriptResult:
    name: str
    passed: bool
    log: list[str] = field(default_factory=list)
    terminal: Optional[UniPoly] = None
    failed_step: Optional[str] = None
    residual: Any = None
    requires_nonzero_alpha: bool = False

    @property
    def conclusion(self) -> str:
        if not self.passed:
            return f"{self.name}: FAILED at {self.failed_step}"
        scope = "alpha != 0" if self.requires_nonzero_alpha else "all alpha"
        return f"{self.name} > 0 for {scope}"


def _s_ab() -> BiPoly:
    a, b = BiPoly.generators()
    return a * a + b * b


def _sr_split(expr: BiPoly):
    """Split an (s, r) polynomial as ``A(s) + B(s) r``; None if not affine in r."""
    a_coeffs: dict = {}
    b_coeffs: dict = {}
    for (i, j), c in expr.terms.items():
        if not c.is_rational():
            raise ValueError(f"non-real coefficient {c} on s^{i} r^{j}")
        if j == 0:
            a_coeffs[i] = c.as_rational()
        elif j == 1:
            b_coeffs[i] = c.as_rational()
        else:
            return None
    def to_poly(d):
        n = max(d, default=-1) + 1
        return UniPoly(d.get(k, 0) for k in range(n))
    return to_poly(a_coeffs), to_poly(b_coeffs)


def run_positivity_script(script: PositivityScript) -> ScriptResult:
    res = ScriptResult(script.name, False)
    state: Any = script.target
    for idx, step in enumerate(script.steps):
        label = f"step {idx + 1} {type(step).__name__}"
        if isinstance(step, FactorOutS):
            c = as_fraction(step.constant)
            if c <= 0 or not isinstance(state, BiPoly) or state.names != ("a", "b"):
                res.failed_step, res.residual = label, state
                return res
            try:
                quot = state.divide_exact(_s_ab())
            except ValueError as exc:
                res.failed_step, res.residual = label, str(exc)
                return res
            state = quot * (1 / c)
            res.requires_nonzero_alpha = True
            res.log.append(f"{label}: target = {c} * s * ({state})")
        elif isinstance(step, SplitSquares):
            if not isinstance(state, BiPoly) or state.names != ("a", "b") or step.remainder is None:
                res.failed_step, res.residual = label, state
                return res
            diff = state - bi_substitute(step.remainder)
            for w, form in step.squares:
                w = as_fraction(w)
                if w <= 0:
                    res.failed_step, res.residual = label, f"nonpositive weight {w}"
                    return res
                diff = diff - form * form.conj() * w
            if not diff.is_zero():
                res.failed_step, res.residual = label, diff
                return res
            sq = " + ".join(f"{w}|{f}|^2" for w, f in step.squares) or "(no squares)"
            res.log.append(f"{label}: = {sq} + [{step.remainder}]")
            state = step.remainder
        elif isinstance(step, AffineLowerBoundInR):
            if not isinstance(state, BiPoly) or state.names != ("s", "r"):
                res.failed_step, res.residual = label, state
                return res
            try:
                split = _sr_split(state)
            except ValueError as exc:
                res.failed_step, res.residual = label, str(exc)
                return res
            if split is None:
                res.failed_step, res.residual = label, "remainder is not affine in r"
                return res
            A, B = split
            t_sq = UniPoly((0, 0, 1))
            if B.is_zero():
                state = A.compose(t_sq)
                res.log.append(f"{label}: no r term; q(t) = {state.pretty('t')}")
                continue
            if all(c >= 0 for c in B.coeffs):
                # B(s) >= 0 and r >= -2t
                r_sub = UniPoly((0, -2))
                bound = "r >= -2|alpha|"
            elif all(c <= 0 for c in B.coeffs):
                r_sub = UniPoly((0, 2))
                bound = "r <= 2|alpha|"
            else:
                res.failed_step, res.residual = label, f"r-coefficient {B.pretty('s')} has no fixed sign"
                return res
            state = A.compose(t_sq) + B.compose(t_sq) * r_sub
            res.log.append(f"{label}: using {bound}, q(t) = {state.pretty('t')}")
        elif isinstance(step, UnivariatePositive):
            if not isinstance(state, UniPoly) or state.is_zero():
                res.failed_step, res.residual = label, state
                return res
            exp = step.expected
            factor = state.leading() / exp.leading() if not exp.is_zero() else Fraction(0)
            if factor <= 0 or state != exp * factor:
                res.failed_step, res.residual = label, state - exp * factor if factor else state
                return res
            if exp.leading() <= 0 or exp(0) <= 0:
                res.failed_step, res.residual = label, "nonpositive leading or constant coefficient"
                return res
            n_pos = sturm_count(exp, 0, None)
            n_real = sturm_count(exp, None, None)
            if n_pos != 0:
                res.failed_step, res.residual = label, f"{n_pos} roots in (0, oo)"
                return res
            res.terminal = exp
            res.log.append(
                f"{label}: q(t) = {factor} * ({exp.pretty('t')}); roots in (0,oo): {n_pos}; real roots: {n_real}"
            )
        else:
            res.failed_step = f"{label}: unknown step"
            return res
    if res.terminal is None:
        res.failed_step = "script ended without UnivariatePositive"
        return res
    res.passed = True
    return res


# -- reports -----------------------------------------------------------------


@dataclass
class Check:
    name: str
    verdict: str
    evidence: str
    exact: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"check": self.name, "verdict": self.verdict, "evidence": self.evidence}
        if self.exact:
            out["exact"] = self.exact
        return out


@dataclass
class CertificateReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, evidence: str, exact: Optional[dict] = None) -> bool:
        self.checks.append(Check(name, "pass" if ok else "fail", evidence, exact))
        return ok

    def skip(self, name: str, reason: str):
        self.checks.append(Check(name, "skip", reason))

    def extend(self, other: "CertificateReport"):
        self.checks.extend(other.checks)

    @property
    def overall(self) -> bool:
        return all(c.verdict != "fail" for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == "fail"]

    def first_failure(self) -> Optional[Check]:
        fails = self.failures
        return fails[0] if fails else None

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.checks]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_text(self) -> str:
        width = max((len(c.name) for c in self.checks), default=10)
        lines = [f"{'check'.ljust(width)}  verdict  evidence"]
        for c in self.checks:
            lines.append(f"{c.name.ljust(width)}  {c.verdict.ljust(7)}  {c.evidence}")
        n_fail = len(self.failures)
        lines.append(f"{len(self.checks)} checks, {n_fail} failures")
        lines.append(f"overall: {'pass' if self.overall else 'fail'}")
        return "\n".join(lines)
