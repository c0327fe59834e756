"""Symbolic leading principal minors of the B and C map images of
``P_alpha = [[1, conj(alpha)], [alpha, |alpha|^2]]`` and the scripts that
certify their positivity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certify import (
    AffineLowerBoundInR,
    FactorOutS,
    PositivityScript,
    ScriptResult,
    SplitSquares,
    UnivariatePositive,
    run_positivity_script,
)
from .linalg import ExactMatrix, PSDCertificate, leading_principal_minors, psd_certificate
from .poly import BiPoly, UniPoly, alpha_generators, bi_realness_check, bi_substitute
from .woronowicz import map_entries, map_image

SR = ("s", "r")
WHICH = {"B": "B_CA", "C": "C_AB"}


def _sr():
    return BiPoly.generators(SR)


def displayed_minors(which: str) -> list[BiPoly]:
    """Closed forms in ``s = |alpha|^2`` and ``r = alpha + conj(alpha)``.

    ``|alpha - 1|^2 = s - r + 1`` and ``alpha^2 + conj(alpha)^2 = r^2 - 2 s``.
    """
    s, r = _sr()
    one = BiPoly.const(1, SR)
    if which == "B":
        return [
            one * 4,
            (one + s * 4) * 4,
            (one + s * 14 + s * s * 4) * 4,
            s * 6 * (one + s * 14 + s * s * 2 + s * r * 2),
        ]
    if which == "C":
        dist = s - r + 1
        return [
            dist * 2 + 2,
            s * 8 * (dist + 1),
            s * 2 * (dist * 3 + 11),
            s * 2 * (
                one * 12 - r * 16 + (r * r - s * 2) * 3 - s * r * 9 + s * 36 + s * s * 6
            ),
        ]
    raise ValueError(f"which must be 'B' or 'C', got {which!r}")


def symbolic_image(which: str) -> list[list[BiPoly]]:
    alpha, alpha_bar, s = alpha_generators()
    one = BiPoly.const(1)
    return map_entries(WHICH[which], one, alpha_bar, alpha, s)


@dataclass
class MinorCheck:
    name: str
    computed: BiPoly
    expected: BiPoly
    real: bool
    residual: BiPoly

    @property
    def ok(self) -> bool:
        return self.real and self.residual.is_zero()


def minor_polynomials(which: str) -> list[MinorCheck]:
    minors = leading_principal_minors(symbolic_image(which))
    out = []
    for k, (m, shown) in enumerate(zip(minors, displayed_minors(which)), start=1):
        try:
            bi_realness_check(m)
            real = True
        except ValueError:
            real = False
        expected = bi_substitute(shown)
        out.append(MinorCheck(f"Delta^{which}_{k}", m, shown, real, m - expected))
    return out


def builtin_positivity_scripts() -> list[PositivityScript]:
    alpha, alpha_bar, s_ab = alpha_generators()
    s, r = _sr()
    one = BiPoly.const(1, SR)
    shift = alpha - 1
    t = UniPoly.x()
    B = displayed_minors("B")
    C = displayed_minors("C")
    tgt = lambda e: bi_substitute(e)  # noqa: E731
    scripts = [
        PositivityScript("Delta^B_1", tgt(B[0]), (
            SplitSquares((), one * 4), AffineLowerBoundInR(), UnivariatePositive(UniPoly((4,))),
        )),
        PositivityScript("Delta^B_2", tgt(B[1]), (
            SplitSquares((), (one + s * 4) * 4), AffineLowerBoundInR(),
            UnivariatePositive(1 + 4 * t ** 2),
        )),
        PositivityScript("Delta^B_3", tgt(B[2]), (
            SplitSquares((), (one + s * 14 + s * s * 4) * 4), AffineLowerBoundInR(),
            UnivariatePositive(1 + 14 * t ** 2 + 4 * t ** 4),
        )),
        PositivityScript("Delta^B_4", tgt(B[3]), (
            FactorOutS(Fraction(6)),
            SplitSquares((), one + s * 14 + s * s * 2 + s * r * 2),
            AffineLowerBoundInR(),
            UnivariatePositive(2 * t ** 4 - 4 * t ** 3 + 14 * t ** 2 + 1),
        )),
        PositivityScript("Delta^C_1", tgt(C[0]), (
            SplitSquares(((Fraction(2), shift),), one * 2), AffineLowerBoundInR(),
            UnivariatePositive(UniPoly((2,))),
        )),
        PositivityScript("Delta^C_2", tgt(C[1]), (
            FactorOutS(Fraction(8)),
            SplitSquares(((Fraction(1), shift),), one), AffineLowerBoundInR(),
            UnivariatePositive(UniPoly((1,))),
        )),
        PositivityScript("Delta^C_3", tgt(C[2]), (
            FactorOutS(Fraction(2)),
            SplitSquares(((Fraction(3), shift),), one * 11), AffineLowerBoundInR(),
            UnivariatePositive(UniPoly((11,))),
        )),
        PositivityScript("Delta^C_4", tgt(C[3]), (
            FactorOutS(Fraction(2)),
            SplitSquares(
                (
                    (Fraction(1), alpha * 3 + alpha_bar - s_ab * Fraction(9, 4)),
                    (Fraction(15, 16), s_ab),
                ),
                s * 26 - r * 16 + 12,
            ),
            AffineLowerBoundInR(),
            UnivariatePositive(13 * t ** 2 - 16 * t + 6),
        )),
    ]
    return scripts


# boundary images; E_11 is not covered by the alpha-family and is checked directly
BOUNDARY_INPUTS = {
    "P_0": ExactMatrix([[1, 0], [0, 0]]),
    "E_11": ExactMatrix([[0, 0], [0, 1]]),
}


def boundary_psd_checks() -> list[tuple[str, PSDCertificate]]:
    out = []
    for label in ("P_0", "E_11"):
        for which in ("B", "C"):
            name = f"phi^{WHICH[which]}({label})"
            out.append((name, psd_certificate(map_image(WHICH[which], BOUNDARY_INPUTS[label]))))
    return out


def run_scripts() -> list[ScriptResult]:
    return [run_positivity_script(s) for s in builtin_positivity_scripts()]
