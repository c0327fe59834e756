"""End-to-end certificate chain.

Checks are emitted in dependency order, so the first failing entry of a
report points at the earliest broken layer.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import construction, golden, minors
from .certify import (
    AlgebraicScalar,
    CertificateReport,
    compare,
    multiplicity,
    shifted_psd,
    shifted_rank,
    smallest_eigenvalue,
)
from .linalg import ExactMatrix, charpoly, charpoly_coeffs, determinant, exact_rank, psd_certificate
from .poly import DEFAULT_WIDTH, UniPoly, primitive_integer_form, sturm_count, uni_gcd
from .scalar import I, ONE, SQRT2, ZETA, Cyc8
from .tensor import PartitionSpec, block_positivity_sample, choi_apply, pairing, partial_transpose
from .woronowicz import DIMS, MAPS, build_witness, map_image, partition

GAMMA = PartitionSpec(DIMS, (1,))
LAMBDA_RHO1_WINDOW = (Fraction(122, 10**6), Fraction(124, 10**6))
LAMBDA_GAMMA_WINDOW = (Fraction(34, 10**5), Fraction(36, 10**5))


def default_width() -> Fraction:
    env = os.environ.get("QGEV_WIDTH")
    if env:
        w = Fraction(env)
        if w <= 0:
            raise ValueError("QGEV_WIDTH must be positive")
        return w
    return DEFAULT_WIDTH


@dataclass(frozen=True)
class VerifyConfig:
    width: Fraction = DEFAULT_WIDTH
    samples: int = 1000
    seed: int = 0


@dataclass(frozen=True)
class FinalState:
    rho1: ExactMatrix
    lam: AlgebraicScalar
    lam_gamma: AlgebraicScalar
    rank_rho: int
    rank_rho_gamma: int
    psd_rho: bool
    psd_rho_gamma: bool
    pairing_rho1: Cyc8
    trace_w: Cyc8


def _units(n: int):
    for i in range(n):
        for j in range(n):
            yield (i, j), ExactMatrix([[1 if (a, b) == (i, j) else 0 for b in range(n)] for a in range(n)])


def _first_diff(a: ExactMatrix, b: ExactMatrix) -> str:
    diffs = a.differences(b)
    if not diffs:
        return "all entries equal"
    i, j = diffs[0]
    return (
        f"{len(diffs)} differing entries; first at ({i + 1},{j + 1}): "
        f"constructed {a[i, j]} vs reference {b[i, j]}"
    )


def _charpoly_consistent(M: ExactMatrix) -> bool:
    c = charpoly_coeffs(M)
    n = M.rows
    sign = 1 if n % 2 == 0 else -1
    return c[0] == determinant(M) * sign and c[n - 1] == -M.trace()


def _in_window(lam: AlgebraicScalar, window) -> bool:
    lo, hi = window
    return lo < lam.lo and lam.hi < hi


def _poly_diff(a: UniPoly, b: UniPoly) -> str:
    n = max(len(a.coeffs), len(b.coeffs))
    for k in range(n):
        x = a.coeffs[k] if k < len(a.coeffs) else 0
        y = b.coeffs[k] if k < len(b.coeffs) else 0
        if x != y:
            return f"coefficient of x^{k}: computed {x} vs reference {y}"
    return "all coefficients equal"


def build_final_state(rho1: ExactMatrix, W: ExactMatrix, width=DEFAULT_WIDTH) -> FinalState:
    """Certify the claims about ``rho = rho_1 - lambda Id`` without ever
    forming its irrational entries."""
    rho1_g = partial_transpose(rho1, GAMMA)
    lam = smallest_eigenvalue(rho1, width)
    lam_g = smallest_eigenvalue(rho1_g, width)
    return FinalState(
        rho1=rho1,
        lam=lam,
        lam_gamma=lam_g,
        rank_rho=shifted_rank(rho1, lam),
        rank_rho_gamma=shifted_rank(rho1_g, lam),
        psd_rho=shifted_psd(rho1, lam, width),
        psd_rho_gamma=shifted_psd(rho1_g, lam, width),
        pairing_rho1=pairing(rho1, W),
        trace_w=pairing(ExactMatrix.identity(8, DIMS), W),
    )


def verify_all(
    config: Optional[VerifyConfig] = None,
    *,
    witness: Optional[ExactMatrix] = None,
    reference_witness: Optional[ExactMatrix] = None,
    reference_rho1: Optional[ExactMatrix] = None,
    reference_charpolys: Optional[tuple[UniPoly, UniPoly]] = None,
) -> CertificateReport:
    """Run every check. The keyword overrides replace the constructed witness
    or the stored reference objects; they exist for negative controls."""
    cfg = config or VerifyConfig()
    rep = CertificateReport()

    # -- arithmetic self-checks
    rep.add(
        "scalar.field_identities",
        ZETA ** 4 == -1 and I * I == -1 and SQRT2 * SQRT2 == 2 and ZETA * ZETA.inverse() == 1,
        "z^4 = -1, i^2 = -1, sqrt2^2 = 2, z * z^-1 = 1",
    )
    rep.add(
        "scalar.alpha_encoding",
        construction.alpha_encoding_ok(),
        "alpha_5..alpha_8 as 2z, 2z^7, 2z^3, 2z^5 equal +-sqrt2(1 +- i), also after squaring",
    )
    diag = ExactMatrix.diag([2, 3])
    rep.add(
        "linalg.smoke",
        determinant(diag) == 6 and charpoly(diag) == UniPoly((6, -5, 1)) and exact_rank(diag) == 2,
        "det diag(2,3) = 6, charpoly x^2 - 5x + 6, rank 2",
    )

    # -- witness
    W = witness if witness is not None else build_witness().W
    W_reference = reference_witness if reference_witness is not None else golden.witness()
    rep.add("witness.reference_match", W == W_reference, _first_diff(W, W_reference))
    rep.add("witness.self_adjoint", W.is_hermitian(), "W equals its conjugate transpose")
    tr = W.trace()
    rep.add("witness.trace", tr == 17, f"Tr W = {tr}", {"trace": str(tr)})
    if W.is_hermitian():
        cert = psd_certificate(W)
        rep.add("witness.not_psd", not cert.psd, cert.evidence())
    else:
        rep.add("witness.not_psd", False, "W is not Hermitian")
    rep.add("witness.charpoly_consistency", _charpoly_consistent(W), "constant term = det, x^7 term = -trace")

    # -- closed-form maps vs Choi blocks
    for which in MAPS:
        spec = partition(which)
        bad = [ij for ij, E in _units(2) if choi_apply(W, spec, E) != map_image(which, E)]
        rep.add(
            f"maps.{which}.choi_consistency",
            not bad,
            "closed form equals choi_apply on all 4 matrix units" if not bad else f"mismatch on units {bad}",
        )

    # -- symbolic minors
    for which in ("B", "C"):
        for m in minors.minor_polynomials(which):
            rep.add(
                f"minors.{m.name}.identity",
                m.ok,
                f"= {m.expected}" if m.ok else f"real={m.real}; residual {m.residual}",
            )

    # -- positivity scripts and boundary cases
    for res in minors.run_scripts():
        ev = res.conclusion
        if res.terminal is not None:
            ev += f"; terminal {res.terminal.pretty('t')}"
        if not res.passed:
            ev += f"; residual {res.residual}"
        rep.add(f"positivity.{res.name}", res.passed, ev)
    for name, cert in minors.boundary_psd_checks():
        note = " (E_11 direction checked in addition to the alpha family)" if "E_11" in name else ""
        rep.add(f"positivity.boundary.{name}", cert.psd, cert.evidence() + note)

    # -- randomized block positivity
    for which in MAPS:
        spec = partition(which)
        name = f"sampling.block_positivity.{spec.label()}"
        if cfg.samples <= 0:
            rep.skip(name, "samples = 0")
            continue
        rng = random.Random(f"{cfg.seed}:{spec.label()}")
        res = block_positivity_sample(W, spec, cfg.samples, rng=rng)
        rep.add(name, res.all_nonnegative, f"seed {cfg.seed}: {res}")

    # -- product vectors
    vecs = construction.build_product_vectors()
    W_g = partial_transpose(W, GAMMA)
    vals = [W.quadratic_form(z) for z in vecs.z]
    rep.add("vectors.zero_pairing_W", all(v == 0 for v in vals), f"<z_k|W|z_k> = {[str(v) for v in vals]}")
    conj_family = vecs.conjugated_family()
    vals_g = [W_g.quadratic_form(z) for z in conj_family]
    rep.add(
        "vectors.zero_pairing_W_gamma",
        all(v == 0 for v in vals_g),
        f"<conj(x_k) y_k|W^G|conj(x_k) y_k> = {[str(v) for v in vals_g]}",
    )
    r1 = exact_rank(ExactMatrix.from_columns(vecs.z))
    r2 = exact_rank(ExactMatrix.from_columns(conj_family))
    rep.add("vectors.span", r1 == 8, f"rank of {{x_k (x) y_k}} = {r1}")
    rep.add("vectors.span_conjugated", r2 == 8, f"rank of {{conj(x_k) (x) y_k}} = {r2}")

    # -- states
    st = construction.build_states(vecs)
    rep.add(
        "states.norm_sums",
        st.norm_sum_1 == 848 and st.norm_sum_2 == 28160,
        f"sum_1..4 |z_k|^2 = {st.norm_sum_1}, sum_5..8 |z_k|^2 = {st.norm_sum_2}",
    )
    rho1 = st.rho1
    rho1_reference = reference_rho1 if reference_rho1 is not None else golden.rho1()
    rep.add("states.rho1_reference_match", rho1 == rho1_reference, _first_diff(rho1, rho1_reference))
    traces = (st.sigma1.trace(), st.sigma2.trace(), rho1.trace())
    rep.add("states.traces", all(t == 1 for t in traces), f"Tr sigma1, sigma2, rho1 = {[str(t) for t in traces]}")
    rho1_g = partial_transpose(rho1, GAMMA)
    c1, c2 = psd_certificate(rho1), psd_certificate(rho1_g)
    rep.add("states.rho1_psd", c1.psd, c1.evidence())
    rep.add("states.rho1_gamma_psd", c2.psd, c2.evidence() + " (A-BC bi-PPT)")
    k1, k2 = exact_rank(rho1), exact_rank(rho1_g)
    rep.add("states.ranks", k1 == 8 and k2 == 8, f"rank rho1 = {k1}, rank rho1^G = {k2}")
    p1 = pairing(rho1, W)
    rep.add("states.pairing_rho1_W", p1 == 0, f"<rho1, W> = {p1}", {"pairing": str(p1)})

    # -- characteristic polynomials
    f1, f2 = charpoly(rho1), charpoly(rho1_g)
    g1, g2 = reference_charpolys if reference_charpolys is not None else (
        golden.charpoly_rho1(), golden.charpoly_rho1_gamma()
    )
    i1, i2 = primitive_integer_form(f1), primitive_integer_form(f2)
    rep.add("charpoly.rho1_reference_match", i1 == g1, _poly_diff(i1, g1), {"coeffs": [str(c) for c in i1.coeffs]})
    rep.add("charpoly.rho1_gamma_reference_match", i2 == g2, _poly_diff(i2, g2), {"coeffs": [str(c) for c in i2.coeffs]})
    rep.add(
        "charpoly.consistency",
        _charpoly_consistent(rho1) and _charpoly_consistent(rho1_g),
        "constant term = det and x^7 term = -trace, for rho1 and rho1^G",
    )

    # -- spectra
    pos, nonpos = sturm_count(f1, 0, None), sturm_count(f1, None, 0)
    rep.add("spectra.rho1_roots_positive", pos == 8 and nonpos == 0, f"roots in (0,oo): {pos}; in (-oo,0]: {nonpos}")
    pos_g, nonpos_g = sturm_count(f2, 0, None), sturm_count(f2, None, 0)
    rep.add(
        "spectra.rho1_gamma_roots_positive",
        pos_g == 8 and nonpos_g == 0,
        f"roots in (0,oo): {pos_g}; in (-oo,0]: {nonpos_g}",
    )
    g = uni_gcd(f1, f1.derivative())
    rep.add("spectra.rho1_squarefree", g == 1, f"gcd(f, f') = {g}")

    final = build_final_state(rho1, W, cfg.width)
    lam, lam_g = final.lam, final.lam_gamma
    rep.add(
        "spectra.lambda_rho1",
        _in_window(lam, LAMBDA_RHO1_WINDOW) and lam.hi - lam.lo <= cfg.width,
        f"lambda_rho1 in {lam}",
        {"lo": str(lam.lo), "hi": str(lam.hi)},
    )
    rep.add(
        "spectra.lambda_rho1_gamma",
        _in_window(lam_g, LAMBDA_GAMMA_WINDOW) and lam_g.hi - lam_g.lo <= cfg.width,
        f"lambda_rho1^G in {lam_g}",
        {"lo": str(lam_g.lo), "hi": str(lam_g.hi)},
    )
    ordered = compare(0, lam) < 0 and compare(lam, lam_g) < 0
    rep.add("spectra.ordering", ordered, "0 < lambda_rho1 < lambda_rho1^G")

    # -- the counterexample rho = rho1 - lambda Id
    rep.add(
        "final.rank_rho",
        final.rank_rho == 7,
        f"rank(rho1 - lambda I) = {final.rank_rho} (multiplicity {multiplicity(lam, f1)})",
    )
    rep.add("final.rank_rho_gamma", final.rank_rho_gamma == 8, f"rank(rho1^G - lambda I) = {final.rank_rho_gamma}")
    rep.add("final.rho_psd", final.psd_rho, "lambda <= lambda_min(rho1) (equality: kernel of dimension 1)")
    rep.add("final.rho_gamma_psd", final.psd_rho_gamma, "lambda < lambda_min(rho1^G): rho^G positive definite")
    negative = final.pairing_rho1 == 0 and final.trace_w == 17 and lam.lo >= 0
    rep.add(
        "final.witness_violation",
        negative,
        f"<rho, W> = <rho1, W> - lambda Tr W = {final.pairing_rho1} - {final.trace_w} lambda "
        f"= -17 lambda in [{-17 * lam.hi}, {-17 * lam.lo}) < 0",
        {"pairing_lo": str(-17 * lam.hi), "pairing_hi": str(-17 * lam.lo)},
    )
    tr_lo, tr_hi = 1 - 8 * lam.hi, 1 - 8 * lam.lo
    rep.add("final.trace", tr_lo > 0, f"Tr rho = 1 - 8 lambda in [{tr_lo}, {tr_hi})")
    mu_lo, mu_hi = 1 / tr_hi, 1 / tr_lo
    seg_ok = mu_lo > 1 and pairing(construction.segment_state(mu_lo, rho1), W).sign() < 0
    rep.add(
        "final.segment_annotation",
        seg_ok,
        f"rho / Tr rho = segment_state(mu) with mu = 1/(1 - 8 lambda) in ({float(mu_lo):.9f}, {float(mu_hi):.9f}]",
    )
    claims = [
        "final.rank_rho", "final.rank_rho_gamma", "final.rho_psd", "final.rho_gamma_psd",
        "final.witness_violation", "states.rho1_gamma_psd",
    ]
    ok = all(rep[c].verdict == "pass" for c in claims)
    rep.add(
        "final.verdict",
        ok,
        "PPT mixture that is not bi-separable" if ok else "counterexample not certified",
    )
    return rep
