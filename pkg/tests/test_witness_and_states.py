import random
from fractions import Fraction

import pytest

from qgev import golden
from qgev.certify import shifted_rank, smallest_eigenvalue
from qgev.construction import (
    alpha_encoding_ok,
    alphas,
    build_product_vectors,
    build_states,
    norm_sq,
    segment_state,
    x_vector,
    y_vector,
)
from qgev.linalg import ExactMatrix, ShapeError, exact_rank, psd_certificate
from qgev.minors import boundary_psd_checks, displayed_minors, minor_polynomials
from qgev.pipeline import GAMMA, VerifyConfig, build_final_state, verify_all
from qgev.poly import BiPoly, integer_coeffs
from qgev.scalar import I, SQRT2, Cyc8
from qgev.tensor import choi_apply, pairing, partial_transpose
from qgev.woronowicz import MAPS, build_witness, map_image, partition


@pytest.fixture(scope="module")
def W():
    return build_witness().W


@pytest.fixture(scope="module")
def states():
    return build_states()


def test_witness_matches_stored_copy(W):
    assert W == golden.witness()
    assert W.trace() == 17
    assert W[0, 0] == 4 and W[0, 1] == -2


def test_witness_has_eigenvalue_minus_one(W):
    cert = psd_certificate(W)
    assert not cert.psd
    assert cert.negative_root.exact == -1


def test_maps_agree_with_choi_on_random_inputs(W):
    rng = random.Random(0)
    for _ in range(20):
        X = ExactMatrix([[Cyc8.from_gauss(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(2)] for _ in range(2)])
        for which in MAPS:
            assert map_image(which, X) == choi_apply(W, partition(which), X)


def test_map_image_shape_check():
    with pytest.raises(ShapeError):
        map_image("A_BC", ExactMatrix.identity(3))
    with pytest.raises(ValueError):
        map_image("Z", ExactMatrix.identity(2))


def test_alpha_encoding():
    assert alpha_encoding_ok()
    a = alphas()
    assert a[4] == SQRT2 * (1 + I)
    assert all(x.norm() > 0 for x in a)


def test_product_vectors_have_zero_pairing(W):
    vecs = build_product_vectors()
    Wg = partial_transpose(W, GAMMA)
    assert all(W.quadratic_form(z) == 0 for z in vecs.z)
    assert all(Wg.quadratic_form(z) == 0 for z in vecs.conjugated_family())
    assert exact_rank(ExactMatrix.from_columns(vecs.z)) == 8


def test_y_vector_at_one():
    assert y_vector(1) == [0, 3, -6, -3]
    assert x_vector(I) == [1, -I]
    assert norm_sq(y_vector(1)) == 54


def test_states(states):
    assert states.norm_sum_1 == 848 and states.norm_sum_2 == 28160
    assert states.rho1 == golden.rho1()
    assert states.rho1[0, 0] == Fraction(23, 1696)
    assert states.rho1[0, 1] == Fraction(17, 530)
    assert states.sigma1.trace() == 1 and states.sigma2.trace() == 1


def test_segment_state(states, W):
    rho1 = states.rho1
    assert segment_state(0, rho1) == ExactMatrix.identity(8, (2, 2, 2)).scale(Fraction(1, 8))
    assert segment_state(1, rho1) == rho1
    rng = random.Random(4)
    for _ in range(10):
        mu = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
        assert pairing(segment_state(mu, rho1), W) == (1 - mu) * Fraction(17, 8)
    assert pairing(segment_state(Fraction(1000, 999), rho1), W).sign() < 0


def test_minor_identities():
    for which in ("B", "C"):
        checks = minor_polynomials(which)
        assert len(checks) == 4
        assert all(c.ok for c in checks), [str(c.residual) for c in checks]
    assert displayed_minors("B")[0] == BiPoly.const(4, ("s", "r"))


def test_delta_c2_at_one():
    computed = minor_polynomials("C")[1].computed
    assert computed(1, 0) == 8


def test_minor_identity_detects_wrong_display():
    m = minor_polynomials("B")[1]
    wrong = m.expected + BiPoly.const(1, ("s", "r"))
    from qgev.poly import bi_substitute

    assert not (m.computed - bi_substitute(wrong)).is_zero()


def test_boundary_images_psd():
    checks = boundary_psd_checks()
    assert len(checks) == 4
    assert all(cert.psd for _, cert in checks)


def test_final_state(states, W):
    final = build_final_state(states.rho1, W)
    assert (final.rank_rho, final.rank_rho_gamma) == (7, 8)
    assert final.psd_rho and final.psd_rho_gamma
    assert final.pairing_rho1 == 0 and final.trace_w == 17
    assert Fraction(122, 10**6) < final.lam.lo < final.lam.hi < Fraction(124, 10**6)
    assert final.lam.hi - final.lam.lo <= Fraction(1, 10**8)


def test_reference_polynomials(states):
    from qgev.linalg import charpoly
    from qgev.poly import primitive_integer_form

    p = primitive_integer_form(charpoly(states.rho1))
    assert integer_coeffs(p)[0] == 882
    assert integer_coeffs(p)[-1] == 5957113683640320000
    q = primitive_integer_form(charpoly(partial_transpose(states.rho1, GAMMA)))
    assert integer_coeffs(q)[0] == 2025
    assert integer_coeffs(q)[-1] == 11914227367280640000


def test_smallest_eigenvalue_of_gamma(states):
    lam = smallest_eigenvalue(partial_transpose(states.rho1, GAMMA))
    assert 3.4e-4 < float(lam) < 3.6e-4


def test_verify_samples_zero_skips():
    rep = verify_all(VerifyConfig(samples=0))
    skipped = [c.name for c in rep.checks if c.verdict == "skip"]
    assert skipped == [
        "sampling.block_positivity.A",
        "sampling.block_positivity.B",
        "sampling.block_positivity.C",
    ]
    assert rep.overall
    assert rep.to_text().endswith("overall: pass")


def test_verify_is_deterministic():
    a = verify_all(VerifyConfig(samples=20, seed=5)).dumps()
    b = verify_all(VerifyConfig(samples=20, seed=5)).dumps()
    assert a == b
