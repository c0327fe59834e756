"""Product vectors, the states sigma_1, sigma_2, rho_1, and the shifted state
rho = rho_1 - lambda Id that violates the witness."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import ExactMatrix
from .scalar import I, SQRT2, Cyc8
from .tensor import kron

DIMS = (2, 2, 2)


def alphas() -> list[Cyc8]:
    z = Cyc8.zeta
    # sqrt2 (1 +- i) are 2 z^k for odd k
    return [Cyc8(1), I, Cyc8(-1), -I, 2 * z(1), 2 * z(7), 2 * z(3), 2 * z(5)]


def alphas_from_radicals() -> list[Cyc8]:
    one = Cyc8(1)
    return [
        one, I, -one, -I,
        SQRT2 * (one + I), SQRT2 * (one - I), -SQRT2 * (one - I), -SQRT2 * (one + I),
    ]


def alpha_encoding_ok() -> bool:
    """Check the z-power encoding against the radical forms, and their squares."""
    enc, rad = alphas(), alphas_from_radicals()
    return all(e == r and e * e == r * r for e, r in zip(enc, rad))


def x_vector(alpha) -> list[Cyc8]:
    alpha = Cyc8.coerce(alpha)
    return [Cyc8(1), alpha.conj()]


def y_vector(alpha) -> list[Cyc8]:
    a = Cyc8.coerce(alpha)
    ac = a.conj()
    n2 = a * ac
    return [
        2 * a - 2 * a * a,
        4 * a - 2 * a * a - 2 * n2 + 3 * a * n2,
        -4 - 2 * n2,
        -2 * ac - n2,
    ]


def norm_sq(v) -> Cyc8:
    """``<v|v>``; lies in the real subfield Q(sqrt 2)."""
    return sum((x * x.conj() for x in v), Cyc8())


@dataclass(frozen=True)
class ProductVectors:
    alphas: tuple
    x: tuple
    y: tuple
    z: tuple

    def conjugated_family(self) -> list[list[Cyc8]]:
        """``conj(x_k) (x) y_k``."""
        return [kron([c.conj() for c in xk], yk) for xk, yk in zip(self.x, self.y)]


def build_product_vectors() -> ProductVectors:
    al = alphas()
    xs = [x_vector(a) for a in al]
    ys = [y_vector(a) for a in al]
    zs = [kron(x, y) for x, y in zip(xs, ys)]
    return ProductVectors(tuple(al), tuple(map(tuple, xs)), tuple(map(tuple, ys)), tuple(map(tuple, zs)))


def _projector_sum(vectors) -> ExactMatrix:
    out = ExactMatrix.zeros(8, dims=DIMS)
    for v in vectors:
        out = out + ExactMatrix.outer(v, dims=DIMS)
    return out.with_dims(DIMS)


@dataclass(frozen=True)
class ConstructionBundle:
    vectors: ProductVectors
    norm_sum_1: Fraction
    norm_sum_2: Fraction
    sigma1: ExactMatrix
    sigma2: ExactMatrix
    rho1: ExactMatrix


def build_states(vectors: ProductVectors | None = None) -> ConstructionBundle:
    vectors = vectors or build_product_vectors()
    z = vectors.z
    n1 = sum((norm_sq(v) for v in z[:4]), Cyc8()).as_rational()
    n2 = sum((norm_sq(v) for v in z[4:]), Cyc8()).as_rational()
    sigma1 = _projector_sum(z[:4]).scale(Fraction(1, 848))
    sigma2 = _projector_sum(z[4:]).scale(Fraction(1, 28160))
    rho1 = (sigma1.scale(Fraction(1, 12)) + sigma2.scale(Fraction(11, 12))).with_dims(DIMS)
    return ConstructionBundle(vectors, n1, n2, sigma1, sigma2, rho1)


def segment_state(mu, rho1: ExactMatrix) -> ExactMatrix:
    """``(1 - mu) Id/8 + mu rho_1``; ``mu`` may lie outside ``[0, 1]``."""
    mu = Fraction(mu)
    center = ExactMatrix.identity(8, DIMS).scale(Fraction(1, 8))
    return (center.scale(1 - mu) + rho1.scale(mu)).with_dims(DIMS)
