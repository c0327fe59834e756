import random
from fractions import Fraction

import numpy as np
import pytest

from qgev.linalg import ExactMatrix, ShapeError
from qgev.scalar import Cyc8
from qgev.tensor import (
    MultiIndex,
    PartitionSpec,
    block_positivity_sample,
    choi_apply,
    choi_block,
    choi_from_blocks,
    kron,
    merged_product,
    mi_diamond,
    pairing,
    parse_subset,
    partial_transpose,
    transpose_subsystems,
)

DIMS_CHOICES = [(2, 2, 2), (2, 3), (3, 2), (2, 2), (2, 1, 3)]


def random_matrix(rng, n, dims=None):
    return ExactMatrix(
        [[Cyc8(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), 0, rng.randint(-2, 2), 0) for _ in range(n)]
         for _ in range(n)],
        dims,
    )


def random_spec(rng):
    dims = rng.choice(DIMS_CHOICES)
    n = len(dims)
    k = rng.randint(1, n - 1)
    return PartitionSpec(dims, tuple(rng.sample(range(1, n + 1), k)))


def as_array(M):
    return np.array([[x.to_complex() for x in row] for row in M.entries])


def test_parse_subset():
    assert parse_subset("A", 3) == (1,)
    assert parse_subset("CB", 3) == (2, 3)
    assert parse_subset("1,3", 3) == (1, 3)
    for bad in ("", "AA", "D", "4", "A-"):
        with pytest.raises(ValueError):
            parse_subset(bad, 3)


def test_partition_spec_validation():
    spec = PartitionSpec.parse((2, 2, 2), "B")
    assert spec.complement == (1, 3)
    assert spec.s_size == 2 and spec.t_size == 4
    assert spec.label() == "B"
    with pytest.raises(ValueError):
        PartitionSpec((2, 2, 2), ())
    with pytest.raises(ValueError):
        PartitionSpec((2, 2, 2), (1, 2, 3))


def test_diamond_example():
    dims = (2, 2, 2)
    i = MultiIndex.on(dims, (2,), (1,))
    k = MultiIndex.on(dims, (1, 3), (0, 1))
    merged = mi_diamond(i, k)
    assert str(merged) == "011"
    assert merged.linear() == 3
    assert PartitionSpec(dims, (2,)).merge_table[1][1] == 3
    with pytest.raises(ValueError):
        mi_diamond(i, i)


def test_kron_vectors_and_merged_product():
    assert kron([1, 2], [3, 4]) == [3, 4, 6, 8]
    spec = PartitionSpec((2, 2), (1,))
    assert merged_product([1, 2], [3, 4], spec) == kron([1, 2], [3, 4])
    spec2 = PartitionSpec((2, 2), (2,))
    assert merged_product([1, 2], [3, 4], spec2) == kron([3, 4], [1, 2])


def test_partial_transpose_of_diagonal_is_identity_map():
    D = ExactMatrix.diag([1, 2, 3, 4, 5, 6, 7, 8], dims=(2, 2, 2))
    for letters in ("A", "B", "C", "AB", "BC"):
        assert partial_transpose(D, PartitionSpec.parse((2, 2, 2), letters)) == D


def test_shape_errors():
    spec = PartitionSpec((2, 2), (1,))
    with pytest.raises(ShapeError):
        partial_transpose(ExactMatrix.identity(3), spec)
    with pytest.raises(ShapeError):
        choi_apply(ExactMatrix.identity(4), spec, ExactMatrix.identity(3))
    with pytest.raises(ShapeError):
        pairing(ExactMatrix.identity(2), ExactMatrix.identity(3))


def test_partial_transpose_against_numpy():
    rng = random.Random(1)
    for _ in range(50):
        spec = random_spec(rng)
        M = random_matrix(rng, spec.total, spec.dims)
        n = spec.n
        t = as_array(M).reshape(spec.dims + spec.dims)
        axes = list(range(2 * n))
        for k in spec.subset:
            axes[k - 1], axes[n + k - 1] = axes[n + k - 1], axes[k - 1]
        expected = t.transpose(axes).reshape(spec.total, spec.total)
        assert np.allclose(as_array(partial_transpose(M, spec)), expected)


def test_partial_transpose_involution_and_composition():
    rng = random.Random(7)
    for _ in range(200):
        spec = random_spec(rng)
        M = random_matrix(rng, spec.total, spec.dims)
        pt = partial_transpose(M, spec)
        assert partial_transpose(pt, spec) == M
        # transposing S and then its complement is the full transpose
        both = transpose_subsystems(pt, spec.dims, spec.complement)
        assert both == M.transpose().with_dims(spec.dims)
        assert pt == transpose_subsystems(M, spec.dims, spec.subset)


def test_pairing_adjointness_under_partial_transpose():
    rng = random.Random(11)
    for _ in range(200):
        spec = random_spec(rng)
        rho = random_matrix(rng, spec.total, spec.dims)
        W = random_matrix(rng, spec.total, spec.dims)
        assert pairing(partial_transpose(rho, spec), W) == pairing(rho, partial_transpose(W, spec))
        assert pairing(rho, W) == (W @ rho.transpose()).trace()


def test_choi_round_trip():
    rng = random.Random(13)
    for _ in range(200):
        spec = random_spec(rng)
        W = random_matrix(rng, spec.total, spec.dims)
        rebuilt = choi_from_blocks(spec, lambda X: choi_apply(W, spec, X))
        assert rebuilt == W
        i, j = rng.randrange(spec.s_size), rng.randrange(spec.s_size)
        unit = ExactMatrix([[1 if (a, b) == (i, j) else 0 for b in range(spec.s_size)] for a in range(spec.s_size)])
        assert choi_apply(W, spec, unit) == choi_block(W, spec, i, j)


def test_choi_apply_is_linear():
    rng = random.Random(5)
    spec = PartitionSpec((2, 2, 2), (2,))
    W = random_matrix(rng, 8, spec.dims)
    X, Y = random_matrix(rng, 2), random_matrix(rng, 2)
    c = Cyc8(Fraction(3, 7), 0, 1, 0)
    assert choi_apply(W, spec, X + Y.scale(c)) == choi_apply(W, spec, X) + choi_apply(W, spec, Y).scale(c)


def test_block_positivity_sampling():
    spec = PartitionSpec((2, 2, 2), (1,))
    eye = ExactMatrix.identity(8, (2, 2, 2))
    res = block_positivity_sample(eye, spec, 50, seed=3)
    assert res.all_nonnegative and res.min_value.sign() > 0
    u, v = res.witness_vector
    psi = merged_product(u, v, spec)
    assert eye.quadratic_form(psi) == res.min_value
    bad = block_positivity_sample(-eye, spec, 5, seed=3)
    assert not bad.all_nonnegative
    again = block_positivity_sample(eye, spec, 50, seed=3)
    assert again.min_value == res.min_value


def test_block_sampling_matches_quadratic_form_for_cyclotomic_w():
    rng = random.Random(9)
    spec = PartitionSpec((2, 2), (2,))
    A = random_matrix(rng, 4, spec.dims)
    W = (A @ A.conj_transpose()).scale(Cyc8(0, 1, 0, -1)).with_dims(spec.dims)  # sqrt2 * A A^*
    res = block_positivity_sample(W, spec, 20, seed=1)
    u, v = res.witness_vector
    assert W.quadratic_form(merged_product(u, v, spec)) == res.min_value
    assert res.all_nonnegative
