import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import gauss, matrices
from qgev.linalg import (
    ExactMatrix,
    ShapeError,
    charpoly,
    charpoly_coeffs,
    cofactor_determinant,
    determinant,
    exact_rank,
    leading_principal_minors,
    psd_certificate,
)
from qgev.scalar import I, SQRT2, Cyc8


def leibniz(a):
    n = len(a)
    total = Cyc8()
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Cyc8(1)
        for i in range(n):
            term = term * a[i][perm[i]]
        total = total + (-term if inversions % 2 else term)
    return total


def test_determinant_examples():
    assert determinant(ExactMatrix([[1, 2], [3, 4]])) == -2
    assert determinant(ExactMatrix([[0, 1], [1, 0]])) == -1
    assert determinant(ExactMatrix([[1, 2], [2, 4]])) == 0
    assert determinant(ExactMatrix.identity(8)) == 1


def test_non_square_raises():
    with pytest.raises(ShapeError):
        determinant(ExactMatrix([[1, 2, 3], [4, 5, 6]]))
    with pytest.raises(ShapeError):
        ExactMatrix([[1, 2]]) @ ExactMatrix([[1, 2]])


def test_rank_examples():
    assert exact_rank(ExactMatrix([[1, 2], [2, 4]])) == 1
    assert exact_rank(ExactMatrix([[1, I], [-I, 1]])) == 1
    assert exact_rank(ExactMatrix.zeros(3)) == 0


def test_charpoly_examples():
    assert charpoly(ExactMatrix([[2, 1], [1, 2]])).coeffs == (3, -4, 1)
    with pytest.raises(ValueError):
        charpoly(ExactMatrix([[SQRT2]]))


def test_psd_examples():
    assert psd_certificate(ExactMatrix([[2, 1], [1, 2]])).psd
    assert psd_certificate(ExactMatrix([[1, 1], [1, 1]])).psd
    cert = psd_certificate(ExactMatrix([[1, 2], [2, 1]]))
    assert cert.verdict == "not_psd"
    assert cert.negative_root.exact == -1
    assert psd_certificate(ExactMatrix([[1, SQRT2], [SQRT2, 2]])).psd
    with pytest.raises(ValueError):
        psd_certificate(ExactMatrix([[0, 1], [0, 0]]))


def test_json_roundtrip():
    M = ExactMatrix([[Fraction(1, 3), I], [-I, 2]], dims=(2,))
    assert ExactMatrix.from_json(M.to_json()) == M
    R = ExactMatrix([[Fraction(23, 1696), Fraction(-17, 530)], [0, 1]])
    data = R.to_json()
    assert data["rows"][0] == ["23/1696", "-17/530"]
    assert ExactMatrix.from_json(data) == R


def test_leading_minors_of_symbolic_grid():
    assert leading_principal_minors(ExactMatrix([[2, 1], [1, 2]])) == [2, 3]


@given(st.integers(1, 4).flatmap(lambda n: matrices(n)))
def test_determinant_against_leibniz(rows):
    M = ExactMatrix(rows)
    expected = leibniz(M.entries)
    assert determinant(M) == expected
    assert cofactor_determinant(M) == expected


@given(st.integers(1, 5).flatmap(lambda n: matrices(n)))
def test_charpoly_trace_and_determinant(rows):
    M = ExactMatrix(rows)
    n = M.rows
    c = charpoly_coeffs(M)
    assert c[n] == 1
    assert c[n - 1] == -M.trace()
    assert c[0] == determinant(M) * (-1) ** n


@given(st.integers(1, 4).flatmap(lambda n: matrices(n)))
def test_rank_agrees_with_determinant(rows):
    M = ExactMatrix(rows)
    full = exact_rank(M) == M.rows
    assert full == (not determinant(M).is_zero())


def _gauss_hermitian(rng, n):
    B = [[Cyc8.from_gauss(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
    B = ExactMatrix(B)
    H = B @ B.conj_transpose()
    return H - ExactMatrix.identity(n).scale(rng.randint(0, 6))


def test_psd_against_numpy_eigh():
    rng = random.Random(2024)
    seen = {True: 0, False: 0}
    checked = 0
    while checked < 200:
        H = _gauss_hermitian(rng, 4)
        arr = np.array([[x.to_complex() for x in row] for row in H.entries])
        eig = np.linalg.eigvalsh(arr)
        if np.min(np.abs(eig)) < 1e-3:
            continue
        checked += 1
        expected = bool(eig.min() > 0)
        cert = psd_certificate(H)
        assert cert.psd == expected
        if not expected:
            assert cert.negative_root.hi < 0
            assert abs(float(cert.negative_root.hi) - eig.min()) < 1e-6
        seen[expected] += 1
    assert seen[True] > 20 and seen[False] > 20
