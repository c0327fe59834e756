"""Multi-index bookkeeping on tensor products of matrix algebras.

Subsystems are numbered 1..n (letters A, B, C, ... for the first ones). Basis
vectors are linearized lexicographically with subsystem 1 most significant.
"""

from __future__ import annotations

import math
import random
import string
from dataclasses import dataclass
from functools import cached_property
from math import prod
from fractions import Fraction
from typing import Optional, Sequence

from .linalg import ExactMatrix, ShapeError
from .scalar import Cyc8, ZERO


def _linear(digits: Sequence[int], dims: Sequence[int]) -> int:
    idx = 0
    for d, n in zip(digits, dims):
        idx = idx * n + d
    return idx


def _digits(idx: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for n in reversed(dims):
        idx, d = divmod(idx, n)
        out.append(d)
    return tuple(reversed(out))


def parse_subset(text: str, n: int) -> tuple[int, ...]:
    """``"A"``, ``"BC"`` or ``"1,3"`` -> sorted 1-based subsystem labels."""
    text = text.strip()
    if not text:
        raise ValueError("empty subset")
    if text.replace(",", "").isdigit():
        labels = [int(t) for t in text.split(",") if t]
    elif text.isalpha():
        labels = [string.ascii_uppercase.index(ch) + 1 for ch in text.upper()]
    else:
        raise ValueError(f"cannot parse subset {text!r}")
    if len(set(labels)) != len(labels):
        raise ValueError(f"repeated subsystem in {text!r}")
    if any(not 1 <= k <= n for k in labels):
        raise ValueError(f"subset {text!r} out of range for {n} subsystems")
    return tuple(sorted(labels))


@dataclass(frozen=True)
class PartitionSpec:
    dims: tuple[int, ...]
    subset: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "subset", tuple(sorted(int(k) for k in self.subset)))
        n = len(self.dims)
        if any(d < 1 for d in self.dims):
            raise ValueError("subsystem dimensions must be positive")
        if not self.subset:
            raise ValueError("subset must be nonempty")
        if len(set(self.subset)) != len(self.subset) or any(not 1 <= k <= n for k in self.subset):
            raise ValueError(f"invalid subset {self.subset} for {n} subsystems")
        if len(self.subset) == n:
            raise ValueError("subset must be a proper subset")

    @classmethod
    def parse(cls, dims, subset: str) -> "PartitionSpec":
        dims = tuple(dims)
        return cls(dims, parse_subset(subset, len(dims)))

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(k for k in range(1, self.n + 1) if k not in self.subset)

    @property
    def s_dims(self) -> tuple[int, ...]:
        return tuple(self.dims[k - 1] for k in self.subset)

    @property
    def t_dims(self) -> tuple[int, ...]:
        return tuple(self.dims[k - 1] for k in self.complement)

    @property
    def s_size(self) -> int:
        return prod(self.s_dims)

    @property
    def t_size(self) -> int:
        return prod(self.t_dims)

    @property
    def total(self) -> int:
        return prod(self.dims)

    def label(self) -> str:
        if self.n <= 26:
            return "".join(string.ascii_uppercase[k - 1] for k in self.subset)
        return ",".join(map(str, self.subset))

    @cached_property
    def merge_table(self) -> tuple[tuple[int, ...], ...]:
        """``merge_table[i][k]`` is the linear index of ``i <> k``."""
        table = []
        for i in range(self.s_size):
            di = _digits(i, self.s_dims)
            row = []
            for k in range(self.t_size):
                dk = _digits(k, self.t_dims)
                full = [0] * self.n
                for pos, d in zip(self.subset, di):
                    full[pos - 1] = d
                for pos, d in zip(self.complement, dk):
                    full[pos - 1] = d
                row.append(_linear(full, self.dims))
            table.append(tuple(row))
        return tuple(table)


@dataclass(frozen=True)
class MultiIndex:
    """A function from ``support`` (1-based subsystems) to digits."""

    dims: tuple[int, ...]
    support: tuple[int, ...]
    digits: tuple[int, ...]

    def __post_init__(self):
        if len(self.support) != len(self.digits):
            raise ValueError("support and digits differ in length")
        for pos, d in zip(self.support, self.digits):
            if not 0 <= d < self.dims[pos - 1]:
                raise ValueError(f"digit {d} out of range on subsystem {pos}")

    @classmethod
    def on(cls, dims, support, digits) -> "MultiIndex":
        pairs = sorted(zip(support, digits))
        return cls(tuple(dims), tuple(p for p, _ in pairs), tuple(d for _, d in pairs))

    def linear(self) -> int:
        return _linear(self.digits, [self.dims[p - 1] for p in self.support])

    def __str__(self):
        return "".join(map(str, self.digits))


def mi_diamond(i: MultiIndex, k: MultiIndex) -> MultiIndex:
    if i.dims != k.dims:
        raise ValueError("multi-indices live on different systems")
    if set(i.support) & set(k.support):
        raise ValueError("supports overlap")
    if len(i.support) + len(k.support) != len(i.dims):
        raise ValueError("supports do not cover all subsystems")
    return MultiIndex.on(i.dims, i.support + k.support, i.digits + k.digits)


def kron(*factors):
    """Kronecker product of matrices, or of vectors (plain sequences)."""
    if all(isinstance(f, ExactMatrix) for f in factors):
        out = factors[0]
        for f in factors[1:]:
            out = ExactMatrix._wrap(
                tuple(
                    tuple(a * b for a in ra for b in rb)
                    for ra in out.entries
                    for rb in f.entries
                )
            )
        dims = []
        for f in factors:
            dims.extend(f.dims or (f.rows,))
        if all(f.is_square() for f in factors):
            return ExactMatrix._wrap(out.entries, tuple(dims))
        return out
    if any(isinstance(f, ExactMatrix) for f in factors):
        raise TypeError("cannot mix vectors and matrices in kron")
    out = [Cyc8.coerce(x) for x in factors[0]]
    for f in factors[1:]:
        f = [Cyc8.coerce(x) for x in f]
        out = [a * b for a in out for b in f]
    return out


def _check_dims(M: ExactMatrix, spec: PartitionSpec):
    if not M.is_square() or M.rows != spec.total:
        raise ShapeError(f"matrix {M.shape} does not match dims {spec.dims}")
    if M.dims is not None and tuple(M.dims) != spec.dims:
        raise ShapeError(f"matrix dims {M.dims} differ from partition dims {spec.dims}")


def partial_transpose(M: ExactMatrix, spec: PartitionSpec) -> ExactMatrix:
    """Transpose the S tensor factor: ``out[i<>k, j<>l] = M[j<>k, i<>l]``."""
    _check_dims(M, spec)
    tab = spec.merge_table
    n = M.rows
    out = [[ZERO] * n for _ in range(n)]
    e = M.entries
    for i in range(spec.s_size):
        for j in range(spec.s_size):
            for k in range(spec.t_size):
                row_out, row_in = tab[i][k], tab[j][k]
                for l in range(spec.t_size):
                    out[row_out][tab[j][l]] = e[row_in][tab[i][l]]
    return ExactMatrix._wrap(tuple(tuple(r) for r in out), spec.dims)


def transpose_subsystems(M: ExactMatrix, dims: Sequence[int], subset: Sequence[int]) -> ExactMatrix:
    """Transpose the factors listed in ``subset`` (any subset, including
    the empty and the full one)."""
    dims = tuple(dims)
    if not M.is_square() or M.rows != prod(dims):
        raise ShapeError(f"matrix {M.shape} does not match dims {dims}")
    flip = [k - 1 for k in subset]
    n = M.rows
    digits = [_digits(x, dims) for x in range(n)]
    out = [[ZERO] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            dr, dc = list(digits[r]), list(digits[c])
            for pos in flip:
                dr[pos], dc[pos] = dc[pos], dr[pos]
            out[r][c] = M.entries[_linear(dr, dims)][_linear(dc, dims)]
    return ExactMatrix._wrap(tuple(tuple(row) for row in out), dims)


def choi_block(W: ExactMatrix, spec: PartitionSpec, i: int, j: int) -> ExactMatrix:
    """``W[i, j]``: the T-block with entries ``W[i<>k, j<>l]``."""
    _check_dims(W, spec)
    tab = spec.merge_table
    return ExactMatrix._wrap(
        tuple(tuple(W.entries[tab[i][k]][tab[j][l]] for l in range(spec.t_size)) for k in range(spec.t_size)),
        spec.t_dims,
    )


def choi_apply(W: ExactMatrix, spec: PartitionSpec, X: ExactMatrix) -> ExactMatrix:
    """Image of ``X`` under the map sending ``|i><j|`` to ``W[i, j]``."""
    _check_dims(W, spec)
    if X.shape != (spec.s_size, spec.s_size):
        raise ShapeError(f"input must be {spec.s_size}x{spec.s_size}, got {X.shape}")
    tab = spec.merge_table
    m = spec.t_size
    out = [[ZERO] * m for _ in range(m)]
    for i in range(spec.s_size):
        for j in range(spec.s_size):
            x = X.entries[i][j]
            if x.is_zero():
                continue
            for k in range(m):
                row = W.entries[tab[i][k]]
                for l in range(m):
                    w = row[tab[j][l]]
                    if not w.is_zero():
                        out[k][l] = out[k][l] + x * w
    return ExactMatrix._wrap(tuple(tuple(r) for r in out), spec.t_dims)


def choi_from_blocks(spec: PartitionSpec, image) -> ExactMatrix:
    """Assemble ``W`` from a map ``image(X)`` evaluated on matrix units."""
    n = spec.total
    tab = spec.merge_table
    out = [[ZERO] * n for _ in range(n)]
    for i in range(spec.s_size):
        for j in range(spec.s_size):
            unit = ExactMatrix([[1 if (a, b) == (i, j) else 0 for b in range(spec.s_size)] for a in range(spec.s_size)])
            block = image(unit)
            for k in range(spec.t_size):
                for l in range(spec.t_size):
                    out[tab[i][k]][tab[j][l]] = block.entries[k][l]
    return ExactMatrix._wrap(tuple(tuple(r) for r in out), spec.dims)


def pairing(rho: ExactMatrix, W: ExactMatrix) -> Cyc8:
    """``Tr(W rho^t)``, i.e. the entrywise sum of ``W[i,j] rho[i,j]``."""
    if rho.shape != W.shape or not W.is_square():
        raise ShapeError(f"pairing needs equal square shapes, got {rho.shape} and {W.shape}")
    acc = ZERO
    for rw, rr in zip(W.entries, rho.entries):
        for w, r in zip(rw, rr):
            if not w.is_zero() and not r.is_zero():
                acc = acc + w * r
    return acc


def merged_product(u, v, spec: PartitionSpec) -> list[Cyc8]:
    """Vector with entries ``u[i] v[k]`` at position ``i<>k``."""
    u = [Cyc8.coerce(x) for x in u]
    v = [Cyc8.coerce(x) for x in v]
    if len(u) != spec.s_size or len(v) != spec.t_size:
        raise ShapeError("factor lengths do not match the partition")
    out = [ZERO] * spec.total
    tab = spec.merge_table
    for i, ui in enumerate(u):
        for k, vk in enumerate(v):
            out[tab[i][k]] = ui * vk
    return out


def _random_entry(rng: random.Random) -> tuple[int, int]:
    re = rng.randint(-3, 3)
    im = rng.randint(-3, 3) if rng.random() < 0.5 else 0
    return re, im


def _random_vector(rng: random.Random, n: int) -> list[tuple[int, int]]:
    while True:
        v = [_random_entry(rng) for _ in range(n)]
        if any(x != (0, 0) for x in v):
            return v


def _imul(a, b):
    # product in Z[zeta_8] on integer coordinate 4-tuples
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
        a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
        a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
        a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
    )


def _integer_form(W: ExactMatrix):
    """Nonzero entries of ``W`` scaled by a common denominator to integer tuples."""
    den = 1
    for row in W.entries:
        for x in row:
            for c in x.c:
                den = math.lcm(den, c.denominator)
    nz = []
    for r, row in enumerate(W.entries):
        for c, w in enumerate(row):
            if not w.is_zero():
                nz.append((r, c, tuple(int(x * den) for x in w.c)))
    return den, nz


@dataclass
class BlockPositivityResult:
    n_samples: int
    min_value: Optional[Cyc8]
    all_nonnegative: bool
    witness_vector: Optional[tuple] = None

    def __str__(self):
        return (
            f"{self.n_samples} samples, min {self.min_value}, "
            f"{'all >= 0' if self.all_nonnegative else 'NEGATIVE value found'}"
        )


def block_positivity_sample(
    W: ExactMatrix, spec: PartitionSpec, n_samples: int, seed: int = 0, rng: Optional[random.Random] = None
) -> BlockPositivityResult:
    """Evaluate ``<u (x)_S v| W |u (x)_S v>`` on seeded random Gaussian-integer
    product vectors. Supports block positivity; does not prove it."""
    _check_dims(W, spec)
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    rng = rng or random.Random(seed)
    den, nz = _integer_form(W)
    tab = spec.merge_table
    best = None
    best_vec = None
    for _ in range(n_samples):
        u = _random_vector(rng, spec.s_size)
        v = _random_vector(rng, spec.t_size)
        psi = [None] * spec.total
        for i, (ur, ui) in enumerate(u):
            for k, (vr, vi) in enumerate(v):
                psi[tab[i][k]] = (ur * vr - ui * vi, ur * vi + ui * vr)
        acc = (0, 0, 0, 0)
        for r, c, w in nz:
            pr, pi = psi[r]
            qr, qi = psi[c]
            if not (pr or pi) or not (qr or qi):
                continue
            # conj(psi_r) * psi_c as a Gaussian integer, then times w
            g = (pr * qr + pi * qi, 0, pr * qi - pi * qr, 0)
            t = _imul(g, w)
            acc = (acc[0] + t[0], acc[1] + t[1], acc[2] + t[2], acc[3] + t[3])
        val = Cyc8(*(Fraction(x, den) for x in acc))
        if best is None or (val - best).sign() < 0:
            best = val
            best_vec = (
                tuple(Cyc8.from_gauss(*x) for x in u),
                tuple(Cyc8.from_gauss(*x) for x in v),
            )
    return BlockPositivityResult(n_samples, best, best.sign() >= 0, best_vec)
