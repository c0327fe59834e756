"""Dense exact matrices over Q(zeta_8)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Optional, Sequence

from .poly import UniPoly, isolate_smallest_root, root_bound, IsolatingInterval
from .scalar import Cyc8, ONE, ZERO


class ShapeError(ValueError):
    pass


class ExactMatrix:
    """Immutable dense matrix with optional subsystem dimensions."""

    __slots__ = ("rows", "cols", "entries", "dims")

    def __init__(self, entries: Sequence[Sequence], dims: Optional[Sequence[int]] = None):
        grid = tuple(tuple(Cyc8.coerce(x) for x in row) for row in entries)
        if not grid or not grid[0]:
            raise ShapeError("matrix must have at least one row and column")
        ncols = len(grid[0])
        if any(len(row) != ncols for row in grid):
            raise ShapeError("ragged matrix rows")
        self.entries = grid
        self.rows = len(grid)
        self.cols = ncols
        if dims is not None:
            dims = tuple(int(d) for d in dims)
            if self.rows != self.cols or prod(dims) != self.rows:
                raise ShapeError(f"dims {dims} incompatible with {self.rows}x{self.cols}")
        self.dims = dims

    @classmethod
    def _wrap(cls, grid, dims=None):
        obj = object.__new__(cls)
        obj.entries = grid
        obj.rows = len(grid)
        obj.cols = len(grid[0])
        obj.dims = dims
        return obj

    @classmethod
    def identity(cls, n: int, dims=None) -> "ExactMatrix":
        return cls._wrap(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)),
            tuple(dims) if dims else None,
        )

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None, dims=None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls._wrap(tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows)), dims)

    @classmethod
    def diag(cls, values, dims=None) -> "ExactMatrix":
        values = [Cyc8.coerce(v) for v in values]
        n = len(values)
        return cls._wrap(
            tuple(tuple(values[i] if i == j else ZERO for j in range(n)) for i in range(n)),
            tuple(dims) if dims else None,
        )

    @classmethod
    def outer(cls, u, v=None, dims=None) -> "ExactMatrix":
        """``|u><v|``; ``v`` defaults to ``u``."""
        u = [Cyc8.coerce(x) for x in u]
        v = u if v is None else [Cyc8.coerce(x) for x in v]
        vc = [x.conj() for x in v]
        return cls._wrap(tuple(tuple(a * b for b in vc) for a in u), tuple(dims) if dims else None)

    @classmethod
    def from_columns(cls, columns) -> "ExactMatrix":
        columns = [[Cyc8.coerce(x) for x in col] for col in columns]
        return cls(list(zip(*columns)))

    def with_dims(self, dims) -> "ExactMatrix":
        return ExactMatrix(self.entries, dims)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, dims={self.dims})"

    def __str__(self):
        cells = [[str(x) for x in row] for row in self.entries]
        w = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)

    def is_rational(self) -> bool:
        return all(x.is_rational() for row in self.entries for x in row)

    def differences(self, other: "ExactMatrix") -> list[tuple[int, int]]:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return [
            (i, j)
            for i in range(self.rows)
            for j in range(self.cols)
            if self.entries[i][j] != other.entries[i][j]
        ]

    # -- arithmetic ---------------------------------------------------------

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return ExactMatrix._wrap(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            self.dims or other.dims,
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return ExactMatrix._wrap(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            self.dims or other.dims,
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = Cyc8.coerce(c)
        return ExactMatrix._wrap(tuple(tuple(c * x for x in row) for row in self.entries), self.dims)

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self.matmul(other)
        return self.scale(other)

    __matmul__ = __mul__

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            nz = [(k, a) for k, a in enumerate(row) if not a.is_zero()]
            new_row = []
            for col in cols:
                acc = ZERO
                for k, a in nz:
                    b = col[k]
                    if not b.is_zero():
                        acc = acc + a * b
                new_row.append(acc)
            out.append(tuple(new_row))
        dims = self.dims if self.dims == other.dims else None
        return ExactMatrix._wrap(tuple(out), dims)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._wrap(tuple(zip(*self.entries)), self.dims)

    def conj(self) -> "ExactMatrix":
        return ExactMatrix._wrap(tuple(tuple(x.conj() for x in row) for row in self.entries), self.dims)

    def conj_transpose(self) -> "ExactMatrix":
        return ExactMatrix._wrap(tuple(tuple(x.conj() for x in col) for col in zip(*self.entries)), self.dims)

    H = property(conj_transpose)

    def trace(self) -> Cyc8:
        if not self.is_square():
            raise ShapeError("trace of a non-square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.conj_transpose()

    def submatrix(self, k: int) -> "ExactMatrix":
        return ExactMatrix._wrap(tuple(row[:k] for row in self.entries[:k]))

    def apply(self, vec) -> list[Cyc8]:
        vec = [Cyc8.coerce(x) for x in vec]
        if len(vec) != self.cols:
            raise ShapeError("vector length mismatch")
        return [sum((a * b for a, b in zip(row, vec)), ZERO) for row in self.entries]

    def quadratic_form(self, vec) -> Cyc8:
        """``<v|M|v>``."""
        mv = self.apply(vec)
        return sum((Cyc8.coerce(x).conj() * y for x, y in zip(vec, mv)), ZERO)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        rational = self.is_rational()
        data = {"kind": "matrix", "field": "rational" if rational else "cyc8"}
        if self.dims:
            data["dims"] = list(self.dims)
        data["rows"] = [
            [str(x.as_rational()) if rational else x.to_json() for x in row] for row in self.entries
        ]
        return data

    @classmethod
    def from_json(cls, data) -> "ExactMatrix":
        if not isinstance(data, dict) or data.get("kind") != "matrix":
            raise ValueError("matrix JSON must have kind 'matrix'")
        fld = data.get("field", "rational")
        if fld not in ("rational", "cyc8"):
            raise ValueError(f"unknown field {fld!r}")
        rows = data.get("rows")
        if not isinstance(rows, list) or not rows:
            raise ValueError("matrix JSON needs a nonempty 'rows' list")
        grid = [[Cyc8.from_json(x) for x in row] for row in rows]
        if fld == "rational" and not all(x.is_rational() for row in grid for x in row):
            raise ValueError("field 'rational' declared but entries are not rational")
        return cls(grid, data.get("dims"))


def mat_basic(op: str, *args) -> ExactMatrix:
    if op == "add":
        return args[0] + args[1]
    if op == "scale":
        return args[1].scale(args[0]) if isinstance(args[1], ExactMatrix) else args[0].scale(args[1])
    if op == "mul":
        return args[0].matmul(args[1])
    if op == "conj_transpose":
        return args[0].conj_transpose()
    raise ValueError(f"unknown matrix op {op!r}")


def _grid(M) -> list[list]:
    if isinstance(M, ExactMatrix):
        return [list(row) for row in M.entries]
    return [list(row) for row in M]


def determinant(M: ExactMatrix) -> Cyc8:
    """Bareiss fraction-free elimination, first-nonzero pivoting."""
    if not M.is_square():
        raise ShapeError("determinant of a non-square matrix")
    a = _grid(M)
    n = len(a)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            for p in range(k + 1, n):
                if not a[p][k].is_zero():
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = a[k][k]
        inv_prev = prev.inverse()
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - aik * a[k][j]) * inv_prev
            a[i][k] = ZERO
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def cofactor_determinant(M):
    """Laplace expansion along the first row; works over any commutative ring
    whose elements support ``+``, ``-`` and ``*`` (used for symbolic minors)."""
    a = _grid(M)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ShapeError("determinant of a non-square matrix")
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = None
    for j in range(n):
        if isinstance(a[0][j], (int, Fraction)) and a[0][j] == 0:
            continue
        if hasattr(a[0][j], "is_zero") and a[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * cofactor_determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return a[0][0] * 0
    return total


def exact_rank(M: ExactMatrix) -> int:
    a = _grid(M)
    rows, cols = len(a), len(a[0])
    rank = 0
    for c in range(cols):
        pivot_row = next((r for r in range(rank, rows) if not a[r][c].is_zero()), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        inv = a[rank][c].inverse()
        for r in range(rank + 1, rows):
            if a[r][c].is_zero():
                continue
            f = a[r][c] * inv
            a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def charpoly_coeffs(M: ExactMatrix) -> list[Cyc8]:
    """Monic ``det(xI - M)`` coefficients (ascending) by Faddeev-LeVerrier."""
    if not M.is_square():
        raise ShapeError("characteristic polynomial of a non-square matrix")
    n = M.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    ident = ExactMatrix.identity(n)
    AM = ExactMatrix.zeros(n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(A M_k) / k
        AM = M.matmul(AM + ident.scale(coeffs[n - k + 1]))
        coeffs[n - k] = AM.trace() * Fraction(-1, k)
    return coeffs


def charpoly(M: ExactMatrix) -> UniPoly:
    """Monic characteristic polynomial; raises if a coefficient is not rational."""
    coeffs = charpoly_coeffs(M)
    out = []
    for k, c in enumerate(coeffs):
        if not c.is_rational():
            raise ValueError(f"characteristic polynomial coefficient of x^{k} is not rational: {c}")
        out.append(c.as_rational())
    return UniPoly(out)


def leading_principal_minors(M) -> list:
    """Determinants of the leading k x k blocks, k = 1..n.

    Numeric matrices use Bareiss; symbolic grids use cofactor expansion.
    """
    if isinstance(M, ExactMatrix):
        if not M.is_square():
            raise ShapeError("minors of a non-square matrix")
        return [determinant(M.submatrix(k)) for k in range(1, M.rows + 1)]
    a = _grid(M)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ShapeError("minors of a non-square matrix")
    return [cofactor_determinant([row[:k] for row in a[:k]]) for k in range(1, n + 1)]


@dataclass
class PSDCertificate:
    psd: bool
    signs: list[int]
    charpoly: list[Cyc8]
    violated: Optional[int] = None
    negative_root: Optional[IsolatingInterval] = None
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "psd" if self.psd else "not_psd"

    def evidence(self) -> str:
        text = f"{self.verdict}; elementary symmetric signs {self.signs}"
        if self.violated is not None:
            text += f"; e_{self.violated} < 0"
        if self.negative_root is not None:
            text += f"; negative eigenvalue in {self.negative_root}"
        return text


def psd_certificate(H: ExactMatrix) -> PSDCertificate:
    """Decide positive semidefiniteness of a Hermitian matrix exactly.

    With ``det(xI - H) = sum_k (-1)^k e_k x^(n-k)`` the matrix is PSD iff
    every ``e_k >= 0``. Coefficients may lie in Q(sqrt 2).
    """
    if not H.is_hermitian():
        raise ValueError("psd_certificate requires a Hermitian matrix")
    coeffs = charpoly_coeffs(H)
    n = H.rows
    signs = []
    violated = None
    for k in range(n + 1):
        e_k = coeffs[n - k] if k % 2 == 0 else -coeffs[n - k]
        if not e_k.is_real():
            raise ValueError("Hermitian characteristic polynomial has a non-real coefficient")
        s = e_k.sign()
        signs.append(s)
        if s < 0 and violated is None:
            violated = k
    cert = PSDCertificate(violated is None, signs, coeffs, violated)
    if violated is not None and all(c.is_rational() for c in coeffs):
        p = UniPoly(c.as_rational() for c in coeffs)
        root = isolate_smallest_root(p, -root_bound(p))
        while root.hi >= 0:
            root = root.bisect_once()
        cert.negative_root = root
    return cert
