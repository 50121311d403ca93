"""Exact integer linear algebra: Smith form, kernels, cokernels, lattice quotients.

Entries are Python integers throughout the public API.  The elimination
itself runs in :mod:`._backend`, which uses the compiled int64 kernel when it
is available and falls back to bigint arithmetic on overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from ..errors import (
    ColumnsDependent,
    DimensionMismatch,
    NoSolution,
    SublatticeNotContained,
    TheoremViolation,
)
from ._backend import BACKEND, available_backends, diagonalize

__all__ = [
    "BACKEND",
    "available_backends",
    "AbelianGroup",
    "ChainHomology",
    "IntegerMatrix",
    "SmithForm",
    "chain_homology",
    "circulant_det_check",
    "cokernel_group",
    "diagonalize",
    "kernel_basis",
    "quotient_group",
    "smith_normal_form",
    "solve_in_lattice",
]


class IntegerMatrix:
    """Immutable dense matrix of Python integers."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Sequence[int]], cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            if not data:
                raise DimensionMismatch("cannot infer the column count of an empty matrix")
            cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(([0] * cols for _ in range(rows)), cols=cols)

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntegerMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls(out, cols=cols)

    @classmethod
    def from_array(cls, arr) -> "IntegerMatrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise DimensionMismatch("expected a two-dimensional array")
        return cls(arr.tolist(), cols=arr.shape[1])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntegerMatrix":
        return cls(([col[i] for col in columns] for i in range(rows)), cols=len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def to_array(self) -> np.ndarray:
        """int64 if every entry fits, else an object array."""
        try:
            return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)
        except OverflowError:
            return np.array(self.entries, dtype=object).reshape(self.rows, self.cols)

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(zip(*self.entries), cols=self.rows) if self.rows else IntegerMatrix.zeros(self.cols, 0)

    T = property(transpose)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.to_lists()!r})"

    def _binary(self, other, op) -> "IntegerMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        return IntegerMatrix(
            ([op(a, b) for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)), cols=self.cols
        )

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __neg__(self):
        return IntegerMatrix(([-x for x in row] for row in self.entries), cols=self.cols)

    def scale(self, c: int) -> "IntegerMatrix":
        return IntegerMatrix(([c * x for x in row] for row in self.entries), cols=self.cols)

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            return IntegerMatrix(_matmul(self.entries, other.entries, other.cols), cols=other.cols)
        vec = [int(x) for x in other]
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} against {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, vec) if a) for row in self.entries)

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ")
        return IntegerMatrix((r + s for r, s in zip(self.entries, other.entries)), cols=self.cols + other.cols)

    def vstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ")
        return IntegerMatrix(self.entries + other.entries, cols=self.cols)

    def det(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        return bareiss_det(self.entries)

    def rank(self) -> int:
        return len(diagonalize(self.to_lists())) if self.rows and self.cols else 0


def _matmul(a, b, bcols: int) -> list[list[int]]:
    bt = list(zip(*b)) if b else [()] * bcols
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum(x * col[k] for k, x in nz) for col in bt])
    return out


def bareiss_det(entries) -> int:
    """Fraction-free Gaussian elimination; exact on Python integers."""
    m = [list(row) for row in entries]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            a = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (pk * rowi[j] - a * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...`` and every ``d_i >= 2``."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in factors):
            raise ValueError(f"invariant factors must be at least 2: {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValueError(f"not a divisibility chain: {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_diagonal(cls, diag: Iterable[int], free_rank: int = 0) -> "AbelianGroup":
        """Group presented by a diagonal relation matrix; zeros count as free rank."""
        diag = [abs(int(d)) for d in diag]
        free_rank += sum(1 for d in diag if d == 0)
        ds = sorted(d for d in diag if d > 1)
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                a, b = ds[i], ds[j]
                if b % a:
                    g = math.gcd(a, b)
                    ds[i], ds[j] = g, a // g * b
        return cls(free_rank, tuple(d for d in ds if d > 1))

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def order(self) -> int | None:
        """``None`` for an infinite group."""
        return math.prod(self.invariant_factors) if self.free_rank == 0 else None

    @property
    def is_cyclic(self) -> bool:
        return self.free_rank + len(self.invariant_factors) <= 1

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_diagonal(self.invariant_factors + other.invariant_factors, self.free_rank + other.free_rank)

    __add__ = direct_sum

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors), "order": self.order}

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


def _as_matrix(A) -> IntegerMatrix:
    return A if isinstance(A, IntegerMatrix) else IntegerMatrix(A)


def _identity_lists(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


class SmithForm(NamedTuple):
    D: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _smith_lists(A: IntegerMatrix):
    """Diagonal, U and V^T as lists, with the divisibility chain enforced."""
    m, n = A.shape
    work = A.to_lists()
    U = _identity_lists(m)
    Vt = _identity_lists(n)
    diag = diagonalize(work, row_targets=U, col_targets=Vt) if m and n else []
    diag = list(diag)
    r = len(diag)
    for i in range(r):
        for j in range(i + 1, r):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            g, s, t = _xgcd(a, b)
            # rows i, j of U:    [[s, t], [-b/g, a/g]]
            # columns i, j of V: [[1, -t*b/g], [1, s*a/g]]
            ui, uj = U[i], U[j]
            U[i] = [s * x + t * y for x, y in zip(ui, uj)]
            U[j] = [(-b // g) * x + (a // g) * y for x, y in zip(ui, uj)]
            vi, vj = Vt[i], Vt[j]
            c1, c2 = -t * b // g, s * a // g
            Vt[i] = [x + y for x, y in zip(vi, vj)]
            Vt[j] = [c1 * x + c2 * y for x, y in zip(vi, vj)]
            diag[i], diag[j] = g, a // g * b
    return diag, U, Vt


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) > 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def smith_normal_form(A, verify: bool = True) -> SmithForm:
    """``U A V = D`` with ``U``, ``V`` unimodular and ``d_1 | d_2 | ...``.

    With ``verify`` the product identity, the divisibility chain and
    ``|det U| = |det V| = 1`` are recomputed exactly; failure raises
    :class:`TheoremViolation`.
    """
    A = _as_matrix(A)
    m, n = A.shape
    diag, U, Vt = _smith_lists(A)
    D = IntegerMatrix.diagonal(diag, m, n)
    Um = IntegerMatrix(U, cols=m)
    Vm = IntegerMatrix(Vt, cols=n).transpose()
    if verify:
        if any(b % a for a, b in zip(diag, diag[1:])):
            raise TheoremViolation(f"divisibility chain broken: {diag}")
        if Um @ A @ Vm != D:
            raise TheoremViolation("U A V != D")
        if abs(Um.det()) != 1 or abs(Vm.det()) != 1:
            raise TheoremViolation("transform is not unimodular")
    return SmithForm(D, Um, Vm)


def kernel_basis(A) -> IntegerMatrix:
    """Columns form a lattice basis of ``{x : A x = 0}``."""
    A = _as_matrix(A)
    m, n = A.shape
    if m == 0 or n == 0:
        return IntegerMatrix.identity(n)
    work = A.to_lists()
    Vt = _identity_lists(n)
    r = len(diagonalize(work, col_targets=Vt))
    H = IntegerMatrix(Vt[r:], cols=n).transpose() if r < n else IntegerMatrix.zeros(n, 0)
    if H.cols and not (A @ H).is_zero():
        raise TheoremViolation("kernel basis does not lie in the kernel")
    return H


def cokernel_group(A) -> AbelianGroup:
    """``Z^rows / img A``."""
    A = _as_matrix(A)
    if A.rows == 0:
        return AbelianGroup()
    if A.cols == 0:
        return AbelianGroup(A.rows)
    diag = diagonalize(A.to_lists())
    return AbelianGroup.from_diagonal(diag, A.rows - len(diag))


def _solve_many(H: IntegerMatrix, Z: IntegerMatrix) -> IntegerMatrix:
    m, k = H.shape
    if Z.rows != m:
        raise DimensionMismatch(f"right-hand side has {Z.rows} rows, expected {m}")
    if k == 0:
        if not Z.is_zero():
            raise NoSolution("empty column set spans only zero")
        return IntegerMatrix.zeros(0, Z.cols)
    work = H.to_lists()
    rhs = Z.to_lists()
    Vt = _identity_lists(k)
    diag = diagonalize(work, row_targets=rhs, col_targets=Vt)
    if len(diag) < k:
        raise ColumnsDependent(f"columns have rank {len(diag)} < {k}")
    y = []
    for i, d in enumerate(diag):
        row = rhs[i]
        if any(x % d for x in row):
            raise NoSolution("right-hand side is not in the integer column span")
        y.append([x // d for x in row])
    if any(any(row) for row in rhs[k:]):
        raise NoSolution("right-hand side is not in the rational column span")
    # w = V y, and V = Vt^T
    return IntegerMatrix(Vt, cols=k).transpose() @ IntegerMatrix(y, cols=Z.cols)


def solve_in_lattice(H, z) -> tuple[int, ...]:
    """The unique integer ``w`` with ``H w = z``; ``H`` must have independent columns."""
    H = _as_matrix(H)
    z = [int(x) for x in z]
    W = _solve_many(H, IntegerMatrix([[x] for x in z], cols=1))
    return W.column(0)


def quotient_group(H, Z) -> AbelianGroup:
    """(lattice spanned by the columns of ``H``) / (lattice spanned by those of ``Z``)."""
    H, Z = _as_matrix(H), _as_matrix(Z)
    try:
        W = _solve_many(H, Z)
    except NoSolution as exc:
        raise SublatticeNotContained(str(exc)) from exc
    return cokernel_group(W)


def circulant_det_check(n: int) -> int:
    """``det(1 - K^T)`` for the all-ones ``n x n`` matrix ``K``.

    ``1 - K^T`` has eigenvalue ``1 - n`` on the all-ones vector and ``1`` on
    its complement, so the determinant is ``-(n - 1)``; that value is
    asserted and returned.  It is nonzero, hence the kernel is trivial.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    d = bareiss_det([[int(i == j) - 1 for j in range(n)] for i in range(n)])
    if d != -(n - 1):
        raise TheoremViolation(f"det(1 - K^T) = {d} for n = {n}")
    return d


@dataclass(frozen=True)
class ChainHomology:
    """Homology data of ``Z^p --d2--> Z^q --d1--> Z^n`` with ``d1 d2 = 0``."""

    cokernel: AbelianGroup  # Z^n / img d1
    homology: AbelianGroup  # ker d1 / img d2
    kernel_rank: int  # rank of ker d2
    rank_d1: int
    marker_coordinates: tuple[int, ...] | None  # class of the marker vector in the cokernel
    marker_order: int | None  # None when infinite or no marker given
    elementary_divisors: tuple[int, ...]  # nonunit pivots of d1, aligned with the coordinates


def chain_homology(d1, d2, marker: Sequence[int] | None = None, backend: str | None = None) -> ChainHomology:
    """Cokernel of ``d1``, ``ker d1 / img d2`` and ``rank ker d2`` in two eliminations.

    The first elimination diagonalises ``d1`` while carrying the marker
    vector through the row operations and ``d2`` through the inverse column
    operations.  In the new basis the last ``q - rank`` coordinates span
    ``ker d1`` and ``d2`` becomes ``W`` on those coordinates, so the
    homology is the cokernel of ``W``.
    """
    d1, d2 = _as_matrix(d1), _as_matrix(d2)
    n, q = d1.shape
    if d2.rows != q:
        raise DimensionMismatch(f"d2 has {d2.rows} rows, d1 has {q} columns")
    p = d2.cols
    work = d1.to_lists()
    col = [[int(x)] for x in marker] if marker is not None else None
    if col is not None and len(col) != n:
        raise DimensionMismatch("marker length differs from the row count of d1")
    Y = d2.to_lists()
    diag = diagonalize(work, row_targets=col, inv_targets=Y, backend=backend) if n and q else []
    r = len(diag)
    if any(any(row) for row in Y[:r]):
        raise TheoremViolation("d1 d2 != 0")
    cok = AbelianGroup.from_diagonal(diag, n - r)
    if p and q - r:
        w_diag = diagonalize([row[:] for row in Y[r:]], backend=backend)
    else:
        w_diag = []
    homology = AbelianGroup.from_diagonal(w_diag, (q - r) - len(w_diag))
    coords = order = None
    if col is not None:
        x = [row[0] for row in col]
        coords = tuple(xi % d if d > 1 else 0 for xi, d in zip(x, diag)) + tuple(x[r:])
        if any(x[r:]):
            order = None
        else:
            order = 1
            for xi, d in zip(x, diag):
                order = math.lcm(order, d // math.gcd(d, xi))
    return ChainHomology(
        cokernel=cok,
        homology=homology,
        kernel_rank=p - len(w_diag),
        rank_d1=r,
        marker_coordinates=coords,
        marker_order=order,
        elementary_divisors=tuple(diag),
    )
