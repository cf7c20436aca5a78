"""Dense matrices over F_q and the combinatorics of reduced row echelon forms.

Matrices are numpy int64 arrays of element encodings paired with a
:class:`~cosetcodes.gf_arith.Field`.  Pivot vectors are plain tuples of 0/1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .errors import BudgetExceededError, FieldMismatchError, ShapeError
from .gf_arith import Field

PivotVector = tuple[int, ...]

DEFAULT_ENUMERATION_BUDGET = 10_000_000


# ---------------------------------------------------------------------------
# array-level kernels


def matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over ``field``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[-1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    if field.e == 1:
        return (a @ b) % field.p
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for t in range(a.shape[-1]):
        out = field.add_arr(out, field.mul_arr(a[..., t, None], b[t]))
    return out


def rre_array(field: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a``; returns (nonzero rows, pivot columns)."""
    m = np.array(a, dtype=np.int64, copy=True)
    if m.ndim != 2:
        raise ShapeError("expected a 2-d array")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        lead = int(m[r, c])
        if lead != 1:
            m[r] = field.mul_arr(m[r], field.inv(lead))
        others = np.nonzero(m[:, c])[0]
        for i in others:
            if i != r:
                m[i] = field.sub_arr(m[i], field.mul_arr(m[r], int(m[i, c])))
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_array(field: Field, a: np.ndarray) -> int:
    return len(rre_array(field, a)[1])


def nullspace_array(field: Field, a: np.ndarray) -> np.ndarray:
    """Basis (as rows, in RRE form) of the right null space {x : a x = 0}."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    red, piv = rre_array(field, a) if a.shape[0] else (np.zeros((0, cols), dtype=np.int64), [])
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, pc in enumerate(piv):
            out[t, pc] = field.neg(int(red[i, f]))
    return rre_array(field, out)[0] if len(free) else out


def span_array(field: Field, basis: np.ndarray) -> np.ndarray:
    """All q**r linear combinations of the rows of ``basis``.

    Row t of the output uses the coefficient digits of t in base q, most
    significant digit on the first basis row (itertools.product order).
    """
    basis = np.asarray(basis, dtype=np.int64)
    r = basis.shape[0]
    q = field.order
    shape = basis.shape[1:]
    flat = basis.reshape(r, -1)
    count = q**r
    coeffs = np.zeros((count, r), dtype=np.int64)
    idx = np.arange(count, dtype=np.int64)
    for j in range(r):
        coeffs[:, r - 1 - j] = (idx // q**j) % q
    if field.e == 1:
        out = (coeffs @ flat) % field.p
    else:
        out = np.zeros((count, flat.shape[1]), dtype=np.int64)
        for j in range(r):
            out = field.add_arr(out, field.mul_arr(coeffs[:, j, None], flat[j][None, :]))
    return out.reshape((count,) + shape)


def pivot_vector_from_columns(columns, n: int) -> PivotVector:
    v = [0] * n
    for c in columns:
        v[c] = 1
    return tuple(v)


def pivot_columns(v: PivotVector) -> list[int]:
    return [i for i, x in enumerate(v) if x]


# ---------------------------------------------------------------------------
# FqMatrix


@dataclass(frozen=True, eq=False)
class FqMatrix:
    """A dense matrix over a finite field."""

    field: Field
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            if arr.size:
                raise ShapeError(f"expected a 2-d array, got shape {arr.shape}")
            arr = arr.reshape(0, 0)
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.order):
            raise ValueError(f"entries must be encodings in [0, {self.field.order})")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> FqMatrix:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, k: int) -> FqMatrix:
        return cls(field, np.eye(k, dtype=np.int64))

    @classmethod
    def from_text(cls, field: Field, text: str, cols: int | None = None) -> FqMatrix:
        """Parse ``"1 0 1;0 1 1"`` (rows by ';', entries by whitespace)."""
        text = text.strip()
        if not text:
            return cls(field, np.zeros((0, cols or 0), dtype=np.int64))
        rows = [[int(tok) for tok in row.split()] for row in text.split(";")]
        if len({len(r) for r in rows}) != 1:
            raise ShapeError(f"ragged matrix text: {text!r}")
        return cls(field, np.array(rows, dtype=np.int64))

    def to_text(self) -> str:
        return ";".join(" ".join(str(int(x)) for x in row) for row in self.data)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape  # type: ignore[return-value]

    @property
    def T(self) -> FqMatrix:
        return FqMatrix(self.field, self.data.T)

    def _check(self, other: FqMatrix) -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: FqMatrix) -> FqMatrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} vs {other.shape}")
        return FqMatrix(self.field, self.field.add_arr(self.data, other.data))

    def __sub__(self, other: FqMatrix) -> FqMatrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} vs {other.shape}")
        return FqMatrix(self.field, self.field.sub_arr(self.data, other.data))

    def __matmul__(self, other: FqMatrix) -> FqMatrix:
        self._check(other)
        return FqMatrix(self.field, matmul(self.field, self.data, other.data))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FqMatrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self) -> int:
        return hash((self.field.order, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"FqMatrix(q={self.field.order}, {self.to_text()!r})"

    def vstack(self, other: FqMatrix) -> FqMatrix:
        self._check(other)
        return FqMatrix(self.field, np.vstack([self.data, other.data]))

    def rank(self) -> int:
        return rank(self)

    def rre(self) -> RRE:
        return rre(self)


class RRE(NamedTuple):
    matrix: FqMatrix
    pivots: PivotVector
    dropped: int  # number of zero rows removed


def rre(m: FqMatrix) -> RRE:
    """Unique reduced row echelon form of the row space of ``m``.

    Zero rows are dropped from the returned matrix; their count is reported.
    """
    red, piv = rre_array(m.field, m.data)
    rows, cols = m.shape
    return RRE(FqMatrix(m.field, red.reshape(len(piv), cols)), pivot_vector_from_columns(piv, cols), rows - len(piv))


def rank(m: FqMatrix) -> int:
    return rank_array(m.field, m.data)


def is_rre(field: Field, a: np.ndarray) -> bool:
    """True iff ``a`` is a full-rank matrix in reduced row echelon form."""
    red, piv = rre_array(field, a)
    return red.shape == np.shape(a) and bool(np.array_equal(red, a))


# ---------------------------------------------------------------------------
# column insertion


def phi_b_array(b_pivots: PivotVector, f: np.ndarray) -> np.ndarray:
    """Insert zero columns into ``f`` at the pivot positions ``b_pivots``."""
    f = np.asarray(f, dtype=np.int64)
    free = [i for i, x in enumerate(b_pivots) if not x]
    if f.shape[1] != len(free):
        raise ShapeError(f"F has {f.shape[1]} columns, B has {len(free)} non-pivot columns")
    out = np.zeros((f.shape[0], len(b_pivots)), dtype=np.int64)
    out[:, free] = f
    return out


def phi_b(b: FqMatrix, f: FqMatrix) -> FqMatrix:
    """The matrix with zero columns at B's pivots and F's columns elsewhere, in order."""
    b._check(f)
    if not is_rre(b.field, b.data):
        raise ShapeError("B must be a full-rank matrix in reduced row echelon form")
    piv = rre(b).pivots
    return FqMatrix(f.field, phi_b_array(piv, f.data))


# ---------------------------------------------------------------------------
# Echelon-Ferrers combinatorics


def ef_exponent(v: PivotVector) -> int:
    """Number of free entries of an RRE matrix with pivot vector ``v``."""
    total, seen = 0, 0
    for x in v:
        if x:
            seen += 1
        else:
            total += seen
    return total


def ef_size(v: PivotVector, q: int) -> int:
    return q ** ef_exponent(v)


@dataclass(frozen=True)
class FerrersDiagram:
    """Dot pattern of the free entries of RRE matrices with a given pivot vector.

    ``dots`` lists (row, ambient column) pairs, row-major.  ``columns`` are the
    non-pivot ambient columns in order (the diagram's columns, left to right).
    """

    pivots: PivotVector

    @property
    def k(self) -> int:
        return sum(self.pivots)

    @property
    def columns(self) -> list[int]:
        return [i for i, x in enumerate(self.pivots) if not x]

    @property
    def dots(self) -> list[tuple[int, int]]:
        cols = pivot_columns(self.pivots)
        free = self.columns
        return [(r, c) for r, pc in enumerate(cols) for c in free if c > pc]

    @property
    def dot_count(self) -> int:
        return len(self.dots)

    def row_counts(self) -> list[int]:
        counts = [0] * self.k
        for r, _ in self.dots:
            counts[r] += 1
        return counts

    def mask(self) -> np.ndarray:
        """Boolean k x (n-k) mask of dots in the pivot-deleted coordinates."""
        free = self.columns
        pos = {c: j for j, c in enumerate(free)}
        m = np.zeros((self.k, len(free)), dtype=bool)
        for r, c in self.dots:
            m[r, pos[c]] = True
        return m

    def __str__(self) -> str:
        cols = pivot_columns(self.pivots)
        free = self.columns
        lines = []
        for pc in cols:
            lines.append(" ".join("*" if c > pc else " " for c in free).rstrip())
        return "\n".join(lines)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or n < 0:
        raise ValueError("n and k must be non-negative")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    num, den = 1, 1
    for i in range(1, k + 1):
        num *= q ** (n - k + i) - 1
        den *= q**i - 1
    return num // den


def pivot_vectors(n: int, k: int) -> list[PivotVector]:
    """Weight-k binary vectors of length n in decreasing colexicographic order.

    Positions are compared from the right, so the first vector is (0,..,0,1,..,1).
    """
    combos = sorted(itertools.combinations(range(n), k), key=lambda c: c[::-1], reverse=True)
    return [pivot_vector_from_columns(c, n) for c in combos]


def ef_free_positions(v: PivotVector) -> list[tuple[int, int]]:
    """Free (row, column) positions in row-major order; the odometer digit order."""
    return FerrersDiagram(tuple(v)).dots


def ef_matrices(v: PivotVector, field: Field) -> Iterator[np.ndarray]:
    """All RRE matrices with pivot vector ``v``, free entries in odometer order."""
    cols = pivot_columns(v)
    k, n = len(cols), len(v)
    free = ef_free_positions(v)
    base = np.zeros((k, n), dtype=np.int64)
    for r, c in enumerate(cols):
        base[r, c] = 1
    if not free:
        yield base.copy()
        return
    rr = np.array([r for r, _ in free])
    cc = np.array([c for _, c in free])
    for digits in itertools.product(range(field.order), repeat=len(free)):
        m = base.copy()
        m[rr, cc] = digits
        yield m


def enumerate_grassmannian(n: int, k: int, q: int, budget: int = DEFAULT_ENUMERATION_BUDGET):
    """Yield every k-subspace of F_q^n once, grouped by pivot vector."""
    from .gf_arith import gf
    from .subspace import Subspace

    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    total = gaussian_binomial(n, k, q)
    if total > budget:
        raise BudgetExceededError(f"|G_{q}({n},{k})| = {total} exceeds budget {budget}")
    field = gf(q)
    for v in pivot_vectors(n, k):
        for m in ef_matrices(v, field):
            yield Subspace(field, m, trusted=True)
