"""Subspaces of F_q^n (stored as their canonical RRE generator) and codes of them."""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .errors import FieldMismatchError
from .fq_matrix import FqMatrix, PivotVector, pivot_vector_from_columns, rre_array
from .gf_arith import Field


class Subspace:
    """A subspace of F_q^n, identified with its reduced row echelon generator.

    Any generator matrix is accepted; it is reduced on construction unless
    ``trusted=True`` promises it is already a full-rank RRE matrix.
    """

    __slots__ = ("field", "matrix", "_hash", "_pivots")

    def __init__(self, field: Field, matrix, n: int | None = None, *, trusted: bool = False):
        arr = np.asarray(matrix, dtype=np.int64)
        if arr.ndim != 2:
            if arr.size:
                raise ValueError(f"generator must be 2-d, got shape {arr.shape}")
            arr = arr.reshape(0, n or 0)
        if trusted:
            arr = np.array(arr, dtype=np.int64, copy=True)
            pivots = None
        else:
            arr, piv = rre_array(field, arr)
            pivots = tuple(piv)
        arr.setflags(write=False)
        self.field = field
        self.matrix = arr
        self._pivots = pivots
        self._hash = hash((field.order, arr.shape, arr.tobytes()))

    @classmethod
    def from_fq(cls, m: FqMatrix) -> Subspace:
        return cls(m.field, m.data)

    @classmethod
    def from_text(cls, field: Field, text: str, n: int) -> Subspace:
        return cls(field, FqMatrix.from_text(field, text, n).data.reshape(-1, n), n)

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    k = dim

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def pivots(self) -> tuple[int, ...]:
        """Pivot column indices."""
        if self._pivots is None:
            self._pivots = tuple(int(np.nonzero(row)[0][0]) for row in self.matrix)
        return self._pivots

    @property
    def pivot_vector(self) -> PivotVector:
        return pivot_vector_from_columns(self.pivots, self.n)

    def generator(self) -> FqMatrix:
        return FqMatrix(self.field, self.matrix)

    def sort_key(self) -> tuple:
        return (self.dim, tuple(int(x) for x in self.matrix.ravel()))

    def to_text(self) -> str:
        return ";".join(" ".join(str(int(x)) for x in row) for row in self.matrix)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.field == other.field
            and self.matrix.shape == other.matrix.shape
            and bool(np.array_equal(self.matrix, other.matrix))
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Subspace) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Subspace(q={self.q}, n={self.n}, k={self.dim}, {self.to_text()!r})"


class Code:
    """A set of subspaces of one ambient space F_q^n (insertion-ordered, no duplicates)."""

    def __init__(self, field: Field, n: int, members: Iterable[Subspace] = ()):
        self.field = field
        self.n = n
        self._members: dict[Subspace, None] = {}
        self.duplicates = 0
        self._cache: dict = {}
        self.update(members)

    def add(self, s: Subspace) -> bool:
        """Add ``s``; return False if it was already present."""
        if s.field != self.field or s.n != self.n:
            raise FieldMismatchError(f"subspace of F_{s.q}^{s.n} added to code in F_{self.field.order}^{self.n}")
        if s in self._members:
            self.duplicates += 1
            return False
        self._members[s] = None
        self._cache.clear()
        return True

    def update(self, members: Iterable[Subspace]) -> None:
        for s in members:
            self.add(s)

    def union(self, *others: Code) -> Code:
        out = Code(self.field, self.n, self)
        for o in others:
            out.update(o)
        return out

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self._members)

    def __contains__(self, s: object) -> bool:
        return s in self._members

    def __getitem__(self, i: int) -> Subspace:
        return self.members[i]

    @property
    def members(self) -> list[Subspace]:
        if "members" not in self._cache:
            self._cache["members"] = list(self._members)
        return self._cache["members"]

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def dims(self) -> set[int]:
        return {s.dim for s in self._members}

    @property
    def is_constant_dimension(self) -> bool:
        return len(self.dims) <= 1

    @property
    def k(self) -> int | None:
        d = self.dims
        return next(iter(d)) if len(d) == 1 else None

    def sorted(self) -> Code:
        return Code(self.field, self.n, sorted(self._members, key=Subspace.sort_key))

    def kernel_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(M, kmax, n) generator stack zero-padded, and the (M,) dimensions."""
        if "arrays" not in self._cache:
            mem = self.members
            kmax = max((s.dim for s in mem), default=0)
            arr = np.zeros((len(mem), kmax, self.n), dtype=np.int64)
            dims = np.zeros(len(mem), dtype=np.int64)
            for i, s in enumerate(mem):
                arr[i, : s.dim] = s.matrix
                dims[i] = s.dim
            self._cache["arrays"] = (arr, dims)
        return self._cache["arrays"]

    def __repr__(self) -> str:
        k = self.k
        kd = f"k={k}" if k is not None else f"dims={sorted(self.dims)}"
        return f"Code(q={self.q}, n={self.n}, {kd}, size={len(self)})"
