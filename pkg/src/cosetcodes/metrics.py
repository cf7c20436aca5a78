"""Subspace, injection, rank and Hamming distances, and code minimum distance.

Subspace distances are computed from the rank of the stacked generators:
dim(U + W) = rank([U; W]), so d_S = 2 rank - dim U - dim W and
d_I = rank - min(dim U, dim W).
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels as K
from .errors import FieldMismatchError, ShapeError
from .fq_matrix import FqMatrix, rank_array
from .subspace import Code, Subspace

__all__ = [
    "Code",
    "MinDistance",
    "Subspace",
    "hamming_distance",
    "injection_distance",
    "min_distance",
    "min_rank_distance",
    "pair_distances",
    "rank_distance",
    "subspace_distance",
]

METRICS = ("subspace", "injection")


def _stacked_rank(u: Subspace, w: Subspace) -> int:
    if u.field != w.field:
        raise FieldMismatchError(f"{u.field} vs {w.field}")
    if u.n != w.n:
        raise ShapeError(f"ambient dimensions differ: {u.n} vs {w.n}")
    return rank_array(u.field, np.vstack([u.matrix, w.matrix]))


def subspace_distance(u: Subspace, w: Subspace) -> int:
    return 2 * _stacked_rank(u, w) - u.dim - w.dim


def injection_distance(u: Subspace, w: Subspace) -> int:
    return _stacked_rank(u, w) - min(u.dim, w.dim)


def rank_distance(a: FqMatrix, b: FqMatrix) -> int:
    """rk(A - B)."""
    if a.shape != b.shape:
        raise ShapeError(f"{a.shape} vs {b.shape}")
    return (a - b).rank()


def hamming_distance(v: Sequence[int], w: Sequence[int]) -> int:
    if len(v) != len(w):
        raise ShapeError(f"lengths differ: {len(v)} vs {len(w)}")
    return sum(1 for x, y in zip(v, w) if x != y)


class MinDistance(NamedTuple):
    value: int
    pair: tuple[Subspace, Subspace]
    indices: tuple[int, int]


def _metric_code(metric: str) -> int:
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    return METRICS.index(metric)


def _packed(code: Code):
    """Packed GF(2) rows, pivot masks and dims for ``code`` (cached on the code)."""
    key = "packed"
    if key not in code._cache:
        arr, dims = code.kernel_arrays()
        rows = K.pack_gf2(arr) if arr.size else np.zeros((len(code), arr.shape[1]), dtype=np.int64)
        piv = K.pivot_masks_gf2(rows)
        code._cache[key] = (rows, piv, dims)
    return code._cache[key]


def _use_gf2(code: Code) -> bool:
    return code.q == 2 and code.n <= K.GF2_MAX_N


def min_distance(code: Code, metric: str = "subspace", floor: int | None = None) -> MinDistance:
    """Exact minimum distance over all unordered pairs, with a witness pair.

    The scan stops early once the running minimum reaches ``floor``.  Distinct
    subspaces are at distance >= 1 in both metrics, so the default is 1.
    """
    if len(code) < 2:
        raise ValueError("minimum distance needs at least two codewords")
    mc = _metric_code(metric)
    floor = 1 if floor is None else floor
    if _use_gf2(code):
        rows, piv, dims = _packed(code)
        best, i, j = K.gf2_min_distance(rows, piv, dims, mc, floor)
    else:
        arr, dims = code.kernel_arrays()
        add, mul, neg, inv = K.tables(code.field)
        best, i, j = K.generic_min_distance(arr, dims, mc, floor, add, mul, neg, inv)
    mem = code.members
    return MinDistance(int(best), (mem[i], mem[j]), (int(i), int(j)))


def pair_distances(code: Code, pairs: np.ndarray, metric: str = "subspace") -> np.ndarray:
    """Distances for an (P, 2) array of member index pairs."""
    mc = _metric_code(metric)
    pairs = np.ascontiguousarray(pairs, dtype=np.int64).reshape(-1, 2)
    if _use_gf2(code):
        rows, piv, dims = _packed(code)
        return K.gf2_pair_distances(rows, piv, dims, pairs, mc)
    arr, dims = code.kernel_arrays()
    add, mul, neg, inv = K.tables(code.field)
    return K.generic_pair_distances(arr, dims, pairs, mc, add, mul, neg, inv)


def cross_min_distance(a: Code, b: Code, floor: int = 0) -> tuple[int, int, int]:
    """min d_S(U, W) over U in a, W in b (GF(2) only); returns (value, i, j)."""
    if not (_use_gf2(a) and _use_gf2(b)) or a.n != b.n:
        raise ValueError("cross_min_distance needs two GF(2) codes in one ambient space")
    ra, pa, da = _packed(a)
    rb, _, db = _packed(b)
    best, i, j = K.gf2_cross_min_distance(ra, pa, da, rb, db, 0, floor)
    return int(best), int(i), int(j)


def min_rank_distance(field, mats: np.ndarray, floor: int = 0) -> tuple[int, int, int]:
    """Pairwise minimum rank distance of an (N, m, n) stack of matrices."""
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    if field.order == 2 and mats.shape[2] <= K.GF2_MAX_N:
        best, i, j = K.gf2_min_rank_distance(K.pack_gf2(mats), floor)
    else:
        add, mul, neg, inv = K.tables(field)
        best, i, j = K.generic_min_rank_distance(mats, floor, add, mul, neg, inv)
    return int(best), int(i), int(j)


def min_rank_weight(field, mats: np.ndarray) -> int:
    """Minimum rank of the nonzero matrices in an (N, m, n) stack (large if none)."""
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    if field.order == 2 and mats.shape[2] <= K.GF2_MAX_N:
        return int(K.gf2_min_rank_weight(K.pack_gf2(mats)))
    add, mul, neg, inv = K.tables(field)
    return int(K.generic_min_rank_weight(mats, add, mul, neg, inv))
