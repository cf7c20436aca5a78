"""Compiled inner loops.

Two representations are used:

* GF(2): each matrix row is packed into an int64, column j at bit n-1-j, so
  the pivot of an RRE row is its highest set bit.  Requires n <= 62.
* generic F_q (q <= 256): int64 arrays of encodings plus add/mul/neg/inv
  lookup tables built by :func:`tables`.

The stacked-rank kernels serve :mod:`cosetcodes.metrics`; the
intersection-counting kernels serve :mod:`cosetcodes.verify` and never call
the elimination routines.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .gf_arith import Field

GF2_MAX_N = 62
TABLE_MAX_Q = 256
_BIG = 1 << 30


def tables(field: Field) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(ADD, MUL, NEG, INV) lookup tables for a small field."""
    cached = getattr(field, "_kernel_tables", None)
    if cached is not None:
        return cached
    q = field.order
    if q > TABLE_MAX_Q:
        raise ValueError(f"lookup tables limited to q <= {TABLE_MAX_Q}")
    a = np.arange(q, dtype=np.int64)
    add = field.add_arr(a[:, None], a[None, :]).astype(np.int64)
    mul = field.mul_arr(a[:, None], a[None, :]).astype(np.int64)
    neg = field.neg_arr(a).astype(np.int64)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = field.inv_arr(a[1:])
    out = (add, mul, neg, inv)
    field._kernel_tables = out
    return out


def pack_gf2(arr: np.ndarray) -> np.ndarray:
    """Pack the last axis (length n <= 62) of a 0/1 array into int64 bitmasks."""
    arr = np.asarray(arr, dtype=np.int64)
    n = arr.shape[-1]
    if n > GF2_MAX_N:
        raise ValueError(f"packed GF(2) rows limited to n <= {GF2_MAX_N}")
    weights = np.array([1 << (n - 1 - j) for j in range(n)], dtype=np.int64)
    return (arr * weights).sum(axis=-1).astype(np.int64)


def pivot_masks_gf2(packed: np.ndarray) -> np.ndarray:
    """Highest set bit of each packed row (0 for zero rows)."""
    out = np.zeros_like(packed)
    nz = packed != 0
    hb = np.floor(np.log2(packed[nz].astype(np.float64))).astype(np.int64)
    vals = packed[nz]
    # guard float rounding near powers of two
    hb = np.where((np.int64(1) << hb) > vals, hb - 1, hb)
    hb = np.where((np.int64(1) << (hb + 1)) <= vals, hb + 1, hb)
    out[nz] = np.int64(1) << hb
    return out


# ---------------------------------------------------------------------------
# GF(2) stacked rank


@njit(cache=True)
def _gf2_rank_inplace(work, m):
    rank = 0
    for i in range(m):
        x = work[i]
        if x == 0:
            continue
        rank += 1
        lb = x & (-x)
        for j in range(i + 1, m):
            if work[j] & lb:
                work[j] ^= x
    return rank


@njit(cache=True)
def _gf2_excess(urows, upiv, ku, wrows, kw, work):
    """rank([U; W]) - dim U for U in RRE (rows + pivot masks)."""
    for t in range(kw):
        r = wrows[t]
        for s in range(ku):
            if r & upiv[s]:
                r ^= urows[s]
        work[t] = r
    return _gf2_rank_inplace(work, kw)


@njit(cache=True)
def _distance(metric, ku, kw, stacked_rank):
    if metric == 0:
        return 2 * stacked_rank - ku - kw
    return stacked_rank - min(ku, kw)


@njit(cache=True)
def gf2_min_distance(rows, piv, dims, metric, floor):
    m = rows.shape[0]
    work = np.zeros(max(rows.shape[1], 1), dtype=np.int64)
    best, bi, bj = _BIG, -1, -1
    for i in range(m):
        for j in range(i + 1, m):
            e = _gf2_excess(rows[i], piv[i], dims[i], rows[j], dims[j], work)
            d = _distance(metric, dims[i], dims[j], dims[i] + e)
            if d < best:
                best, bi, bj = d, i, j
                if best <= floor:
                    return best, bi, bj
    return best, bi, bj


@njit(cache=True)
def gf2_pair_distances(rows, piv, dims, pairs, metric):
    out = np.empty(pairs.shape[0], dtype=np.int64)
    work = np.zeros(max(rows.shape[1], 1), dtype=np.int64)
    for t in range(pairs.shape[0]):
        i, j = pairs[t, 0], pairs[t, 1]
        e = _gf2_excess(rows[i], piv[i], dims[i], rows[j], dims[j], work)
        out[t] = _distance(metric, dims[i], dims[j], dims[i] + e)
    return out


@njit(cache=True)
def gf2_cross_min_distance(rows_a, piv_a, dims_a, rows_b, dims_b, metric, floor):
    """Minimum distance between members of A and members of B."""
    work = np.zeros(max(rows_b.shape[1], 1), dtype=np.int64)
    best, bi, bj = _BIG, -1, -1
    for i in range(rows_a.shape[0]):
        for j in range(rows_b.shape[0]):
            e = _gf2_excess(rows_a[i], piv_a[i], dims_a[i], rows_b[j], dims_b[j], work)
            d = _distance(metric, dims_a[i], dims_b[j], dims_a[i] + e)
            if d < best:
                best, bi, bj = d, i, j
                if best <= floor:
                    return best, bi, bj
    return best, bi, bj


@njit(cache=True)
def gf2_rank_rows(rows):
    work = rows.copy()
    return _gf2_rank_inplace(work, work.shape[0])


@njit(cache=True)
def gf2_min_rank_distance(mats, floor):
    """Pairwise minimum of rank(A xor B) over packed m x n matrices (N, m)."""
    n_codes, m = mats.shape
    work = np.zeros(m, dtype=np.int64)
    best, bi, bj = _BIG, -1, -1
    for i in range(n_codes):
        for j in range(i + 1, n_codes):
            for t in range(m):
                work[t] = mats[i, t] ^ mats[j, t]
            r = _gf2_rank_inplace(work, m)
            if r < best:
                best, bi, bj = r, i, j
                if best <= floor:
                    return best, bi, bj
    return best, bi, bj


@njit(cache=True)
def gf2_min_rank_weight(mats):
    """Minimum rank over the nonzero packed matrices (N, m); _BIG if none."""
    n_codes, m = mats.shape
    work = np.zeros(m, dtype=np.int64)
    best = _BIG
    for i in range(n_codes):
        nz = False
        for t in range(m):
            work[t] = mats[i, t]
            if work[t] != 0:
                nz = True
        if not nz:
            continue
        r = _gf2_rank_inplace(work, m)
        if r < best:
            best = r
    return best


# ---------------------------------------------------------------------------
# generic F_q rank


@njit(cache=True)
def _rank_inplace(work, nrows, ncols, add, mul, neg, inv):
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if work[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for t in range(ncols):
                tmp = work[r, t]
                work[r, t] = work[piv, t]
                work[piv, t] = tmp
        s = inv[work[r, c]]
        for t in range(c, ncols):
            work[r, t] = mul[s, work[r, t]]
        for i in range(r + 1, nrows):
            f = work[i, c]
            if f != 0:
                nf = neg[f]
                for t in range(c, ncols):
                    if work[r, t] != 0:
                        work[i, t] = add[work[i, t], mul[nf, work[r, t]]]
        r += 1
    return r


@njit(cache=True)
def rank_generic(mat, add, mul, neg, inv):
    work = mat.copy()
    return _rank_inplace(work, work.shape[0], work.shape[1], add, mul, neg, inv)


@njit(cache=True)
def _stack(u, ku, w, kw, work):
    n = u.shape[1]
    for i in range(ku):
        for t in range(n):
            work[i, t] = u[i, t]
    for i in range(kw):
        for t in range(n):
            work[ku + i, t] = w[i, t]


@njit(cache=True)
def generic_min_distance(mats, dims, metric, floor, add, mul, neg, inv):
    m, kmax, n = mats.shape
    work = np.zeros((2 * kmax, n), dtype=np.int64)
    best, bi, bj = _BIG, -1, -1
    for i in range(m):
        for j in range(i + 1, m):
            _stack(mats[i], dims[i], mats[j], dims[j], work)
            r = _rank_inplace(work, dims[i] + dims[j], n, add, mul, neg, inv)
            d = _distance(metric, dims[i], dims[j], r)
            if d < best:
                best, bi, bj = d, i, j
                if best <= floor:
                    return best, bi, bj
    return best, bi, bj


@njit(cache=True)
def generic_pair_distances(mats, dims, pairs, metric, add, mul, neg, inv):
    m, kmax, n = mats.shape
    work = np.zeros((2 * kmax, n), dtype=np.int64)
    out = np.empty(pairs.shape[0], dtype=np.int64)
    for t in range(pairs.shape[0]):
        i, j = pairs[t, 0], pairs[t, 1]
        _stack(mats[i], dims[i], mats[j], dims[j], work)
        r = _rank_inplace(work, dims[i] + dims[j], n, add, mul, neg, inv)
        out[t] = _distance(metric, dims[i], dims[j], r)
    return out


@njit(cache=True)
def generic_min_rank_distance(mats, floor, add, mul, neg, inv):
    n_codes, m, n = mats.shape
    work = np.zeros((m, n), dtype=np.int64)
    best, bi, bj = _BIG, -1, -1
    for i in range(n_codes):
        for j in range(i + 1, n_codes):
            for a in range(m):
                for b in range(n):
                    work[a, b] = add[mats[i, a, b], neg[mats[j, a, b]]]
            r = _rank_inplace(work, m, n, add, mul, neg, inv)
            if r < best:
                best, bi, bj = r, i, j
                if best <= floor:
                    return best, bi, bj
    return best, bi, bj


@njit(cache=True)
def generic_min_rank_weight(mats, add, mul, neg, inv):
    n_codes, m, n = mats.shape
    work = np.zeros((m, n), dtype=np.int64)
    best = _BIG
    for i in range(n_codes):
        nz = False
        for a in range(m):
            for b in range(n):
                work[a, b] = mats[i, a, b]
                if work[a, b] != 0:
                    nz = True
        if not nz:
            continue
        r = _rank_inplace(work, m, n, add, mul, neg, inv)
        if r < best:
            best = r
    return best


# ---------------------------------------------------------------------------
# definitional intersection kernels (verifier only)


@njit(cache=True)
def _gf2_member(v, wrows, wpiv, kw):
    for s in range(kw):
        if v & wpiv[s]:
            v ^= wrows[s]
    return v == 0


@njit(cache=True)
def _gf2_intersection_size(urows, ku, wrows, wpiv, kw):
    """|U cap W| by walking U in Gray-code order and testing membership in W."""
    count = 1  # zero vector
    v = 0
    for t in range(1, 1 << ku):
        b = 0
        while not (t >> b) & 1:
            b += 1
        v ^= urows[b]
        if _gf2_member(v, wrows, wpiv, kw):
            count += 1
    return count


@njit(cache=True)
def _log_q(count, q):
    d = 0
    while count > 1:
        count //= q
        d += 1
    return d


@njit(cache=True)
def _def_distance(metric, ku, kw, inter):
    if metric == 0:
        return ku + kw - 2 * inter
    return max(ku, kw) - inter


@njit(cache=True)
def gf2_intersection_min_distance(rows, piv, dims, metric, floor):
    m = rows.shape[0]
    best, bi, bj = _BIG, -1, -1
    for i in range(m):
        for j in range(i + 1, m):
            if dims[i] <= dims[j]:
                c = _gf2_intersection_size(rows[i], dims[i], rows[j], piv[j], dims[j])
            else:
                c = _gf2_intersection_size(rows[j], dims[j], rows[i], piv[i], dims[i])
            d = _def_distance(metric, dims[i], dims[j], _log_q(c, 2))
            if d < best:
                best, bi, bj = d, i, j
                if best <= floor:
                    return best, bi, bj
    return best, bi, bj


@njit(cache=True)
def gf2_intersection_pair_distances(rows, piv, dims, pairs, metric):
    out = np.empty(pairs.shape[0], dtype=np.int64)
    for t in range(pairs.shape[0]):
        i, j = pairs[t, 0], pairs[t, 1]
        if dims[i] <= dims[j]:
            c = _gf2_intersection_size(rows[i], dims[i], rows[j], piv[j], dims[j])
        else:
            c = _gf2_intersection_size(rows[j], dims[j], rows[i], piv[i], dims[i])
        out[t] = _def_distance(metric, dims[i], dims[j], _log_q(c, 2))
    return out


@njit(cache=True)
def _generic_intersection_size(u, ku, w, wpc, kw, q, add, mul, neg, vec, r):
    n = u.shape[1]
    total = 1
    for _ in range(ku):
        total *= q
    count = 0
    for idx in range(total):
        for t in range(n):
            vec[t] = 0
        x = idx
        for i in range(ku):
            c = x % q
            x //= q
            if c != 0:
                for t in range(n):
                    vec[t] = add[vec[t], mul[c, u[i, t]]]
        for t in range(n):
            r[t] = vec[t]
        for s in range(kw):
            c = r[wpc[s]]
            if c != 0:
                nc = neg[c]
                for t in range(n):
                    r[t] = add[r[t], mul[nc, w[s, t]]]
        member = True
        for t in range(n):
            if r[t] != 0:
                member = False
                break
        if member:
            count += 1
    return count


@njit(cache=True)
def generic_intersection_pair_distances(mats, pivcols, dims, pairs, metric, q, add, mul, neg):
    n = mats.shape[2]
    vec = np.zeros(n, dtype=np.int64)
    r = np.zeros(n, dtype=np.int64)
    out = np.empty(pairs.shape[0], dtype=np.int64)
    for t in range(pairs.shape[0]):
        i, j = pairs[t, 0], pairs[t, 1]
        if dims[i] <= dims[j]:
            c = _generic_intersection_size(mats[i], dims[i], mats[j], pivcols[j], dims[j], q, add, mul, neg, vec, r)
        else:
            c = _generic_intersection_size(mats[j], dims[j], mats[i], pivcols[i], dims[i], q, add, mul, neg, vec, r)
        out[t] = _def_distance(metric, dims[i], dims[j], _log_q(c, q))
    return out


@njit(cache=True)
def generic_intersection_min_distance(mats, pivcols, dims, metric, floor, q, add, mul, neg):
    m, kmax, n = mats.shape
    vec = np.zeros(n, dtype=np.int64)
    r = np.zeros(n, dtype=np.int64)
    best, bi, bj = _BIG, -1, -1
    for i in range(m):
        for j in range(i + 1, m):
            if dims[i] <= dims[j]:
                c = _generic_intersection_size(mats[i], dims[i], mats[j], pivcols[j], dims[j], q, add, mul, neg, vec, r)
            else:
                c = _generic_intersection_size(mats[j], dims[j], mats[i], pivcols[i], dims[i], q, add, mul, neg, vec, r)
            d = _def_distance(metric, dims[i], dims[j], _log_q(c, q))
            if d < best:
                best, bi, bj = d, i, j
                if best <= floor:
                    return best, bi, bj
    return best, bi, bj


# ---------------------------------------------------------------------------
# extension scan over one pivot class (GF(2))


@njit(cache=True)
def gf2_scan_pivot_class(base_rows, base_piv, free_row, free_bit, start, stop, risky_rows, risky_dims, dmin, order):
    """First odometer index in [start, stop) whose subspace is at distance >= dmin from all risky words.

    ``order`` is permuted in place (transpose-to-front on conflicts).  Returns -1
    if the range is exhausted.
    """
    k = base_rows.shape[0]
    f = free_row.shape[0]
    total = min(np.int64(1) << f, stop)
    rows = np.zeros(k, dtype=np.int64)
    work = np.zeros(max(risky_rows.shape[1], 1), dtype=np.int64)
    nr = order.shape[0]
    for x in range(start, total):
        for i in range(k):
            rows[i] = base_rows[i]
        for t in range(f):
            if (x >> (f - 1 - t)) & 1:
                rows[free_row[t]] |= free_bit[t]
        ok = True
        for p in range(nr):
            j = order[p]
            e = _gf2_excess(rows, base_piv, k, risky_rows[j], risky_dims[j], work)
            d = k - risky_dims[j] + 2 * e
            if d < dmin:
                ok = False
                if p > 0:
                    order[p] = order[p - 1]
                    order[p - 1] = j
                break
        if ok:
            return x
    return -1


@njit(cache=True)
def gf2_scan_pivot_class_lifted(
    base_rows, base_piv, free_row, free_bit, start, stop,
    lift_ptr, lift_items, nlift, wbits, need,
    risky_rows, risky_dims, dmin, order,
):
    """Like :func:`gf2_scan_pivot_class`, with a fast test against a lifted block.

    The lifted block is {rowspace [I | M]}: a vector (u | w) lies in the
    member for M iff w = uM.  ``lift_items[lift_ptr[key]:lift_ptr[key + 1]]``
    lists the members containing the vector with packed value ``key``.  A
    candidate is too close to a member once ``need`` of its nonzero vectors
    lie in it.  The remaining risky words are checked by rank.
    """
    k = base_rows.shape[0]
    f = free_row.shape[0]
    total = min(np.int64(1) << f, stop)
    rows = np.zeros(k, dtype=np.int64)
    work = np.zeros(max(risky_rows.shape[1], 1), dtype=np.int64)
    stamp = np.full(max(nlift, 1), -1, dtype=np.int64)
    cnt = np.zeros(max(nlift, 1), dtype=np.int64)
    nr = order.shape[0]
    for x in range(start, total):
        for i in range(k):
            rows[i] = base_rows[i]
        for t in range(f):
            if (x >> (f - 1 - t)) & 1:
                rows[free_row[t]] |= free_bit[t]
        ok = True
        if nlift > 0:
            v = np.int64(0)
            for t in range(1, 1 << k):
                b = 0
                while not (t >> b) & 1:
                    b += 1
                v ^= rows[b]
                if (v >> wbits) == 0:
                    continue
                for p in range(lift_ptr[v], lift_ptr[v + 1]):
                    j = lift_items[p]
                    if stamp[j] != x:
                        stamp[j] = x
                        cnt[j] = 0
                    cnt[j] += 1
                    if cnt[j] >= need:
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            continue
        for p in range(nr):
            j = order[p]
            e = _gf2_excess(rows, base_piv, k, risky_rows[j], risky_dims[j], work)
            d = k - risky_dims[j] + 2 * e
            if d < dmin:
                ok = False
                if p > 0:
                    order[p] = order[p - 1]
                    order[p - 1] = j
                break
        if ok:
            return x
    return -1
