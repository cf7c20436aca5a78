from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cosetcodes import (
    Code,
    FqMatrix,
    Subspace,
    enumerate_grassmannian,
    gf,
    hamming_distance,
    injection_distance,
    min_distance,
    rank_distance,
    subspace_distance,
)
from cosetcodes.errors import ShapeError
from cosetcodes.metrics import cross_min_distance, min_rank_distance, pair_distances
from oracles import (
    all_subspaces_gf2,
    batched_rank,
    field_tables,
    injection_distance_naive,
    prime_tables,
    subspace_distance_naive,
)

F2, F3 = gf(2), gf(3)


def _bits(x: int, n: int) -> list[int]:
    return [(x >> (n - 1 - j)) & 1 for j in range(n)]


def _pg(n: int):
    """All subspaces of F_2^n as (vector set, Subspace) pairs."""
    out = []
    for s in sorted(all_subspaces_gf2(n), key=lambda s: (len(s), sorted(s))):
        rows = [_bits(x, n) for x in sorted(s) if x]
        out.append((s, Subspace(F2, np.array(rows, dtype=np.int64).reshape(-1, n), n)))
    return out


@pytest.fixture(scope="module")
def pg4():
    return _pg(4)


def _log2(m: int) -> int:
    return m.bit_length() - 1


def test_pg4_has_67_distinct_canonical_members(pg4):
    assert len(pg4) == 67
    assert len({s for _, s in pg4}) == 67
    assert [sum(1 for v, _ in pg4 if len(v) == 2**k) for k in range(5)] == [1, 15, 35, 15, 1]


def test_distances_match_intersection_counts_on_pg4(pg4):
    m = len(pg4)
    ds = np.zeros((m, m), dtype=np.int64)
    di = np.zeros((m, m), dtype=np.int64)
    for i, (su, u) in enumerate(pg4):
        for j, (sw, w) in enumerate(pg4):
            a, b, c = _log2(len(su)), _log2(len(sw)), _log2(len(su & sw))
            ds[i, j] = subspace_distance(u, w)
            di[i, j] = injection_distance(u, w)
            assert ds[i, j] == a + b - 2 * c
            assert di[i, j] == max(a, b) - c
    for d in (ds, di):
        assert np.all(np.diag(d) == 0)
        off = ~np.eye(m, dtype=bool)
        assert np.all(d[off] > 0)
        assert np.array_equal(d, d.T)
        # triangle inequality over all 67^3 triples
        assert np.all(d[:, None, :] <= d[:, :, None] + d[None, :, :])
    assert np.all(di <= ds) and np.all(ds <= 2 * di)


def test_pivot_hamming_lower_bound_on_pg4(pg4):
    for (_, u), (_, w) in itertools.product(pg4, repeat=2):
        assert subspace_distance(u, w) >= hamming_distance(u.pivot_vector, w.pivot_vector)


def test_same_pivot_distance_is_twice_rank_on_g_2_5_2():
    subs = list(enumerate_grassmannian(5, 2, 2))
    add, mul = prime_tables(2)
    pairs = [(u, w) for u, w in itertools.combinations(subs, 2) if u.pivot_vector == w.pivot_vector]
    assert pairs
    diffs = np.array([(u.matrix + w.matrix) % 2 for u, w in pairs])
    ranks = batched_rank(diffs, 2, add, mul)
    for (u, w), r in zip(pairs, ranks):
        assert subspace_distance(u, w) == 2 * int(r)
        assert rank_distance(u.generator(), w.generator()) == r


def test_subspace_distance_examples():
    u = Subspace.from_text(F2, "1 0 0 0;0 1 0 0", 4)
    w = Subspace.from_text(F2, "0 0 1 0;0 0 0 1", 4)
    assert subspace_distance(u, u) == 0
    assert subspace_distance(u, w) == 4
    assert injection_distance(u, w) == 2
    p = Subspace.from_text(F2, "1 0 0 0", 4)
    assert subspace_distance(u, p) == 1 and injection_distance(u, p) == 1


def test_distance_errors():
    u = Subspace.from_text(F2, "1 0 0", 3)
    with pytest.raises(ShapeError):
        subspace_distance(u, Subspace.from_text(F2, "1 0 0 0", 4))
    with pytest.raises(ShapeError):
        hamming_distance((1, 0), (1, 0, 0))
    with pytest.raises(ShapeError):
        rank_distance(FqMatrix.zeros(F2, 2, 2), FqMatrix.zeros(F2, 2, 3))


def test_hamming_examples():
    v1 = (1, 1, 1, 1, 0, 0, 0, 0)
    v2 = (0, 0, 0, 0, 1, 1, 1, 1)
    assert hamming_distance(v1, v1) == 0
    assert hamming_distance(v1, v2) == 8


@given(st.lists(st.integers(0, 1), min_size=1, max_size=12), st.data())
def test_hamming_weight_difference_bound(v, data):
    w = data.draw(st.lists(st.integers(0, 1), min_size=len(v), max_size=len(v)))
    assert hamming_distance(v, w) >= abs(sum(v) - sum(w))


@given(st.data())
def test_rank_distance_translation_invariant(data):
    q = data.draw(st.sampled_from([2, 3, 4]))
    f = gf(q)
    shape = (data.draw(st.integers(1, 4)), data.draw(st.integers(1, 4)))
    mk = lambda: FqMatrix(f, np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=shape[0] * shape[1],
                                                          max_size=shape[0] * shape[1]))).reshape(shape))
    a, b, c = mk(), mk(), mk()
    assert rank_distance(a, a) == 0
    assert rank_distance(a + c, b + c) == rank_distance(a, b) == rank_distance(b, a)


def test_rank_distance_full_rank_difference():
    a = FqMatrix.from_text(F3, "1 0 2;0 1 1")
    assert rank_distance(a, FqMatrix.zeros(F3, 2, 3)) == 2


def test_equal_dimension_injection_is_half_subspace():
    subs = list(enumerate_grassmannian(4, 2, 3))
    for u, w in itertools.islice(itertools.combinations(subs, 2), 3000):
        assert subspace_distance(u, w) == 2 * injection_distance(u, w)


# -- min_distance ------------------------------------------------------------


def _naive_min(code: Code, metric: str) -> int:
    f = code.field
    add, mul = field_tables(f.p, f.e, tuple(f.modulus)) if f.e > 1 else prime_tables(f.p)
    fn = subspace_distance_naive if metric == "subspace" else injection_distance_naive
    return min(fn(u.matrix, w.matrix, code.q, add, mul) for u, w in itertools.combinations(code.members, 2))


@lru_cache(maxsize=None)
def _pool(q: int, n: int) -> list[Subspace]:
    return [s for k in range(1, n) for s in enumerate_grassmannian(n, k, q, budget=10**6)]


@pytest.mark.parametrize("q,n", [(2, 5), (3, 4), (4, 3), (2, 7)])
@given(data=st.data())
def test_min_distance_matches_naive(q, n, data):
    pool = _pool(q, n)
    idx = data.draw(st.lists(st.integers(0, len(pool) - 1), min_size=2, max_size=9, unique=True))
    code = Code(gf(q), n, [pool[i] for i in idx])
    for metric in ("subspace", "injection"):
        res = min_distance(code, metric)
        assert res.value == _naive_min(code, metric)
        u, w = res.pair
        fn = subspace_distance if metric == "subspace" else injection_distance
        assert fn(u, w) == res.value
        assert code[res.indices[0]] is u


def test_min_distance_of_spread_and_errors():
    from cosetcodes.packing import spread

    assert min_distance(spread(4, 2, 2)).value == 4
    assert min_distance(spread(6, 3, 2)).value == 6
    with pytest.raises(ValueError):
        min_distance(Code(F2, 3, [Subspace.from_text(F2, "1 0 0", 3)]))
    with pytest.raises(ValueError):
        min_distance(spread(4, 2, 2), metric="hamming")


def test_pair_and_cross_distances_agree_with_pairwise():
    subs = list(enumerate_grassmannian(5, 2, 2))[:40]
    code = Code(F2, 5, subs)
    pairs = np.array(list(itertools.combinations(range(len(subs)), 2)))
    got = pair_distances(code, pairs)
    assert [int(x) for x in got] == [subspace_distance(subs[i], subs[j]) for i, j in pairs]
    a, b = Code(F2, 5, subs[:20]), Code(F2, 5, subs[20:])
    v, i, j = cross_min_distance(a, b)
    assert v == min(subspace_distance(u, w) for u in a for w in b)
    assert subspace_distance(a[i], b[j]) == v


@pytest.mark.parametrize("q", [2, 3])
def test_min_rank_distance_matches_batched_rank(q):
    f = gf(q)
    rng = np.random.default_rng(q)
    mats = rng.integers(0, q, size=(25, 3, 4))
    add, mul = prime_tables(q)
    i, j = np.triu_indices(25, 1)
    diffs = (mats[i] - mats[j]) % q
    expected = int(batched_rank(diffs, q, add, mul).min())
    assert min_rank_distance(f, mats)[0] == expected
