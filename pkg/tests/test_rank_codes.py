from __future__ import annotations

import itertools

import numpy as np
import pytest

from cosetcodes import gf, min_distance, subspace_distance
from cosetcodes.errors import InfeasibleParametersError
from cosetcodes.fq_matrix import pivot_vectors
from cosetcodes.rank_codes import (
    SkeletonCode,
    echelon_ferrers_assemble,
    ef_skeleton_bound,
    ferrers_bound,
    ferrers_code,
    gabidulin,
    lift,
    lifted_mrd_size,
    mrd_size,
)
from oracles import batched_rank, field_tables, prime_tables


def tables(q):
    f = gf(q)
    return field_tables(f.p, f.e, tuple(f.modulus)) if f.e > 1 else prime_tables(q)


def test_mrd_size_examples():
    assert mrd_size(2, 2, 2, 2) == 4
    assert mrd_size(1, 3, 3, 2) == 1
    assert mrd_size(4, 4, 1, 3) == 3**16
    assert mrd_size(4, 5, 3, 2) == 2**10 == mrd_size(5, 4, 3, 2)


def test_lifted_mrd_size_examples():
    assert lifted_mrd_size(2, 4, 8, 4) == 4096
    assert lifted_mrd_size(2, 4, 9, 6) == 1024
    assert lifted_mrd_size(2, 1, 4, 6) == 1
    with pytest.raises(ValueError):
        lifted_mrd_size(2, 4, 8, 3)


GABIDULIN_CASES = [
    (2, 2, 2, 2), (3, 3, 3, 2), (3, 3, 2, 2), (4, 4, 3, 2), (4, 4, 2, 2), (4, 3, 2, 2), (3, 4, 2, 2),
    (5, 5, 4, 2), (5, 3, 2, 2), (2, 5, 2, 2), (6, 4, 3, 2), (6, 6, 6, 2), (7, 7, 6, 2), (2, 2, 1, 3),
    (3, 3, 2, 3), (4, 2, 2, 3), (4, 4, 4, 3), (3, 3, 3, 5), (2, 2, 2, 4), (3, 3, 2, 4), (1, 4, 1, 2),
]


@pytest.mark.parametrize("m,n,d,q", GABIDULIN_CASES)
def test_gabidulin_exhaustive_minimum_distance(m, n, d, q):
    """Cardinality equals the MRD size and every nonzero codeword has rank >= d, with equality attained."""
    c = gabidulin(m, n, d, q)
    assert c.cardinality == mrd_size(m, n, d, q) <= 2**14
    el = c.elements()
    assert el.shape == (c.cardinality, m, n)
    assert len({e.tobytes() for e in el}) == c.cardinality
    add, mul = tables(q)
    ranks = batched_rank(el, q, add, mul)
    assert sorted(ranks)[:2] == [0, d]  # linear: pairwise minimum = minimum nonzero weight
    if c.cardinality <= 256:
        i, j = np.triu_indices(c.cardinality, 1)
        neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)])
        diffs = add[el[i], neg[el[j]]]
        assert int(batched_rank(diffs, q, add, mul).min()) == d


def test_gabidulin_small_examples():
    c = gabidulin(2, 2, 2, 2)
    assert c.cardinality == 4 and c.min_distance(exhaustive_pairs=True) == 2
    c = gabidulin(3, 3, 3, 2)
    add, mul = prime_tables(2)
    el = c.elements()
    assert len(el) == 8
    assert sorted(batched_rank(el, 2, add, mul).tolist()) == [0] + [3] * 7


@pytest.mark.parametrize("m,n,q", [(4, 4, 2), (3, 3, 3), (5, 3, 2), (3, 5, 2)])
def test_gabidulin_nesting(m, n, q):
    for d in range(1, min(m, n) + 1):
        big = {e.tobytes() for e in gabidulin(m, n, d, q).elements()}
        for d2 in range(d, min(m, n) + 1):
            small = gabidulin(m, n, d2, q)
            assert {e.tobytes() for e in small.elements()} <= big
            sub = gabidulin(m, n, d, q).subcode(d2)
            assert {e.tobytes() for e in sub.elements()} == {e.tobytes() for e in small.elements()}


def test_coset_representatives_partition_the_code():
    g = gabidulin(3, 3, 2, 2)
    reps = g.coset_representatives(3)
    sub = g.subcode(3)
    assert len(reps) * sub.cardinality == g.cardinality
    seen = set()
    for r in reps:
        coset = sub.translate(r)
        assert not coset.is_linear or not r.any()
        assert coset.min_distance() == 3
        seen |= {e.tobytes() for e in coset.elements()}
    assert seen == {e.tobytes() for e in g.elements()}


def test_gabidulin_infeasible():
    with pytest.raises(InfeasibleParametersError):
        gabidulin(3, 3, 4, 2)
    with pytest.raises(InfeasibleParametersError):
        gabidulin(3, 3, 0, 2)


# -- lifting -------------------------------------------------------------------


def test_lift_zero_matrix():
    code = lift([np.zeros((2, 3), dtype=np.int64)], gf(2))
    (s,) = code
    assert s.matrix.tolist() == [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]]


def test_lift_8_4_4():
    code = lift(gabidulin(4, 4, 2, 2))
    assert len(code) == 4096 and code.k == 4 and code.n == 8
    assert {s.pivot_vector for s in code} == {(1, 1, 1, 1, 0, 0, 0, 0)}
    assert min_distance(code).value == 4


def test_lift_9_6_4():
    code = lift(gabidulin(4, 5, 3, 2))
    assert len(code) == 1024 and code.n == 9
    assert {s.pivot_vector for s in code} == {(1, 1, 1, 1, 0, 0, 0, 0, 0)}
    assert min_distance(code).value == 6


def test_lift_doubles_rank_distance():
    g = gabidulin(3, 3, 2, 3)
    el = g.elements()
    code = lift(g)
    assert len(code) == len(el)
    add, mul = prime_tables(3)
    rng = np.random.default_rng(1)
    for i, j in rng.integers(0, len(el), size=(200, 2)):
        r = int(batched_rank(((el[i] - el[j]) % 3)[None], 3, add, mul)[0])
        assert subspace_distance(code[i], code[j]) == 2 * r


# -- Ferrers diagrams ----------------------------------------------------------


def test_ferrers_bound_examples():
    v = (1, 0, 1, 1, 0)
    assert ferrers_bound(v, 1) == 4
    assert ferrers_bound(v, 2) == 1
    for k, c, delta in [(4, 4, 2), (3, 5, 3), (2, 6, 1), (4, 2, 2)]:
        rect = (1,) * k + (0,) * c
        assert ferrers_bound(rect, delta) == max(k, c) * (min(k, c) - delta + 1)


def test_ferrers_code_examples():
    rect = ferrers_code((1, 1, 1, 0, 0, 0), 2, 2)
    assert rect.attains_bound and rect.code.cardinality == gabidulin(3, 3, 2, 2).cardinality
    fc = ferrers_code((1, 0, 1, 1, 0), 2, 2)
    assert fc.code.cardinality >= 2 and fc.attains_bound
    assert fc.code.min_distance(exhaustive_pairs=True) >= 2
    assert ferrers_code((1, 0, 1, 1, 0), 3, 2).code.cardinality == 1


@pytest.mark.parametrize("q", [2, 3])
def test_ferrers_codes_respect_diagram_distance_and_bound(q):
    from cosetcodes.fq_matrix import FerrersDiagram

    add, mul = prime_tables(q)
    for n in range(2, 7):
        for k in range(1, n):
            for v in pivot_vectors(n, k):
                mask = FerrersDiagram(v).mask()
                for delta in range(1, min(k, n - k) + 1):
                    fc = ferrers_code(v, delta, q)
                    assert fc.code.cardinality <= q**fc.bound
                    if fc.code.dimension == 0:
                        continue
                    el = fc.code.elements()
                    assert not el[:, ~mask].any()
                    ranks = batched_rank(el, q, add, mul)
                    assert int(np.sort(ranks)[1]) >= delta


def test_echelon_ferrers_two_vector_skeleton():
    sk = SkeletonCode(((1, 1, 1, 1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 1, 1, 1)), 8)
    code = echelon_ferrers_assemble(sk, 2, 2)
    assert len(code) == 4097
    assert min_distance(code).value == 4


def test_echelon_ferrers_singleton_and_errors():
    code = echelon_ferrers_assemble(SkeletonCode(((1, 1, 0, 0, 0, 0),), 4), 2, 2)
    assert len(code) == gabidulin(2, 4, 2, 2).cardinality
    with pytest.raises(InfeasibleParametersError):
        SkeletonCode(((1, 1, 0, 0), (1, 0, 1, 0)), 4)
    with pytest.raises(InfeasibleParametersError):
        echelon_ferrers_assemble(SkeletonCode(((1, 1, 0, 0), (0, 0, 1, 1)), 4), 3, 2)


def test_echelon_ferrers_generic_skeleton_distance():
    vecs = [(1, 1, 1, 0, 0, 0, 0), (1, 0, 0, 1, 1, 0, 0), (0, 1, 0, 1, 0, 1, 0), (0, 0, 1, 0, 1, 1, 0)]
    sk = SkeletonCode(tuple(vecs), 4)
    code = echelon_ferrers_assemble(sk, 2, 2)
    assert len(code) == sum(ferrers_code(v, 2, 2).code.cardinality for v in vecs)
    assert min_distance(code).value >= 4


def test_ef_skeleton_bound_10_6_4():
    best, vecs = ef_skeleton_bound(10, 4, 6, 2)
    assert best == 4167
    for a, b in itertools.combinations(vecs, 2):
        assert sum(x != y for x, y in zip(a, b)) >= 6
    assert sum(2 ** ferrers_bound(v, 3) for v in vecs) == best
