from __future__ import annotations

import numpy as np
import pytest

from cosetcodes import Code, enumerate_grassmannian, gaussian_binomial, gf, min_distance, subspace_distance
from cosetcodes.constructions import (
    build_10_6_4,
    build_8_4_4,
    build_9_6_4,
    build_family_3km3,
    extension_scan,
    greedy_b_code,
    mrd_bound,
    structural_certificate,
)
from cosetcodes.coset import CosetFamilyParams
from cosetcodes.errors import InfeasibleParametersError, OracleGapError
from cosetcodes.packing import AqOracle
from cosetcodes.rank_codes import gabidulin, lift
from cosetcodes.verify import definitional_min_distance, pivot_spectrum

F2 = gf(2)


@pytest.fixture(scope="module")
def c844():
    return build_8_4_4(2)


def test_8_4_4_blocks(c844):
    assert c844.size == 4797
    assert {k: len(v) for k, v in c844.blocks.items()} == {"lifted_mrd": 4096, "coset": 700, "extra": 1}
    q = 2
    assert q**12 + gaussian_binomial(4, 2, q) * (q**2 + 1) * q**2 + 1 == 4797
    assert c844.blueprint.lam == 175 and len(c844.blueprint.F) == 4
    prov = c844.provenance()
    assert prov["size"] == 4797 and prov["coset.lambda"] == 175 and prov["coset.fbar"] == 4
    assert c844.code.k == 4


def test_8_4_4_pivot_structure(c844):
    bp = c844.blueprint
    bare = pivot_spectrum(c844.code, 4)
    assert bare.flagged and all(f[3] is None for f in bare.flagged)
    spectrum = pivot_spectrum(c844.code, 4, [CosetFamilyParams(bp.n, bp.k, bp.nprime, bp.kprime)])
    assert spectrum.counts[(1, 1, 1, 1, 0, 0, 0, 0)] == 4096
    assert spectrum.counts[(0, 0, 0, 0, 1, 1, 1, 1)] == 1
    close = [f for f in spectrum.flagged if f[2] == 2]
    assert close  # coset codewords whose pivots are at Hamming distance 2
    lifted_pv = (1, 1, 1, 1, 0, 0, 0, 0)
    unexplained = [f for f in spectrum.flagged if f[3] is None]
    # only the lifted block's self pair, whose distance comes from the rank code
    assert unexplained == [(lifted_pv, lifted_pv, 0, None)]


def test_8_4_4_rejects_other_q():
    with pytest.raises(InfeasibleParametersError):
        build_8_4_4(3)


def test_9_6_4_q2():
    c = build_9_6_4(2)
    assert c.size == 1033 == 2**10 + 2**3 + 1
    assert {k: len(v) for k, v in c.blocks.items()} == {"lifted_mrd": 1024, "coset": 9}
    assert definitional_min_distance(c.code)[0] == 6
    assert min_distance(c.code).value == 6


def test_family_k4_equals_9_6_4():
    a, b = build_family_3km3(4, 2), build_9_6_4(2)
    assert a.code.members == b.code.members


def test_family_guards():
    with pytest.raises(InfeasibleParametersError):
        build_family_3km3(3, 2)


def test_9_6_4_q3_size_and_structure():
    c = build_9_6_4(3)
    assert c.size == 3**10 + 3**3 + 1 == 59077
    assert len(c.blocks["coset"]) == 3**3 + 1
    sc = structural_certificate(c, samples=20_000, seed=1)
    assert sc.passed and sc.sampled_min >= 6 and sc.cross_pairs == 59049 * 28


def test_structural_certificate_detects_bad_block():
    c = build_9_6_4(2)
    bad = c.blocks["coset"][0]
    # a codeword sharing a 3-space with a coset codeword
    m = bad.matrix.copy()
    m[3] = 0
    m[3, 8] = 1 if m[:, 8].sum() == 0 else 0
    from cosetcodes import Subspace

    extra = Subspace(F2, m if np.linalg.matrix_rank(m) == 4 else np.eye(4, 9, 5, dtype=np.int64))
    c.blocks["bad"] = Code(F2, 9, [extra])
    c.code.add(extra)
    sc = structural_certificate(c, samples=1000)
    assert not sc.passed and sc.violations


def test_greedy_b_code():
    b = greedy_b_code(2)
    assert len(b) == 65 and b.k == 3
    assert min_distance(b).value == 4
    mrd = lift(gabidulin(3, 3, 2, 2))
    assert all(s in b for s in mrd)


def test_10_6_4_without_extension():
    c = build_10_6_4(2, extend=False)
    prov = c.provenance()
    assert c.size == 4096 + c.blueprint.lam == 4161
    assert prov["b.source"] == "greedy" and prov["b.size"] == 65
    assert "extension.success" not in prov
    assert definitional_min_distance(c.code, floor=5)[0] == 6


def test_10_6_4_external_b(tmp_path):
    from cosetcodes.io import write_code

    b = greedy_b_code(2)
    path = tmp_path / "b.code"
    write_code(b, path)
    c = build_10_6_4(2, external_b=path, extend=False, exact=False)
    assert c.provenance()["b.source"] == "external"
    assert c.size == 4161
    with pytest.raises(InfeasibleParametersError):
        build_10_6_4(2, external_b=Code(F2, 6, enumerate_grassmannian(6, 3, 2)), extend=False)
    with pytest.raises(InfeasibleParametersError):
        build_10_6_4(3)


def test_10_6_4_truncated_extension_pass():
    c = build_10_6_4(2, max_candidates=5000)
    prov = c.provenance()
    assert prov["extension.success"] in ("yes", "no")
    assert prov["extension.scanned"] <= 5000


# -- extension scan ---------------------------------------------------------------


def _first_compatible(code: Code, k: int, d: int):
    for i, s in enumerate(enumerate_grassmannian(code.n, k, 2)):
        if all(subspace_distance(s, w) >= d for w in code):
            return s, i + 1
    return None, None


@pytest.mark.parametrize("seed", range(5))
def test_extension_scan_matches_naive_search(seed):
    rng = np.random.default_rng(seed)
    n, k, d = 7, 2, 4
    lifted = lift(gabidulin(2, 5, 2, 2))
    others = [s for s in enumerate_grassmannian(n, k, 2) if s not in lifted]
    code = Code(F2, n, lifted)
    for i in rng.permutation(len(others)):
        s = others[i]
        if all(subspace_distance(s, w) >= d for w in code):
            code.add(s)
        if len(code) >= len(lifted) + int(rng.integers(5, 60)):
            break
    expected, pos = _first_compatible(code, k, d)
    for lf in (lifted, None):
        res = extension_scan(code, k, d, lifted=lf)
        assert res.success == (expected is not None)
        if expected is not None:
            assert res.codeword == expected and res.candidates_scanned == pos


def test_extension_scan_full_pass_failure_and_budget():
    spread_code = Code(F2, 4, enumerate_grassmannian(4, 2, 2))
    res = extension_scan(spread_code, 2, 2)
    assert not res.success and res.candidates_scanned == 35
    res = extension_scan(Code(F2, 4, list(spread_code)[:3]), 2, 4, max_candidates=2)
    assert res.candidates_scanned <= 2
    with pytest.raises(InfeasibleParametersError):
        extension_scan(Code(gf(3), 4), 2, 2)
    with pytest.raises(InfeasibleParametersError):
        extension_scan(spread_code, 2, 4, lifted=Code(F2, 4, [list(spread_code)[0]]))


# -- MRD bound ----------------------------------------------------------------------


def test_mrd_bound_values():
    assert mrd_bound(2, 8, 4, 4) == 4797
    for q in (2, 3):
        assert mrd_bound(q, 9, 4, 6) == q**10 + q**3 + 1
    assert mrd_bound(2, 10, 4, 6) == 4173
    assert mrd_bound(2, 12, 5, 8) == 2**14 + 2**4 + 1  # matches the k = 5 family


def test_mrd_bound_errors():
    with pytest.raises(InfeasibleParametersError):
        mrd_bound(2, 7, 4, 6)
    with pytest.raises(InfeasibleParametersError):
        mrd_bound(2, 10, 4, 2)
    with pytest.raises(OracleGapError):
        mrd_bound(2, 10, 4, 6, AqOracle({}))


def test_builders_meet_mrd_bound():
    assert build_9_6_4(2).size == mrd_bound(2, 9, 4, 6)
    assert build_8_4_4(2).size == mrd_bound(2, 8, 4, 4)
