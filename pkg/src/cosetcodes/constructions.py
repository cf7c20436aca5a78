"""Named constant-dimension code constructions.

Each builder combines a lifted MRD block, a coset block and possibly single
extra codewords, checks pivot compatibility between the parts, and returns a
:class:`Construction` carrying the code together with a per-block account.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from . import _kernels as K
from .coset import CosetBlueprint, CosetFamilyParams, check_multilevel_pivot, check_pair_distance, pair_families
from .errors import InfeasibleParametersError
from .fq_matrix import ef_free_positions, enumerate_grassmannian, gaussian_binomial, pivot_columns, pivot_vectors
from .gf_arith import gf
from .io import read_code
from .metrics import hamming_distance, min_distance
from .packing import AqOracle, dual_code, greedy_decompose, ilp_decompose, lambda_lower_bound_mrd, parallelism_g42, partial_spread
from .rank_codes import RankMetricCode, gabidulin, lift
from .subspace import Code, Subspace
from .verify import definitional_pair_distances


@dataclass
class Construction:
    """A built code and how it was assembled."""

    name: str
    q: int
    n: int
    k: int
    d: int
    code: Code
    blocks: dict[str, Code]
    blueprint: CosetBlueprint | None = None
    mrd: RankMetricCode | None = None
    notes: dict[str, object] = dc_field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.code)

    def provenance(self) -> dict[str, object]:
        out: dict[str, object] = {"family": self.name, "q": self.q, "n": self.n, "k": self.k, "d": self.d, "size": self.size}
        for name, block in self.blocks.items():
            out[f"block.{name}"] = len(block)
        if self.blueprint is not None:
            bp = self.blueprint
            out.update({"coset.nprime": bp.nprime, "coset.kprime": bp.kprime, "coset.l": bp.l,
                        "coset.lambda": bp.lam, "coset.fbar": len(bp.F)})
        out.update(self.notes)
        return out


def _lifted_mrd(q: int, n: int, k: int, d: int) -> tuple[RankMetricCode, Code]:
    mrd = gabidulin(k, n - k, d // 2, q)
    return mrd, lift(mrd)


def _identity_tail(q: int, n: int, k: int) -> Subspace:
    """The subspace spanned by the last k unit vectors."""
    m = np.concatenate([np.zeros((k, n - k), dtype=np.int64), np.eye(k, dtype=np.int64)], axis=1)
    return Subspace(gf(q), m, trusted=True)


def _assert_compatible(words, bp: CosetBlueprint, d: int) -> None:
    for w in words:
        chk = check_multilevel_pivot(w, bp, d)
        if not chk.compatible:
            raise AssertionError(f"pivot {w.pivot_vector} has multilevel value {chk.value} < {d}")


def _combine(name: str, q: int, n: int, k: int, d: int, blocks: dict[str, Code], **kw) -> Construction:
    code = Code(gf(q), n)
    for block in blocks.values():
        code.update(block)
    total = sum(len(b) for b in blocks.values())
    if len(code) != total:
        raise AssertionError(f"blocks overlap: {total} codewords but {len(code)} distinct")
    return Construction(name, q, n, k, d, code, blocks, **kw)


def points(n: int, q: int) -> list[Subspace]:
    return list(enumerate_grassmannian(n, 1, q))


# ---------------------------------------------------------------------------
# (8, 4797, 4; 4)_2


def blueprint_8_4_4(q: int = 2) -> CosetBlueprint:
    """Coset blueprint with A_i = B_i = the spreads of a parallelism of G_q(4, 2)."""
    if q != 2:
        raise InfeasibleParametersError("the (8,4;4) coset block needs a parallelism of G_q(4,2); only q = 2 is supported")
    par = parallelism_g42(q)
    return CosetBlueprint(q, 8, 4, 4, 2, 4, par.parts, par.parts)


def build_8_4_4(q: int = 2) -> Construction:
    """Lifted MRD block, the parallelism coset block and the codeword 0|I_4."""
    bp = blueprint_8_4_4(q)
    mrd, lifted = _lifted_mrd(q, 8, 4, 4)
    coset = bp.assemble()
    tail = _identity_tail(q, 8, 4)
    _assert_compatible([lifted[0], tail], bp, 4)
    if hamming_distance(lifted[0].pivot_vector, tail.pivot_vector) < 4:
        raise AssertionError("extra codeword too close to the lifted MRD block")
    blocks = {"lifted_mrd": lifted, "coset": coset, "extra": Code(gf(q), 8, [tail])}
    return _combine("8-4-4", q, 8, 4, 4, blocks, blueprint=bp, mrd=mrd)


# ---------------------------------------------------------------------------
# (3k-3, q^(4k-6) + q^(k-1) + 1, 2k-2; k)_q and (9, 6; 4)_q


def blueprint_3km3(k: int, q: int) -> CosetBlueprint:
    """A_i = single points of F_q^k, B_i = single members of a dual partial (k-2)-spread of F_q^(2k-3)."""
    if k < 4:
        raise InfeasibleParametersError(f"need k >= 4, got {k}")
    n = 3 * k - 3
    a_parts = [[p] for p in points(k, q)]
    b_parts = [[w] for w in dual_code(partial_spread(2 * k - 3, k - 2, q))]
    a_parts, b_parts = pair_families(a_parts, b_parts)
    return CosetBlueprint(q, n, k, k, 1, 2 * k - 2, a_parts, b_parts)


def build_family_3km3(k: int, q: int) -> Construction:
    n, d = 3 * k - 3, 2 * k - 2
    bp = blueprint_3km3(k, q)
    mrd, lifted = _lifted_mrd(q, n, k, d)
    coset = bp.assemble()
    _assert_compatible([lifted[0]], bp, d)
    blocks = {"lifted_mrd": lifted, "coset": coset}
    return _combine(f"3k-3 k={k}", q, n, k, d, blocks, blueprint=bp, mrd=mrd)


def build_9_6_4(q: int) -> Construction:
    c = build_family_3km3(4, q)
    c.name = "9-6-4"
    return c


# ---------------------------------------------------------------------------
# structural certificate


@dataclass
class StructuralCertificate:
    passed: bool
    mrd_rank_distance: int
    blueprint_valid: bool
    coset_pairs: int
    cross_pairs: int
    sampled_pairs: int
    sampled_min: int | None
    violations: list[str]


def structural_certificate(c: Construction, samples: int = 10**6, seed: int = 0) -> StructuralCertificate:
    """Certify without scanning all pairs.

    * lifted MRD block: minimum rank distance of the rank code >= d/2;
    * coset block: blueprint invariants plus the pairwise distance criterion on
      every pair of coset codewords;
    * every pair (X, Y) with X outside and Y inside the coset block: multilevel
      pivot value of X >= d, or pivot Hamming distance >= d between two
      non-coset blocks;
    * ``samples`` uniformly random pairs of the whole code by intersection counting.
    """
    violations: list[str] = []
    d = c.d
    rd = c.mrd.min_distance() if c.mrd is not None else 0
    if c.mrd is not None and 2 * rd < d:
        violations.append(f"MRD rank distance {rd} < {d}/2")
    bp = c.blueprint
    ok_bp = True
    try:
        bp.validate()
    except Exception as exc:
        ok_bp = False
        violations.append(f"blueprint: {exc}")
    # coset block pairs via the pairwise criterion
    words = []
    for i in range(bp.l):
        for a in bp.A[i]:
            for b in bp.B[i]:
                for f in bp.F:
                    words.append((a, b, f))
    coset_pairs = 0
    for (a, b, f), (a2, b2, f2) in itertools.combinations(words, 2):
        coset_pairs += 1
        if not check_pair_distance(a, a2, b, b2, f, f2, d).guaranteed:
            violations.append(f"coset pair not guaranteed: {a.to_text()} / {a2.to_text()}")
            break
    # cross-block pairs
    cross = 0
    ncoset = len(c.blocks.get("coset", ()))
    others = [(name, blk) for name, blk in c.blocks.items() if name != "coset"]
    params = CosetFamilyParams(bp.n, bp.k, bp.nprime, bp.kprime)
    for name, blk in others:
        vals = {}
        for x in blk:
            v = x.pivot_vector
            if v not in vals:
                vals[v] = check_multilevel_pivot(v, params, d)
            if not vals[v].compatible:
                violations.append(f"{name} word with pivot {v} has multilevel value {vals[v].value} < {d}")
                break
        cross += len(blk) * ncoset
    for (n1, b1), (n2, b2) in itertools.combinations(others, 2):
        pv1 = {x.pivot_vector for x in b1}
        pv2 = {x.pivot_vector for x in b2}
        for v, w in itertools.product(pv1, pv2):
            if hamming_distance(v, w) < d:
                violations.append(f"blocks {n1}/{n2}: pivot distance {hamming_distance(v, w)} < {d}")
        cross += len(b1) * len(b2)
    # sampled brute force
    sampled_min = None
    m = len(c.code)
    if samples and m >= 2:
        rng = np.random.default_rng(seed)
        i = rng.integers(0, m, size=samples)
        j = rng.integers(0, m - 1, size=samples)
        j = j + (j >= i)
        dist = definitional_pair_distances(c.code, np.stack([i, j], axis=1))
        sampled_min = int(dist.min())
        bad = int((dist < d).sum())
        if bad:
            violations.append(f"{bad} sampled pairs below distance {d}")
    return StructuralCertificate(not violations, rd, ok_bp, coset_pairs, cross, samples, sampled_min, violations)


# ---------------------------------------------------------------------------
# (10, 6; 4)_2


def greedy_b_code(q: int = 2) -> Code:
    """A (6, M, 4; 3)_q code: lifted 3x3 MRD (rank distance 2) extended greedily in enumeration order."""
    field = gf(q)
    base = lift(gabidulin(3, 3, 2, q))
    code = Code(field, 6, base)
    if q != 2:
        raise InfeasibleParametersError("greedy B construction is implemented for q = 2")
    from .metrics import _packed

    rows, piv, dims = _packed(code)
    rows, piv = list(rows), list(piv)
    for s in enumerate_grassmannian(6, 3, q):
        if s in code:
            continue
        cand = Code(field, 6, [s])
        cr, cp, _ = _packed(cand)
        ok = True
        for r, p in zip(rows, piv):
            e = K._gf2_excess(cr[0], cp[0], 3, r, 3, np.zeros(3, dtype=np.int64))
            if 2 * e < 4:
                ok = False
                break
        if ok:
            code.add(s)
            rows.append(cr[0])
            piv.append(cp[0])
    return code


@dataclass
class ExtensionResult:
    success: bool
    codeword: Subspace | None
    candidates_scanned: int
    classes_scanned: int
    seconds: float


def _lifted_index(block: Code, n: int, k: int, d: int) -> tuple[np.ndarray, np.ndarray, int, int, int]:
    """Bucket the members of a lifted block by the nonzero vectors they contain.

    Returns (ptr, items, size, wbits, need) for the lifted scan kernel; a member
    of dimension kl is too close to a k-dimensional candidate once ``need`` of
    the candidate's nonzero vectors lie in it.
    """
    from .metrics import _packed

    kl = block.k
    rows, _, _ = _packed(block)
    m = len(block)
    coeff = np.array([[(u >> (kl - 1 - r)) & 1 for r in range(kl)] for u in range(1, 1 << kl)], dtype=np.int64)
    vecs = np.zeros((m, coeff.shape[0]), dtype=np.int64)
    for r in range(kl):
        vecs ^= np.where(coeff[None, :, r] == 1, rows[:, r : r + 1], 0)
    keys = vecs.ravel()
    owner = np.repeat(np.arange(m, dtype=np.int64), coeff.shape[0])
    order = np.argsort(keys, kind="stable")
    ptr = np.searchsorted(keys[order], np.arange((1 << n) + 1, dtype=np.int64)).astype(np.int64)
    t = (k + kl - d) // 2 + 1
    need = (1 << max(t, 0)) - 1
    return ptr, owner[order].copy(), m, n - kl, need


def _is_lifted(block: Code) -> bool:
    kl = block.k
    if kl is None or len(block) == 0:
        return False
    eye = np.eye(kl, dtype=np.int64)
    return all(np.array_equal(s.matrix[:, :kl], eye) for s in block)


def extension_scan(
    code: Code, k: int, d: int, max_candidates: int | None = None, lifted: Code | None = None
) -> ExtensionResult:
    """Scan G_2(n, k) in enumeration order for one subspace at distance >= d from ``code``.

    Only codewords whose pivot vector is within Hamming distance < d of the
    candidate's pivot vector can be too close, so each pivot class is
    checked against that subset.  Members of ``lifted`` (a subset of
    ``code`` whose generators all start with an identity block) are tested
    by vector lookup instead of elimination.  Stops at the first success.
    """
    if code.q != 2:
        raise InfeasibleParametersError("the extension scan is implemented for q = 2")
    from .metrics import _packed

    t0 = time.perf_counter()
    n = code.n
    if lifted is not None and (not _is_lifted(lifted) or any(s not in code for s in lifted)):
        raise InfeasibleParametersError("lifted block must be part of the code and of the form [I | M]")
    if lifted is not None:
        ptr, items, nlift, wbits, need = _lifted_index(lifted, n, k, d)
        lifted_set = set(lifted)
        rest = Code(code.field, n, (s for s in code if s not in lifted_set))
        lift_pv = np.array(lifted[0].pivot_vector, dtype=np.int64)
    else:
        ptr, items, nlift, wbits, need = np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64), 0, 0, 1
        rest = code
        lift_pv = None
    rows, _, dims = _packed(rest) if len(rest) else (np.zeros((0, k), dtype=np.int64), None, np.zeros(0, dtype=np.int64))
    pv_arr = np.array([s.pivot_vector for s in rest], dtype=np.int64).reshape(len(rest), n)
    scanned, classes = 0, 0
    for v in pivot_vectors(n, k):
        classes += 1
        cols = pivot_columns(v)
        varr = np.array(v, dtype=np.int64)
        base = np.array([np.int64(1) << (n - 1 - c) for c in cols], dtype=np.int64)
        free = ef_free_positions(v)
        free_row = np.array([r for r, _ in free], dtype=np.int64)
        free_bit = np.array([np.int64(1) << (n - 1 - c) for _, c in free], dtype=np.int64)
        risky = np.flatnonzero((pv_arr != varr).sum(axis=1) < d)
        use_lift = nlift if lift_pv is not None and int((lift_pv != varr).sum()) < d else 0
        total = 1 << len(free)
        if max_candidates is not None and scanned + total > max_candidates:
            total = max_candidates - scanned
        if total <= 0:
            break
        order = np.arange(len(risky), dtype=np.int64)
        r_rows = np.ascontiguousarray(rows[risky]) if len(risky) else np.zeros((0, k), dtype=np.int64)
        r_dims = np.ascontiguousarray(dims[risky]) if len(risky) else np.zeros(0, dtype=np.int64)
        x = K.gf2_scan_pivot_class_lifted(
            base, base.copy(), free_row, free_bit, 0, total, ptr, items, use_lift, wbits, need, r_rows, r_dims, d, order
        )
        if x >= 0:
            m = np.zeros((k, n), dtype=np.int64)
            for r, c in enumerate(cols):
                m[r, c] = 1
            f = len(free)
            for t, (r, c) in enumerate(free):
                m[r, c] = (x >> (f - 1 - t)) & 1
            s = Subspace(gf(2), m, trusted=True)
            return ExtensionResult(True, s, scanned + x + 1, classes, time.perf_counter() - t0)
        scanned += total
    return ExtensionResult(False, None, scanned, classes, time.perf_counter() - t0)


def _b_families(b_code: Code, l: int, exact: bool) -> tuple[list[list[Subspace]], str]:
    if exact:
        res = ilp_decompose(b_code, 6, 4, l, kappa=None)
        return res.packing.parts, f"ilp objective {res.objective}"
    pk = greedy_decompose(b_code, 6, 4)
    return pk.parts, "greedy"


def build_10_6_4(
    q: int = 2,
    external_b: str | Path | Code | None = None,
    extend: bool = True,
    max_candidates: int | None = None,
    exact: bool | None = None,
) -> Construction:
    """Lifted 4x6 MRD block, a coset block with A = 15 single points, and one extension pass.

    B is an external (6, M, 4; 3)_2 code when given (decomposed exactly into
    15 partial plane spreads), otherwise the greedy code of
    :func:`greedy_b_code` (decomposed greedily).  The nested-MRD families
    are used instead whenever they give a larger Lambda.
    """
    if q != 2:
        raise InfeasibleParametersError("the (10,6;4) pipeline is implemented for q = 2")
    field = gf(q)
    n, k, d = 10, 4, 6
    a_parts = [[p] for p in points(4, q)]
    if external_b is not None:
        b_code = external_b if isinstance(external_b, Code) else read_code(external_b)
        if b_code.q != q or b_code.n != 6 or b_code.k != 3:
            raise InfeasibleParametersError("external B must be a constant-dimension code in G_2(6, 3)")
        if len(b_code) > 1 and min_distance(b_code).value < 4:
            raise InfeasibleParametersError("external B must have minimum distance >= 4")
        b_source = "external"
        use_exact = True if exact is None else exact
    else:
        b_code = greedy_b_code(q)
        b_source = "greedy"
        use_exact = False if exact is None else exact
    b_parts, method = _b_families(b_code, len(a_parts), use_exact)
    A, B = pair_families(a_parts, b_parts)
    bp = CosetBlueprint(q, n, k, 4, 1, d, A, B)
    mrd_lb = lambda_lower_bound_mrd(q, n, k, 4, 1, d, 2)
    if mrd_lb.value > bp.lam:
        bp, b_source, method = mrd_lb.blueprint, "nested lifted MRD cosets", "cosets"
    mrd, lifted = _lifted_mrd(q, n, k, d)
    coset = bp.assemble()
    blocks = {"lifted_mrd": lifted, "coset": coset}
    notes: dict[str, object] = {"b.source": b_source, "b.size": len(b_code), "b.decomposition": method,
                                "b.parts": ",".join(str(len(p)) for p in bp.B)}
    if extend:
        ext = extension_scan(Code(field, n, itertools.chain(lifted, coset)), k, d, max_candidates, lifted=lifted)
        notes.update({"extension.success": "yes" if ext.success else "no",
                      "extension.scanned": ext.candidates_scanned})
        if ext.success:
            blocks["extension"] = Code(field, n, [ext.codeword])
    return _combine("10-6-4", q, n, k, d, blocks, blueprint=bp, mrd=mrd, notes=notes)


# ---------------------------------------------------------------------------
# upper bound for codes containing a lifted MRD code


def mrd_bound(q: int, n: int, k: int, d: int, aq: AqOracle | None = None) -> int:
    """Upper bound on the size of an (n, d; k)_q code that contains a lifted MRD code."""
    aq = aq or AqOracle.default()
    if n < 2 * k:
        raise InfeasibleParametersError(f"need n >= 2k, got n={n}, k={k}")
    if k >= 3 and d == 2 * (k - 1):
        return q ** (2 * (n - k)) + aq(q, n - k, 2 * (k - 2), k - 1)
    if k % 2 == 0 and d == k:
        h = k // 2
        num, den = q**n - q ** (n - k), q**k - q**h
        if num % den:
            raise AssertionError("non-integral middle term")
        return q ** ((n - k) * (h + 1)) + gaussian_binomial(n - k, h, q) * (num // den) + aq(q, n - k, k, k)
    raise InfeasibleParametersError(f"no bound for d={d}, k={k}: need d = 2(k-1) with k >= 3, or d = k with k even")


__all__ = [
    "Construction",
    "ExtensionResult",
    "StructuralCertificate",
    "blueprint_3km3",
    "blueprint_8_4_4",
    "build_10_6_4",
    "build_8_4_4",
    "build_9_6_4",
    "build_family_3km3",
    "extension_scan",
    "greedy_b_code",
    "mrd_bound",
    "structural_certificate",
]
