"""Independent certification of codes and packings.

Distances here come from the definition d_S = dim U + dim W - 2 dim(U cap W),
with |U cap W| counted by enumerating U and testing membership in W.  No
stacked-rank routine from :mod:`cosetcodes.metrics` is used.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _kernels as K
from .coset import CosetFamilyParams, multilevel_pivot_value
from .fq_matrix import PivotVector, gaussian_binomial
from .io import format_codeword, parse_packing, read_code
from .metrics import hamming_distance
from .subspace import Code, Subspace

PASS, FAIL = "PASS", "FAIL"
_METRICS = {"subspace": 0, "injection": 1}


class _DefinitionalKernel:
    """Intersection-count distances on one code."""

    def __init__(self, code: Code, metric: str = "subspace"):
        self.code = code
        self.metric = _METRICS[metric]
        mem = code.members
        kmax = max((s.dim for s in mem), default=0)
        n = code.n
        self.dims = np.array([s.dim for s in mem], dtype=np.int64)
        mats = np.zeros((len(mem), kmax, n), dtype=np.int64)
        pivcols = np.zeros((len(mem), max(kmax, 1)), dtype=np.int64)
        for i, s in enumerate(mem):
            mats[i, : s.dim] = s.matrix
            for r in range(s.dim):
                pivcols[i, r] = int(np.flatnonzero(s.matrix[r])[0])
        self.gf2 = code.q == 2 and n <= K.GF2_MAX_N
        if self.gf2:
            self.rows = K.pack_gf2(mats) if mats.size else np.zeros((len(mem), kmax), dtype=np.int64)
            self.piv = np.zeros_like(self.rows)
            for i, s in enumerate(mem):
                for r in range(s.dim):
                    self.piv[i, r] = np.int64(1) << (n - 1 - pivcols[i, r])
        else:
            self.mats, self.pivcols = mats, pivcols
            self.add, self.mul, self.neg, _ = K.tables(code.field)

    def min_distance(self, floor: int) -> tuple[int, int, int]:
        if self.gf2:
            return K.gf2_intersection_min_distance(self.rows, self.piv, self.dims, self.metric, floor)
        return K.generic_intersection_min_distance(
            self.mats, self.pivcols, self.dims, self.metric, floor, self.code.q, self.add, self.mul, self.neg
        )

    def pair_distances(self, pairs: np.ndarray) -> np.ndarray:
        pairs = np.ascontiguousarray(pairs, dtype=np.int64).reshape(-1, 2)
        if self.gf2:
            return K.gf2_intersection_pair_distances(self.rows, self.piv, self.dims, pairs, self.metric)
        return K.generic_intersection_pair_distances(
            self.mats, self.pivcols, self.dims, pairs, self.metric, self.code.q, self.add, self.mul, self.neg
        )


def definitional_min_distance(code: Code, metric: str = "subspace", floor: int = 0) -> tuple[int, int, int]:
    """Exact minimum distance via intersection counting: (value, i, j)."""
    if len(code) < 2:
        raise ValueError("minimum distance needs at least two codewords")
    best, i, j = _DefinitionalKernel(code, metric).min_distance(floor)
    return int(best), int(i), int(j)


def definitional_pair_distances(code: Code, pairs: np.ndarray, metric: str = "subspace") -> np.ndarray:
    return _DefinitionalKernel(code, metric).pair_distances(pairs)


# ---------------------------------------------------------------------------
# certify


@dataclass
class CertifyReport:
    verdict: str
    q: int
    n: int
    cardinality: int
    claimed_cardinality: int | None
    duplicates: int
    claimed_distance: int
    min_distance: int | None
    mode: str  # "exhaustive", "exhaustive-stopped" or "sampled"
    pairs_checked: int
    seed: int | None = None
    witness: tuple[Subspace, Subspace] | None = None
    reasons: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def as_dict(self) -> dict[str, object]:
        out: dict[str, object] = {
            "verdict": self.verdict,
            "q": self.q,
            "n": self.n,
            "cardinality": self.cardinality,
            "claimed_cardinality": "-" if self.claimed_cardinality is None else self.claimed_cardinality,
            "duplicates": self.duplicates,
            "claimed_distance": self.claimed_distance,
            "min_distance": "-" if self.min_distance is None else self.min_distance,
            "mode": self.mode,
            "pairs_checked": self.pairs_checked,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.reasons:
            out["reasons"] = "; ".join(self.reasons)
        if self.witness is not None:
            out["witness_a"] = format_codeword(self.witness[0])
            out["witness_b"] = format_codeword(self.witness[1])
        return out


def certify(
    code: Code | str | Path,
    claimed_d: int,
    claimed_M: int | None = None,
    sample: int | None = None,
    seed: int = 0,
) -> CertifyReport:
    """Check minimum distance >= claimed_d and (optionally) the cardinality.

    Exhaustive by default; ``sample`` checks that many uniformly random pairs
    (reproducible from ``seed``) instead, which bounds the distance only from
    above.  The reported minimum is exact in exhaustive mode unless a
    violation stopped the scan early.
    """
    if not isinstance(code, Code):
        code = read_code(code)
    m = len(code)
    reasons = []
    if code.duplicates:
        reasons.append(f"{code.duplicates} duplicate codeword(s) removed")
    if claimed_M is not None and m != claimed_M:
        reasons.append(f"cardinality {m} != claimed {claimed_M}")
    best, witness, checked, mode = None, None, 0, "exhaustive"
    mem = code.members
    if m >= 2:
        ker = _DefinitionalKernel(code)
        if sample is None:
            best, i, j = ker.min_distance(claimed_d - 1)
            checked = m * (m - 1) // 2
        else:
            mode = "sampled"
            rng = np.random.default_rng(seed)
            i_idx = rng.integers(0, m, size=sample)
            j_idx = rng.integers(0, m - 1, size=sample)
            j_idx = j_idx + (j_idx >= i_idx)
            pairs = np.stack([i_idx, j_idx], axis=1)
            dist = ker.pair_distances(pairs)
            t = int(np.argmin(dist))
            best, i, j = int(dist[t]), int(pairs[t, 0]), int(pairs[t, 1])
            checked = sample
        best = int(best)
        witness = (mem[i], mem[j])
        if best < claimed_d:
            reasons.append(f"distance {best} < claimed {claimed_d}")
            if mode == "exhaustive":
                mode = "exhaustive-stopped"  # scan ended at the first violation
    verdict = FAIL if any(not r.endswith("removed") for r in reasons) else PASS
    return CertifyReport(
        verdict, code.q, code.n, m, claimed_M, code.duplicates, claimed_d, best, mode, checked,
        seed if mode == "sampled" else None, witness, reasons,
    )


# ---------------------------------------------------------------------------
# pivot spectrum


@dataclass
class PivotSpectrum:
    counts: dict[PivotVector, int]
    flagged: list[tuple[PivotVector, PivotVector, int, str | None]]


def _is_coset_pivot(v: Sequence[int], p: CosetFamilyParams) -> bool:
    return sum(v[: p.nprime]) == p.kprime and sum(v) == p.k


def pivot_spectrum(
    code: Code | str | Path, d: int | None = None, coset_params: Sequence[CosetFamilyParams] = ()
) -> PivotSpectrum:
    """Histogram of pivot vectors, and pivot-vector pairs at Hamming distance < d.

    Each flagged pair carries an explanation when the coset structure covers
    it: ``"coset"`` if both vectors fit one of ``coset_params`` (distance is
    then guaranteed by the construction) and ``"pivot-value"`` if one fits and
    the other's multilevel pivot value is at least d.  Otherwise None.
    """
    if not isinstance(code, Code):
        code = read_code(code)
    counts = Counter(s.pivot_vector for s in code)
    ordered = sorted(counts, reverse=True)
    flagged = []
    if d is not None:
        for v, w in itertools.combinations_with_replacement(ordered, 2):
            if v == w and counts[v] < 2:
                continue
            h = hamming_distance(v, w)
            if h >= d:
                continue
            why = None
            for p in coset_params:
                cv, cw = _is_coset_pivot(v, p), _is_coset_pivot(w, p)
                if cv and cw:
                    why = "coset"
                elif cv and multilevel_pivot_value(w, p.nprime, p.k, p.kprime) >= d:
                    why = "pivot-value"
                elif cw and multilevel_pivot_value(v, p.nprime, p.k, p.kprime) >= d:
                    why = "pivot-value"
                if why:
                    break
            flagged.append((v, w, h, why))
    return PivotSpectrum(dict(sorted(counts.items(), reverse=True)), flagged)


# ---------------------------------------------------------------------------
# packings


@dataclass
class PackingReport:
    verdict: str
    parts: int
    covered: int
    is_parallelism: bool
    reasons: list[str]
    witness: object = None

    def as_dict(self) -> dict[str, object]:
        out: dict[str, object] = {
            "verdict": self.verdict,
            "parts": self.parts,
            "covered": self.covered,
            "parallelism": "yes" if self.is_parallelism else "no",
        }
        if self.reasons:
            out["reasons"] = "; ".join(self.reasons)
        return out


def validate_packing(packing, require_parallelism: bool = False) -> PackingReport:
    """Disjointness, per-part minimum distance and (for parallelisms) coverage.

    Accepts a Packing, manifest text, or a manifest path.
    """
    if isinstance(packing, Path) or (isinstance(packing, str) and "\n" not in packing):
        packing = parse_packing(Path(packing).read_text(), str(packing))
    elif isinstance(packing, str):
        packing = parse_packing(packing)
    reasons: list[str] = []
    witness = None
    owner: dict[Subspace, int] = {}
    for i, part in enumerate(packing.parts):
        for s in part:
            if s in owner:
                reasons.append(f"parts {owner[s]} and {i} share {format_codeword(s)}")
                witness = witness or (owner[s], i, s)
            else:
                owner[s] = i
    for i, part in enumerate(packing.parts):
        if len(part) < 2:
            continue
        code = Code(part[0].field, part[0].n, part)
        best, a, b = definitional_min_distance(code, floor=packing.d - 1)
        if best < packing.d:
            reasons.append(f"part {i} has distance {best} < {packing.d}")
            witness = witness or (i, code[a], code[b])
    covered = len(owner)
    parallelism = False
    members = list(owner)
    if members and not reasons:
        k = members[0].dim
        q, n = members[0].q, members[0].n
        full = gaussian_binomial(n, k, q)
        dims_ok = all(s.dim == k for s in members)
        spread_size = (q**n - 1) // (q**k - 1) if n % k == 0 else None
        parallelism = (
            dims_ok
            and spread_size is not None
            and covered == full
            and not packing.residual
            and packing.d >= 2 * k
            and all(len(p) == spread_size for p in packing.parts)
        )
    if require_parallelism and not parallelism and not reasons:
        reasons.append("parts do not form a parallelism")
    return PackingReport(FAIL if reasons else PASS, len(packing.parts), covered, parallelism, reasons, witness)


__all__ = [
    "CertifyReport",
    "PackingReport",
    "PivotSpectrum",
    "certify",
    "definitional_min_distance",
    "definitional_pair_distances",
    "pivot_spectrum",
    "validate_packing",
]
