"""The coset construction and its distance and compatibility criteria.

A codeword is the row space of the block matrix

    [ A  phi_B(F) ]
    [ 0     B     ]

with A from a family A_i of k'-subspaces of F_q^{n'}, B from the paired family
B_i of (k-k')-subspaces of F_q^{n-n'}, and F from a matrix set Fbar.  The
block matrix is already in reduced row echelon form, so no reduction is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import BlueprintError, InfeasibleParametersError, ShapeError
from .fq_matrix import FqMatrix, phi_b_array
from .gf_arith import Field, gf
from .metrics import min_rank_distance, pair_distances, rank_distance, subspace_distance
from .rank_codes import RankMetricCode, gabidulin, mrd_size
from .subspace import Code, Subspace


def default_fbar(q: int, n: int, k: int, nprime: int, kprime: int, d: int) -> RankMetricCode:
    """Largest linear F-set: a Gabidulin code of rank distance d/2 (contains 0)."""
    cols = n - nprime - k + kprime
    field = gf(q)
    delta = (d + 1) // 2
    if cols == 0 or mrd_size(kprime, cols, delta, q) == 1:
        return RankMetricCode(field, kprime, cols, delta, np.zeros((0, kprime, cols), dtype=np.int64))
    return gabidulin(kprime, cols, delta, q)


def pair_families(a_parts: Sequence[Sequence], b_parts: Sequence[Sequence]) -> tuple[list, list]:
    """Pair families largest-with-largest, truncating to the shorter list.

    Sorting both sides by size maximizes sum |A_i| |B_i| over all pairings.
    Ties keep the input order.
    """
    l = min(len(a_parts), len(b_parts))
    a_sorted = sorted(a_parts, key=len, reverse=True)[:l]
    b_sorted = sorted(b_parts, key=len, reverse=True)[:l]
    return [list(x) for x in a_sorted], [list(x) for x in b_sorted]


@dataclass
class CosetBlueprint:
    """Input data of the coset construction."""

    q: int
    n: int
    k: int
    nprime: int
    kprime: int
    d: int
    A: list[list[Subspace]]
    B: list[list[Subspace]]
    F: np.ndarray | RankMetricCode | None = None
    field: Field = dc_field(init=False)

    def __post_init__(self):
        self.field = gf(self.q)
        self.A = [list(part) for part in self.A]
        self.B = [list(part) for part in self.B]
        if self.F is None:
            self.F = default_fbar(self.q, self.n, self.k, self.nprime, self.kprime, self.d)
        if isinstance(self.F, RankMetricCode):
            self._fcode: RankMetricCode | None = self.F
            self.F = self.F.elements()
        else:
            self._fcode = None
        self.F = np.asarray(self.F, dtype=np.int64).reshape(-1, self.kprime, self.fcols)

    @property
    def fcols(self) -> int:
        return self.n - self.nprime - self.k + self.kprime

    @property
    def l(self) -> int:
        return len(self.A)

    @property
    def lam(self) -> int:
        return lambda_of(self)

    @property
    def size(self) -> int:
        return len(self.F) * self.lam

    # -- validation ------------------------------------------------------------

    def check_parameters(self) -> None:
        n, k, n1, k1 = self.n, self.k, self.nprime, self.kprime
        if not (1 <= k <= n / 2 and 1 <= k1 <= n1 and 1 <= k - k1 <= n - n1):
            raise InfeasibleParametersError(
                f"need 1 <= k <= n/2, 1 <= k' <= n', 1 <= k-k' <= n-n'; got n={n} k={k} n'={n1} k'={k1}"
            )

    def validate(self) -> None:
        """Check every blueprint invariant; raise BlueprintError with a witness."""
        self.check_parameters()
        if len(self.A) != len(self.B):
            raise BlueprintError(f"family lengths differ: {len(self.A)} vs {len(self.B)}")
        if len(self.F) == 0:
            raise BlueprintError("F-set is empty")
        for name, parts, nn, kk in (("A", self.A, self.nprime, self.kprime), ("B", self.B, self.n - self.nprime, self.k - self.kprime)):
            seen: dict[Subspace, int] = {}
            for i, part in enumerate(parts):
                if not part:
                    raise BlueprintError(f"{name}_{i} is empty", witness=(name, i))
                for s in part:
                    if s.field != self.field or s.n != nn or s.dim != kk:
                        raise BlueprintError(
                            f"{name}_{i} member {s.to_text()} is not in G_{self.q}({nn},{kk})", witness=(name, i, s)
                        )
                    if s in seen:
                        raise BlueprintError(
                            f"{name}_{seen[s]} and {name}_{i} share {s.to_text()}", witness=(name, seen[s], i, s)
                        )
                    seen[s] = i
        if len(self.F) > 1:
            fmin, a, b = min_rank_distance(self.field, self.F, floor=0)
            if 2 * fmin < self.d:
                raise BlueprintError(
                    f"F-set rank distance {fmin} < d/2", witness=("F", a, b)
                )
        amin = _family_min_matrix(self.field, self.nprime, self.A)
        bmin = _family_min_matrix(self.field, self.n - self.nprime, self.B)
        for i in range(self.l):
            for name, mat in (("A", amin), ("B", bmin)):
                if mat[i, i] < self.d:
                    raise BlueprintError(f"{name}_{i} has minimum distance {mat[i, i]} < {self.d}", witness=(name, i))
        for i, j in itertools.combinations(range(self.l), 2):
            if amin[i, j] + bmin[i, j] < self.d:
                raise BlueprintError(
                    f"families {i} and {j} violate the combined condition: {amin[i, j]} + {bmin[i, j]} < {self.d}",
                    witness=(i, j),
                )

    # -- assembly --------------------------------------------------------------

    def codeword(self, a: Subspace, b: Subspace, f: np.ndarray) -> Subspace:
        k1 = self.kprime
        top = np.concatenate([a.matrix, phi_b_array(b.pivot_vector, f)], axis=1)
        bot = np.concatenate([np.zeros((self.k - k1, self.nprime), dtype=np.int64), b.matrix], axis=1)
        return Subspace(self.field, np.concatenate([top, bot], axis=0), trusted=True)

    def assemble(self, checked: bool = True) -> Code:
        """The coset code; with ``checked=False`` validation is skipped and the
        caller must certify the result independently."""
        if checked:
            self.validate()
        else:
            self.check_parameters()
        out = Code(self.field, self.n)
        for i in range(self.l):
            for a in self.A[i]:
                for b in self.B[i]:
                    for f in self.F:
                        out.add(self.codeword(a, b, f))
        if len(out) != self.size:
            raise BlueprintError(f"assembly produced {len(out)} distinct codewords, expected {self.size}")
        return out

    def params(self) -> CosetFamilyParams:
        return CosetFamilyParams(self.n, self.k, self.nprime, self.kprime)


def _family_min_matrix(field: Field, n: int, parts: list[list[Subspace]]) -> np.ndarray:
    """l x l matrix of minimum distances within (diagonal) and between families.

    Singleton families get a diagonal of a large sentinel.
    """
    members = [s for part in parts for s in part]
    owner = np.array([i for i, part in enumerate(parts) for _ in part], dtype=np.int64)
    l = len(parts)
    big = 1 << 30
    out = np.full((l, l), big, dtype=np.int64)
    if len(members) < 2:
        return out
    code = Code(field, n, members)
    if len(code) != len(members):
        raise BlueprintError("duplicate subspace across families")
    ii, jj = np.triu_indices(len(members), 1)
    dist = pair_distances(code, np.stack([ii, jj], axis=1))
    oi, oj = owner[ii], owner[jj]
    lo, hi = np.minimum(oi, oj), np.maximum(oi, oj)
    np.minimum.at(out, (lo, hi), dist)
    out = np.minimum(out, out.T)
    return out


def lambda_of(bp: CosetBlueprint) -> int:
    return sum(len(a) * len(b) for a, b in zip(bp.A, bp.B))


# ---------------------------------------------------------------------------
# pairwise criteria


class PairCheck(NamedTuple):
    guaranteed: bool
    via: str  # "combined", "rank", "none"
    realized: int | None  # exact distance when A = A' and B = B'


def check_pair_distance(
    a: Subspace, a2: Subspace, b: Subspace, b2: Subspace, f, f2, d: int
) -> PairCheck:
    """Sufficient condition for two coset codewords to be at distance >= d."""
    fm = f if isinstance(f, FqMatrix) else FqMatrix(a.field, np.asarray(f))
    fm2 = f2 if isinstance(f2, FqMatrix) else FqMatrix(a.field, np.asarray(f2))
    if fm.shape != fm2.shape:
        raise ShapeError(f"F shapes differ: {fm.shape} vs {fm2.shape}")
    if a.n != a2.n or b.n != b2.n or a.dim != a2.dim or b.dim != b2.dim:
        raise ShapeError("A and B blocks must have matching shapes")
    dr = rank_distance(fm, fm2)
    realized = 2 * dr if (a == a2 and b == b2) else None
    if subspace_distance(a, a2) + subspace_distance(b, b2) >= d:
        return PairCheck(True, "combined", realized)
    if 2 * dr >= d:
        return PairCheck(True, "rank", realized)
    return PairCheck(False, "none", realized)


class PivotCheck(NamedTuple):
    compatible: bool
    value: int  # |s - k'| + |k~ - s - k + k'|


def multilevel_pivot_value(x: Sequence[int] | Subspace, nprime: int, k: int, kprime: int) -> int:
    v = x.pivot_vector if isinstance(x, Subspace) else tuple(x)
    s = sum(v[:nprime])
    kt = sum(v)
    return abs(s - kprime) + abs(kt - s - k + kprime)


def check_multilevel_pivot(x: Subspace | Sequence[int], bp: CosetBlueprint | CosetFamilyParams, d: int) -> PivotCheck:
    """Whether X is at distance >= d from every codeword of the coset code."""
    n = bp.n
    v = x.pivot_vector if isinstance(x, Subspace) else tuple(x)
    if len(v) != n:
        raise ShapeError(f"X lives in dimension {len(v)}, blueprint in {n}")
    val = multilevel_pivot_value(v, bp.nprime, bp.k, bp.kprime)
    return PivotCheck(d <= val, val)


@dataclass(frozen=True)
class CosetFamilyParams:
    n: int
    k: int
    nprime: int
    kprime: int


class UnionCheck(NamedTuple):
    compatible: bool
    K: int
    beta_lo: int
    beta_hi: int
    gamma: int
    lam: int


def union_bound_K(p1: CosetFamilyParams, p2: CosetFamilyParams) -> UnionCheck:
    """The pivot-weight lower bound K on distances between two coset codes."""
    if p1.nprime > p2.nprime:
        p1, p2 = p2, p1
    if p1.n != p2.n:
        raise InfeasibleParametersError("both codes must live in the same ambient space")
    for p in (p1, p2):
        if not (1 <= p.kprime <= p.nprime and 1 <= p.k - p.kprime <= p.n - p.nprime):
            raise InfeasibleParametersError(f"parameter ranges violated for {p}")
    k1p = p1.kprime
    gamma = p1.kprime + p2.k - p1.k
    lam = max(gamma, k1p)
    blo = max(p2.kprime - p2.nprime + p1.nprime, 0)
    bhi = min(p1.nprime, p2.kprime)

    def f(m: int) -> int:
        return abs(m - k1p) + abs(m - gamma)

    if bhi <= lam:
        K = f(bhi)
    elif blo <= lam < bhi:
        K = f(lam)
    else:
        K = f(blo)
    return UnionCheck(False, K, blo, bhi, gamma, lam)


def check_union_compatibility(p1: CosetFamilyParams, p2: CosetFamilyParams, d: int) -> UnionCheck:
    u = union_bound_K(p1, p2)
    return u._replace(compatible=d <= u.K)


__all__ = [
    "CosetBlueprint",
    "CosetFamilyParams",
    "PairCheck",
    "PivotCheck",
    "UnionCheck",
    "check_multilevel_pivot",
    "check_pair_distance",
    "check_union_compatibility",
    "default_fbar",
    "lambda_of",
    "multilevel_pivot_value",
    "pair_families",
    "union_bound_K",
]
