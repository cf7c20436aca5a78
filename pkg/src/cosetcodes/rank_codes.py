"""Rank-metric codes: Gabidulin MRD codes, lifting, Ferrers-restricted codes and
the Echelon-Ferrers multilevel assembly.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable

import numpy as np

from ._clique import max_weight_clique
from .errors import BudgetExceededError, InfeasibleParametersError, ShapeError
from .fq_matrix import (
    FerrersDiagram,
    PivotVector,
    nullspace_array,
    pivot_columns,
    rank_array,
    rre_array,
    span_array,
)
from .gf_arith import Field, MAX_ORDER, field_new, gf
from .metrics import hamming_distance, min_rank_distance, min_rank_weight
from .subspace import Code, Subspace

DEFAULT_ELEMENT_BUDGET = 1 << 22


def mrd_size(m: int, n: int, d: int, q: int) -> int:
    """Size of an m x n MRD code with minimum rank distance d (1 if d > min(m, n))."""
    if min(m, n, d) < 1:
        raise ValueError("m, n and d must be positive")
    lo, hi = min(m, n), max(m, n)
    if lo < d:
        return 1
    return q ** (hi * (lo - d + 1))


def lifted_mrd_size(q: int, k: int, n: int, d: int) -> int:
    """Size of a lifted MRD code in G_q(n, k) with subspace distance d."""
    if d % 2:
        raise ValueError(f"subspace distance of a constant-dimension code is even, got {d}")
    lo, hi = min(k, n - k), max(k, n - k)
    if d > 2 * lo:
        return 1
    return q ** (hi * (lo - d // 2 + 1))


# ---------------------------------------------------------------------------
# extension field F_{q^m} viewed over F_q


@dataclass(frozen=True)
class _Tower:
    """F_{q^m} with coordinates over F_q in the basis 1, x, ..., x^{m-1}."""

    base: Field
    big: Field
    m: int
    expand: np.ndarray  # (q^m, m): F_q coordinates of each element

    @property
    def big_order(self) -> int:
        return self.big.order


@functools.lru_cache(maxsize=None)
def _tower(q: int, m: int) -> _Tower:
    base = gf(q)
    p, e = base.p, base.e
    if q**m > MAX_ORDER:
        raise InfeasibleParametersError(f"F_{q}^{m} exceeds the supported field size")
    big = field_new(p, e * m)
    if e == 1:
        idx = np.arange(big.order, dtype=np.int64)
        expand = np.stack([(idx // p**t) % p for t in range(m)], axis=1)
        return _Tower(base, big, m, expand)
    em = e * m
    emb = big.subfield_embedding(base)
    prime = field_new(p, 1)
    # rows r = t*e + s: F_p coefficients of beta_s * x^t, beta_s the image of x_sub^s
    basis = np.zeros((em, em), dtype=np.int64)
    for t in range(m):
        xt = int(big.exp[t])
        for s in range(e):
            val = big.mul(int(emb[p**s]), xt)
            basis[t * e + s] = big.coefficients(val)
    aug = np.concatenate([basis, np.eye(em, dtype=np.int64)], axis=1)
    red, piv = rre_array(prime, aug)
    if piv != list(range(em)):
        raise AssertionError("1, x, ..., x^(m-1) is not a basis over the subfield")
    inv = red[:, em:]
    idx = np.arange(big.order, dtype=np.int64)
    digits = np.stack([(idx // p**j) % p for j in range(em)], axis=1)
    b = (digits @ inv) % p
    weights = np.array([p**s for s in range(e)], dtype=np.int64)
    expand = np.stack([(b[:, t * e : (t + 1) * e] * weights).sum(axis=1) for t in range(m)], axis=1)
    return _Tower(base, big, m, expand)


# ---------------------------------------------------------------------------
# rank-metric codes


@dataclass(eq=False)
class RankMetricCode:
    """An F_q-affine set of m x n matrices: offset + span(generators).

    ``generators`` is an (N, m, n) array of linearly independent matrices, so
    the cardinality is q**N.  ``d`` is the declared minimum rank distance.
    ``nested`` maps a larger distance d'' to the number of leading generators
    spanning the distance-d'' subcode (Gabidulin codes only).
    """

    field: Field
    m: int
    n: int
    d: int
    generators: np.ndarray
    offset: np.ndarray | None = None
    nested: dict[int, int] = dc_field(default_factory=dict)

    def __post_init__(self):
        g = np.asarray(self.generators, dtype=np.int64).reshape(-1, self.m, self.n)
        g.setflags(write=False)
        self.generators = g
        if self.offset is not None:
            off = np.asarray(self.offset, dtype=np.int64).reshape(self.m, self.n)
            self.offset = None if not off.any() else off

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def dimension(self) -> int:
        return self.generators.shape[0]

    @property
    def cardinality(self) -> int:
        return self.q**self.dimension

    def __len__(self) -> int:
        return self.cardinality

    @property
    def is_linear(self) -> bool:
        return self.offset is None

    def elements(self, budget: int = DEFAULT_ELEMENT_BUDGET) -> np.ndarray:
        """All codewords as a (|C|, m, n) array (deterministic order)."""
        if self.cardinality > budget:
            raise BudgetExceededError(f"{self.cardinality} codewords exceed budget {budget}")
        if self.dimension == 0:
            out = np.zeros((1, self.m, self.n), dtype=np.int64)
        else:
            out = span_array(self.field, self.generators)
        if self.offset is not None:
            out = self.field.add_arr(out, self.offset[None])
        return out

    def translate(self, offset: np.ndarray) -> RankMetricCode:
        off = np.asarray(offset, dtype=np.int64).reshape(self.m, self.n)
        if self.offset is not None:
            off = self.field.add_arr(off, self.offset)
        return RankMetricCode(self.field, self.m, self.n, self.d, self.generators, off, dict(self.nested))

    def subcode(self, d2: int) -> RankMetricCode:
        """The nested linear subcode with minimum rank distance d2 >= d."""
        if d2 == self.d:
            return RankMetricCode(self.field, self.m, self.n, self.d, self.generators, None, dict(self.nested))
        if d2 not in self.nested:
            raise InfeasibleParametersError(f"no nested subcode of distance {d2} recorded")
        cut = self.nested[d2]
        nested = {k: v for k, v in self.nested.items() if k >= d2}
        return RankMetricCode(self.field, self.m, self.n, d2, self.generators[:cut], None, nested)

    def coset_representatives(self, d2: int) -> np.ndarray:
        """Representatives of the cosets of the distance-d2 subcode inside this code."""
        cut = self.nested[d2] if d2 != self.d else self.dimension
        rest = self.generators[cut:]
        if rest.shape[0] == 0:
            return np.zeros((1, self.m, self.n), dtype=np.int64)
        return span_array(self.field, rest)

    def transpose(self) -> RankMetricCode:
        off = None if self.offset is None else self.offset.T
        return RankMetricCode(
            self.field, self.n, self.m, self.d, np.swapaxes(self.generators, 1, 2).copy(), off, dict(self.nested)
        )

    def min_distance(self, exhaustive_pairs: bool = False, budget: int = DEFAULT_ELEMENT_BUDGET) -> int:
        """Exact minimum rank distance.

        Linear and affine codes use the minimum rank over the nonzero vectors
        of the linear part, which equals the pairwise minimum; set
        ``exhaustive_pairs`` to scan all pairs instead.
        """
        if self.cardinality < 2:
            raise ValueError("minimum distance needs at least two codewords")
        if exhaustive_pairs:
            return min_rank_distance(self.field, self.elements(budget))[0]
        lin = RankMetricCode(self.field, self.m, self.n, self.d, self.generators)
        return min_rank_weight(self.field, lin.elements(budget))

    def __repr__(self) -> str:
        kind = "linear" if self.is_linear else "affine"
        return f"RankMetricCode(q={self.q}, {self.m}x{self.n}, d={self.d}, size={self.cardinality}, {kind})"


def _gabidulin_generators(q: int, m: int, n: int, kdim: int) -> np.ndarray:
    """F_q generators of a length-n Gabidulin code over F_{q^m} (m >= n).

    Generator (i, t) evaluates x^t * z^(q^i) at z = x^j, j < n, and expands each
    value over F_q in the basis x^0..x^(m-1) (column j of an m x n matrix).
    """
    tw = _tower(q, m)
    order = tw.big_order - 1
    gens = np.zeros((kdim * m, m, n), dtype=np.int64)
    for i in range(kdim):
        qi = q**i
        for t in range(m):
            for j in range(n):
                val = int(tw.big.exp[(t + j * qi) % order])
                gens[i * m + t, :, j] = tw.expand[val]
    return gens


def gabidulin(m: int, n: int, d: int, q: int) -> RankMetricCode:
    """Linear MRD code of m x n matrices over F_q with minimum rank distance d."""
    if not 1 <= d <= min(m, n):
        raise InfeasibleParametersError(f"need 1 <= d <= min(m, n), got d={d}, m={m}, n={n}")
    if m < n:
        return gabidulin(n, m, d, q).transpose()
    field = gf(q)
    kdim = n - d + 1
    gens = _gabidulin_generators(q, m, n, kdim)
    nested = {d2: m * (n - d2 + 1) for d2 in range(d + 1, n + 1)}
    return RankMetricCode(field, m, n, d, gens, None, nested)


def lift(code: RankMetricCode | Iterable[np.ndarray], field: Field | None = None) -> Code:
    """The lifted code {rowspace [I_k | A]} in G_q(k + cols, k)."""
    if isinstance(code, RankMetricCode):
        mats = code.elements()
        field = code.field
        k, c = code.m, code.n
    else:
        mats = np.asarray(list(code), dtype=np.int64)
        if field is None:
            raise ValueError("field required when lifting raw matrices")
        if mats.ndim != 3:
            raise ShapeError("expected a stack of matrices")
        k, c = mats.shape[1:]
    n = k + c
    out = Code(field, n)
    eye = np.eye(k, dtype=np.int64)
    for a in mats:
        out.add(Subspace(field, np.concatenate([eye, a], axis=1), trusted=True))
    return out


# ---------------------------------------------------------------------------
# Ferrers diagrams


def ferrers_bound(v: PivotVector, delta: int) -> int:
    """Upper bound on the F_q-dimension of a linear rank-distance-delta code in v's diagram.

    Minimum over i < delta of the dots remaining after removing the top i
    rows and the rightmost delta-1-i columns.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")
    mask = FerrersDiagram(tuple(v)).mask()
    k, c = mask.shape
    best = None
    for i in range(delta):
        drop_cols = delta - 1 - i
        sub = mask[i:, : max(c - drop_cols, 0)]
        nu = int(sub.sum())
        best = nu if best is None else min(best, nu)
    return best


def _diagram_matrix_to_subspace(field: Field, v: PivotVector, mat: np.ndarray) -> Subspace:
    cols = pivot_columns(v)
    free = [i for i, x in enumerate(v) if not x]
    k, n = len(cols), len(v)
    g = np.zeros((k, n), dtype=np.int64)
    for r, c in enumerate(cols):
        g[r, c] = 1
    if free:
        g[:, free] = mat
    return Subspace(field, g, trusted=True)


@dataclass
class FerrersCode:
    code: RankMetricCode
    pivots: PivotVector
    delta: int
    bound: int
    method: str  # "gabidulin-intersection" | "exhaustive" | "trivial"

    @property
    def dimension(self) -> int:
        return self.code.dimension

    @property
    def attains_bound(self) -> bool:
        return self.dimension >= self.bound


EXHAUSTIVE_DIAGRAM_LIMIT = 1 << 20


def _exhaustive_ferrers(field: Field, mask: np.ndarray, delta: int, target: int) -> np.ndarray:
    """Backtracking search for a linear code of dimension ``target`` in the diagram.

    Returns the generators of the largest code found (at least the greedy one).
    """
    q = field.order
    k, c = mask.shape
    pos = np.argwhere(mask)
    dots = len(pos)
    cands = []
    for digits in itertools.product(range(q), repeat=dots):
        if not any(digits):
            continue
        # normalized: first nonzero digit equals 1
        first = next(x for x in digits if x)
        if first != 1:
            continue
        mat = np.zeros((k, c), dtype=np.int64)
        mat[pos[:, 0], pos[:, 1]] = digits
        if rank_array(field, mat) >= delta:
            cands.append(mat)
    best: list[np.ndarray] = []

    def ok_with(span: np.ndarray, g: np.ndarray) -> np.ndarray | None:
        # every element x*g + s (x != 0) must have rank >= delta
        new = []
        for x in range(1, q):
            xg = field.mul_arr(g, x)
            for s in span:
                e = field.add_arr(xg, s)
                if rank_array(field, e) < delta:
                    return None
                new.append(e)
        return np.concatenate([span, np.array(new)], axis=0)

    def rec(start: int, gens: list[np.ndarray], span: np.ndarray) -> bool:
        nonlocal best
        if len(gens) > len(best):
            best = list(gens)
        if len(best) >= target:
            return True
        for t in range(start, len(cands)):
            if len(gens) + (len(cands) - t) < len(best) + 1:
                break
            nxt = ok_with(span, cands[t])
            if nxt is not None:
                gens.append(cands[t])
                if rec(t + 1, gens, nxt):
                    return True
                gens.pop()
        return False

    rec(0, [], np.zeros((1, k, c), dtype=np.int64))
    return np.array(best, dtype=np.int64).reshape(-1, k, c)


def ferrers_code(v: PivotVector, delta: int, q: int) -> FerrersCode:
    """Linear rank-metric code supported on v's Ferrers diagram with distance >= delta.

    Built as the subcode of a Gabidulin code vanishing off the diagram; if its
    dimension falls short of :func:`ferrers_bound` and the diagram is small
    (q**dots <= 2**20), an exhaustive search for a linear code attaining the
    bound is tried instead.
    """
    v = tuple(v)
    field = gf(q)
    diag = FerrersDiagram(v)
    mask = diag.mask()
    k, c = mask.shape
    bound = ferrers_bound(v, delta)
    if bound <= 0 or k == 0 or c == 0 or delta > min(k, c):
        empty = RankMetricCode(field, k, c, delta, np.zeros((0, k, c), dtype=np.int64))
        return FerrersCode(empty, v, delta, max(bound, 0), "trivial")
    g = gabidulin(k, c, delta, q)
    flat = g.generators.reshape(g.dimension, -1)
    off = np.nonzero(~mask.ravel())[0]
    if off.size:
        null = nullspace_array(field, flat[:, off].T)  # coefficient vectors
        gens = np.zeros((null.shape[0], k * c), dtype=np.int64)
        for t, coeff in enumerate(null):
            acc = np.zeros(k * c, dtype=np.int64)
            for j in np.nonzero(coeff)[0]:
                acc = field.add_arr(acc, field.mul_arr(flat[j], int(coeff[j])))
            gens[t] = acc
        gens = gens.reshape(-1, k, c)
    else:
        gens = g.generators.copy()
    method = "gabidulin-intersection"
    if gens.shape[0] < bound and q ** int(mask.sum()) <= EXHAUSTIVE_DIAGRAM_LIMIT:
        alt = _exhaustive_ferrers(field, mask, delta, bound)
        if alt.shape[0] > gens.shape[0]:
            gens, method = alt, "exhaustive"
    code = RankMetricCode(field, k, c, delta, gens)
    return FerrersCode(code, v, delta, bound, method)


# ---------------------------------------------------------------------------
# skeleton codes and the multilevel assembly


@dataclass(frozen=True)
class SkeletonCode:
    """A set of pivot vectors of common length with a minimum Hamming distance."""

    vectors: tuple[PivotVector, ...]
    min_hamming: int

    def __post_init__(self):
        vecs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if len({len(v) for v in vecs}) > 1:
            raise ShapeError("pivot vectors of different lengths")
        for a, b in itertools.combinations(vecs, 2):
            if hamming_distance(a, b) < self.min_hamming:
                raise InfeasibleParametersError(
                    f"pivot vectors {a} and {b} are at Hamming distance {hamming_distance(a, b)} < {self.min_hamming}"
                )

    @property
    def n(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0


def echelon_ferrers_assemble(skeleton: SkeletonCode, delta: int, q: int) -> Code:
    """Union over the skeleton of the lifted Ferrers codes; D_S >= 2 delta."""
    if skeleton.min_hamming < 2 * delta:
        raise InfeasibleParametersError(f"skeleton distance {skeleton.min_hamming} < {2 * delta}")
    field = gf(q)
    out = Code(field, skeleton.n)
    for v in skeleton.vectors:
        fc = ferrers_code(v, delta, q)
        for mat in fc.code.elements():
            out.add(_diagram_matrix_to_subspace(field, v, mat))
    return out


def ef_skeleton_bound(n: int, k: int, d: int, q: int) -> tuple[int, list[PivotVector]]:
    """Largest Echelon-Ferrers code size allowed by the per-vector dimension bound.

    Maximizes sum q**ferrers_bound(v, d/2) over skeletons of weight-k vectors
    at pairwise Hamming distance >= d (exact maximum-weight clique).
    """
    from .fq_matrix import pivot_vectors

    vecs = pivot_vectors(n, k)
    delta = d // 2
    weights = [q ** ferrers_bound(v, delta) for v in vecs]
    adj = [0] * len(vecs)
    for i, j in itertools.combinations(range(len(vecs)), 2):
        if hamming_distance(vecs[i], vecs[j]) >= d:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    best, members = max_weight_clique(weights, adj)
    return best, [vecs[i] for i in members]
