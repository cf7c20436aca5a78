"""Spreads, partial spreads, parallelisms, code decompositions and bounds on Lambda.

A decomposition splits a ground code into pairwise disjoint parts whose
minimum distance is at least ``d``; these parts are the families A_i or B_i
of the coset construction, and Lambda = sum |A_i| |B_i|.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from ._clique import bits, cliques_by_size, max_clique
from .coset import CosetBlueprint
from .errors import BudgetExceededError, InfeasibleParametersError, OracleGapError, ParseError
from .fq_matrix import enumerate_grassmannian, gaussian_binomial, nullspace_array
from .gf_arith import gf
from .metrics import pair_distances
from .rank_codes import _tower, gabidulin, lift, lifted_mrd_size
from .subspace import Code, Subspace

EXACT_SELECTION_LIMIT = 120


# ---------------------------------------------------------------------------
# spreads


def spread(n: int, k: int, q: int) -> Code:
    """Desarguesian k-spread of F_q^n: the sets a * F_{q^k} inside F_{q^n}."""
    if k < 1 or n % k:
        raise InfeasibleParametersError(f"a {k}-spread of F_{q}^{n} needs k | n")
    field = gf(q)
    tw = _tower(q, n)
    order = tw.big_order - 1
    step = order // (q**k - 1)
    out = Code(field, n)
    for i in range(step):
        rows = np.array([tw.expand[int(tw.big.exp[(i + j * step) % order])] for j in range(k)], dtype=np.int64)
        out.add(Subspace(field, rows))
    return out


def partial_spread(n: int, k: int, q: int) -> Code:
    """Partial k-spread of F_q^n for n = 1 (mod k) of size (q^n - q)/(q^k - 1) - q + 1.

    Lifted MRD k x (n-k) codes with rank distance k on the first coordinates,
    then recursively a partial spread on the last n - k coordinates.
    """
    if k < 2:
        raise InfeasibleParametersError("partial spreads are built for k >= 2")
    if n % k != 1 or n < k + 1:
        raise InfeasibleParametersError(f"need n = 1 (mod k) and n > k, got n={n}, k={k}")
    field = gf(q)
    out = Code(field, n)
    if n == k + 1:
        out.add(Subspace(field, np.concatenate([np.eye(k, dtype=np.int64), np.zeros((k, 1), dtype=np.int64)], axis=1)))
        return out
    out.update(lift(gabidulin(k, n - k, k, q)))
    for w in partial_spread(n - k, k, q):
        out.add(Subspace(field, np.concatenate([np.zeros((k, k), dtype=np.int64), w.matrix], axis=1), trusted=True))
    return out


def partial_spread_size(n: int, k: int, q: int) -> int:
    return (q**n - q) // (q**k - 1) - q + 1


def dual_subspace(s: Subspace) -> Subspace:
    """Orthogonal complement under the standard bilinear form."""
    if s.dim == 0:
        return Subspace(s.field, np.eye(s.n, dtype=np.int64), trusted=True)
    null = nullspace_array(s.field, s.matrix)
    return Subspace(s.field, null.reshape(-1, s.n), s.n)


def dual_code(code: Code) -> Code:
    return Code(code.field, code.n, (dual_subspace(s) for s in code))


# ---------------------------------------------------------------------------
# packings


@dataclass
class Packing:
    """Pairwise disjoint parts of a ground code, each of minimum distance >= d."""

    ground: Code
    parts: list[list[Subspace]]
    d: int
    residual: list[Subspace] = dc_field(default_factory=list)
    modes: list[str] = dc_field(default_factory=list)

    @property
    def l(self) -> int:
        return len(self.parts)

    @property
    def sizes(self) -> list[int]:
        return [len(p) for p in self.parts]

    @property
    def covered(self) -> int:
        return sum(self.sizes)

    def is_parallelism(self) -> bool:
        """Ground is all of G_q(n, k), nothing left over and every part is a spread."""
        k = self.ground.k
        if k is None or self.residual:
            return False
        q, n = self.ground.q, self.ground.n
        if len(self.ground) != gaussian_binomial(n, k, q) or n % k:
            return False
        size = (q**n - 1) // (q**k - 1)
        return self.d >= 2 * k and all(len(p) == size for p in self.parts) and self.covered == len(self.ground)


def _distance_matrix(code: Code) -> np.ndarray:
    m = len(code)
    out = np.zeros((m, m), dtype=np.int64)
    if m < 2:
        return out
    ii, jj = np.triu_indices(m, 1)
    dist = pair_distances(code, np.stack([ii, jj], axis=1))
    out[ii, jj] = dist
    out[jj, ii] = dist
    return out


def _adjacency(dist: np.ndarray, d: int) -> list[int]:
    """Bitsets of pairs at distance >= d."""
    m = dist.shape[0]
    adj = []
    for i in range(m):
        row = dist[i] >= d
        row[i] = False
        mask = 0
        for j in np.nonzero(row)[0]:
            mask |= 1 << int(j)
        adj.append(mask)
    return adj


def _sorted_ground(ground: Code) -> Code:
    return ground.sorted()


def greedy_decompose(ground: Code, d: int, d_ground: int, exact_limit: int = EXACT_SELECTION_LIMIT) -> Packing:
    """Repeatedly extract a largest subcode of minimum distance >= d.

    Selection is an exact maximum clique while at most ``exact_limit``
    codewords remain, otherwise greedy insertion in order; each part records
    its mode.  After a part is chosen, every remaining codeword closer than
    ``d_ground`` to it is removed (this includes the part itself).
    """
    g = _sorted_ground(ground)
    mem = g.members
    dist = _distance_matrix(g)
    adj = _adjacency(dist, d)
    near = _adjacency(dist, d_ground)  # pairs at distance >= d_ground
    remaining = (1 << len(mem)) - 1
    parts, modes = [], []
    while remaining:
        if remaining.bit_count() <= exact_limit:
            chosen = max_clique(adj, remaining)
            modes.append("exact")
        else:
            chosen, allowed = [], remaining
            for v in bits(remaining):
                if allowed >> v & 1:
                    chosen.append(v)
                    allowed &= adj[v]
            modes.append("greedy")
        parts.append([mem[i] for i in chosen])
        for v in chosen:
            remaining &= near[v]
            remaining &= ~(1 << v)
    return Packing(g, parts, d, [], modes)


# ---------------------------------------------------------------------------
# exact decomposition (independent set with a cardinality constraint)


@dataclass
class DecompositionResult:
    packing: Packing
    objective: int
    bound: int
    optimal: bool
    census: list[int]
    kappa: int
    nodes: int


def _select_disjoint(cands: list[int], n: int, l: int, node_budget: int) -> tuple[int, list[int], int, bool]:
    """Choose exactly l pairwise disjoint candidate sets maximizing covered elements.

    Branches on the lowest free element: cover it by one of its candidates
    (largest first, then lexicographically) or leave it uncovered.
    """
    by_elem: list[list[int]] = [[] for _ in range(n)]
    size = [c.bit_count() for c in cands]
    for idx, c in enumerate(cands):
        for e in bits(c):
            by_elem[e].append(idx)
    for e in range(n):
        by_elem[e].sort(key=lambda i: (-size[i], i))
    kmax = max(size) if size else 0
    best_val, best_sel = -1, []
    nodes = 0
    exhausted = False

    def rec(free: int, chosen: list[int], val: int) -> None:
        nonlocal best_val, best_sel, nodes, exhausted
        nodes += 1
        if nodes > node_budget:
            exhausted = True
            return
        r = l - len(chosen)
        if r == 0:
            if val > best_val:
                best_val, best_sel = val, list(chosen)
            return
        nfree = free.bit_count()
        if nfree < r:
            return
        if val + min(nfree, r * kmax) <= best_val:
            return
        lb = free & -free
        e = lb.bit_length() - 1
        for idx in by_elem[e]:
            c = cands[idx]
            if c & ~free:
                continue
            chosen.append(idx)
            rec(free & ~c, chosen, val + size[idx])
            chosen.pop()
            if exhausted:
                return
        rec(free & ~lb, chosen, val)

    rec((1 << n) - 1, [], 0)
    return best_val, best_sel, nodes, not exhausted


def max_part_size(ground: Code, d: int) -> int:
    """Exact maximum size of a subcode with minimum distance >= d."""
    g = _sorted_ground(ground)
    return len(max_clique(_adjacency(_distance_matrix(g), d)))


def ilp_decompose(
    ground: Code,
    d: int,
    d_ground: int,
    l: int,
    kappa: int | None = None,
    node_budget: int = 20_000_000,
    candidate_budget: int = 5_000_000,
) -> DecompositionResult:
    """Exactly l disjoint subcodes of distance >= d covering as much as possible.

    Candidates are all subcodes of size 1..kappa with minimum distance >= d;
    kappa defaults to the exact maximum such size.  Raises BudgetExceededError
    (with incumbent and bound) when the node budget runs out.
    """
    g = _sorted_ground(ground)
    mem = g.members
    n = len(mem)
    if l < 1 or l > n:
        raise InfeasibleParametersError(f"need 1 <= l <= |ground| = {n}, got {l}")
    dist = _distance_matrix(g)
    if n > 1 and dist[np.triu_indices(n, 1)].min() < d_ground:
        raise InfeasibleParametersError(f"ground code has minimum distance below {d_ground}")
    adj = _adjacency(dist, d)
    if kappa is None:
        kappa = len(max_clique(adj))
    groups = cliques_by_size(adj, kappa, budget=candidate_budget)
    census = [len(gr) for gr in groups]
    cands = [c for gr in reversed(groups) for c in gr]
    val, sel, nodes, complete = _select_disjoint(cands, n, l, node_budget)
    bound = min(n, l * kappa)
    parts = [[mem[i] for i in bits(cands[idx])] for idx in sel]
    parts.sort(key=lambda p: (-len(p), [s.sort_key() for s in p]))
    covered = set(s for p in parts for s in p)
    residual = [s for s in mem if s not in covered]
    packing = Packing(g, parts, d, residual, ["ilp"] * len(parts))
    result = DecompositionResult(packing, val, val if complete else bound, complete, census, kappa, nodes)
    if not complete:
        raise BudgetExceededError(
            f"decomposition search stopped after {nodes} nodes; incumbent {val}, bound {bound}",
            incumbent=result,
            bound=bound,
        )
    return result


# ---------------------------------------------------------------------------
# the G_2(4, 2) parallelism


def _all_spreads(lines: list[Subspace], dist: np.ndarray, k: int) -> list[int]:
    adj = _adjacency(dist, 2 * k)
    q, n = lines[0].q, lines[0].n
    size = (q**n - 1) // (q**k - 1)
    return cliques_by_size(adj, size)[size - 1]


def parallelism_g42(q: int = 2) -> Packing:
    """A partition of the 35 lines of PG(3, 2) into 7 spreads (exact backtracking)."""
    if q != 2:
        raise InfeasibleParametersError("parallelism_g42 is implemented for q = 2 only")
    ground = Code(gf(q), 4, enumerate_grassmannian(4, 2, q)).sorted()
    mem = ground.members
    dist = _distance_matrix(ground)
    spreads = _all_spreads(mem, dist, 2)
    by_line: list[list[int]] = [[] for _ in mem]
    for idx, s in enumerate(spreads):
        for e in bits(s):
            by_line[e].append(idx)
    full = (1 << len(mem)) - 1

    def rec(covered: int, chosen: list[int]) -> list[int] | None:
        if covered == full:
            return list(chosen)
        free = full & ~covered
        e = (free & -free).bit_length() - 1
        for idx in by_line[e]:
            if spreads[idx] & covered:
                continue
            chosen.append(idx)
            res = rec(covered | spreads[idx], chosen)
            if res is not None:
                return res
            chosen.pop()
        return None

    sel = rec(0, [])
    if sel is None:
        raise AssertionError("no parallelism found")
    parts = [[mem[i] for i in bits(spreads[idx])] for idx in sel]
    return Packing(ground, parts, 4, [], ["exact"] * len(parts))


# ---------------------------------------------------------------------------
# the Lambda program


@dataclass(frozen=True)
class LambdaProgram:
    """max sum a_i b_i s.t. sum a_i <= alpha, sum b_i <= beta, 1 <= a_i <= abar, 1 <= b_i <= bbar."""

    alpha: int
    beta: int
    abar: int
    bbar: int
    l: int

    def __post_init__(self):
        if min(self.alpha, self.beta, self.abar, self.bbar, self.l) < 1:
            raise InfeasibleParametersError("all Lambda program parameters must be positive")
        if self.alpha < self.l or self.beta < self.l:
            raise InfeasibleParametersError(f"need alpha, beta >= l; got alpha={self.alpha}, beta={self.beta}, l={self.l}")

    def objective(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(a, b))

    def feasible(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return (
            len(a) == len(b) == self.l
            and all(1 <= x <= self.abar for x in a)
            and all(1 <= y <= self.bbar for y in b)
            and sum(a) <= self.alpha
            and sum(b) <= self.beta
        )


@dataclass(frozen=True)
class LambdaSolution:
    a: tuple[int, ...]
    b: tuple[int, ...]
    objective: int
    case: int


def _fill(total: int, cap: int, l: int) -> tuple[int, ...]:
    """1 + min(cap-1, max(0, total - l - (i-1)(cap-1))) for i = 1..l."""
    return tuple(1 + min(cap - 1, max(0, total - l - i * (cap - 1))) for i in range(l))


def lambda_ilp_solve(prog: LambdaProgram) -> LambdaSolution:
    """Closed-form optimum of the Lambda program."""
    l = prog.l
    a_full = prog.abar * l <= prog.alpha
    b_full = prog.bbar * l <= prog.beta
    a = (prog.abar,) * l if a_full else _fill(prog.alpha, prog.abar, l)
    b = (prog.bbar,) * l if b_full else _fill(prog.beta, prog.bbar, l)
    case = {(True, True): 1, (True, False): 2, (False, True): 3, (False, False): 4}[(a_full, b_full)]
    return LambdaSolution(a, b, prog.objective(a, b), case)


# ---------------------------------------------------------------------------
# A_q(n, d; k) oracle


class AqOracle:
    """Values of A_q(n, d; k): exact rules plus a table of known values.

    Rules: trivial dimensions, d <= 2 (whole Grassmannian), d > 2 min(k, n-k)
    (a single codeword), duality k <-> n-k, spreads (d = 2k, k | n) and
    partial spreads (d = 2k, n = 1 mod k).  Odd d is rounded up.  Anything
    else must come from the table, otherwise OracleGapError is raised.
    """

    def __init__(self, table: dict[tuple[int, int, int, int], tuple[int, str]] | None = None):
        self.table = dict(table or {})

    @classmethod
    def default(cls) -> AqOracle:
        return cls(load_aq_table(default_aq_table_path()))

    @classmethod
    def from_file(cls, path: str | Path) -> AqOracle:
        return cls(load_aq_table(path))

    def __call__(self, q: int, n: int, d: int, k: int) -> int:
        return self.lookup(q, n, d, k)[0]

    def lookup(self, q: int, n: int, d: int, k: int) -> tuple[int, str]:
        if not 0 <= k <= n:
            raise InfeasibleParametersError(f"need 0 <= k <= n, got k={k}, n={n}")
        if d % 2:
            d += 1
        if k == 0 or k == n:
            return 1, "trivial dimension"
        if d <= 2:
            return gaussian_binomial(n, k, q), "all subspaces"
        if d > 2 * min(k, n - k):
            return 1, "distance exceeds 2 min(k, n-k)"
        if 2 * k > n:
            val, src = self.lookup(q, n, d, n - k)
            return val, f"duality; {src}"
        key = (q, n, d, k)
        if key in self.table:
            return self.table[key]
        if d == 2 * k and n % k == 0:
            return (q**n - 1) // (q**k - 1), "spread"
        if d == 2 * k and n % k == 1 and k >= 2:
            return partial_spread_size(n, k, q), "partial spread"
        raise OracleGapError(q, n, d, k)


def default_aq_table_path() -> Path:
    return Path(str(resources.files("cosetcodes") / "data" / "aq_table.txt"))


def load_aq_table(path: str | Path) -> dict[tuple[int, int, int, int], tuple[int, str]]:
    """Parse ``q n d k value source...`` lines; '#' starts a comment."""
    out: dict[tuple[int, int, int, int], tuple[int, str]] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split(None, 5)
        if len(tok) < 5:
            raise ParseError(f"{path}:{lineno}: expected 'q n d k value source'")
        try:
            q, n, d, k, val = (int(t) for t in tok[:5])
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from None
        src = tok[5] if len(tok) > 5 else "table"
        if d % 2:
            d += 1
        if 2 * k > n:
            k = n - k
        out[(q, n, d, k)] = (val, src)
    return out


# ---------------------------------------------------------------------------
# bounds on Lambda


@dataclass(frozen=True)
class LambdaUpperBound:
    value: int
    product_bound: int
    program_bound: int | None
    best_dprime: int | None
    best_l: int | None


def lambda_upper_bound(q: int, n: int, k: int, nprime: int, kprime: int, d: int, aq: AqOracle | None = None) -> LambdaUpperBound:
    """Upper bound on Lambda from family-size products and the Lambda program."""
    aq = aq or AqOracle.default()
    n2, k2 = n - nprime, k - kprime
    product = min(
        gaussian_binomial(nprime, kprime, q) * aq(q, n2, d, k2),
        gaussian_binomial(n2, k2, q) * aq(q, nprime, d, kprime),
    )
    best, best_dp, best_l = None, None, None
    abar, bbar = aq(q, nprime, d, kprime), aq(q, n2, d, k2)
    for dp in range(2, d, 2):
        alpha, beta = aq(q, nprime, dp, kprime), aq(q, n2, d - dp, k2)
        for l in range(1, min(alpha, beta) + 1):
            val = lambda_ilp_solve(LambdaProgram(alpha, beta, abar, bbar, l)).objective
            if best is None or val > best:
                best, best_dp, best_l = val, dp, l
    value = product if best is None else min(product, best)
    return LambdaUpperBound(value, product, best, best_dp, best_l)


@dataclass
class LambdaLowerBound:
    l: int
    value: int
    blueprint: CosetBlueprint | None


def lambda_lower_bound_mrd(
    q: int, n: int, k: int, nprime: int, kprime: int, d: int, dprime: int, build: bool = True
) -> LambdaLowerBound:
    """Families from cosets of nested lifted MRD codes.

    A is a lifted MRD code of distance d', split into cosets of its distance-d
    subcode; likewise B with distance d - d'.  l is the smaller coset count.
    """
    if dprime % 2 or not 2 <= dprime <= d - 2:
        raise InfeasibleParametersError(f"need even 2 <= d' <= d - 2, got d'={dprime}, d={d}")
    if not (1 <= k <= n / 2 and 1 <= kprime <= nprime and 1 <= k - kprime <= n - nprime):
        raise InfeasibleParametersError("coset construction parameter ranges violated")
    n2, k2 = n - nprime, k - kprime
    ma, ma_fine = lifted_mrd_size(q, kprime, nprime, d), lifted_mrd_size(q, kprime, nprime, dprime)
    mb, mb_fine = lifted_mrd_size(q, k2, n2, d), lifted_mrd_size(q, k2, n2, d - dprime)
    l = min(ma_fine // ma, mb_fine // mb)
    value = ma * mb * l
    bp = None
    if build:
        a_parts = _mrd_coset_families(q, kprime, nprime, dprime, d)[:l]
        b_parts = _mrd_coset_families(q, k2, n2, d - dprime, d)[:l]
        bp = CosetBlueprint(q, n, k, nprime, kprime, d, a_parts, b_parts)
    return LambdaLowerBound(l, value, bp)


def _mrd_coset_families(q: int, k: int, n: int, d_fine: int, d: int) -> list[list[Subspace]]:
    """Lifted cosets of the distance-d subcode inside the distance-d_fine MRD code."""
    field = gf(q)
    cols = n - k
    delta_fine, delta = d_fine // 2, d // 2
    if cols == 0:
        return [[Subspace(field, np.eye(k, dtype=np.int64), trusted=True)]]
    top = min(k, cols)
    if delta_fine > top:
        return [[Subspace(field, np.concatenate([np.eye(k, dtype=np.int64), np.zeros((k, cols), dtype=np.int64)], axis=1), trusted=True)]]
    g = gabidulin(k, cols, delta_fine, q)
    if delta > top:
        sub_elems = np.zeros((1, k, cols), dtype=np.int64)
        reps = g.elements()
    else:
        sub_elems = g.subcode(delta).elements()
        reps = g.coset_representatives(delta)
    out = []
    for r in reps:
        mats = field.add_arr(sub_elems, r[None])
        out.append(list(lift(mats, field)))
    return out
