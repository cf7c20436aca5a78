"""Exact clique searches on small graphs given as int bitsets.

``adj[i]`` is an int whose bit j is set iff i and j are adjacent.  Vertex
indices double as the tie-breaking order: every search returns the
lexicographically smallest optimum as a sorted index list.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import BudgetExceededError


def bits(mask: int) -> Iterator[int]:
    while mask:
        lb = mask & -mask
        yield lb.bit_length() - 1
        mask ^= lb


def _color_bound(cand: int, adj: Sequence[int]) -> int:
    """Number of colours in a greedy colouring of the induced subgraph."""
    colours = 0
    rest = cand
    while rest:
        colours += 1
        avail = rest
        while avail:
            lb = avail & -avail
            v = lb.bit_length() - 1
            rest ^= lb
            avail &= ~adj[v] & ~lb
    return colours


def max_clique(adj: Sequence[int], cand: int | None = None, lower: int = 0, node_budget: int = 50_000_000) -> list[int]:
    """Lexicographically smallest maximum clique inside ``cand`` (default: all)."""
    n = len(adj)
    if cand is None:
        cand = (1 << n) - 1
    best: list[int] = []
    best_size = max(lower - 1, 0)
    nodes = 0

    def rec(cur: list[int], p: int) -> None:
        nonlocal best, best_size, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError("max clique node budget exhausted", incumbent=list(best), bound=None)
        if not p:
            if len(cur) > best_size or (not best and cur):
                best, best_size = list(cur), len(cur)
            return
        if len(cur) + _color_bound(p, adj) <= best_size:
            return
        while p:
            if len(cur) + p.bit_count() <= best_size:
                return
            lb = p & -p
            v = lb.bit_length() - 1
            p ^= lb
            cur.append(v)
            rec(cur, p & adj[v])
            cur.pop()

    rec([], cand)
    return best


def cliques_by_size(adj: Sequence[int], kmax: int, cand: int | None = None, budget: int = 10_000_000) -> list[list[int]]:
    """All cliques of size 1..kmax as bitmasks, grouped by size (index 0 = size 1)."""
    n = len(adj)
    if cand is None:
        cand = (1 << n) - 1
    out: list[list[int]] = [[] for _ in range(kmax)]
    count = 0

    def rec(mask: int, size: int, p: int) -> None:
        nonlocal count
        while p:
            lb = p & -p
            v = lb.bit_length() - 1
            p ^= lb
            m = mask | lb
            out[size].append(m)
            count += 1
            if count > budget:
                raise BudgetExceededError(f"more than {budget} candidate cliques")
            if size + 1 < kmax:
                rec(m, size + 1, p & adj[v])

    rec(0, 0, cand)
    return out


def max_weight_clique(weights: Sequence[int], adj: Sequence[int]) -> tuple[int, list[int]]:
    """Exact maximum-weight clique (weights >= 0); vertices tried heaviest first."""
    order = sorted(range(len(weights)), key=lambda i: (-weights[i], i))
    pos = {v: t for t, v in enumerate(order)}
    radj = [0] * len(order)
    for v in order:
        m = 0
        for u in bits(adj[v]):
            m |= 1 << pos[u]
        radj[pos[v]] = m
    w = [weights[v] for v in order]
    best_w, best_set = -1, []

    def total(mask: int) -> int:
        return sum(w[i] for i in bits(mask))

    def rec(cand: int, cur_w: int, cur: list[int]) -> None:
        nonlocal best_w, best_set
        if cur_w > best_w:
            best_w, best_set = cur_w, list(cur)
        while cand:
            if cur_w + total(cand) <= best_w:
                return
            lb = cand & -cand
            i = lb.bit_length() - 1
            cand ^= lb
            cur.append(i)
            rec(cand & radj[i], cur_w + w[i], cur)
            cur.pop()

    rec((1 << len(order)) - 1, 0, [])
    return best_w, sorted(order[i] for i in best_set)
