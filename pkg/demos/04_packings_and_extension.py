"""
Packings and the (10, M, 6; 4)_2 pipeline
=========================================

The coset construction wants the B side split into families of larger
distance.  We look at an exact parallelism first, then at the
decompositions used for n = 10, and finish with the extension pass that
searches G_2(10, 4) for one more codeword.
"""

from __future__ import annotations

import sys

from cosetcodes import Code, enumerate_grassmannian, gf
from cosetcodes.constructions import build_10_6_4, greedy_b_code
from cosetcodes.packing import greedy_decompose, ilp_decompose, parallelism_g42
from cosetcodes.verify import certify, validate_packing

# the 35 lines of PG(3, 2) split into 7 spreads of 5 lines
par = parallelism_g42(2)
rep = validate_packing(par, require_parallelism=True)
print("parallelism:", rep.parts, "spreads covering", rep.covered, "lines ->", rep.verdict)

# greedy and exact decompositions of the same ground set
lines = Code(gf(2), 4, enumerate_grassmannian(4, 2, 2))
g = greedy_decompose(lines, 4, 2)
e = ilp_decompose(lines, 4, 2, 7)
print("greedy part sizes:", sorted(g.sizes, reverse=True))
print("exact, 7 parts:   ", sorted(e.packing.sizes, reverse=True), " objective", e.objective,
      " census", e.census)

# B for n = 10: a greedy (6, 65, 4; 3)_2 code, split into families of distance 6
b = greedy_b_code(2)
print("\nB code:", len(b), "planes of F_2^6")

# the full pipeline; pass --full to run the complete extension pass (about a minute)
full = "--full" in sys.argv
c = build_10_6_4(2, max_candidates=None if full else 2_000_000)
prov = c.provenance()
print("B families:", prov["b.parts"], " Lambda =", c.blueprint.lam)
print("extension:", prov["extension.success"], "after", prov["extension.scanned"], "candidates",
      "" if full else "(truncated; use --full)")
rep = certify(c.code, 6, c.size)
print(f"(10,{c.size},6;4)_2 certified {rep.verdict}, min distance {rep.min_distance}")
