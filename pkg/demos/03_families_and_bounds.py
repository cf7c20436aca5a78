"""
Codes meeting the MRD bound
===========================

For n = 3k - 3 and d = 2k - 2 the lifted MRD block has q^{4k-6} codewords.
One coset block, with points on one side and a dual partial spread on the
other, closes the remaining gap to the bound.
"""

from __future__ import annotations

import time

from cosetcodes.constructions import build_9_6_4, build_family_3km3, mrd_bound, structural_certificate
from cosetcodes.packing import lambda_lower_bound_mrd, lambda_upper_bound
from cosetcodes.verify import certify

# (9, 1033, 6; 4)_2: small enough for an exhaustive check
t0 = time.perf_counter()
c = build_9_6_4(2)
rep = certify(c.code, 6)
print(f"(9,{c.size},6;4)_2  blocks {dict((k, len(v)) for k, v in c.blocks.items())}  "
      f"d={rep.min_distance}  bound={mrd_bound(2, 9, 4, 6)}  ({time.perf_counter() - t0:.2f}s)")

# at q = 3 the code has 59077 words; pairs inside each block are covered by
# the block's own argument, so we check the cross-block pairs structurally
# and sample the rest
c3 = build_9_6_4(3)
sc = structural_certificate(c3, samples=100_000, seed=0)
print(f"(9,{c3.size},6;4)_3  structural={'PASS' if sc.passed else 'FAIL'}  "
      f"sampled {sc.sampled_pairs} pairs, min {sc.sampled_min}  bound={mrd_bound(3, 9, 4, 6)}")

# k = 5: (12, 16401, 8; 5)_2; exhaustive certification takes about half a minute,
# so here we only build it and compare with the bound
c5 = build_family_3km3(5, 2)
print(f"(12,{c5.size},8;5)_2  bound={mrd_bound(2, 12, 5, 8)}")

# how large can the coset part of a (10, M, 6; 4)_2 code be?
ub = lambda_upper_bound(2, 10, 4, 4, 1, 6)
lb = lambda_lower_bound_mrd(2, 10, 4, 4, 1, 6, 2, build=False)
print(f"\nLambda for n=10, k=4, n'=4, k'=1, d=6: between {lb.value} and {ub.value}"
      f" (product bound {ub.product_bound})")
print("MRD bound for (10, M, 6; 4)_2:", mrd_bound(2, 10, 4, 6))
