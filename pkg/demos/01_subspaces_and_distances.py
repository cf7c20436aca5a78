"""
Subspaces, pivots and distances
===============================

A constant-dimension code is a set of k-dimensional subspaces of F_q^n.
We store each one by its reduced row echelon generator, so equal
subspaces compare equal, and read off the pivot vector from it.
"""

from __future__ import annotations

import numpy as np

from cosetcodes import FqMatrix, Subspace, gf, hamming_distance, rank_distance, subspace_distance
from cosetcodes.fq_matrix import FerrersDiagram, ef_size

# arithmetic in F_8, built from a Conway polynomial
F8 = gf(8)
a = F8.generator
print("F_8 generator:", a, " a^7 =", a**7, " a * a^-1 =", a * a.inverse())

# two generators of the same plane reduce to the same canonical form
F2 = gf(2)
u = Subspace(F2, np.array([[1, 1, 0, 1, 0, 0], [0, 1, 1, 0, 1, 0], [0, 0, 1, 0, 1, 1]]))
u2 = Subspace(F2, np.array([[0, 0, 1, 0, 1, 1], [1, 0, 1, 1, 1, 0], [1, 1, 0, 1, 0, 0]]))
print("\ncanonical generator of U:\n" + u.to_text().replace(";", "\n"))
print("same subspace after reordering rows:", u == u2, " dim =", u.dim)
print("pivot vector:", u.pivot_vector)

# the free positions of an echelon-Ferrers class
fd = FerrersDiagram(u.pivot_vector)
print("\nFerrers diagram of", u.pivot_vector)
print(fd)
print("subspaces with this pivot vector:", ef_size(u.pivot_vector, 2))

# d_S(U, W) = dim U + dim W - 2 dim(U cap W)
w = Subspace(F2, np.array([[1, 0, 0, 0, 1, 1], [0, 0, 1, 0, 0, 1], [0, 0, 0, 1, 1, 1]]))
print("\nd_S(U, W) =", subspace_distance(u, w))
print("Hamming distance of pivot vectors =", hamming_distance(u.pivot_vector, w.pivot_vector),
      "(a lower bound on d_S)")

# with equal pivot vectors the distance is twice the rank distance of the free parts
x = Subspace(F2, np.array([[1, 0, 0, 0, 0, 1], [0, 1, 0, 1, 0, 0], [0, 0, 1, 1, 1, 0]]))
y = Subspace(F2, np.array([[1, 0, 0, 1, 1, 0], [0, 1, 0, 0, 1, 1], [0, 0, 1, 0, 0, 0]]))
print("\nsame pivots:", x.pivot_vector == y.pivot_vector,
      " d_S =", subspace_distance(x, y),
      " 2 * d_R =", 2 * rank_distance(FqMatrix(F2, x.matrix[:, 3:]), FqMatrix(F2, y.matrix[:, 3:])))
