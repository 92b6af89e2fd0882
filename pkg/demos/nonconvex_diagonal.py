"""Projecting onto a constrained diagonal set when the constraint is nonconvex.

With K = {(c, c) : c in C} and C = {1, 2, 3}, the nearest points of K to
(2, 1) are the diagonal copies of the points of C nearest to the block mean
1.5, namely (1, 1) and (2, 2). Projecting first onto the diagonal and then
onto C x C does not give the same answer: (1.5, 1.5) has four nearest grid
points, two of them off the diagonal.

Run with ``python3 demos/nonconvex_diagonal.py``.
"""

import itertools

import numpy as np

from prodsplit import AffineSubspace, FinitePointSet, diagonal_project, project_K_nonconvex
from prodsplit import projection_composition_check

c = FinitePointSet([1.0, 2.0, 3.0])
x = np.array([[2.0], [1.0]])

pk = project_K_nonconvex(c, x)
print("P_K(2, 1)          =", sorted(tuple(b.ravel().tolist()) for b in pk))

grid = FinitePointSet(list(itertools.product([1.0, 2.0, 3.0], repeat=2)))
naive = grid.project_all(diagonal_project(x).ravel())
print("P_CxC(P_D(2, 1))   =", sorted(tuple(p.tolist()) for p in naive))

# Restricting the naive answer to the diagonal recovers P_K here, because
# P_CxC(P_D(x)) does meet the diagonal.
check = projection_composition_check(grid, AffineSubspace.diagonal(2), x.ravel())
print("P_CxC(P_D(x)) ∩ D  =", sorted(tuple(p.tolist()) for p in check.composed),
      "| agrees with brute force:", check.agree)
