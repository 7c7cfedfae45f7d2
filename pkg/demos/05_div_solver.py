"""
Solving div u = g with zero boundary values
===========================================

The solver writes u = grad potential + w, where potential solves a Dirichlet Poisson
problem with data g and w is the divergence-free lift that cancels the
normal derivative of potential on the circle.  The data must have zero mean.
"""

import numpy as np

from stokeslab.boundary import MeanZeroError
from stokeslab.disc import DiscField, DiscGrid
from stokeslab.divsolve import solve_div
from stokeslab.norms import NormOrder

grid = DiscGrid(128, 32)

print("  n   residual   boundary   ||u||_W2/||g||_W1   multiplicative ratio")
for n in (2, 4, 8, 16, 32):
    g = DiscField.from_function(grid, lambda r, th, n=n: r**n * np.sin(n * th))
    sol = solve_div(g)
    rep = sol.report
    print(f"{n:3d}   {sol.residual_div:8.1e}   {sol.residual_boundary:8.1e}   "
          f"{rep['strong']:17.4f}   {rep['multiplicative']:20.4f}")

# the multiplicative ratio ||u|| / (||g||^(1/2) ||g||_dual^(1/2)) drifts slowly with n;
# the estimate is an upper bound and this family does not saturate it

# a smooth datum that is not a polynomial: the residual converges spectrally
print()
print(" n_r   residual")
for n_r in (6, 8, 12, 16):
    g = DiscField.from_function(DiscGrid(n_r, 8),
                                lambda r, th: np.exp(2 * r) * np.cos(th) + np.sin(3 * r) * np.sin(2 * th))
    print(f"{n_r:4d}   {solve_div(g).residual_div:.2e}")

# for s other than 2 the dual norm is replaced by a dictionary estimate
g = DiscField.from_function(grid, lambda r, th: r**3 * np.cos(3 * th))
rep = solve_div(g, NormOrder(3.0, 2.0)).report
print()
print("s = 3 report keys:", sorted(rep.values))

try:
    solve_div(DiscField.from_function(grid, lambda r, th: 1 + 0 * r))
except MeanZeroError as exc:
    print("nonzero mean rejected:", exc)
