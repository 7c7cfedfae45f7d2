"""
Space-time, dual and trace norms
================================

The anisotropic norm takes an L_s norm over the disc at each time and then
an L_l norm of that history.  The dual norm of a scalar field is the
energy of its Dirichlet Poisson solution.  The trace inequality compares the
boundary values of a field with a product of its interior norms.
"""

import numpy as np

from stokeslab.disc import DiscField, DiscGrid, SpaceTimeField, SpaceTimeGrid, integrate_disc
from stokeslab.norms import (
    NormOrder,
    NormReport,
    dirichlet_eigenfunction,
    dual_norm,
    dual_norm_estimate,
    norm_lsl,
    norm_w21,
    poincare_constant,
    trace_inequality_ratio,
)

grid = DiscGrid(48, 8)
time = SpaceTimeGrid(0.0, 1.0, 32)

# u = t (1 - r^2): the norm picks up the time profile through the outer L_l norm
u = SpaceTimeField.from_function(grid, time, lambda r, th, t: t * (1 - r**2) + 0 * th)
for s, l in [(2, 2), (2, 4), (3, 2)]:
    order = NormOrder(s, l)
    print(f"(s, l) = ({s}, {l}):  ||u||_Lsl = {norm_lsl(u, order):.6f}   ||u||_W21 = {norm_w21(u, order):.6f}")

# dual norm of a Dirichlet eigenfunction: ||g||_2 / j, with j the Bessel zero
print()
print(" m  k   dual norm     ||g||/j       dictionary estimate")
for m, k in [(0, 1), (1, 1), (2, 3)]:
    g, lam = dirichlet_eigenfunction(grid, m, k)
    print(f"{m:2d} {k:2d}   {dual_norm(g):.8f}   {integrate_disc(g) / np.sqrt(lam):.8f}   "
          f"{dual_norm_estimate(g):.8f}")
print(f"Poincare constant 1/j_01 = {poincare_constant():.8f}")

# trace ratio over increasingly concentrated profiles r^k stays bounded
print()
print("  k   trace ratio of r^k")
big = DiscGrid(96, 2)
for k in (0, 1, 4, 16, 64):
    f = DiscField.from_function(big, lambda r, th, k=k: r**k + 0 * th)
    print(f"{k:3d}   {trace_inequality_ratio(f):.6f}")

# reports collect named norms and ratios and serialize to CSV
rep = NormReport()
rep.add("u_Lsl", norm_lsl(u))
rep.add("u_W21", norm_w21(u))
rep.add_ratio("W21_over_Lsl", rep["u_W21"] / rep["u_Lsl"])
print()
print(rep.to_csv(), end="")
