"""
Extending boundary data and the divergence-free lift
====================================================

A pair of traces (value b, normal derivative a) on the circle is extended
into the disc by mollifying at a scale proportional to the distance from
the boundary.  The lift then turns a mean-zero normal flux flux into a
divergence-free field w with w = -flux n on the circle.
"""

import numpy as np

from stokeslab.boundary import BoundaryTrace, ExtensionKernel, extend_t1, lift_parts
from stokeslab.disc import DiscGrid, divergence, integrate_disc, radial_derivative
from stokeslab.norms import sobolev_norm

M = 32
grid = DiscGrid(128, M)

# the kernel integrates to one and has zero first moment
kernel = ExtensionKernel()
print("kernel moments:", np.round(kernel.moments(1), 12))

# extension of b = cos(k theta), a = 0: the trace is reproduced and the
# ratio ||f||_W1 / ||b||_W1 stays bounded as k grows
print()
print("  k   |f - b| on circle   |d_r f| on circle   ||f||_W1 / ||b||_W1")
for k in (1, 4, 16, 32):
    b = BoundaryTrace.from_function(lambda t, k=k: np.cos(k * t), M)
    f = extend_t1(b, BoundaryTrace.zeros(M), grid)
    trace_err = np.max(np.abs(f.boundary() - b.coeffs))
    slope = np.max(np.abs(radial_derivative(f).boundary()))
    print(f"{k:3d}   {trace_err:17.1e}   {slope:17.1e}   {sobolev_norm(f) / b.w1_norm():19.4f}")

# the lift for flux = cos(n theta)
print()
print("  n   ||div w||_2   max |w + flux n| on circle")
for n in (1, 2, 8, 32):
    flux = BoundaryTrace.from_function(lambda t, n=n: np.cos(n * t), M)
    w = lift_parts(flux, grid).w
    vals = w.values()
    boundary = np.max(np.hypot(vals[0, -1] + flux.values(grid.n_angles), vals[1, -1]))
    print(f"{n:3d}   {integrate_disc(divergence(w)):11.1e}   {boundary:28.1e}")

# a nonzero mean flux has no divergence-free lift
try:
    lift_parts(BoundaryTrace.from_function(lambda t: 1 + np.cos(t), M), grid)
except ValueError as exc:
    print()
    print("mean flux rejected:", exc)
