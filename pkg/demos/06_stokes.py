"""
The time-dependent Stokes problem with prescribed divergence
============================================================

The velocity is split into the divergence lift of g and a divergence-free
part advanced through a stream-function/vorticity system, one Fourier mode
at a time.  Crank-Nicolson is the default scheme; implicit Euler is also
available.  The pressure comes from a Neumann problem at every time node.
"""

import numpy as np

from stokeslab.disc import (
    DiscField,
    DiscGrid,
    SpaceTimeField,
    SpaceTimeGrid,
    integrate_disc,
    laplacian,
    perp_gradient,
)
from stokeslab.stokes import (
    energy_history,
    energy_uniqueness_check,
    smooth_problem,
    solve_stokes,
    solve_stokes_homogeneous,
)

# a manufactured flow: stream_coeffs = sin(pi t) (1 - r^2)^2 r sin(theta), pressure zero.
# Its forcing is d_t u - Delta u, computed here with the solver's own operators.
grid = DiscGrid(32, 4)


def velocity(t):
    stream_coeffs = DiscField.from_function(grid, lambda r, th: np.sin(np.pi * t) * (1 - r**2) ** 2 * r * np.sin(th))
    return perp_gradient(stream_coeffs)


def forcing(time):
    base = perp_gradient(DiscField.from_function(grid, lambda r, th: (1 - r**2) ** 2 * r * np.sin(th)))
    data = np.stack([np.pi * np.cos(np.pi * t) * base.data - np.sin(np.pi * t) * laplacian(base).data
                     for t in time.times])
    return SpaceTimeField(grid, time, data, "vector")


print("n_t   Euler error   CN error")
for n_t in (8, 16, 32, 64):
    time = SpaceTimeGrid(0.0, 1.0, n_t)
    errs = [integrate_disc(solve_stokes_homogeneous(forcing(time), scheme, report=False).v[-1] - velocity(1.0))
            for scheme in ("euler", "cn")]
    print(f"{n_t:3d}   {errs[0]:11.2e}   {errs[1]:8.2e}")

# free decay from a divergence-free initial state
time = SpaceTimeGrid(0.0, 0.5, 10)
free = solve_stokes_homogeneous(SpaceTimeField.zeros(grid, time, "vector"), initial=velocity(0.5))
energy, _ = energy_history(free.v)
print()
print("free decay ||u(t)||_2:", np.array2string(energy, precision=4))

# a random smooth problem with nonzero divergence; the report holds both sides of the estimate
print()
print("seed   lhs        rhs        ratio    div residual   boundary")
for seed in range(4):
    data = smooth_problem(DiscGrid(96, 8), SpaceTimeGrid(0.0, 1.0, 32), seed=seed)
    rep = solve_stokes(data).report
    print(f"{seed:4d}   {rep['lhs']:.4f}   {rep['rhs']:.4f}   {rep['estimate']:.4f}   "
          f"{rep['div_residual_max']:12.1e}   {rep['boundary_max']:8.1e}")

# two schemes on the same data differ by O(dt)
print()
for n_t in (16, 32, 64):
    data = smooth_problem(DiscGrid(64, 6), SpaceTimeGrid(0.0, 1.0, n_t), seed=1)
    print(f"n_t = {n_t:3d}: max_t ||v_cn - v_euler||_2 = {energy_uniqueness_check(data, None, ('cn', 'euler')):.2e}")
