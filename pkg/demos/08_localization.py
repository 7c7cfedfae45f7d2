"""
Localizing a Stokes flow and absorbing small terms
==================================================

Multiplying a solution by a cutoff that equals one on a small cylinder and
vanishes near the outer boundary and the initial time yields a solution of
a new Stokes problem with zero boundary and initial data.  The iteration
lemma then removes an eps-multiple of a larger-radius quantity from the
right side of an estimate, and Young's inequality supplies the split.
"""

import numpy as np

from stokeslab.disc import (
    DiscField,
    DiscGrid,
    SpaceTimeField,
    SpaceTimeGrid,
    gradient,
    integral,
    laplacian,
    perp_gradient,
)
from stokeslab.localization import (
    CutoffProfile,
    IterationInstance,
    iteration_lemma,
    localize,
    stokes_residual,
    young_constant,
    young_split,
)

# an exact Stokes flow u = cos(2t) curl psi0, q = e^t q0 and its forcing
grid, time = DiscGrid(96, 16), SpaceTimeGrid(-1.0, 0.0, 64)
psi0 = DiscField.from_function(grid, lambda r, th: r**2 + r**3 * np.cos(3 * th) + r**4 * np.sin(2 * th))
q0 = DiscField.from_function(grid, lambda r, th: r * np.sin(th) + r**2 * np.cos(2 * th))
u0 = perp_gradient(psi0)


def in_time(f0, profile):
    return SpaceTimeField(grid, time, np.stack([profile(t) * f0.data for t in time.times]), f0.rank)


u = in_time(u0, lambda t: np.cos(2 * t))
q = in_time(q0, np.exp)
f = in_time(u0, lambda t: -2 * np.sin(2 * t)) - in_time(laplacian(u0), lambda t: np.cos(2 * t)) \
    + in_time(gradient(q0), np.exp)
print("input residual:", {k: f"{v:.1e}" for k, v in stokes_residual(u, q, f).items() if k != "where"})

profile = CutoffProfile(inner=0.5, outer=0.8)
print("cutoff bounds declared:", {k: round(v, 3) for k, v in profile.declared_bounds().items()})
print("cutoff bounds measured:", {k: round(v, 3) for k, v in profile.measured_bounds().items()})

loc = localize(u, q, f, profile, tol=1e-4)
print("localized residual:", {k: f"{v:.1e}" for k, v in loc.residual.items() if k != "where"})
print(f"max |int g| over time: {np.max(np.abs(integral(loc.data.g))):.1e}")

# iteration lemma on the extremal family F(x) = 1 / (1 - x)^a
print()
print(" a   eps       const      bound     F(0.5)")
for a in (1, 2, 4):
    eps = 2.0 ** (-a - 1)
    inst = IterationInstance.from_function(lambda x, a=a: 1.0 / (1.0 - x) ** a, 0.5, 1.0, 1.0, a, eps)
    out = iteration_lemma(inst, 0.5, 1.0)
    print(f"{a:2d}   {eps:.4f}   {out.constant:8.4f}   {out.bound:7.1f}   {out.sampled:7.1f}")

# Young's inequality ab <= eps a^s + C_eps b^s' is sharp at b = eps s a^(s-1)
print()
for s, eps in [(2.0, 0.25), (3.0, 0.1)]:
    a = 0.7
    lhs, rhs = young_split(a, eps * s * a ** (s - 1), s, eps)
    print(f"s = {s}, eps = {eps}: C_eps = {young_constant(s, eps):.6f}, equality case {lhs:.6f} = {rhs:.6f}")
