"""
A weak solution that is not strong
==================================

The velocity is a Fourier series whose n-th mode carries a boundary layer
of width n^-3 and a time amplitude that concentrates near t = 0.  Its
energy norms converge as more modes are added, as do the second spatial
derivatives and the time derivative of the lift.  The time derivative of
the divergence does not: its partial sums grow like N^5.  A related double
integral grows linearly in N with slope 1/6.
"""

import numpy as np

from stokeslab.counterexample import (
    CounterexampleSetup,
    profile_certificate,
    boundary_divergence_check,
    divergence_demonstration,
    growth_exponent,
    mode_integral_closed,
    norm_table,
    system_residual,
)

# boundary-layer profile certificates: exact rational boundary values and
# derivative bounds C n^3 and C n^6 with a single C
print("   n   passed   C (first)   C (second)")
for n in (1, 2, 5, 10, 50, 200):
    c = profile_certificate(n)
    print(f"{n:4d}   {c['passed']!s:6}   {c['c_first']:9.4f}   {c['c_second']:10.4f}")

# the per-mode integral approaches 1/6 extremely fast, so S_N / N -> 1/6
demo = divergence_demonstration(CounterexampleSetup(N=60))
print()
print(f"I_1 = {mode_integral_closed(1):.12f} (37/384 = {37 / 384:.12f})")
print(f"I_2 = {mode_integral_closed(2):.12f}")
print(f"max quadrature vs closed form relative error (n <= 20): {demo['quadrature_rel_error'].max():.1e}")
for N in (10, 30, 60):
    print(f"S_{N} / {N} = {demo['mean'][N - 1]:.6f}")

# partial sums of the squared norms
table = norm_table(CounterexampleSetup(N=200), dual=False)
print()
print("   N   dtw_sq      hess_w_sq    grad_v_sq     dtg_sq")
for N in (10, 50, 100, 200):
    i = N - 1
    print(f"{N:4d}   {table.series['dtw_sq'][i]:.7f}   {table.series['hess_w_sq'][i]:.7f}   "
          f"{table.series['grad_v_sq'][i]:.7f}     {table.series['dtg_sq'][i]:.3e}")
print(f"growth exponent of dtg_sq (fit N >= 50): {growth_exponent(table.series['dtg_sq'], 50):.3f}")

# dtw_sq still moves in the third digit between N = 100 and 200: its mode
# terms decay like n^-2, so the tail after N modes is of size 1/N and four
# digits would need thousands of modes
a, b = table.series["dtw_sq"][99], table.series["dtw_sq"][199]
print(f"dtw_sq relative change from N = 100 to 200: {abs(b - a) / b:.1e}")

# independent checks of the fields themselves
setup = CounterexampleSetup(N=20, n_t=16)
print()
print(f"max |div w| on the circle: {boundary_divergence_check(setup)[0]:.1e}")
mom, cont = system_residual(setup)
print(f"finite-difference residuals: momentum {mom:.1e}, continuity {cont:.1e}")
