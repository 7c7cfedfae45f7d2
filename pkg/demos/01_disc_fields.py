"""
Fields and operators on the polar grid
======================================

A field on the unit disc is stored as one-sided Fourier coefficients in the
angle and values at Gauss-Legendre nodes in the radius, with the circle
appended as the last node.  Differential operators act mode by mode.
"""

import numpy as np

from stokeslab.disc import (
    DiscField,
    DiscGrid,
    divergence,
    gradient,
    hessian_magnitude,
    integral,
    integrate_disc,
    laplacian,
    perp_gradient,
)

grid = DiscGrid(n_r=32, n_theta=8)
print(grid, "angular samples:", grid.n_angles)

# the area of the disc from the radial weights
one = DiscField.from_function(grid, lambda r, th: 1.0 + 0 * r)
print(f"area = {integral(one):.15f} (pi = {np.pi:.15f})")

# f = x^2 y, written in polar form; its Laplacian is 2y
f = DiscField.from_function(grid, lambda r, th: r**3 * np.cos(th) ** 2 * np.sin(th))
two_y = DiscField.from_function(grid, lambda r, th: 2 * r * np.sin(th))
print(f"||Delta f - 2y||_2 = {integrate_disc(laplacian(f) - two_y):.2e}")

# curl of a stream function is divergence free to round-off
stream = DiscField.from_function(grid, lambda r, th: (1 - r**2) ** 2 * r**3 * np.cos(3 * th))
u = perp_gradient(stream)
print(f"||div curl stream||_2 = {integrate_disc(divergence(u)):.2e}")

# the divergence of a gradient is the Laplacian
print(f"||div grad f - Delta f||_2 = {integrate_disc(divergence(gradient(f)) - laplacian(f)):.2e}")

# pointwise Hessian size of x^2 y is sqrt(4 y^2 + 8 x^2)
r = grid.r[:, None]
th = grid.theta()[None, :]
x, y = r * np.cos(th), r * np.sin(th)
err = np.max(np.abs(hessian_magnitude(f) - np.sqrt(4 * y**2 + 8 * x**2)))
print(f"max |hess f| error = {err:.2e}")
