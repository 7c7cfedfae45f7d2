"""Symbolic manufactured solutions for the Stokes tests."""

import numpy as np
import sympy as sp

from stokeslab.disc import DiscField, SpaceTimeField, integral

X, Y, T = sp.symbols("x y t", real=True)
R2 = X**2 + Y**2


class Manufactured:
    """Velocity ``curl stream``, pressure ``p`` and the forcing that makes them a Stokes flow."""

    def __init__(self, stream, p):
        u1, u2 = sp.diff(stream, Y), -sp.diff(stream, X)
        lap = lambda e: sp.diff(e, X, 2) + sp.diff(e, Y, 2)  # noqa: E731
        f1 = sp.diff(u1, T) - lap(u1) + sp.diff(p, X)
        f2 = sp.diff(u2, T) - lap(u2) + sp.diff(p, Y)
        self.forcing = sp.lambdify((X, Y, T), (f1, f2), "numpy")
        self.velocity = sp.lambdify((X, Y, T), (u1, u2), "numpy")
        self.pressure = sp.lambdify((X, Y, T), p, "numpy")

    @staticmethod
    def _broadcast(fn):
        def inner(x, y, *rest):
            return tuple(np.broadcast_to(np.asarray(a, dtype=float), np.shape(x)) for a in fn(x, y, *rest))
        return inner

    def forcing_field(self, grid, time):
        return SpaceTimeField.from_cartesian(grid, time, self._broadcast(self.forcing))

    def velocity_at(self, grid, t):
        return DiscField.from_cartesian(grid, lambda x, y: self._broadcast(self.velocity)(x, y, t))

    def velocity_field(self, grid, time):
        return SpaceTimeField.from_cartesian(grid, time, self._broadcast(self.velocity))

    def pressure_at(self, grid, t):
        """Pressure with zero disc mean."""
        p = DiscField.from_function(
            grid, lambda r, th: self.pressure(r * np.cos(th), r * np.sin(th), t) + 0 * r)
        mean = integral(p) / np.pi
        return p - DiscField.from_function(grid, lambda r, th: mean + 0 * r)


def smooth_case():
    """Time-linear stream function with an exponential radial factor."""
    return Manufactured(T * (1 - R2) ** 2 * sp.exp(R2) * 2 * X * Y, T * X * Y * (1 + X))


def oscillating_case():
    """Polynomial stream function times ``sin(pi t)``."""
    return Manufactured(sp.sin(sp.pi * T) * (1 - R2) ** 2 * (1 + X + X * Y), sp.sin(sp.pi * T) * X)
