"""Poisson problems on the disc, solved one Fourier mode at a time.

Each mode ``m`` gives the radial operator

    L_m c = c'' + c'/r - m^2 c / r^2,

collocated at the interior Gauss nodes.  The row of the boundary node is
replaced by the boundary condition.  The dense LU factors are cached per
``(n_r, m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
import warnings
from functools import lru_cache

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .boundary import BoundaryTrace
from .disc import SCALAR, DiscField, _radial_rule, integrate_disc, laplacian


class EllipticSolverError(RuntimeError):
    """A radial system turned out singular."""


def radial_operator(n_r, m):
    """Dense matrix of ``L_m`` on the radial nodes."""
    r, _, _, D = _radial_rule(n_r)
    return D @ D + np.diag(1.0 / r) @ D - np.diag((m * m) / r**2)


def _factor(A, what):
    with warnings.catch_warnings():
        # singularity is detected below and raised as an error
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(A, check_finite=True)
    d = np.abs(np.diag(lu))
    if d.min() <= 1e-14 * d.max():
        raise EllipticSolverError(f"singular radial system ({what})")
    return lu, piv


@lru_cache(maxsize=None)
def _dirichlet_lu(n_r, m):
    A = radial_operator(n_r, m)
    A[-1] = 0.0
    A[-1, -1] = 1.0
    return _factor(A, f"Dirichlet, mode {m}")


@lru_cache(maxsize=None)
def _neumann_lu(n_r, m):
    r, w, _, D = _radial_rule(n_r)
    A = radial_operator(n_r, m)
    A[-1] = D[-1]
    if m > 0:
        return _factor(A, f"Neumann, mode {m}")
    # bordered system: the multiplier absorbs incompatible data and the
    # extra row fixes the disc mean to zero
    N = r.size
    B = np.zeros((N + 1, N + 1))
    B[:N, :N] = A
    B[:N, N] = 1.0
    B[N, :N] = w * r
    return _factor(B, "Neumann, mode 0")


def _per_mode(data, n_r, solve_one):
    out = np.empty_like(data, dtype=complex)
    lead = data.shape[:-2]
    N = data.shape[-1]
    for m in range(data.shape[-2]):
        rhs = data[..., m, :].reshape(-1, N).T
        out[..., m, :] = solve_one(m, rhs).T.reshape(lead + (N,))
    return out


def dirichlet_coeffs(g, grid):
    """Mode coefficients of ``potential`` with ``Delta potential = g``, ``potential(1) = 0``.

    ``g`` has shape ``(..., M+1, N)``; any leading axes are solved together.
    """

    def one(m, rhs):
        rhs = rhs.astype(complex)
        rhs[-1] = 0.0
        return lu_solve(_dirichlet_lu(grid.n_r, m), rhs)

    return _per_mode(np.asarray(g), grid.n_r, one)


def neumann_coeffs(g, flux, grid):
    """Zero-mean ``p`` with ``Delta p = g`` and ``d_r p(1) = flux``.

    ``flux`` holds the boundary coefficients, shape ``(..., M+1)``.  For the
    mean mode an incompatible pair ``(g, flux)`` is resolved in the least
    intrusive way: a constant is added to ``g``.
    """
    g = np.asarray(g)
    flux = np.asarray(flux)
    N = grid.n_nodes

    out = np.empty_like(g, dtype=complex)
    lead = g.shape[:-2]
    for m in range(g.shape[-2]):
        rhs = g[..., m, :].reshape(-1, N).T.astype(complex)
        rhs[-1] = flux[..., m].reshape(-1)
        if m == 0:
            rhs = np.vstack([rhs, np.zeros((1, rhs.shape[1]))])
            sol = lu_solve(_neumann_lu(grid.n_r, 0), rhs)[:N]
        else:
            sol = lu_solve(_neumann_lu(grid.n_r, m), rhs)
        out[..., m, :] = sol.T.reshape(lead + (N,))
    return out


@dataclass(frozen=True, eq=False)
class DirichletSolution:
    """Solution of ``Delta potential = g`` with zero boundary values.

    Attributes
    ----------
    potential : DiscField
    residual : float
        ``L_2`` norm of ``Delta potential - g`` over the quadrature nodes.
    normal_derivative : BoundaryTrace
        Normal derivative ``d_r potential`` on the circle.
    """

    potential: DiscField
    residual: float
    normal_derivative: BoundaryTrace


def solve_dirichlet(g):
    """Solve the Dirichlet Poisson problem for a scalar disc field ``g``."""
    if g.rank != SCALAR:
        raise ValueError("solve_dirichlet needs a scalar field")
    potential = DiscField(g.grid, dirichlet_coeffs(g.data, g.grid))
    residual = integrate_disc(laplacian(potential) - g, 2.0)
    flux = BoundaryTrace((potential.data @ g.grid.D[-1]))
    return DirichletSolution(potential, residual, flux)


def harmonic_check(f):
    """``L_2`` norm of the discrete Laplacian of ``f``."""
    if f.rank != SCALAR:
        raise ValueError("harmonic_check needs a scalar field")
    return integrate_disc(laplacian(f), 2.0)
