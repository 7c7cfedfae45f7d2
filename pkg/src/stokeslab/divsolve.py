"""Right inverse of the divergence with zero boundary values.

For mean-zero ``g`` the solution is ``u = grad potential + w``, where ``potential``
solves the Dirichlet problem ``Delta potential = g`` and ``w`` is the
divergence-free lift of the normal derivative ``flux = d_r potential`` on the
circle.  On the circle ``grad potential = flux n`` and ``w = -flux n``, so
``u`` vanishes there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .boundary import DEFAULT_KERNEL, MeanZeroError, _lift_coeffs
from .disc import (
    SCALAR,
    VECTOR,
    DiscField,
    integral,
    integrate_disc,
)
from .elliptic import dirichlet_coeffs
from .norms import NormOrder, NormReport, dual_norm, dual_norm_estimate, sobolev_norm


def _mean_zero_scale(g):
    """Scale against which the disc integral of ``g`` is judged."""
    return max(1.0, float(np.sqrt(np.pi) * np.max(np.abs(g.data[..., 0, :]), initial=0.0)),
               float(np.max(np.abs(g.data), initial=0.0)))


def check_mean_zero(g, tol=1e-8):
    """Raise :class:`MeanZeroError` unless every slice of ``g`` integrates to zero."""
    total = np.atleast_1d(integral(g))
    scale = _mean_zero_scale(g)
    bad = np.flatnonzero(np.abs(total) > tol * scale)
    if bad.size:
        where = f" at time index {bad[0]}" if total.size > 1 else ""
        raise MeanZeroError(f"data integrates to {total[bad[0]]:.3e}, not zero{where}")


def div_inverse_coeffs(g, grid, kernel=DEFAULT_KERNEL):
    """Vectorized ``g -> u``; ``g`` shape ``(..., M+1, N)``, result ``(..., 2, M+1, N)``."""
    potential = dirichlet_coeffs(g, grid)
    m = grid.modes[:, None]
    grad = np.stack([potential @ grid.D.T, 1j * m * potential / grid.r], axis=-3)
    flux = potential @ grid.D[-1]
    try:
        w = _lift_coeffs(flux, grid, kernel)
    except MeanZeroError as exc:
        raise MeanZeroError(f"normal derivative is not mean-zero ({exc}); the Poisson solve is inconsistent") from exc
    return grad + w


def offgrid_divergence_residual(u, g, n_eval=None):
    """Relative ``L_2`` residual of ``div u - g`` away from the collocation nodes.

    Both fields are evaluated through their radial interpolants at
    independent Gauss points; the on-grid residual is zero by construction,
    so this is the meaningful consistency measure.
    """
    grid = u.grid
    n_eval = 2 * grid.n_r + 7 if n_eval is None else n_eval
    z, w = leggauss(n_eval)
    rf = 0.5 * (z + 1.0)
    wf = 0.5 * w * rf
    P = grid.interpolation_matrix(rf)
    m = grid.modes[:, None]
    a, b = u.data[..., 0, :, :], u.data[..., 1, :, :]
    div_f = (a @ grid.D.T) @ P.T + (a @ P.T + 1j * m * (b @ P.T)) / rf
    g_f = g.data @ P.T

    def energy(c):
        e = np.abs(c) ** 2
        return 2.0 * np.pi * ((e[..., 0, :] + 2.0 * e[..., 1:, :].sum(axis=-2)) @ wf)

    res = np.sqrt(energy(div_f - g_f))
    ref = np.sqrt(energy(g_f))
    return np.where(ref > 0, res / np.where(ref > 0, ref, 1.0), res)


def boundary_residual(u):
    """Maximum of ``|u|`` on the circle (per leading index)."""
    return np.max(u.magnitude()[..., -1, :], axis=-1)


@dataclass(frozen=True, eq=False)
class DivSolution:
    """``u`` with ``div u = g`` and zero boundary values, plus diagnostics."""

    u: DiscField
    residual_div: float
    residual_boundary: float
    report: NormReport


def div_report(u, g, order=NormOrder()):
    """Norms of ``u`` and ``g`` and the measured constants of the estimates."""
    s, sc = order.s, order.s_conj
    rep = NormReport()
    u_ls = integrate_disc(u, s)
    g_ls = integrate_disc(g, s)
    exact = s == 2.0
    g_dual = dual_norm(g) if exact else dual_norm_estimate(g, order)
    rep.add("u_Ls", u_ls)
    rep.add("g_Ls", g_ls)
    rep.add("g_Wm1" if exact else "g_Wm1_estimate", g_dual)
    rep.add("u_W2s", sobolev_norm(u, s, 2))
    rep.add("g_W1s", sobolev_norm(g, s, 1))
    if g_ls > 0 and g_dual > 0:
        rep.add_ratio("multiplicative", u_ls / (g_ls ** (1.0 / s) * g_dual ** (1.0 / sc)))
        rep.add_ratio("naive", u_ls / g_ls)
        rep.add_ratio("strong", rep["u_W2s"] / rep["g_W1s"])
    return rep


def solve_div(g, order=NormOrder(), kernel=DEFAULT_KERNEL, mean_tol=1e-8):
    """Solve ``div u = g`` in the disc with ``u = 0`` on the circle.

    Parameters
    ----------
    g : DiscField
        Scalar data with zero disc integral.
    order : NormOrder
        Exponent used in the report.

    Returns
    -------
    DivSolution
    """
    if g.rank != SCALAR:
        raise ValueError("solve_div needs a scalar field")
    check_mean_zero(g, mean_tol)
    u = DiscField(g.grid, div_inverse_coeffs(g.data, g.grid, kernel), VECTOR)
    return DivSolution(
        u=u,
        residual_div=float(offgrid_divergence_residual(u, g)),
        residual_boundary=float(boundary_residual(u)),
        report=div_report(u, g, order),
    )
