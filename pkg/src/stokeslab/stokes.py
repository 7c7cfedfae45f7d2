"""Time-dependent Stokes problem on the disc.

The inhomogeneous problem

    d_t v - Delta v + grad p = f,   div v = g,   v = 0 on the circle,   v(t0) = 0

is split as ``v = u + w``.  Here ``w`` solves ``div w = g`` slice by slice
with zero boundary values.  ``u`` solves the divergence-free problem with
forcing ``f - (d_t w - Delta w)``.

The divergence-free part uses a stream function: ``u = (d_2 stream, -d_1 stream)``
with ``stream = d_r stream = 0`` on the circle.  Taking the curl of the momentum
equation gives, for ``vort = Delta stream``,

    d_t vort - Delta vort = -curl F.

Each Fourier mode is advanced with a coupled system for ``(stream, vort)``.
The pressure comes afterwards from a Neumann problem per slice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .disc import (
    SCALAR,
    VECTOR,
    DiscField,
    SpaceTimeField,
    _radial_rule,
    divergence,
    gradient_magnitude,
    integrate_disc,
    laplacian,
    lebesgue_norm,
    perp_gradient,
    vorticity,
)
from .divsolve import boundary_residual, check_mean_zero, div_inverse_coeffs, offgrid_divergence_residual
from .elliptic import dirichlet_coeffs, neumann_coeffs, radial_operator
from .norms import (
    NormOrder,
    NormReport,
    dual_norm_series,
    lsl_of_pointwise,
    norm_lsl,
    norm_w10,
    norm_w21,
    time_derivative,
)

SCHEMES = {"cn": 0.5, "euler": 1.0}


class StokesInstabilityError(RuntimeError):
    """The discrete energy grew beyond any plausible bound."""


@dataclass(frozen=True, eq=False)
class ProblemData:
    """Forcing ``f`` and divergence ``g`` on a common space-time grid."""

    f: SpaceTimeField
    g: SpaceTimeField
    order: NormOrder = NormOrder()
    mean_tol: float = 1e-8
    initial_tol: float = 1e-10

    def __post_init__(self):
        if self.f.rank != VECTOR or self.g.rank != SCALAR:
            raise ValueError("f must be a vector field and g a scalar field")
        if self.f.grid != self.g.grid or self.f.time != self.g.time:
            raise ValueError("f and g must share their grids")
        check_mean_zero(self.g, self.mean_tol)
        g0 = float(np.max(np.abs(self.g.data[0]), initial=0.0))
        if g0 > self.initial_tol * max(1.0, float(np.max(np.abs(self.g.data), initial=0.0))):
            raise ValueError(f"g must vanish at the initial time (max |g(t0)| = {g0:.3e})")

    @property
    def grid(self):
        return self.f.grid

    @property
    def time(self):
        return self.f.time

    @classmethod
    def zeros(cls, grid, time, order=NormOrder()):
        return cls(SpaceTimeField.zeros(grid, time, VECTOR), SpaceTimeField.zeros(grid, time), order)


@dataclass(frozen=True, eq=False)
class SolutionPair:
    """Velocity and zero-mean pressure, with the norms of the estimate."""

    v: SpaceTimeField
    p: SpaceTimeField
    report: NormReport = field(default_factory=NormReport)
    stream: SpaceTimeField | None = None


# ---------------------------------------------------------------------------
# divergence lift
# ---------------------------------------------------------------------------

def lift_divergence(g, order=NormOrder(), mean_tol=1e-8):
    """Apply the divergence right inverse to every time slice of ``g``."""
    if g.rank != SCALAR:
        raise ValueError("lift_divergence needs a scalar field")
    check_mean_zero(g, mean_tol)
    return g._new(div_inverse_coeffs(g.data, g.grid), VECTOR)


def mixed_dual_term(g, order=NormOrder()):
    """``||d_t g||^{1/s} ||d_t g||_{L_l(W^{-1})}^{1/s'}`` for ``s = 2``-type duals."""
    dg = time_derivative(g)
    strong = norm_lsl(dg, order)
    weak = dual_norm_series(dg, order)
    return strong ** (1.0 / order.s) * weak ** (1.0 / order.s_conj)


def lift_report(g, w, order=NormOrder()):
    """Norms appearing in the space-time estimate of the lift."""
    rep = NormReport()
    rep.add("w_W21", norm_w21(w, order))
    rep.add("g_W10", norm_w10(g, order))
    rep.add("dtg_mixed", mixed_dual_term(g, order))
    rhs = rep["g_W10"] + rep["dtg_mixed"]
    if rhs > 0:
        rep.add_ratio("lift_estimate", rep["w_W21"] / rhs)
    rep.add("div_residual_max", float(np.max(offgrid_divergence_residual(w, g))))
    rep.add("boundary_max", float(np.max(boundary_residual(w))))
    return rep


# ---------------------------------------------------------------------------
# homogeneous solver
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _step_lu(n_r, m, theta_dt):
    """LU factors of the coupled ``(stream, vort)`` step matrix for mode ``m``."""
    L = radial_operator(n_r, m)
    N = L.shape[0]
    eye = np.eye(N)
    D = _radial_rule(n_r)[3]
    A = np.zeros((2 * N, 2 * N))
    A[: N - 1, :N] = L[:-1]
    A[: N - 1, N:] = -eye[:-1]
    A[N - 1 : 2 * N - 2, N:] = (eye - theta_dt * L)[:-1]
    A[2 * N - 2, N - 1] = 1.0
    A[2 * N - 1, :N] = D[-1]
    return lu_factor(A), L


def _stream_from_velocity(u0):
    """Stream function with ``perp_gradient(stream) = u0`` for admissible ``u0``."""
    return DiscField(u0.grid, dirichlet_coeffs(-vorticity(u0).data, u0.grid))


def _energy_guard(psi_data, m, grid, scale):
    """Reject a single-mode stream-function history whose energy exploded."""
    vel = np.abs(psi_data @ grid.D.T) ** 2 + np.abs(m * psi_data / grid.r) ** 2
    energy = float(np.sum(vel @ (grid.area_weights)))
    if not np.isfinite(energy) or energy > 1e12 * scale**2:
        raise StokesInstabilityError(f"discrete energy {energy:.3e} exceeds the guard")


def solve_stokes_homogeneous(forcing, scheme="cn", initial=None, report=True, order=NormOrder()):
    """Divergence-free Stokes flow with zero boundary values.

    Parameters
    ----------
    forcing : SpaceTimeField
        Vector forcing at every time node.
    scheme : {"cn", "euler"}
        Crank-Nicolson (default) or implicit Euler.
    initial : DiscField, optional
        Divergence-free initial velocity with zero boundary values.  The
        default is zero.

    Returns
    -------
    SolutionPair
        The stream function is kept in ``stream``.
    """
    if forcing.rank != VECTOR:
        raise ValueError("forcing must be a vector field")
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {sorted(SCHEMES)}")
    if not np.all(np.isfinite(forcing.data)):
        raise ValueError("forcing contains non-finite values")
    grid, time = forcing.grid, forcing.time
    theta = SCHEMES[scheme]
    dt = time.dt
    N = grid.n_nodes
    curl_f = vorticity(forcing).data  # (T, M+1, N)

    stream_coeffs = np.zeros((time.n_t + 1,) + grid.shape(SCALAR), dtype=complex)
    if initial is not None:
        stream_coeffs[0] = _stream_from_velocity(initial).data
    scale = 1.0 + float(np.max(np.abs(forcing.data), initial=0.0)) * (time.t_end - time.t_start) + float(
        np.max(np.abs(stream_coeffs[0]), initial=0.0))

    for m in range(grid.n_theta + 1):
        lu, L = _step_lu(grid.n_r, m, theta * dt)
        vort = L @ stream_coeffs[0, m]
        rhs = np.zeros(2 * N, dtype=complex)
        for n in range(time.n_t):
            src = theta * curl_f[n + 1, m] + (1.0 - theta) * curl_f[n, m]
            mid = vort + (1.0 - theta) * dt * (L @ vort) - dt * src
            rhs[N - 1 : 2 * N - 2] = mid[:-1]
            sol = lu_solve(lu, rhs)
            stream_coeffs[n + 1, m] = sol[:N]
            vort = sol[N:]
        _energy_guard(stream_coeffs[:, m], m, grid, scale)

    stream = SpaceTimeField(grid, time, stream_coeffs)
    u = perp_gradient(stream)
    p = recover_pressure(u, forcing)
    rep = homogeneous_report(u, p, forcing, order) if report else NormReport()
    return SolutionPair(u, p, rep, stream)


def recover_pressure(u, forcing):
    """Zero-mean pressure from ``Delta p = div F`` with the momentum flux on the circle.

    On the circle ``u_r = 0`` for all time, so the radial momentum equation
    gives ``d_r p = F_r + (Delta u)_r`` there.
    """
    grid = u.grid
    rhs = divergence(forcing).data
    lap_r = laplacian(u).data[..., 0, :, -1]
    flux = forcing.data[..., 0, :, -1] + lap_r
    return u._new(neumann_coeffs(rhs, flux, grid), SCALAR)


def homogeneous_report(u, p, forcing, order=NormOrder()):
    rep = NormReport()
    rep.add("u_W21", norm_w21(u, order))
    rep.add("grad_p", lsl_of_pointwise(gradient_magnitude(p), p, order))
    rep.add("forcing", norm_lsl(forcing, order))
    if rep["forcing"] > 0:
        rep.add_ratio("homogeneous_estimate", (rep["u_W21"] + rep["grad_p"]) / rep["forcing"])
    return rep


# ---------------------------------------------------------------------------
# full solver
# ---------------------------------------------------------------------------

def estimate_sides(v, p, data):
    """Left and right sides of the space-time a priori estimate."""
    order = data.order
    lhs = norm_w21(v, order) + lsl_of_pointwise(gradient_magnitude(p), p, order)
    rhs = norm_lsl(data.f, order) + norm_w10(data.g, order) + mixed_dual_term(data.g, order)
    return lhs, rhs


def solve_stokes(data, scheme="cn"):
    """Solve the Stokes problem with prescribed divergence.

    Returns the velocity ``v = u + w``, the pressure and a report holding
    both sides of the a priori estimate and their ratio.
    """
    w = lift_divergence(data.g, data.order, data.mean_tol)
    correction = time_derivative(w) - laplacian(w)
    hom = solve_stokes_homogeneous(data.f - correction, scheme, report=False, order=data.order)
    v = hom.v + w
    rep = NormReport()
    lhs, rhs = estimate_sides(v, hom.p, data)
    rep.add("lhs", lhs)
    rep.add("rhs", rhs)
    if rhs > 0:
        rep.add_ratio("estimate", lhs / rhs)
    rep.add("div_residual_max", float(np.max(offgrid_divergence_residual(v, data.g))))
    rep.add("boundary_max", float(np.max(boundary_residual(v))))
    return SolutionPair(v, hom.p, rep, hom.stream)


def max_l2_difference(a, b):
    """``max_t ||a(t) - b(t)||_{L_2}`` at the time nodes of ``a``.

    ``b`` may live on a time grid refined by an integer factor.
    """
    if a.time.t_start != b.time.t_start or not np.isclose(a.time.t_end, b.time.t_end):
        raise ValueError("solutions must cover the same time interval")
    if b.time.n_t % a.time.n_t:
        raise ValueError("time grids must be nested")
    step = b.time.n_t // a.time.n_t
    diff = a.data - b.data[::step]
    d = SpaceTimeField(a.grid, a.time, diff, a.rank)
    return float(np.max([integrate_disc(d[i], 2.0) for i in range(len(d))]))


def energy_uniqueness_check(data, other=None, schemes=("cn", "cn")):
    """``max_t ||v_1 - v_2||_{L_2}`` between two independent solves.

    ``other`` is the same problem sampled on a time grid refined by an
    integer factor; when omitted both solves use ``data`` and differ only in
    their time-stepping schemes.
    """
    other = data if other is None else other
    v1 = solve_stokes(data, schemes[0]).v
    v2 = solve_stokes(other, schemes[1]).v
    return max_l2_difference(v1, v2)


def energy_history(u):
    """``||u(t)||_2`` and ``||grad u(t)||_2`` at every time node."""
    energy = lebesgue_norm(u.magnitude(), u.grid, 2.0)
    dissipation = lebesgue_norm(gradient_magnitude(u), u.grid, 2.0)
    return np.asarray(energy), np.asarray(dissipation)


# ---------------------------------------------------------------------------
# smooth data generator
# ---------------------------------------------------------------------------

def smooth_problem(grid, time, seed=0, order=NormOrder(), n_terms=3):
    """A reproducible smooth problem with ``g(t0) = 0`` and zero-mean ``g``.

    ``g`` is a random combination of ``r^m cos(m theta + phase)`` with
    ``1 <= m <= n_terms`` times ``sin^2`` of the normalized time, and ``f`` a
    random combination of low-degree polynomial vector fields.
    """
    rng = np.random.default_rng(seed)
    span = time.t_end - time.t_start
    amp_g = rng.uniform(0.5, 1.5, n_terms)
    phase = rng.uniform(0.0, 2.0 * np.pi, n_terms)
    coef_f = rng.uniform(-1.0, 1.0, (2, 3))
    freq = rng.uniform(0.5, 1.5)

    def g_func(r, th, t):
        prof = np.sin(0.5 * np.pi * (t - time.t_start) / span) ** 2
        return prof * sum(a * r**m * np.cos(m * th + ph) for m, (a, ph) in enumerate(zip(amp_g, phase), start=1))

    def f_func(x, y, t):
        tt = np.cos(freq * np.pi * (t - time.t_start) / span)
        f1 = tt * (coef_f[0, 0] + coef_f[0, 1] * y + coef_f[0, 2] * x * y)
        f2 = tt * (coef_f[1, 0] + coef_f[1, 1] * x + coef_f[1, 2] * x * x)
        return f1 + 0 * x, f2 + 0 * y

    g = SpaceTimeField.from_function(grid, time, g_func)
    f = SpaceTimeField.from_cartesian(grid, time, f_func)
    return ProblemData(f, g, order)
