"""An explicit Stokes flow on the unit disc that is a weak but not a strong solution.

For ``n = 1, 2, ...`` and ``t in (-1, 0)`` put

    pot_n = r^n sin(n theta) / (n^4 (1 - n^7 t)),
    w_n   = layer_n(r) / (n^3 (1 - n^7 t)) (sin(n theta) e_r + cos(n theta) e_theta),

where ``layer_n`` is a cubic boundary-layer profile supported in
``[1 - n^-3, 1]`` with ``layer_n(1) = 1`` and ``layer_n'(1) = n - 1``.  With
a time cutoff ``cut`` the data are

    v = cut (w - grad pot),        p = cut d_t pot,
    f = cut (d_t w - Delta w) + cut' (w - grad pot),        g = cut div w,

summed over ``n <= N``.  Every per-mode quantity below comes from closed
forms in ``r`` (polynomials on the layer) and ``t`` (powers of
``1 - n^7 t``), integrated with Gauss rules placed inside the layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial.legendre import leggauss

from .disc import SCALAR, VECTOR, DiscGrid, SpaceTimeField, SpaceTimeGrid
from .norms import NormReport

CUTOFF_START = -2.0 / 3.0
CUTOFF_END = -1.0 / 3.0


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CounterexampleSetup:
    """Truncation ``N``, time offset ``eps`` and the sampling grids.

    The time interval is ``(-1, -eps)``.  ``eps = 0`` gives the full cylinder
    ``(-1, 0)``; every truncated sum is finite there.
    """

    N: int = 60
    eps: float = 0.0
    n_r: int = 64
    n_theta: int | None = None
    n_t: int = 64

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        if not 0.0 <= self.eps < 1.0 / 3.0:
            raise ValueError(f"eps must lie in [0, 1/3), got {self.eps!r}")
        if self.n_theta is not None and self.n_theta < self.N:
            raise ValueError("n_theta must resolve all N modes")

    @property
    def disc_grid(self):
        return DiscGrid(self.n_r, self.N if self.n_theta is None else self.n_theta)

    @property
    def time_grid(self):
        return SpaceTimeGrid(-1.0, -self.eps, self.n_t)


# ---------------------------------------------------------------------------
# boundary-layer profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LayerProfile:
    """Cubic ``quadratic * x^2 - cubic * x^3`` in ``x = r - 1 + n^-3`` on the layer, zero below."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def quadratic(self):
        n = self.n
        return 3 * n**6 - n**4 + n**3

    @property
    def cubic(self):
        n = self.n
        return 2 * n**9 - n**7 + n**6

    @property
    def width(self):
        return float(self.n) ** -3

    @property
    def start(self):
        return 1.0 - self.width

    def layer_coordinate(self, r):
        # measured from the circle so that r = 1 is exact; snapped to zero off the support
        r = np.asarray(r, dtype=float)
        return np.where(r > self.start, (r - 1.0) + self.width, 0.0)

    def from_layer(self, x, k=0):
        """``k``-th derivative as a function of the layer coordinate ``x >= 0``."""
        x = np.asarray(x, dtype=float)
        c2, c3 = float(self.quadratic), float(self.cubic)
        if k == 0:
            val = c2 * x**2 - c3 * x**3
        elif k == 1:
            val = 2 * c2 * x - 3 * c3 * x**2
        elif k == 2:
            val = 2 * c2 - 6 * c3 * x
        elif k == 3:
            val = np.full_like(x, -6 * c3)
        else:
            val = np.zeros_like(x)
        return np.where(x > 0.0, val, 0.0)

    def __call__(self, r, k=0):
        return self.from_layer(self.layer_coordinate(r), k)

    def exact(self, x, k=0):
        """Exact rational ``k``-th derivative at a rational layer coordinate."""
        x = Fraction(x)
        c2, c3 = self.quadratic, self.cubic
        return [c2 * x**2 - c3 * x**3, 2 * c2 * x - 3 * c3 * x**2, 2 * c2 - 6 * c3 * x][k]


def layer_profile(n, r, k=0):
    """``k``-th derivative of the boundary-layer profile of mode ``n`` at ``r``."""
    return LayerProfile(n)(r, k)


def profile_certificate(n, n_samples=2001):
    """Certificate for the profile of mode ``n``.

    Returns a dict with the boundary values (exact and floating point), the
    support and strict-bound checks on interior samples, and the constants
    ``max|profile'| / n^3`` and ``max|profile''| / n^6`` from the exact extrema
    of the cubic.
    """
    prof = LayerProfile(n)
    h = Fraction(1, n**3)
    c2, c3 = prof.quadratic, prof.cubic
    exact_ok = (prof.exact(h) == 1 and prof.exact(h, 1) == n - 1
                and prof.exact(0) == 0 and prof.exact(0, 1) == 0)

    # the slope x (2 c2 - 3 c3 x) peaks at x = c2 / (3 c3); the curvature is linear in x
    x_peak = Fraction(c2, 3 * c3)
    d1_max = max(abs(prof.exact(x_peak, 1)) if x_peak <= h else 0, abs(prof.exact(h, 1)))
    d2_max = max(abs(prof.exact(0, 2)), abs(prof.exact(h, 2)))
    c1 = float(d1_max / Fraction(n**3))
    c2 = float(d2_max / Fraction(n**6))

    x = np.linspace(0.0, prof.width, n_samples)[1:-1]
    inside = prof.from_layer(x)
    below = prof(np.linspace(0.0, prof.start, 257))
    d1 = prof.from_layer(x, 1)
    d2 = prof.from_layer(x, 2)
    value_at_1 = float(prof(1.0))
    slope_at_1 = float(prof(1.0, 1))
    tol = 64 * np.finfo(float).eps
    return {
        "n": n,
        "exact_boundary_values": exact_ok,
        "value_at_1": value_at_1,
        "value_error": abs(value_at_1 - 1.0),
        "slope_at_1": slope_at_1,
        "slope_error": abs(slope_at_1 - (n - 1)) / max(1.0, n - 1.0),
        "support_ok": bool(np.all(below == 0.0) and prof(prof.start) == 0.0),
        "strictly_between_0_and_1": bool(np.all(inside > 0.0) and np.all(inside < 1.0)),
        "c_first": c1,
        "c_second": c2,
        "c_first_sampled": float(np.max(np.abs(d1)) / n**3),
        "c_second_sampled": float(np.max(np.abs(d2)) / n**6),
        "constant": max(c1, c2),
        "passed": bool(exact_ok and abs(value_at_1 - 1.0) <= tol * 16
                       and abs(slope_at_1 - (n - 1)) <= tol * max(1.0, n**3)
                       and np.all(below == 0.0) and np.all(inside > 0.0) and np.all(inside < 1.0)),
    }


# ---------------------------------------------------------------------------
# time profiles
# ---------------------------------------------------------------------------

def time_cutoff(t, k=0):
    """Quintic time cutoff: 0 before -2/3, 1 after -1/3; ``k``-th derivative."""
    t = np.asarray(t, dtype=float)
    scale = 1.0 / (CUTOFF_END - CUTOFF_START)
    s = np.clip((t - CUTOFF_START) * scale, 0.0, 1.0)
    inside = (t > CUTOFF_START) & (t < CUTOFF_END)
    if k == 0:
        return s**3 * (10.0 - 15.0 * s + 6.0 * s * s)
    if k == 1:
        return np.where(inside, 30.0 * s**2 * (1.0 - s) ** 2 * scale, 0.0)
    if k == 2:
        return np.where(inside, 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s) * scale**2, 0.0)
    raise ValueError("only derivatives up to order 2 are provided")


def amplitude(n, t, k=0):
    """``T_n(t) = 1 / (n^3 (1 - n^7 t))`` and its first time derivative."""
    q = float(n) ** 7
    base = 1.0 - q * np.asarray(t, dtype=float)
    if k == 0:
        return 1.0 / (n**3 * base)
    if k == 1:
        return float(n) ** 4 / base**2
    raise ValueError("only k = 0, 1")


def power_integral(n, k, a, b):
    """``int_a^b (1 - n^7 t)^(-k) dt`` in closed form (``k >= 2``)."""
    q = float(n) ** 7
    return ((1.0 - q * b) ** (1 - k) - (1.0 - q * a) ** (1 - k)) / ((k - 1) * q)


_TGL = leggauss(24)


def _transition_rule():
    z, w = _TGL
    half = 0.5 * (CUTOFF_END - CUTOFF_START)
    return CUTOFF_START + half * (z + 1.0), half * w


def time_integrals(n, eps):
    """Per-mode time integrals over ``(-1, -eps)``.

    Keys: ``TT`` for ``int T^2``, ``dTdT`` for ``int T'^2``, ``cutoff_TT`` for
    ``int cut^2 T^2``, ``cutoff_dTdT`` for ``int cut^2 T'^2`` and ``dtg`` for
    ``int (cut' T + cut T')^2``.
    """
    b = -eps
    n3, n4 = float(n) ** 3, float(n) ** 4
    out = {
        "TT": power_integral(n, 2, -1.0, b) / n3**2,
        "dTdT": n4**2 * power_integral(n, 4, -1.0, b),
    }
    tq, wq = _transition_rule()
    c, dc = time_cutoff(tq), time_cutoff(tq, 1)
    T, dT = amplitude(n, tq), amplitude(n, tq, 1)
    tail_TT = power_integral(n, 2, CUTOFF_END, b) / n3**2
    tail_dTdT = n4**2 * power_integral(n, 4, CUTOFF_END, b)
    out["cutoff_TT"] = float(np.sum(wq * c**2 * T**2)) + tail_TT
    out["cutoff_dTdT"] = float(np.sum(wq * c**2 * dT**2)) + tail_dTdT
    out["dtg"] = float(np.sum(wq * (dc * T + c * dT) ** 2)) + tail_dTdT
    return out


# ---------------------------------------------------------------------------
# radial quadrature
# ---------------------------------------------------------------------------

_RGL = leggauss(40)


def layer_rule(n, k=None):
    """Gauss nodes and ``dr`` weights inside the layer of mode ``n``."""
    z, w = _RGL if k is None else leggauss(k)
    h = float(n) ** -3
    x = 0.5 * h * (z + 1.0)
    return 1.0 - h + x, 0.5 * h * w, x


def inner_rule(n):
    """Gauss nodes on ``[0, 1 - n^-3]`` exact for the polynomial parts of mode ``n``."""
    z, w = leggauss(n + 8)
    a = 1.0 - float(n) ** -3
    return 0.5 * a * (z + 1.0), 0.5 * a * w


def _vector_radial_integrals(n, coef, d1, d2, r, W):
    """Angular-integrated squared norms of ``a(r) (sin n theta, cos n theta)``.

    Returns the value, gradient and Hessian integrals.
    """
    k = n - 1
    val = 2 * np.pi * np.sum(W * coef**2 * r)
    grad = 2 * np.pi * np.sum(W * (d1**2 + (k * coef / r) ** 2) * r)
    hess = 2 * np.pi * np.sum(W * (d2**2 + (d1 / r - k * k * coef / r**2) ** 2
                                    + 2 * k * k * (d1 / r - coef / r**2) ** 2) * r)
    return val, grad, hess


def divergence_profile(n, r):
    """``div_n = layer' + (1 - n) layer / r``: radial factor of ``div w_n``."""
    prof = LayerProfile(n)
    return prof(r, 1) + (1 - n) * prof(r) / r


def _green_energy(n, r, W):
    """``-int div_r potential r dr`` with ``L_n potential = div_r``, ``potential(1) = 0`` (Green's function).

    ``r`` and ``W`` are the layer nodes and weights.  The inner integral is
    split at every node so that the kink of the kernel lies on a panel end.
    """
    div_r = divergence_profile(n, r)
    prof_start = 1.0 - float(n) ** -3
    z, w = _RGL
    potential = np.empty_like(r)
    for i, ri in enumerate(r):
        total = 0.0
        for lo, hi in ((prof_start, ri), (ri, 1.0)):
            if hi <= lo:
                continue
            rho = lo + 0.5 * (hi - lo) * (z + 1.0)
            wr = 0.5 * (hi - lo) * w
            small = np.minimum(ri, rho)
            big = np.maximum(ri, rho)
            # -(1/(2n)) small^n big^-n (1 - big^(2n)), evaluated stably near 1
            ratio = np.exp(n * (np.log(small) - np.log(big)))
            factor = -np.expm1(2 * n * np.log(big))
            G = -ratio * factor / (2.0 * n)
            total += np.sum(wr * G * divergence_profile(n, rho) * rho)
        potential[i] = total
    return float(-np.sum(W * div_r * potential * r))


def mode_contributions(n, eps=0.0, dual=True):
    """All per-mode squared norms over ``Omega x (-1, -eps)``.

    The keys match the columns of :func:`norm_table`.
    """
    prof = LayerProfile(n)
    times = time_integrals(n, eps)
    r, W, x = layer_rule(n)
    al, d1, d2 = prof.from_layer(x), prof.from_layer(x, 1), prof.from_layer(x, 2)
    w_val, w_grad, w_hess = _vector_radial_integrals(n, al, d1, d2, r, W)

    # v carries layer - r^(n-1): the layer rule covers the layer, the inner
    # rule the polynomial part below it
    if n > 1:
        ri, Wi = inner_rule(n)
        iv, ig, _ = _vector_radial_integrals(
            n, -ri ** (n - 1), -(n - 1) * ri ** (n - 2), np.zeros_like(ri), ri, Wi)
    else:
        # the layer of the first mode is the whole radius
        iv = ig = 0.0
    lv, lg, _ = _vector_radial_integrals(
        n, al - r ** (n - 1), d1 - ((n - 1) * r ** (n - 2) if n > 1 else 0.0), d2, r, W)
    v_val, v_grad = iv + lv, ig + lg

    div_r = divergence_profile(n, r)
    div_sq = np.pi * np.sum(W * div_r**2 * r)
    n6 = float(n) ** 6
    p_radial = np.pi / (2 * n + 2)
    out = {
        "w_sq": w_val * times["TT"],
        "grad_w_sq": w_grad * times["TT"],
        "hess_w_sq": w_hess * times["TT"],
        "dtw_sq": w_val * times["dTdT"],
        "v_sq": v_val * times["cutoff_TT"],
        "grad_v_sq": v_grad * times["cutoff_TT"],
        "v_end_sq": v_val * float(time_cutoff(-eps)) ** 2 * amplitude(n, -eps) ** 2,
        "p_sq": p_radial * n6 * float(times["cutoff_dTdT"]) / float(n) ** 8,
        "dtg_sq": div_sq * times["dtg"],
    }
    if dual:
        out["dtg_dual_sq"] = np.pi * _green_energy(n, r, W) * times["dtg"]
    return out


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

TABLE_COLUMNS = (
    "dtw_sq", "hess_w_sq", "w_sq", "grad_w_sq", "p_sq", "dtg_sq", "dtg_dual_sq",
    "v_sq", "grad_v_sq", "v_end_sq",
)


def norm_table(setup, dual=True):
    """Partial sums over ``n <= N`` of every per-mode squared norm.

    ``report.series[name][N-1]`` is the partial sum up to ``N``;
    ``report.values`` holds the totals at ``setup.N`` together with the
    weak-solution norms derived from them.
    """
    rows = [mode_contributions(n, setup.eps, dual) for n in range(1, setup.N + 1)]
    rep = NormReport()
    for key in TABLE_COLUMNS:
        if key not in rows[0]:
            continue
        rep.series[key] = np.cumsum([row[key] for row in rows])
        rep.add(key, rep.series[key][-1])
    rep.add("v_C_L2", np.sqrt(rep["v_end_sq"]))
    rep.add("v_W10", np.sqrt(rep["v_sq"]) + np.sqrt(rep["grad_v_sq"]))
    rep.add("p_L2", np.sqrt(rep["p_sq"]))
    return rep


def growth_exponent(partial_sums, n_min=None):
    """Least-squares slope of ``log S_N`` against ``log N`` for ``N >= n_min``."""
    s = np.asarray(partial_sums, dtype=float)
    N = np.arange(1, s.size + 1)
    n_min = max(2, s.size // 4) if n_min is None else n_min
    sel = N >= n_min
    return float(np.polyfit(np.log(N[sel]), np.log(s[sel]), 1)[0])


# ---------------------------------------------------------------------------
# the divergent integral
# ---------------------------------------------------------------------------

def mode_integral_closed(n):
    """``int_{-1/3}^0 int_0^1 n^8 r^(2n-1) (1 - n^7 t)^-4 dr dt`` in closed form."""
    q = float(n) ** 7
    return (1.0 - (1.0 + q / 3.0) ** -3) / 6.0


def mode_integral_quadrature(n, n_time=400):
    """The same integral by Gauss rules: ``n`` radial nodes and a log-substituted time rule."""
    z, w = leggauss(n)
    r = 0.5 * (z + 1.0)
    radial = float(np.sum(0.5 * w * r ** (2 * n - 1)))
    # u = log(1 - n^7 t) maps t in [-1/3, 0] to u in [0, U]; the integrand becomes e^(-3u) / n^7
    q = float(n) ** 7
    U = np.log1p(q / 3.0)
    zt, wt = leggauss(n_time)
    u = 0.5 * U * (zt + 1.0)
    temporal = float(np.sum(0.5 * U * wt * np.exp(-3.0 * u))) / q
    return float(n) ** 8 * radial * temporal


def divergence_demonstration(setup, quadrature_modes=20):
    """Per-mode values of the divergent integral and their partial sums.

    Returns a dict with the closed-form values, quadrature values for the
    first ``quadrature_modes`` modes, ``S_N``, ``S_N / N`` and the slope of a
    linear fit of ``S_N`` against ``N``.
    """
    N = np.arange(1, setup.N + 1)
    closed = np.array([mode_integral_closed(n) for n in N])
    k = min(quadrature_modes, setup.N)
    quad = np.array([mode_integral_quadrature(n) for n in N[:k]])
    S = np.cumsum(closed)
    slope = float(np.polyfit(N, S, 1)[0]) if setup.N > 1 else float(S[0])
    return {
        "N": N,
        "closed": closed,
        "quadrature": quad,
        "quadrature_rel_error": np.abs(quad - closed[:k]) / closed[:k],
        "partial_sums": S,
        "mean": S / N,
        "slope": slope,
    }


# ---------------------------------------------------------------------------
# fields on the disc grid
# ---------------------------------------------------------------------------

def _laplace_profile(n, r):
    """``L_{n-1} layer = layer'' + layer'/r - (n-1)^2 layer / r^2``."""
    prof = LayerProfile(n)
    k = n - 1
    return prof(r, 2) + prof(r, 1) / r - k * k * prof(r) / r**2


def eval_fields(setup):
    """Truncated series sampled on the setup's disc and time grids.

    Returns a dict of :class:`SpaceTimeField` for ``potential, w, v, p, f, g``.
    Sine modes carry coefficient ``-i/2`` and cosine modes ``1/2``.
    """
    grid, time = setup.disc_grid, setup.time_grid
    t = time.times
    r = grid.r
    shape = (time.n_t + 1,) + grid.shape(SCALAR)
    potential = np.zeros(shape, complex)
    p = np.zeros(shape, complex)
    g = np.zeros(shape, complex)
    w = np.zeros((time.n_t + 1, 2) + grid.shape(SCALAR), complex)
    v = np.zeros_like(w)
    f = np.zeros_like(w)
    c0, c1 = time_cutoff(t)[:, None], time_cutoff(t, 1)[:, None]
    for n in range(1, setup.N + 1):
        T = amplitude(n, t)[:, None]
        dT = amplitude(n, t, 1)[:, None]
        al = layer_profile(n, r)
        pw = r ** (n - 1)
        div_r = divergence_profile(n, r)
        lap = _laplace_profile(n, r)
        potential[:, n] = -0.5j * (r**n) * T / n
        p[:, n] = -0.5j * c0 * n**3 * r**n / (1.0 - float(n) ** 7 * t[:, None]) ** 2
        g[:, n] = -0.5j * c0 * T * div_r
        for comp, factor in ((0, -0.5j), (1, 0.5)):
            w[:, comp, n] = factor * al * T
            v[:, comp, n] = factor * c0 * T * (al - pw)
            f[:, comp, n] = factor * (c0 * (dT * al - T * lap) + c1 * T * (al - pw))
    mk = lambda d, rank=SCALAR: SpaceTimeField(grid, time, d, rank)  # noqa: E731
    return {"potential": mk(potential), "w": mk(w, VECTOR), "v": mk(v, VECTOR),
            "p": mk(p), "f": mk(f, VECTOR), "g": mk(g)}


def boundary_divergence_check(setup, n_times=None):
    """Maximum of ``|div w|`` on the circle over ``theta``, the time grid and ``n <= N``.

    ``layer_n'(1)`` is taken from a one-sided five-point stencil on samples
    of ``layer_n`` inside the layer, independent of the closed-form
    derivative; the stencil is exact for cubics.
    """
    t = setup.time_grid.times if n_times is None else np.linspace(-1.0, -setup.eps, n_times)
    stencil = np.array([25.0, -48.0, 36.0, -16.0, 3.0]) / 12.0
    total = np.zeros_like(t)
    coeff = []
    for n in range(1, setup.N + 1):
        prof = LayerProfile(n)
        h = 0.25 * prof.width
        samples = prof(1.0 - h * np.arange(5))
        slope = float(stencil @ samples) / h
        div_at_1 = slope + prof(1.0) - n * prof(1.0)
        coeff.append(div_at_1)
        total += np.abs(div_at_1) * np.abs(amplitude(n, t))
    # |sum_n div_n(1) T_n sin n theta| is bounded by the sum of moduli
    return float(np.max(total)), np.array(coeff)


def system_residual(setup, n_times=41, h_rel=1e-2):
    """Pointwise residual of the momentum and continuity equations.

    Derivatives of ``v`` are taken by five-point finite differences of the
    exact per-mode profiles, so the check is independent of the closed-form
    expressions for ``f`` and ``g``.  Nodes whose stencils would straddle
    the kink of ``layer_n`` at the layer edge, or the joins of ``cut``, are
    skipped.  Returns ``(momentum, continuity)`` maxima of the residual
    relative to the largest size of the forcing.
    """
    grid = setup.disc_grid
    r = grid.r[:-1]
    times = np.linspace(-1.0, -setup.eps, n_times)[1:-1]
    d1c = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
    d2c = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
    offs = np.arange(-2, 3)

    mom = np.zeros((times.size, r.size))
    cont = np.zeros_like(mom)
    scale_f = np.zeros_like(mom)
    scale_g = np.zeros_like(mom)
    for n in range(1, setup.N + 1):
        prof = LayerProfile(n)
        q = float(n) ** 7

        def coef(rr, tt):
            return time_cutoff(tt) * amplitude(n, tt) * (prof(rr) - rr ** (n - 1))

        hr = h_rel * prof.width * np.ones_like(r)
        keep_r = np.abs(r - prof.start) > 3 * hr
        ht = h_rel * np.minimum(1.0 / 3.0, (1.0 - q * times) / q)
        keep_t = (np.abs(times - CUTOFF_START) > 3 * ht) & (np.abs(times - CUTOFF_END) > 3 * ht)

        R, Tt = r[None, :], times[:, None]
        Hr, Ht = hr[None, :], ht[:, None]
        a = coef(R, Tt)
        ar = sum(c * coef(R + o * Hr, Tt) for c, o in zip(d1c, offs)) / Hr
        arr = sum(c * coef(R + o * Hr, Tt) for c, o in zip(d2c, offs)) / Hr**2
        at = sum(c * coef(R, Tt + o * Ht) for c, o in zip(d1c, offs)) / Ht
        k = n - 1
        lap = arr + ar / R - k * k * a / R**2
        grad_p = time_cutoff(Tt) * float(n) ** 4 * R ** (n - 1) / (1.0 - q * Tt) ** 2
        T, dT = amplitude(n, Tt), amplitude(n, Tt, 1)
        f_coef = time_cutoff(Tt) * (dT * prof(R) - T * _laplace_profile(n, R)) + time_cutoff(Tt, 1) * T * (prof(R) - R ** (n - 1))
        div_v = ar + a / R - n * a / R
        g_coef = time_cutoff(Tt) * T * divergence_profile(n, R)
        mask = keep_t[:, None] & keep_r[None, :]
        mom += np.where(mask, np.abs(at - lap + grad_p - f_coef), 0.0)
        cont += np.where(mask, np.abs(div_v - g_coef), 0.0)
        scale_f += np.abs(f_coef)
        scale_g += np.abs(g_coef)
    ref_f = max(float(scale_f.max()), np.finfo(float).tiny)
    ref_g = max(float(scale_g.max()), np.finfo(float).tiny)
    return float(mom.max()) / ref_f, float(cont.max()) / ref_g


def mean_divergence(setup):
    """Disc integrals of ``g`` at every time node (they vanish identically)."""
    from .disc import integral

    return np.atleast_1d(integral(eval_fields(setup)["g"]))
