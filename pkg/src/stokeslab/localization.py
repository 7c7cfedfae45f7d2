"""Cutoff localization of Stokes flows and the dyadic iteration lemma.

A solution ``(u, q)`` of the Stokes system with forcing ``f_tilde`` on the
disc becomes, after multiplication by a space-time cutoff ``c``, a
solution ``(c u, c q)`` of a problem with zero boundary and initial
values and data

    f = c f_tilde + u (d_t c - Delta c) - 2 (grad u) grad c + q grad c,
    g = u . grad c.

The iteration lemma turns a family of inequalities
``F(near) <= eps F(far) + scale / (far - near)^exponent`` into a clean bound
at the smallest radius by walking dyadic radii towards the largest one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np
from numpy.polynomial import Polynomial

from .disc import (
    SCALAR,
    VECTOR,
    SpaceTimeField,
    _dr,
    divergence,
    gradient,
    laplacian,
)
from .norms import NormOrder, time_derivative
from .stokes import ProblemData

# ---------------------------------------------------------------------------
# cutoff profile
# ---------------------------------------------------------------------------


def step_polynomial(order):
    """Polynomial ``S`` with ``S(0) = 0``, ``S(1) = 1`` and ``order`` vanishing derivatives at both ends."""
    t = Polynomial([0.0, 1.0])
    body = sum(comb(order + k, k) * (1 - t) ** k for k in range(order + 1))
    return t ** (order + 1) * body


class PolynomialStep:
    """Smooth step equal to 0 below 0 and 1 above 1, with exact derivatives."""

    def __init__(self, order=8):
        self.order = int(order)
        self._poly = [step_polynomial(self.order)]
        for _ in range(2):
            self._poly.append(self._poly[-1].deriv())

    def __call__(self, t, k=0):
        t = np.asarray(t, dtype=float)
        inside = (t > 0.0) & (t < 1.0)
        # S(t) = 1 - S(1 - t): evaluating the upper half by reflection keeps
        # the power-basis polynomial near zero, where it has no cancellation
        c = np.clip(t, 0.0, 1.0)
        upper = c > 0.5
        val = self._poly[k](np.where(upper, 1.0 - c, c))
        if k == 0:
            val = np.where(upper, 1.0 - val, val)
            return np.where(t >= 1.0, 1.0, np.where(t <= 0.0, 0.0, val))
        if k == 2:
            val = np.where(upper, -val, val)
        return np.where(inside, val, 0.0)

    def max_derivative(self, k, n=20001):
        return float(np.max(np.abs(self(np.linspace(0.0, 1.0, n), k))))


@dataclass(frozen=True)
class CutoffProfile:
    """Product cutoff ``spatial(|x|) * temporal(t)`` between two parabolic cylinders.

    The cutoff equals 1 on ``|x| <= inner, t >= -inner^2`` and vanishes when
    ``|x| >= outer`` or ``t <= -outer^2``.  Radii must satisfy
    ``1/2 <= inner < outer <= 9/10``.
    """

    inner: float = 0.5
    outer: float = 0.8
    order: int = 8

    def __post_init__(self):
        if not 0.5 <= self.inner < self.outer <= 0.9:
            raise ValueError(f"need 1/2 <= inner < outer <= 9/10, got inner={self.inner}, outer={self.outer}")

    @cached_property
    def step(self):
        return PolynomialStep(self.order)

    @property
    def gap(self):
        return self.outer - self.inner

    def spatial(self, radius, k=0):
        """``k``-th radial derivative of the spatial factor."""
        s = (self.outer - np.asarray(radius, dtype=float)) / self.gap
        return (-1.0 / self.gap) ** k * self.step(s, k)

    def temporal(self, t, k=0):
        """``k``-th derivative of the temporal factor."""
        width = self.outer**2 - self.inner**2
        s = (np.asarray(t, dtype=float) + self.outer**2) / width
        return width ** (-k) * self.step(s, k)

    def declared_bounds(self):
        """Constants ``C_k`` with ``|grad^k cutoff| <= C_k / gap^k`` and ``|d_t cutoff| <= C_t / gap``."""
        s1, s2 = self.step.max_derivative(1), self.step.max_derivative(2)
        # the radial Hessian has entries s'' and s'/|x|, with |x| >= 1/2 and gap <= 2/5
        return {"C1": s1, "C2": float(np.hypot(s2, 2.0 * 0.4 * s1)), "Ct": s1}

    def measured_bounds(self, n=4001):
        """Sampled ``max |grad^k cutoff| gap^k`` and ``max |d_t cutoff| gap``."""
        x = np.linspace(self.inner, self.outer, n)
        d1, d2 = self.spatial(x, 1), self.spatial(x, 2)
        t = np.linspace(-self.outer**2, -self.inner**2, n)
        return {
            "C1": float(np.max(np.abs(d1))) * self.gap,
            "C2": float(np.max(np.hypot(d2, d1 / x))) * self.gap**2,
            "Ct": float(np.max(np.abs(self.temporal(t, 1)))) * self.gap,
        }

    def as_field(self, grid, time):
        """The cutoff sampled as a scalar space-time field."""
        data = np.zeros((time.n_t + 1,) + grid.shape(SCALAR), complex)
        data[:, 0, :] = self.temporal(time.times)[:, None] * self.spatial(grid.r)[None, :]
        return SpaceTimeField(grid, time, data, SCALAR)


# ---------------------------------------------------------------------------
# localization
# ---------------------------------------------------------------------------

class LocalizationError(ValueError):
    """A Stokes residual exceeded its tolerance."""


def _sample_max(field):
    """Largest pointwise magnitude and its ``(time index, radial index, angle index)``."""
    mag = field.magnitude()
    idx = np.unravel_index(int(np.argmax(mag)), mag.shape)
    return float(mag[idx]), idx


def stokes_residual(u, q, f, g=None, accuracy=4):
    """Pointwise residuals of ``d_t u - Delta u + grad q - f`` and ``div u - g``.

    Returns a dict with the maxima relative to the data scale and the
    location ``(t, r, theta)`` of the worst momentum residual.  The first
    and last two time slices use one-sided stencils.
    """
    momentum = time_derivative(u, accuracy) - laplacian(u) + gradient(q) - f
    cont = divergence(u) if g is None else divergence(u) - g
    mom_max, idx = _sample_max(momentum)
    cont_max, _ = _sample_max(cont)
    scale_f = max(float(np.max(f.magnitude())), 1.0)
    scale_g = max(float(np.max(divergence(u).magnitude())), 1.0) if g is None else \
        max(float(np.max(g.magnitude())), 1.0)
    grid = u.grid
    where = (float(u.time.times[idx[0]]), float(grid.r[idx[1]]),
             float(grid.theta()[idx[2]]))
    return {"momentum": mom_max / scale_f, "continuity": cont_max / scale_g, "where": where}


@dataclass(frozen=True, eq=False)
class Localized:
    """Data of the localized problem, the localized pair and the residual check."""

    data: ProblemData
    v: SpaceTimeField
    p: SpaceTimeField
    residual: dict


def _radial_factor(field, values):
    """Multiply every mode by the radial-temporal factor ``values[t, r]``."""
    v = values[:, None, :] if field.rank == SCALAR else values[:, None, None, :]
    return field._new(field.data * v)


def localize(u, q, f_tilde, profile, order=NormOrder(), tol=1e-4, check=True):
    """Localize the Stokes solution ``(u, q)`` with forcing ``f_tilde``.

    Parameters
    ----------
    u, q, f_tilde : SpaceTimeField
        Velocity, pressure and forcing on the disc; the time interval must
        start at or before ``-profile.outer**2`` so that the cutoff vanishes initially.
    profile : CutoffProfile
    tol : float
        Relative tolerance for the pointwise residuals of the input and of
        the localized system.

    Returns
    -------
    Localized
    """
    if u.rank != VECTOR or q.rank != SCALAR or f_tilde.rank != VECTOR:
        raise ValueError("localize needs vector u, scalar q and vector f_tilde")
    grid, time = u.grid, u.time
    if time.t_start > -profile.outer**2 + 1e-14:
        raise ValueError("the time interval must begin before the cutoff switches on")
    t = time.times
    space, dspace, d2space = (profile.spatial(grid.r, k) for k in range(3))
    time_factor, dtime = profile.temporal(t), profile.temporal(t, 1)
    cut = np.outer(time_factor, space)
    dcut_dt = np.outer(dtime, space)
    lap_cut = np.outer(time_factor, d2space + dspace / grid.r)
    dcut_dr = np.outer(time_factor, dspace)

    if check:
        pre = stokes_residual(u, q, f_tilde)
        if pre["momentum"] > tol or pre["continuity"] > tol:
            raise LocalizationError(f"input is not a Stokes solution: {pre}")

    # grad cut points along e_r, so (grad u) grad cut = d_r u * d_r cut
    du_dr = u._new(_dr(u.data, grid))
    q_vec = np.zeros_like(u.data)
    q_vec[:, 0] = q.data
    f = (_radial_factor(f_tilde, cut)
         + _radial_factor(u, dcut_dt - lap_cut)
         - _radial_factor(du_dr, 2.0 * dcut_dr)
         + _radial_factor(u._new(q_vec), dcut_dr))
    g = SpaceTimeField(grid, time, u.data[:, 0] * dcut_dr[:, None, :], SCALAR)
    v = _radial_factor(u, cut)
    p = _radial_factor(q, cut)
    data = ProblemData(f, g, order)
    residual = stokes_residual(v, p, f, g) if check else {}
    if check and (residual["momentum"] > tol or residual["continuity"] > tol):
        raise LocalizationError(f"localized residual above tolerance: {residual}")
    return Localized(data, v, p, residual)


# ---------------------------------------------------------------------------
# iteration lemma
# ---------------------------------------------------------------------------

class HypothesisViolation(ValueError):
    """The sampled function breaks the lemma's hypothesis at a pair of radii."""

    def __init__(self, near, far, lhs, rhs):
        super().__init__(f"value {lhs:.6g} at radius {near:.6g} exceeds {rhs:.6g} from radius {far:.6g}")
        self.pair = (near, far)


@dataclass(frozen=True)
class IterationInstance:
    """Nondecreasing ``F`` sampled on ``[inner, outer]`` with constants ``scale``, ``exponent``, ``eps``.

    ``radii`` is increasing; ``values[i] = F(radii[i])``.  ``outer`` itself
    may be excluded from the samples when ``F`` is singular there.
    """

    radii: np.ndarray
    values: np.ndarray
    scale: float
    exponent: float
    eps: float

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "values", values)
        if radii.shape != values.shape or radii.ndim != 1 or radii.size < 2:
            raise ValueError("radii and values must be matching 1-d samples")
        if np.any(np.diff(radii) <= 0):
            raise ValueError("radii must be increasing")
        if np.any(np.diff(values) < -1e-12 * max(1.0, float(np.max(np.abs(values))))):
            raise ValueError("samples must be nondecreasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("samples must be finite")
        if self.scale < 0 or self.exponent <= 0:
            raise ValueError("need scale >= 0 and exponent > 0")
        if not 0.0 < self.eps < 2.0 ** (-self.exponent):
            raise ValueError(f"eps must lie in (0, 2^-exponent) = (0, {2.0 ** -self.exponent:.6g}), got {self.eps}")

    @classmethod
    def from_function(cls, func, inner, outer, scale, exponent, eps, n=100, include_end=False):
        radii = np.linspace(inner, outer, n + (0 if include_end else 1))
        if not include_end:
            radii = radii[:-1]
        return cls(radii, np.array([func(x) for x in radii], dtype=float), scale, exponent, eps)


def iteration_constant(eps, exponent):
    """Closed form of ``sum_k eps^k 2^(a (k+1))`` for ``eps < 2^-a``."""
    if not 0.0 < eps < 2.0 ** (-exponent):
        raise ValueError("eps must lie in (0, 2^-exponent)")
    return 2.0**exponent / (1.0 - eps * 2.0**exponent)


def check_hypothesis(inst, outer, rtol=1e-12):
    """Verify ``F(near) <= eps F(far) + scale / (far - near)^exponent`` for all sampled ``near < far``."""
    x, y = inst.radii, inst.values
    near, far = np.meshgrid(x, x, indexing="ij")
    lo, hi = np.meshgrid(y, y, indexing="ij")
    pair = near < far
    with np.errstate(divide="ignore"):
        rhs = inst.eps * hi + inst.scale / np.where(pair, far - near, 1.0) ** inst.exponent
    bad = pair & (lo > rhs * (1.0 + rtol))
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise HypothesisViolation(x[i], x[j], y[i], rhs[i, j])
    return True


@dataclass(frozen=True)
class IterationBound:
    """Outcome of the iteration: the bound, its constant and the dyadic walk."""

    bound: float
    constant: float
    constant_summed: float
    radii: np.ndarray
    partial_bounds: np.ndarray
    sampled: float
    holds: bool


def iteration_lemma(inst, inner, outer, n_steps=200, check=True):
    """Bound ``F(inner)`` by ``K scale / (outer - inner)^exponent`` via the radii ``outer - 2^-k (outer - inner)``.

    The walk applies the hypothesis between consecutive dyadic radii; after
    ``n`` steps ``F(inner) <= eps^n F(r_n) + scale sum_{k<n} eps^k / (r_{k+1} - r_k)^exponent``,
    and the tail vanishes because ``F`` is bounded.  ``K`` is returned both
    by its closed form and as the summed series.
    """
    if check:
        check_hypothesis(inst, outer)
    a = inst.exponent
    gap = outer - inner
    k = np.arange(n_steps)
    radii = outer - 2.0 ** (-np.arange(n_steps + 1)) * gap
    steps = 2.0 ** (-(k + 1)) * gap
    terms = inst.eps**k * inst.scale / steps**a
    # the remainder eps^n F(r_n) is bounded by eps^n sup F
    tail = inst.eps ** k[1:] * float(np.max(inst.values))
    partial = np.cumsum(terms)[:-1] + tail
    summed = float(np.sum(inst.eps**k * 2.0 ** (a * (k + 1))))
    constant = iteration_constant(inst.eps, a)
    bound = constant * inst.scale / gap**a
    sampled = float(np.interp(inner, inst.radii, inst.values))
    return IterationBound(bound, constant, summed, radii, partial, sampled,
                          bool(sampled <= bound * (1.0 + 1e-12)))


# ---------------------------------------------------------------------------
# Young's inequality
# ---------------------------------------------------------------------------

def young_constant(s, eps):
    """``C_eps = (eps s)^(-s'/s) / s'`` in ``ab <= eps a^s + C_eps b^s'``."""
    if s <= 1.0 or eps <= 0.0:
        raise ValueError("need s > 1 and eps > 0")
    sc = s / (s - 1.0)
    return (eps * s) ** (-sc / s) / sc


def young_split(a, b, s, eps):
    """Both sides of ``ab <= eps a^s + C_eps b^s'``; raises if the inequality fails."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be nonnegative")
    const = young_constant(s, eps)
    sc = s / (s - 1.0)
    lhs = a * b
    rhs = eps * a**s + const * b**sc
    if lhs > rhs * (1.0 + 1e-12) + 1e-300:
        raise ArithmeticError(f"Young's inequality failed: {lhs} > {rhs}")
    return lhs, rhs
