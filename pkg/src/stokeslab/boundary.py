"""Functions on the unit circle and the three extension operators built from them.

* :func:`extend_t1` extends a boundary value ``b`` and a normal derivative
  ``a`` into the disc.
* :func:`surface_div_inverse` inverts the angular derivative on mean-zero
  data, producing a tangential field.
* :func:`solenoidal_lift` produces a divergence-free field with normal
  boundary value ``-flux``.

The circle mollifier of width ``delta`` acts on mode ``m`` as multiplication
by ``Khat(m delta)``, where ``Khat`` is the cosine transform of the bump
kernel, so the extension is exact mode by mode.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np
from numpy.polynomial.legendre import leggauss

from .disc import SCALAR, VECTOR, DiscField, DiscGrid, _dr, sample_modes

SCALAR_TRACE = "scalar"
TANGENTIAL = "tangential"
NORMAL = "normal"
_KINDS = (SCALAR_TRACE, TANGENTIAL, NORMAL)


class MeanZeroError(ValueError):
    """Raised when data that must integrate to zero does not."""


@dataclass(frozen=True, eq=False)
class BoundaryTrace:
    """Fourier coefficients ``c_0 .. c_M`` of a real function on the circle.

    ``kind`` says how to read the function: a plain scalar, the tangential
    component ``bhat`` of ``bhat e_theta``, or the normal component of a
    vector trace.
    """

    coeffs: np.ndarray
    kind: str = SCALAR_TRACE

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}")
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coeffs must be a nonempty 1-D array")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def n_theta(self):
        return self.coeffs.size - 1

    @property
    def modes(self):
        return np.arange(self.coeffs.size)

    @classmethod
    def zeros(cls, n_theta, kind=SCALAR_TRACE):
        return cls(np.zeros(n_theta + 1, dtype=complex), kind)

    @classmethod
    def from_function(cls, func, n_theta, kind=SCALAR_TRACE, n_angles=None):
        K = max(4 * n_theta, 8) if n_angles is None else n_angles
        th = 2.0 * np.pi * np.arange(K) / K
        vals = np.broadcast_to(np.asarray(func(th), dtype=float), th.shape)
        return cls(np.fft.rfft(vals)[: n_theta + 1] / K, kind)

    @classmethod
    def from_field(cls, field, kind=SCALAR_TRACE):
        """Restriction of a scalar disc field to r = 1."""
        if field.rank != SCALAR:
            raise ValueError("from_field needs a scalar field")
        return cls(field.boundary(), kind)

    def with_kind(self, kind):
        return BoundaryTrace(self.coeffs, kind)

    def values(self, n_angles=None):
        K = max(4 * self.n_theta, 8) if n_angles is None else n_angles
        return sample_modes(self.coeffs[:, None], K)[0]

    def derivative(self):
        """Angular derivative ``d_theta``."""
        return BoundaryTrace(1j * self.modes * self.coeffs, self.kind)

    def mean(self):
        """Average over the circle (the zeroth coefficient)."""
        return float(self.coeffs[0].real)

    def is_mean_zero(self, tol=1e-10):
        return abs(self.coeffs[0]) <= tol * max(1.0, float(np.max(np.abs(self.coeffs))))

    def lp_norm(self, s=2.0, n_angles=None):
        """``(int_0^{2 pi} |f|^s d theta)^(1/s)``."""
        vals = self.values(n_angles)
        return float((2.0 * np.pi / vals.size * np.sum(np.abs(vals) ** s)) ** (1.0 / s))

    def w1_norm(self, s=2.0, n_angles=None):
        return self.lp_norm(s, n_angles) + self.derivative().lp_norm(s, n_angles)

    def __add__(self, other):
        if not isinstance(other, BoundaryTrace):
            return NotImplemented
        return BoundaryTrace(self.coeffs + other.coeffs, self.kind)

    def __sub__(self, other):
        if not isinstance(other, BoundaryTrace):
            return NotImplemented
        return BoundaryTrace(self.coeffs - other.coeffs, self.kind)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return BoundaryTrace(self.coeffs * scalar, self.kind)

    __rmul__ = __mul__

    def __neg__(self):
        return BoundaryTrace(-self.coeffs, self.kind)

    def to_dict(self):
        return {
            "type": "BoundaryTrace",
            "kind": self.kind,
            "modes": {str(m): [float(c.real), float(c.imag)] for m, c in enumerate(self.coeffs)},
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("type") != "BoundaryTrace":
            raise ValueError("not a serialized BoundaryTrace")
        modes = {int(k): v for k, v in d["modes"].items()}
        c = np.zeros(max(modes) + 1, dtype=complex)
        for m, (re, im) in modes.items():
            c[m] = re + 1j * im
        return cls(c, d.get("kind", SCALAR_TRACE))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# kernel and cutoff
# ---------------------------------------------------------------------------

def smoothstep_inf(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    out[t >= 1.0] = 1.0
    mid = (t > 0.0) & (t < 1.0)
    x = t[mid]
    a = np.exp(-1.0 / x)
    b = np.exp(-1.0 / (1.0 - x))
    out[mid] = a / (a + b)
    return out


def smoothstep_poly(t, order):
    """Polynomial step of class ``C^order``: 0 for t <= 0, 1 for t >= 1.

    ``t^(q+1) sum_k binom(q+k, k) (1-t)^k`` with ``q = order``; it vanishes
    to order ``q+1`` at both ends and is antisymmetric about ``t = 1/2``.
    """
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    q = int(order)
    val = t ** (q + 1) * sum(comb(q + k, k) * (1.0 - t) ** k for k in range(q + 1))
    # the sum of binomials can round past 1 near t = 1
    return np.clip(val, 0.0, 1.0)


@dataclass(frozen=True)
class ExtensionKernel:
    """Normalized bump ``K(z) = c exp(-1/(1-z^2))`` on (-1, 1) and a cutoff.

    The cutoff ``zeta(y)`` equals 1 for ``y <= plateau`` and 0 for
    ``y >= support``.  By default the transition is the ``C^8`` polynomial
    step: on the disc its profile is polynomial near the origin, which the
    radial collocation resolves at modest ``n_r``.  ``smoothness=None``
    selects the C-infinity step built from ``exp(-1/t)``, whose derivatives
    steepen towards the origin and need several hundred radial nodes.
    """

    n_quad: int = 2000
    plateau: float = 0.5
    support: float = 1.0
    smoothness: int | None = 8

    def __post_init__(self):
        if not 0 < self.plateau < self.support:
            raise ValueError("need 0 < plateau < support")
        if self.smoothness is not None and self.smoothness < 2:
            raise ValueError("cutoff smoothness must be at least 2")

    @property
    def _quad(self):
        return _kernel_quadrature(self.n_quad)

    def kernel(self, z):
        z = np.asarray(z, dtype=float)
        out = np.zeros_like(z)
        inside = np.abs(z) < 1.0
        out[inside] = np.exp(-1.0 / (1.0 - z[inside] ** 2))
        return self._quad[2] * out

    def kernel_hat(self, xi):
        """Cosine transform ``int K(z) cos(xi z) dz``; symbol of the mollifier."""
        z, w, c, bump = self._quad
        xi = np.asarray(xi, dtype=float)
        return c * (np.cos(np.multiply.outer(xi, z)) @ (w * bump))

    def moments(self, k_max=1):
        """``int z^k K(z) dz`` for k = 0..k_max by the internal quadrature."""
        z, w, c, bump = self._quad
        return np.array([c * np.sum(w * bump * z**k) for k in range(k_max + 1)])

    def cutoff(self, y):
        y = np.asarray(y, dtype=float)
        t = (y - self.plateau) / (self.support - self.plateau)
        if self.smoothness is None:
            return 1.0 - smoothstep_inf(t)
        return 1.0 - smoothstep_poly(t, self.smoothness)


@lru_cache(maxsize=None)
def _kernel_quadrature(n):
    z, w = leggauss(n)
    bump = np.exp(-1.0 / (1.0 - z**2))
    c = 1.0 / np.sum(w * bump)
    return z, w, c, bump


DEFAULT_KERNEL = ExtensionKernel()


@lru_cache(maxsize=64)
def _extension_profile(kernel, n_r, n_theta):
    """``zeta(1 - r) Khat(m (1 - r))`` on the grid, shape ``(M+1, N)``."""
    grid = DiscGrid(n_r, n_theta)
    dist = 1.0 - grid.r
    prof = kernel.cutoff(dist)[None, :] * kernel.kernel_hat(np.outer(grid.modes, dist))
    prof.flags.writeable = False
    return prof


def _extend_coeffs(b, a, grid, kernel):
    """Vectorized core of :func:`extend_t1`; ``b``, ``a`` shape ``(..., M+1)``."""
    prof = _extension_profile(kernel, grid.n_r, grid.n_theta)
    return prof * (b[..., :, None] + (grid.r - 1.0) * a[..., :, None])


def _fit(trace, grid):
    c = np.zeros(grid.n_theta + 1, dtype=complex)
    k = min(trace.coeffs.size, c.size)
    if np.any(np.abs(trace.coeffs[k:]) > 0):
        raise ValueError("trace has modes above the grid resolution")
    c[:k] = trace.coeffs[:k]
    return c


def extend_t1(b, a, grid, kernel=DEFAULT_KERNEL):
    """Extend boundary value ``b`` and normal derivative ``a`` into the disc.

    Mode by mode the result is ``zeta(1-r) Khat(m(1-r)) (b_m + (r-1) a_m)``:
    the traces are mollified at the scale of the distance to the circle and
    the linear Taylor polynomial in ``r`` is cut off away from the boundary.
    Since ``Khat(0) = 1``, ``Khat'(0) = 0`` and ``zeta`` is flat at 0, the
    field takes the value ``b`` and radial derivative ``a`` at r = 1.
    """
    data = _extend_coeffs(_fit(b, grid), _fit(a, grid), grid, kernel)
    return DiscField(grid, data, SCALAR)


def _surface_div_inverse_coeffs(flux, tol=1e-10):
    flux = np.asarray(flux)
    scale = np.maximum(1.0, np.max(np.abs(flux), axis=-1))
    bad = np.abs(flux[..., 0]) > tol * scale
    if np.any(bad):
        where = np.argwhere(np.atleast_1d(bad))
        raise MeanZeroError(
            f"boundary data has nonzero mean {np.max(np.abs(flux[..., 0])):.3e}"
            + (f" at index {tuple(where[0])}" if flux.ndim > 1 else "")
        )
    m = np.arange(flux.shape[-1])
    out = np.zeros_like(flux, dtype=complex)
    out[..., 1:] = flux[..., 1:] / (1j * m[1:])
    return out


def surface_div_inverse(flux, tol=1e-10):
    """Tangential field ``bhat e_theta`` on the circle with ``d_theta bhat = flux``.

    The zero mode of ``bhat`` is set to zero.  ``flux`` must have zero mean
    (its zeroth coefficient below ``tol`` relative to its largest one).
    """
    return BoundaryTrace(_surface_div_inverse_coeffs(flux.coeffs, tol), TANGENTIAL)


def normal_extension_term(b):
    """``(b . grad) x - b div x`` for a tangential trace ``b`` with the extension ``x`` of the normal.

    Returns ``(normal, tangential)`` components as :class:`BoundaryTrace`.
    ``(b . grad) x`` is ``b`` itself and ``div x = 2``.
    """
    if b.kind != TANGENTIAL:
        raise ValueError("normal_extension_term needs a tangential trace")
    directional = b.coeffs  # (b . grad) x = b
    div_x = 2.0
    tangential = directional - div_x * b.coeffs
    return BoundaryTrace(np.zeros_like(b.coeffs), NORMAL), BoundaryTrace(tangential, TANGENTIAL)


@dataclass(frozen=True, eq=False)
class LiftParts:
    """Intermediate objects of :func:`solenoidal_lift`."""

    b: BoundaryTrace
    a_normal: BoundaryTrace
    a_tangential: BoundaryTrace
    f: DiscField
    w: DiscField


def _curl_form_coeffs(fr, ft, grid):
    """``w = x div f - (x . grad) f - f`` in polar components, mode by mode."""
    m = grid.modes[:, None]
    r = grid.r
    dfr, dft = _dr(fr, grid), _dr(ft, grid)
    div_f = dfr + fr / r + 1j * m * ft / r
    w_r = r * div_f - r * dfr - fr
    w_t = -r * dft - ft
    return np.stack([w_r, w_t], axis=-3)


def lift_parts(flux, grid, kernel=DEFAULT_KERNEL, tol=1e-10):
    """All stages of the divergence-free lift for ``flux`` on ``grid``."""
    b = -surface_div_inverse(flux, tol)
    a_n, a_t = normal_extension_term(b)
    # b is tangential, so its normal component vanishes
    f_r = extend_t1(BoundaryTrace.zeros(b.n_theta, NORMAL), a_n, grid, kernel)
    f_t = extend_t1(b, a_t, grid, kernel)
    f = DiscField.from_components(f_r, f_t)
    w = DiscField(grid, _curl_form_coeffs(f_r.data, f_t.data, grid), VECTOR)
    return LiftParts(b, a_n, a_t, f, w)


def solenoidal_lift(flux, grid, kernel=DEFAULT_KERNEL, tol=1e-10):
    """Divergence-free field on the disc equal to ``-flux n`` on the circle."""
    return lift_parts(flux, grid, kernel, tol).w


def _lift_coeffs(flux, grid, kernel=DEFAULT_KERNEL, tol=1e-10):
    """Vectorized lift: ``flux`` shape ``(..., M+1)`` to vector data ``(..., 2, M+1, N)``."""
    bhat = -_surface_div_inverse_coeffs(flux, tol)
    ft = _extend_coeffs(bhat, -bhat, grid, kernel)
    return _curl_form_coeffs(np.zeros_like(ft), ft, grid)
