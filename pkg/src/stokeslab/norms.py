"""Space-time Lebesgue and Sobolev norms, dual norms and trace norms on the disc."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import jn_zeros, jv

from .disc import (
    SCALAR,
    DiscField,
    DiscGrid,
    disc_integral,
    gradient,
    gradient_magnitude,
    hessian_magnitude,
    inner,
    integrate_disc,
    lebesgue_norm,
)
from .elliptic import solve_dirichlet


@dataclass(frozen=True)
class NormOrder:
    """Spatial exponent ``s`` and temporal exponent ``l``, both in (1, inf)."""

    s: float = 2.0
    l: float = 2.0

    def __post_init__(self):
        for name in ("s", "l"):
            v = getattr(self, name)
            if not (1.0 < v < math.inf):
                raise ValueError(f"{name} must lie in (1, inf), got {v}")

    @property
    def s_conj(self):
        return self.s / (self.s - 1.0)


@dataclass
class NormReport:
    """Named norm values, measured constant ratios and optional series.

    ``series`` maps a name to values indexed by a truncation parameter
    (for instance partial sums over modes ``N = 1, 2, ...``).
    """

    values: dict = field(default_factory=dict)
    ratios: dict = field(default_factory=dict)
    series: dict = field(default_factory=dict)

    def __post_init__(self):
        for k, v in list(self.values.items()) + list(self.ratios.items()):
            self._check(k, v)

    @staticmethod
    def _check(name, value):
        if not (np.isfinite(value) and value >= 0):
            raise ValueError(f"norm {name!r} must be finite and nonnegative, got {value}")

    def add(self, name, value):
        value = float(value)
        self._check(name, value)
        self.values[name] = value

    def add_ratio(self, name, value):
        value = float(value)
        self._check(name, value)
        self.ratios[name] = value

    def __getitem__(self, name):
        if name in self.values:
            return self.values[name]
        return self.ratios[name]

    def items(self):
        yield from self.values.items()
        yield from self.ratios.items()

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "kind", "value"])
        for k, v in self.values.items():
            w.writerow([k, "norm", repr(float(v))])
        for k, v in self.ratios.items():
            w.writerow([k, "ratio", repr(float(v))])
        return buf.getvalue()

    def series_csv(self, index_name="N"):
        """Series as CSV columns, first column the 1-based index."""
        names = list(self.series)
        if not names:
            return f"{index_name}\n"
        length = len(self.series[names[0]])
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([index_name] + names)
        for i in range(length):
            w.writerow([i + 1] + [repr(float(self.series[k][i])) for k in names])
        return buf.getvalue()

    def to_dict(self):
        return {
            "values": {k: float(v) for k, v in self.values.items()},
            "ratios": {k: float(v) for k, v in self.ratios.items()},
            "series": {k: [float(x) for x in v] for k, v in self.series.items()},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        return cls(dict(d.get("values", {})), dict(d.get("ratios", {})),
                   {k: np.asarray(v) for k, v in d.get("series", {}).items()})


# ---------------------------------------------------------------------------
# space-time norms
# ---------------------------------------------------------------------------

def time_lp(values, time, l):
    """Trapezoid ``L_l`` norm in time of per-slice values."""
    values = np.asarray(values, dtype=float)
    return float(np.sum(time.weights * values**l) ** (1.0 / l))


def lsl_of_pointwise(pointwise, u, order):
    per_slice = lebesgue_norm(pointwise, u.grid, order.s)
    return time_lp(per_slice, u.time, order.l)


def norm_lsl(u, order=NormOrder()):
    """``(int (int |u|^s dx)^(l/s) dt)^(1/l)`` for a space-time field."""
    return lsl_of_pointwise(u.magnitude(), u, order)


def time_derivative(u, accuracy=2):
    """Finite-difference ``d_t u``: centered inside, one-sided at the ends.

    ``accuracy`` is 2 (three-point stencils) or 4 (five-point stencils).
    """
    n = u.time.n_t + 1
    if accuracy == 2:
        if n < 4:
            raise ValueError("time derivatives need n_t >= 3")
        d = np.gradient(u.data, u.time.dt, axis=0, edge_order=2)
    elif accuracy == 4:
        if n < 6:
            raise ValueError("fourth-order time derivatives need n_t >= 5")
        d = _fourth_order_gradient(u.data, u.time.dt)
    else:
        raise ValueError("accuracy must be 2 or 4")
    return u._new(d)


def _fourth_order_gradient(y, h):
    d = np.empty_like(y)
    d[2:-2] = (y[:-4] - 8 * y[1:-3] + 8 * y[3:-1] - y[4:]) / (12 * h)
    fwd = np.array([-25, 48, -36, 16, -3]) / (12 * h)
    d[0] = np.tensordot(fwd, y[0:5], axes=1)
    d[1] = np.tensordot(fwd, y[1:6], axes=1)
    d[-1] = -np.tensordot(fwd, y[-1:-6:-1], axes=1)
    d[-2] = -np.tensordot(fwd, y[-2:-7:-1], axes=1)
    return d


def norm_w10(u, order=NormOrder()):
    """``||u||_{L_{s,l}} + ||grad u||_{L_{s,l}}``."""
    return norm_lsl(u, order) + lsl_of_pointwise(gradient_magnitude(u), u, order)


def w21_parts(u, order=NormOrder()):
    """The four pieces of the ``W^{2,1}_{s,l}`` norm as a dict."""
    return {
        "value": norm_lsl(u, order),
        "gradient": lsl_of_pointwise(gradient_magnitude(u), u, order),
        "hessian": lsl_of_pointwise(hessian_magnitude(u), u, order),
        "time_derivative": norm_lsl(time_derivative(u), order),
    }


def norm_w21(u, order=NormOrder()):
    """``||u|| + ||grad u|| + ||grad^2 u|| + ||d_t u||`` in ``L_{s,l}``."""
    return sum(w21_parts(u, order).values())


def sobolev_norm(f, s=2.0, order=1):
    """``W^k_s`` norm of a disc field for ``k = order`` in {0, 1, 2}."""
    total = integrate_disc(f, s)
    if order >= 1:
        total += float(lebesgue_norm(gradient_magnitude(f), f.grid, s))
    if order >= 2:
        total += float(lebesgue_norm(hessian_magnitude(f), f.grid, s))
    return total


# ---------------------------------------------------------------------------
# dual norms
# ---------------------------------------------------------------------------

def dual_norm(g):
    """Exact ``W^{-1}_2`` norm: ``||grad potential||_2`` for the Dirichlet solve of ``g``."""
    if g.rank != SCALAR:
        raise ValueError("dual_norm needs a scalar field")
    return integrate_disc(gradient(solve_dirichlet(g).potential), 2.0)


def dual_norm_series(g, order=NormOrder()):
    """``L_l(0, T; W^{-1}_2)`` norm of a scalar space-time field."""
    per_slice = [dual_norm(g[i]) for i in range(len(g))]
    return time_lp(per_slice, g.time, order.l)


@lru_cache(maxsize=16)
def _eigen_dictionary(n_r, n_theta, max_mode, max_root):
    grid = DiscGrid(n_r, n_theta)
    fields = []
    for m in range(min(max_mode, n_theta) + 1):
        for j in jn_zeros(m, max_root):
            for trig in ((np.cos,) if m == 0 else (np.cos, np.sin)):
                fields.append(DiscField.from_function(
                    grid, lambda r, th, m=m, j=j, trig=trig: jv(m, j * r) * trig(m * th)))
    return tuple(fields)


def dirichlet_eigenfunction(grid, m, k, trig=np.cos):
    """``J_m(j_{m,k} r) trig(m theta)`` and its eigenvalue ``j_{m,k}^2``."""
    j = jn_zeros(m, k)[-1]
    return DiscField.from_function(grid, lambda r, th: jv(m, j * r) * trig(m * th)), j * j


def dual_norm_estimate(g, order=NormOrder(), max_mode=8, max_root=4):
    """Lower bound for ``||g||_{W^{-1}_s}`` over a fixed dictionary of test fields.

    Each test field ``w`` vanishes on the circle and contributes
    ``|int g w| / ||grad w||_{L_{s'}}``.  The dictionary holds Dirichlet
    eigenfunctions of low order plus the Poisson solution of ``g`` itself,
    which is the exact maximizer when ``s = 2``.  For other ``s`` this is an
    estimator, not the norm.
    """
    if g.rank != SCALAR:
        raise ValueError("dual_norm_estimate needs a scalar field")
    grid = g.grid
    candidates = list(_eigen_dictionary(grid.n_r, grid.n_theta, max_mode, max_root))
    candidates.append(solve_dirichlet(g).potential)
    best = 0.0
    for w in candidates:
        denom = float(lebesgue_norm(gradient_magnitude(w), grid, order.s_conj))
        if denom > 0:
            best = max(best, abs(float(inner(g, w))) / denom)
    return best


def poincare_constant():
    """Best constant in ``||potential||_2 <= C ||grad potential||_2`` on the unit disc: ``1 / j_{0,1}``."""
    return 1.0 / jn_zeros(0, 1)[0]


# ---------------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------------

def trace_norm(f, s=2.0, n_angles=None):
    """``(int_0^{2 pi} |f(1, theta)|^s d theta)^(1/s)``."""
    K = f.grid.n_angles if n_angles is None else n_angles
    vals = f.magnitude(K)[..., -1, :]
    return float((2.0 * np.pi / K * np.sum(vals**s, axis=-1)) ** (1.0 / s))


def trace_inequality_ratio(f, s=2.0):
    """``||f||_{L_s(circle)} / (||f||_{L_s}^{1/s'} ||f||_{W^1_s}^{1/s})``; 0 for ``f = 0``."""
    t = trace_norm(f, s)
    lower = integrate_disc(f, s)
    upper = sobolev_norm(f, s, 1)
    if lower == 0.0 or upper == 0.0:
        return 0.0
    s_conj = s / (s - 1.0)
    return t / (lower ** (1.0 / s_conj) * upper ** (1.0 / s))


def isotropic_norm(u, p):
    """``L_p`` norm over the whole space-time cylinder at once."""
    per_slice = disc_integral(u.magnitude() ** p, u.grid)
    return float(np.sum(u.time.weights * per_slice) ** (1.0 / p))
