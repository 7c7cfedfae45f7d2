import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import jn_zeros

from stokeslab.disc import DiscField, DiscGrid, SpaceTimeField, SpaceTimeGrid, integrate_disc
from stokeslab.norms import (
    NormOrder,
    NormReport,
    dirichlet_eigenfunction,
    dual_norm,
    dual_norm_estimate,
    dual_norm_series,
    isotropic_norm,
    norm_lsl,
    norm_w10,
    norm_w21,
    poincare_constant,
    sobolev_norm,
    time_derivative,
    trace_inequality_ratio,
    trace_norm,
    w21_parts,
)

GRID = DiscGrid(32, 8)


def scalar(func, grid=GRID):
    return DiscField.from_function(grid, lambda r, th: func(r, th) + 0 * r * th)


def test_norm_order_validation():
    assert NormOrder(3.0, 2.0).s_conj == pytest.approx(1.5)
    for bad in [(1.0, 2.0), (2.0, np.inf), (0.5, 2.0)]:
        with pytest.raises(ValueError):
            NormOrder(*bad)


def test_report_rejects_negative_or_nan():
    rep = NormReport()
    rep.add("a", 1.0)
    with pytest.raises(ValueError):
        rep.add("b", -1.0)
    with pytest.raises(ValueError):
        rep.add_ratio("c", np.nan)
    rep.add_ratio("d", 2.0)
    assert rep.to_csv().splitlines() == ["name,kind,value", "a,norm,1.0", "d,ratio,2.0"]
    back = NormReport.from_dict(rep.to_dict())
    assert back.values == rep.values and back.ratios == rep.ratios


def test_series_csv_columns():
    rep = NormReport(series={"x": np.array([1.0, 3.0]), "y": np.array([2.0, 5.0])})
    assert rep.series_csv().splitlines() == ["N,x,y", "1,1.0,2.0", "2,3.0,5.0"]


# ---------------------------------------------------------------------------
# space-time norms
# ---------------------------------------------------------------------------

def test_lsl_of_one():
    u = SpaceTimeField.from_function(GRID, SpaceTimeGrid(0, 1, 8), lambda r, th, t: 1.0 + 0 * r)
    assert norm_lsl(u) == pytest.approx(np.sqrt(np.pi), rel=1e-10)
    assert norm_w10(u) == pytest.approx(norm_lsl(u), rel=1e-10)


def test_lsl_of_zero():
    assert norm_lsl(SpaceTimeField.zeros(GRID, SpaceTimeGrid(0, 1, 4))) == 0.0


@pytest.mark.parametrize("s,l", [(1.5, 3.0), (3.0, 1.5), (2.0, 4.0)])
def test_lsl_of_constant_against_nested_quadrature(s, l):
    c, T = 0.7, 0.6
    u = SpaceTimeField.from_function(GRID, SpaceTimeGrid(0, T, 6), lambda r, th, t: c + 0 * r)
    inner = quad(lambda r: 2 * np.pi * r * c**s, 0, 1)[0] ** (1 / s)
    outer = quad(lambda t: inner**l, 0, T)[0] ** (1 / l)
    assert norm_lsl(u, NormOrder(s, l)) == pytest.approx(outer, rel=1e-10)
    assert outer == pytest.approx(c * np.pi ** (1 / s) * T ** (1 / l))


def test_w21_of_linear_time_profile():
    tg = SpaceTimeGrid(0, 1, 16)
    u = SpaceTimeField.from_function(GRID, tg, lambda r, th, t: t + 0 * r)
    parts = w21_parts(u)
    assert parts["time_derivative"] == pytest.approx(np.sqrt(np.pi), rel=1e-10)
    assert parts["gradient"] == pytest.approx(0.0, abs=1e-10)
    assert parts["hessian"] == pytest.approx(0.0, abs=1e-9)
    # trapezoid in time of pi t^2 with 16 steps
    trap = np.sqrt(np.sum(tg.weights * np.pi * tg.times**2))
    assert parts["value"] == pytest.approx(trap, rel=1e-12)
    assert norm_w21(u) == pytest.approx(sum(parts.values()))


def test_w21_pieces_for_x_times_t_against_symbolic_oracle():
    r, th, t = sp.symbols("r theta t", positive=True)
    x = r * sp.cos(th)
    f = x * t
    area = lambda e: sp.integrate(sp.integrate(e * r, (r, 0, 1)), (th, 0, 2 * sp.pi))  # noqa: E731
    value = sp.sqrt(sp.integrate(area(f**2), (t, 0, 1)))
    gradient = sp.sqrt(sp.integrate(area(t**2), (t, 0, 1)))
    time_d = sp.sqrt(area(x**2))
    tg = SpaceTimeGrid(0, 1, 64)
    u = SpaceTimeField.from_function(GRID, tg, lambda rr, tt, s: s * rr * np.cos(tt))
    parts = w21_parts(u)
    assert parts["value"] == pytest.approx(float(value), rel=1e-3)
    assert parts["gradient"] == pytest.approx(float(gradient), rel=1e-3)
    assert parts["time_derivative"] == pytest.approx(float(time_d), rel=1e-10)
    assert parts["hessian"] == pytest.approx(0.0, abs=1e-8)


def test_fourth_order_time_derivative():
    tg = SpaceTimeGrid(0, 1, 20)
    u = SpaceTimeField.from_function(GRID, tg, lambda r, th, t: np.sin(3 * t) * r + 0 * th)
    exact = SpaceTimeField.from_function(GRID, tg, lambda r, th, t: 3 * np.cos(3 * t) * r + 0 * th)
    err2 = norm_lsl(time_derivative(u, 2) - exact)
    err4 = norm_lsl(time_derivative(u, 4) - exact)
    assert err4 < err2 / 10
    with pytest.raises(ValueError):
        time_derivative(u, 3)


def test_isotropic_norm_of_constant():
    u = SpaceTimeField.from_function(GRID, SpaceTimeGrid(0, 2, 4), lambda r, th, t: 3.0 + 0 * r)
    assert isotropic_norm(u, 3.0) == pytest.approx(3.0 * (2 * np.pi) ** (1 / 3), rel=1e-10)


def test_sobolev_norm_orders():
    f = scalar(lambda r, th: r * np.cos(th))
    assert sobolev_norm(f, 2.0, 0) == pytest.approx(np.sqrt(np.pi / 4), rel=1e-10)
    assert sobolev_norm(f, 2.0, 1) == pytest.approx(np.sqrt(np.pi / 4) + np.sqrt(np.pi), rel=1e-10)
    assert sobolev_norm(f, 2.0, 2) == pytest.approx(sobolev_norm(f, 2.0, 1), abs=1e-9)


# ---------------------------------------------------------------------------
# dual norms
# ---------------------------------------------------------------------------

def test_dual_norm_of_zero():
    assert dual_norm(DiscField.zeros(GRID)) == 0.0
    assert dual_norm_estimate(DiscField.zeros(GRID)) == 0.0


@pytest.mark.parametrize("m,k", [(0, 1), (1, 2), (3, 1)])
def test_dual_norm_of_eigenfunction(m, k):
    g, lam = dirichlet_eigenfunction(DiscGrid(48, 8), m, k)
    assert dual_norm(g) == pytest.approx(integrate_disc(g) / np.sqrt(lam), rel=1e-9)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_dual_norm_of_monomial(n):
    g = scalar(lambda r, th: r**n * np.sin(n * th))
    # potential = (r^(n+2) - r^n) sin / (4(n+1)); ||grad potential||^2 = -int potential g
    c = 1.0 / (4 * (n + 1))
    energy = -c * np.pi * (1.0 / (2 * n + 4) - 1.0 / (2 * n + 2))
    assert dual_norm(g) == pytest.approx(np.sqrt(energy), rel=1e-10)


def test_estimate_matches_exact_dual_norm_for_s_2():
    g = scalar(lambda r, th: r**2 * np.cos(2 * th) + 0.3 * r * np.sin(th) * np.exp(r))
    assert dual_norm_estimate(g) == pytest.approx(dual_norm(g), rel=0.05)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=4, max_size=4), st.sampled_from([1.5, 2.0, 3.0]))
def test_dual_norms_below_poincare_bound(c, s):
    g = scalar(lambda r, th: c[0] * r * np.cos(th) + c[1] * r**2 * np.sin(2 * th) + c[2] * (r**2 - 0.5)
               + c[3] * r**4 * np.cos(4 * th))
    bound = poincare_constant() * integrate_disc(g)
    assert dual_norm(g) <= bound * (1 + 1e-10)
    if s == 2.0:
        assert dual_norm_estimate(g, NormOrder(s)) <= bound * (1 + 1e-10)


def test_poincare_constant():
    assert poincare_constant() == pytest.approx(1 / jn_zeros(0, 1)[0])


def test_dual_norm_series():
    tg = SpaceTimeGrid(0, 1, 4)
    g = SpaceTimeField.from_function(GRID, tg, lambda r, th, t: t * r * np.cos(th))
    per = dual_norm(scalar(lambda r, th: r * np.cos(th)))
    expected = per * np.sqrt(np.sum(tg.weights * tg.times**2))
    assert dual_norm_series(g) == pytest.approx(expected, rel=1e-12)


# ---------------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------------

def test_trace_of_one():
    one = scalar(lambda r, th: 1.0)
    assert trace_norm(one) == pytest.approx(np.sqrt(2 * np.pi), rel=1e-12)
    assert trace_inequality_ratio(one) == pytest.approx(np.sqrt(2), rel=1e-10)


def test_trace_of_zero():
    zero = DiscField.zeros(GRID)
    assert trace_norm(zero) == 0.0 and trace_inequality_ratio(zero) == 0.0


def test_trace_ratio_bounded_for_powers():
    grid = DiscGrid(96, 2)
    ratios = [trace_inequality_ratio(scalar(lambda r, th, k=k: r**k, grid)) for k in (1, 4, 16, 64)]
    assert max(ratios) < 2.0
    assert max(ratios) / min(ratios) < 1.5
