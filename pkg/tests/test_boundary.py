from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stokeslab.boundary import (
    NORMAL,
    TANGENTIAL,
    BoundaryTrace,
    ExtensionKernel,
    MeanZeroError,
    extend_t1,
    lift_parts,
    normal_extension_term,
    smoothstep_inf,
    smoothstep_poly,
    solenoidal_lift,
    surface_div_inverse,
)
from stokeslab.disc import DiscGrid, divergence, integrate_disc, radial_derivative
from stokeslab.norms import sobolev_norm


def trace(func, n_theta=16, kind="scalar"):
    return BoundaryTrace.from_function(func, n_theta, kind)


# ---------------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------------

def test_trace_roundtrip_and_norms():
    b = trace(lambda t: 1.0 + np.cos(3 * t))
    th = 2 * np.pi * np.arange(64) / 64
    np.testing.assert_allclose(b.values(64), 1.0 + np.cos(3 * th), atol=1e-13)
    assert b.mean() == pytest.approx(1.0)
    assert not b.is_mean_zero()
    assert b.lp_norm() == pytest.approx(np.sqrt(2 * np.pi + np.pi), rel=1e-12)
    assert b.derivative().lp_norm() == pytest.approx(3 * np.sqrt(np.pi), rel=1e-12)
    back = BoundaryTrace.from_json(b.to_json())
    np.testing.assert_array_equal(back.coeffs, b.coeffs)


def test_trace_arithmetic_and_validation():
    a, b = trace(np.cos), trace(np.sin)
    np.testing.assert_allclose((2 * a - b + (-a)).coeffs, a.coeffs - b.coeffs)
    with pytest.raises(ValueError):
        BoundaryTrace(np.zeros(3), "diagonal")
    with pytest.raises(ValueError):
        BoundaryTrace(np.zeros((2, 2)))


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("kernel", [ExtensionKernel(), ExtensionKernel(smoothness=None)])
def test_kernel_moments_and_cutoff_range(kernel):
    m0, m1 = kernel.moments(1)
    assert m0 == pytest.approx(1.0, abs=1e-10)
    assert abs(m1) < 1e-10
    y = np.linspace(-0.5, 1.5, 2001)
    z = kernel.cutoff(y)
    assert np.all((0 <= z) & (z <= 1))
    assert np.all(z[y <= kernel.plateau] == 1.0)
    assert np.all(z[y >= kernel.support] == 0.0)
    assert kernel.kernel_hat(0.0) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("order", [2, 4, 8])
def test_polynomial_step_is_flat_at_both_ends(order):
    t = np.array([0.0, 1e-3, 0.5, 1 - 1e-3, 1.0])
    s = smoothstep_poly(t, order)
    assert s[0] == 0.0 and s[-1] == 1.0 and s[2] == pytest.approx(0.5)
    # near either end the step is at most t^(q+1) times the sum of its binomial weights
    bound = 1e-3 ** (order + 1) * comb(2 * order + 1, order)
    assert s[1] <= bound
    assert 1 - s[3] <= bound + 1e-15
    assert np.all(np.diff(smoothstep_poly(np.linspace(0, 1, 101), order)) >= 0)


def test_exponential_step_range():
    s = smoothstep_inf(np.linspace(-1, 2, 301))
    assert s.min() == 0.0 and s.max() == 1.0 and np.all(np.diff(s) >= 0)


def test_kernel_rejects_bad_geometry():
    with pytest.raises(ValueError):
        ExtensionKernel(plateau=1.0, support=0.5)
    with pytest.raises(ValueError):
        ExtensionKernel(smoothness=1)


# ---------------------------------------------------------------------------
# extension
# ---------------------------------------------------------------------------

def test_extension_of_zero():
    grid = DiscGrid(16, 4)
    f = extend_t1(BoundaryTrace.zeros(4), BoundaryTrace.zeros(4), grid)
    assert np.all(f.data == 0)


def test_extension_boundary_values_by_one_sided_stencil():
    grid = DiscGrid(96, 4)
    f = extend_t1(trace(np.cos, 4), BoundaryTrace.zeros(4), grid)
    np.testing.assert_allclose(f.values()[-1], np.cos(grid.theta()), atol=1e-12)
    # second-order one-sided stencil on the interpolant near r = 1
    h = 1e-4
    P = grid.interpolation_matrix(np.array([1.0, 1.0 - h, 1.0 - 2 * h]))
    prof = f.data[1] @ P.T
    slope = (3 * prof[0] - 4 * prof[1] + prof[2]) / (2 * h)
    assert abs(slope) < 1e-6
    assert np.max(np.abs(radial_derivative(f).boundary())) < 1e-6


def test_extension_reproduces_normal_derivative():
    grid = DiscGrid(96, 6)
    a = trace(lambda t: np.sin(2 * t) - 0.5, 6)
    f = extend_t1(BoundaryTrace.zeros(6), a, grid)
    np.testing.assert_allclose(radial_derivative(f).boundary(), a.coeffs, atol=1e-8)


def test_extension_estimate_bounded_for_oscillatory_traces():
    grid = DiscGrid(128, 64)
    ratios = []
    for k in (1, 2, 4, 8, 16, 32, 64):
        b = trace(lambda t, k=k: np.cos(k * t), 64)
        f = extend_t1(b, BoundaryTrace.zeros(64), grid)
        ratios.append(sobolev_norm(f, 2.0, 1) / b.w1_norm())
    # bounded uniformly; the ratio even decays since the disc norm only needs the trace in W^(1/2)
    assert max(ratios) < 3.0
    assert np.all(np.diff(ratios[1:]) < 0)


# ---------------------------------------------------------------------------
# surface divergence inverse and the lift
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 3, 10])
def test_surface_div_inverse_of_cosine(n):
    b = surface_div_inverse(trace(lambda t: np.cos(n * t), 12))
    assert b.kind == TANGENTIAL
    th = 2 * np.pi * np.arange(48) / 48
    np.testing.assert_allclose(b.values(48), np.sin(n * th) / n, atol=1e-13)


def test_surface_div_inverse_of_zero_and_mean_rejection():
    assert np.all(surface_div_inverse(BoundaryTrace.zeros(5)).coeffs == 0)
    with pytest.raises(MeanZeroError):
        surface_div_inverse(trace(lambda t: 1.0 + np.cos(t), 4))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=8, max_size=8))
def test_surface_div_inverse_multiplier_bound(c):
    coeffs = np.zeros(5, complex)
    coeffs[1:] = np.array(c[:4]) + 1j * np.array(c[4:])
    flux = BoundaryTrace(coeffs)
    b = surface_div_inverse(flux)
    # per mode |b_m|^2 (1 + m^2) = |kappa_m|^2 (1 + 1/m^2) <= 2 |kappa_m|^2
    hilbert = np.sqrt(b.lp_norm() ** 2 + b.derivative().lp_norm() ** 2)
    assert hilbert <= np.sqrt(2) * flux.lp_norm() * (1 + 1e-12) + 1e-300


def test_normal_extension_term_is_minus_b():
    b = surface_div_inverse(trace(lambda t: np.cos(2 * t) + np.sin(5 * t), 8))
    normal, tangential = normal_extension_term(b)
    assert normal.kind == NORMAL and np.all(normal.coeffs == 0)
    np.testing.assert_allclose(tangential.coeffs, -b.coeffs)
    with pytest.raises(ValueError):
        normal_extension_term(b.with_kind("scalar"))


def test_lift_of_zero():
    w = solenoidal_lift(BoundaryTrace.zeros(6), DiscGrid(32, 6))
    assert np.all(w.data == 0)


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_lift_is_divergence_free_and_matches_boundary(n):
    grid = DiscGrid(128, 16)
    flux = trace(lambda t: np.cos(n * t), 16)
    parts = lift_parts(flux, grid)
    w = parts.w
    assert integrate_disc(divergence(w)) <= 1e-6
    vals = w.values()
    normal_part = -flux.values(grid.n_angles)
    assert np.max(np.abs(vals[0, -1] - normal_part)) <= 1e-4
    assert np.max(np.abs(vals[1, -1])) <= 1e-4
    assert np.max(np.abs(parts.a_normal.coeffs)) <= 1e-8
    np.testing.assert_allclose(parts.a_tangential.coeffs, -parts.b.coeffs)
    # the field f carries b on the circle
    np.testing.assert_allclose(parts.f.data[1, :, -1], parts.b.coeffs, atol=1e-12)
