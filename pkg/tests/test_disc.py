import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stokeslab.disc import (
    SCALAR,
    VECTOR,
    DiscField,
    DiscGrid,
    SpaceTimeField,
    SpaceTimeGrid,
    divergence,
    gradient,
    gradient_magnitude,
    hessian_magnitude,
    inner,
    integral,
    integrate_disc,
    laplacian,
    lebesgue_norm,
    load_field,
    parseval_norm_sq,
    perp_gradient,
    save_field,
    vorticity,
)

GRID = DiscGrid(24, 8)


def scalar(func, grid=GRID):
    return DiscField.from_function(grid, lambda r, th: func(r, th) + 0 * r * th)


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n_r", [2, 5, 16, 64, 200])
def test_radial_nodes_increase_to_the_boundary(n_r):
    grid = DiscGrid(n_r, 4)
    assert np.all(np.diff(grid.r) > 0)
    assert grid.r[-1] == 1.0
    assert grid.r[0] > 0.0
    assert np.all(grid.radial_weights[:-1] > 0)
    assert grid.radial_weights[-1] == 0.0


@pytest.mark.parametrize("n_r", [2, 8, 64, 256])
def test_area_of_unit_disc(n_r):
    grid = DiscGrid(n_r, 2)
    one = scalar(lambda r, th: 1.0, grid)
    assert integral(one) == pytest.approx(np.pi, rel=1e-10)


@pytest.mark.parametrize("bad", [dict(n_r=1), dict(n_r=3.5), dict(n_theta=-1)])
def test_grid_rejects_bad_sizes(bad):
    with pytest.raises(ValueError):
        DiscGrid(**{"n_r": 8, "n_theta": 2, **bad})


def test_time_grid_step_and_weights():
    tg = SpaceTimeGrid(-1.0, 0.5, 6)
    assert tg.dt == pytest.approx(0.25)
    assert tg.times[0] == -1.0 and tg.times[-1] == 0.5
    assert tg.weights.sum() == pytest.approx(1.5)
    with pytest.raises(ValueError):
        SpaceTimeGrid(1.0, 1.0, 4)
    with pytest.raises(ValueError):
        SpaceTimeGrid(0.0, 1.0, 0)


@pytest.mark.parametrize("n_r", [4, 12, 40])
def test_differentiation_matrix_is_exact_for_polynomials(n_r):
    grid = DiscGrid(n_r, 0)
    r = grid.r
    for k in range(min(n_r, 8)):
        np.testing.assert_allclose(grid.D @ r**k, k * r ** max(k - 1, 0) * (k > 0), atol=1e-9 * n_r**2)


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

def test_sampling_roundtrip_is_real():
    f = scalar(lambda r, th: r**3 * np.cos(3 * th) - r * np.sin(th) + r**2)
    vals = f.values()
    r = GRID.r[:, None]
    th = GRID.theta()[None, :]
    np.testing.assert_allclose(vals, r**3 * np.cos(3 * th) - r * np.sin(th) + r**2, atol=1e-13)
    # conjugate symmetry is implicit in one-sided storage: the mean mode is real
    assert np.all(np.abs(f.data[0].imag) < 1e-15)


def test_field_data_is_read_only():
    f = DiscField.zeros(GRID)
    with pytest.raises(ValueError):
        f.data[0, 0] = 1.0


def test_field_shape_is_checked():
    with pytest.raises(ValueError):
        DiscField(GRID, np.zeros((3, 3)))
    with pytest.raises(ValueError):
        DiscField(GRID, np.zeros(GRID.shape(SCALAR)), "tensor")


def test_cartesian_vector_components():
    e1 = DiscField.from_cartesian(GRID, lambda x, y: (1.0 + 0 * x, 0 * y))
    th = GRID.theta()[None, :]
    vals = e1.values()
    np.testing.assert_allclose(vals[0], np.cos(th) + 0 * GRID.r[:, None], atol=1e-13)
    np.testing.assert_allclose(vals[1], -np.sin(th) + 0 * GRID.r[:, None], atol=1e-13)


def test_arithmetic_and_incompatible_grids():
    f = scalar(lambda r, th: r * np.cos(th))
    g = scalar(lambda r, th: r**2)
    h = 2.0 * f - g / 2.0 + (-f)
    np.testing.assert_allclose(h.data, f.data - 0.5 * g.data)
    with pytest.raises(ValueError):
        f + DiscField.zeros(DiscGrid(10, 8))
    with pytest.raises(ValueError):
        f + DiscField.zeros(GRID, VECTOR)


def test_json_roundtrip(tmp_path):
    v = DiscField.from_cartesian(GRID, lambda x, y: (x * y, 1 - x**2))
    assert np.array_equal(DiscField.from_json(v.to_json()).data, v.data)
    path = tmp_path / "v.json"
    save_field(v, path)
    loaded = load_field(path)
    assert loaded.rank == VECTOR and loaded.grid == GRID
    assert np.array_equal(loaded.data, v.data)
    d = json.loads(path.read_text())
    assert d["type"] == "DiscField" and d["grid"] == {"n_r": 24, "n_theta": 8}


def test_space_time_field_roundtrip_and_slices(tmp_path):
    tg = SpaceTimeGrid(0.0, 1.0, 4)
    u = SpaceTimeField.from_function(GRID, tg, lambda r, th, t: t * r * np.sin(th))
    assert len(u) == 5
    s = u[2]
    assert isinstance(s, DiscField)
    np.testing.assert_allclose(s.data, scalar(lambda r, th: 0.5 * r * np.sin(th)).data, atol=1e-14)
    path = tmp_path / "u.json"
    save_field(u, path)
    back = load_field(path)
    assert isinstance(back, SpaceTimeField) and back.time == tg
    assert np.array_equal(back.data, u.data)
    head = u.restrict(2)
    assert head.time.n_t == 2 and head.time.t_end == pytest.approx(0.5)
    np.testing.assert_array_equal(head[2].data, u[2].data)


def test_load_field_rejects_unknown_types(tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps({"type": "Nope"}))
    with pytest.raises(ValueError):
        load_field(path)


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

def test_gradient_of_x_is_unit_vector():
    grad = gradient(scalar(lambda r, th: r * np.cos(th)))
    e1 = DiscField.from_cartesian(GRID, lambda x, y: (1.0 + 0 * x, 0 * y))
    np.testing.assert_allclose(grad.data, e1.data, atol=1e-11)


def test_gradient_of_zero():
    assert np.all(gradient(DiscField.zeros(GRID)).data == 0)


def test_gradient_of_r_squared_against_finite_differences():
    grad = gradient(scalar(lambda r, th: r**2)).values()
    r = GRID.r
    h = 1e-4
    fd = ((r + h) ** 2 - (r - h) ** 2) / (2 * h)
    np.testing.assert_allclose(grad[0], np.repeat(fd[:, None], GRID.n_angles, 1), atol=1e-8)
    np.testing.assert_allclose(grad[1], 0.0, atol=1e-12)


def test_divergence_of_position_vector():
    x = DiscField.from_function(GRID, lambda r, th: (r + 0 * th, 0 * r * th), VECTOR)
    np.testing.assert_allclose(divergence(x).values(), 2.0, atol=1e-11)


@pytest.mark.parametrize("n", [1, 3, 6])
def test_gradient_of_harmonic_is_divergence_free(n):
    h = scalar(lambda r, th: r**n * np.sin(n * th))
    assert integrate_disc(divergence(gradient(h))) < 1e-9
    assert integrate_disc(laplacian(h)) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=6, max_size=6))
def test_divergence_of_random_polynomial_field(c):
    a, b, cc, d, e, f = c
    v = DiscField.from_cartesian(GRID, lambda x, y: (a * x**2 + b * y + e * x * y**2, cc * x * y + d + f * y**3))
    exact = DiscField.from_function(
        GRID, lambda r, th: (2 * a + cc) * r * np.cos(th) + (e + 3 * f) * (r * np.sin(th)) ** 2 + 0 * r)
    assert integrate_disc(divergence(v) - exact) <= 1e-8 * (1 + integrate_disc(exact))


def test_vorticity_and_perp_gradient():
    stream = scalar(lambda r, th: (1 - r**2) ** 2 * r**2 * np.cos(2 * th))
    u = perp_gradient(stream)
    assert integrate_disc(divergence(u)) < 1e-10
    # curl of the perp gradient is minus the Laplacian
    assert integrate_disc(vorticity(u) + laplacian(stream)) < 1e-9


def test_vector_laplacian_matches_componentwise_cartesian():
    v = DiscField.from_cartesian(GRID, lambda x, y: (x**3 * y, x * y**2 + y**4))
    ref = DiscField.from_cartesian(GRID, lambda x, y: (6 * x * y, 2 * x + 12 * y**2))
    assert integrate_disc(laplacian(v) - ref) < 1e-9


def test_gradient_and_hessian_magnitudes():
    # f = x^2 y: |grad f|^2 = 4x^2y^2 + x^4, |hess|^2 = 4y^2 + 8x^2
    f = scalar(lambda r, th: r**3 * np.cos(th) ** 2 * np.sin(th))
    r = GRID.r[:, None]
    th = GRID.theta()[None, :]
    x, y = r * np.cos(th), r * np.sin(th)
    np.testing.assert_allclose(gradient_magnitude(f), np.sqrt(4 * x**2 * y**2 + x**4), atol=1e-10)
    np.testing.assert_allclose(hessian_magnitude(f), np.sqrt(4 * y**2 + 8 * x**2), atol=1e-9)


def test_vector_hessian_magnitude():
    # v = (x y, x^2): only nonzero second derivatives d_xy v1 = 1, d_xx v2 = 2
    v = DiscField.from_cartesian(GRID, lambda x, y: (x * y, x**2))
    np.testing.assert_allclose(hessian_magnitude(v), np.sqrt(2 * 1 + 4), atol=1e-9)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("s", [1.5, 2.0, 3.0])
def test_integrate_constant(s):
    assert integrate_disc(scalar(lambda r, th: 1.0), s) == pytest.approx(np.pi ** (1 / s), rel=1e-10)


def test_integrate_x():
    assert integrate_disc(scalar(lambda r, th: r * np.cos(th))) == pytest.approx(np.sqrt(np.pi / 4), rel=1e-10)


@pytest.mark.parametrize("s", [1.5, 2.0, 4.0])
def test_integrate_zero(s):
    assert integrate_disc(DiscField.zeros(GRID), s) == 0.0


def test_parseval_matches_pointwise_quadrature():
    f = scalar(lambda r, th: r**2 * np.cos(2 * th) + r**5 * np.sin(3 * th) - 0.3)
    assert parseval_norm_sq(f) == pytest.approx(integrate_disc(f) ** 2, rel=1e-12)
    g = scalar(lambda r, th: r * np.sin(th) + r**2)
    pointwise = np.sum(f.values() * g.values(), axis=1) * 2 * np.pi / GRID.n_angles
    assert inner(f, g) == pytest.approx(float(GRID.area_weights @ pointwise), rel=1e-12)


def test_lebesgue_norm_of_samples():
    f = scalar(lambda r, th: r)
    # (2 pi int r^3 r dr)^(1/3) = (2 pi / 5)^(1/3)
    assert lebesgue_norm(f.magnitude(), GRID, 3.0) == pytest.approx((2 * np.pi / 5) ** (1 / 3), rel=1e-10)
