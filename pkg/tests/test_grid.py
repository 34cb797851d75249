import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from page_edges.errors import ShapeError
from page_edges.grid import build_frequency_grid, cart2pol, centered_axis

dims = st.integers(min_value=2, max_value=120)


@pytest.mark.parametrize(
    "x, y, theta, rho",
    [(0.0, 0.0, 0.0, 0.0), (1.0, 0.0, 0.0, 1.0), (0.0, 1.0, math.pi / 2, 1.0)],
)
def test_cart2pol_examples(x, y, theta, rho):
    assert cart2pol(x, y) == pytest.approx((theta, rho))


def test_grid_3x3_endpoints():
    g = build_frequency_grid(3, 3)
    np.testing.assert_array_equal(g.u[:, 0], [-0.5, 0.0, 0.5])
    np.testing.assert_array_equal(g.v[0, :], [-0.5, 0.0, 0.5])
    # u varies down rows only, v across columns only
    assert np.all(g.u == g.u[:, :1])
    assert np.all(g.v == g.v[:1, :])


def test_grid_2x2():
    g = build_frequency_grid(2, 2)
    np.testing.assert_array_equal(g.u[:, 0], [-0.5, 0.5])


def test_grid_4x4_corner_rho():
    g = build_frequency_grid(4, 4)
    assert g.rho[0, 0] == pytest.approx(math.sqrt(0.5**2 + 0.5**2), abs=1e-15)
    assert g.rho[-1, -1] == pytest.approx(0.7071067811865476, abs=1e-15)


def test_non_square_shape():
    g = build_frequency_grid(5, 9)
    assert g.u.shape == g.v.shape == g.rho.shape == g.theta.shape == (5, 9)


@pytest.mark.parametrize("h, w", [(1, 5), (5, 1), (0, 0)])
def test_too_small(h, w):
    with pytest.raises(ShapeError):
        build_frequency_grid(h, w)


@pytest.mark.parametrize("n", [2, 3, 4, 7, 99, 197, 256])
def test_axis_matches_linspace(n):
    np.testing.assert_allclose(centered_axis(n), np.linspace(-0.5, 0.5, n), rtol=0, atol=1e-15)


@given(dims, dims)
def test_grid_invariants(h, w):
    g = build_frequency_grid(h, w)
    assert g.u.min() == -0.5 and g.u.max() == 0.5
    assert g.v.min() == -0.5 and g.v.max() == 0.5
    assert np.all(g.rho >= 0)
    assert np.all(g.theta > -np.pi) and np.all(g.theta <= np.pi)
    assert g.rho.max() == pytest.approx(math.sqrt(0.5))
    corners = g.rho[[0, 0, -1, -1], [0, -1, 0, -1]]
    np.testing.assert_allclose(corners, math.sqrt(0.5), rtol=0, atol=1e-15)
    zeros = int(np.count_nonzero(g.rho == 0))
    assert zeros == (1 if h % 2 and w % 2 else 0)


@given(dims, dims)
def test_theta_antisymmetric_in_v(h, w):
    g = build_frequency_grid(h, w)
    mask = (g.u != 0) & (g.v != 0)
    mirrored, _ = cart2pol(g.u, -g.v)
    np.testing.assert_array_equal(g.theta[mask], -mirrored[mask])
    # the axis itself is exactly antisymmetric, so the mirror lives on the grid
    np.testing.assert_array_equal(g.theta[:, ::-1][mask], -g.theta[mask])


def test_deterministic():
    a, b = build_frequency_grid(17, 12), build_frequency_grid(17, 12)
    for name in ("u", "v", "theta", "rho"):
        assert getattr(a, name).tobytes() == getattr(b, name).tobytes()
