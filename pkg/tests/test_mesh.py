"""Grid construction, geometry sampling, and variable conversions."""

import math

import numpy as np
import pytest

from bloodflow1d import (
    ConfigurationError,
    StateError,
    build_grid,
    conserved_from_primitive,
    primitive_from_conserved,
    sample_geometry,
)


def test_build_grid_spacing_examples():
    g = build_grid(-0.04, 0.04, 200)
    assert math.isclose(g.dx, 4e-4, rel_tol=1e-15)
    g = build_grid(0.0, 0.16, 200)
    assert math.isclose(g.dx, 8e-4, rel_tol=1e-15)
    assert g.n_total == 206


def test_build_grid_rejects_bad_input():
    with pytest.raises(ConfigurationError):
        build_grid(0.0, 1.0, 1)  # fewer cells than 2 * ghost_width
    with pytest.raises(ConfigurationError):
        build_grid(1.0, 1.0, 100)
    with pytest.raises(ConfigurationError):
        build_grid(2.0, 1.0, 100)


def test_nodes_are_cell_centers_and_reproducible():
    g = build_grid(0.0, 1.0, 10)
    x = g.x_interior()
    assert math.isclose(x[0], 0.05, rel_tol=1e-15)
    assert math.isclose(x[-1], 0.95, rel_tol=1e-15)
    np.testing.assert_array_equal(x, g.x_interior())  # bit-for-bit
    np.testing.assert_array_equal(g.x_padded()[g.ghost_width:-g.ghost_width], x)


def test_sample_geometry_constant_radius():
    # R0 = 4e-3 m: A0 = pi R0^2 ~ 5.0265e-5 m^2 everywhere
    g = build_grid(0.0, 0.16, 50)
    geom = sample_geometry(lambda x: np.full_like(x, 4e-3), g, 1e8, 1060.0)
    np.testing.assert_allclose(geom.A0, math.pi * 1.6e-5, rtol=1e-15)
    assert math.isclose(geom.A0[0], 5.0265e-5, rel_tol=1e-4)


def test_sample_geometry_powers_consistent():
    g = build_grid(0.0, 1.0, 40)
    geom = sample_geometry(lambda x: 1.0 + 0.3 * np.sin(2 * np.pi * x), g, 1.0, 1.0)
    np.testing.assert_array_equal(geom.sqrt_a0, np.sqrt(geom.A0))
    np.testing.assert_array_equal(geom.a0_32, geom.A0 * geom.sqrt_a0)
    # round-off consistency of the stored powers
    np.testing.assert_allclose(geom.sqrt_a0 ** 2, geom.A0, rtol=1e-15)


def test_sample_geometry_ghost_extension_is_constant():
    g = build_grid(0.0, 1.0, 20)
    geom = sample_geometry(lambda x: 1.0 + x, g, 1.0, 1.0)
    first, last = geom.A0[g.ghost_width], geom.A0[g.ghost_width + 19]
    np.testing.assert_array_equal(geom.A0[:3], first)
    np.testing.assert_array_equal(geom.A0[-3:], last)


def test_sample_geometry_rejects_nonpositive_radius():
    g = build_grid(0.0, 1.0, 20)
    with pytest.raises(ConfigurationError):
        sample_geometry(lambda x: x - 0.5, g, 1.0, 1.0)


def test_primitive_from_conserved_rest_states():
    r, u = primitive_from_conserved(math.pi * (4e-3) ** 2, 0.0)
    assert math.isclose(float(r), 4e-3, rel_tol=1e-14)
    assert float(u) == 0.0
    r, u = primitive_from_conserved(math.pi * (5e-3) ** 2, 0.0)
    assert math.isclose(float(r), 5e-3, rel_tol=1e-14)


def test_primitive_velocity_example():
    # Q = 3.45e-7 m^3/s through A = 5.0265e-5 m^2 -> u ~ 6.864e-3 m/s
    _, u = primitive_from_conserved(5.0265e-5, 3.45e-7)
    assert math.isclose(float(u), 3.45e-7 / 5.0265e-5, rel_tol=1e-15)
    assert math.isclose(float(u), 6.864e-3, rel_tol=1e-3)


def test_primitive_rejects_nonpositive_area():
    with pytest.raises(StateError):
        primitive_from_conserved(0.0, 1.0)
    with pytest.raises(StateError):
        primitive_from_conserved(np.array([1.0, -2.0]), np.zeros(2))


def test_round_trip_conversion():
    rng = np.random.default_rng(5)
    A = 10.0 ** rng.uniform(-6, 2, size=100)
    Q = rng.normal(size=100)
    r, u = primitive_from_conserved(A, Q)
    A2, Q2 = conserved_from_primitive(r, u)
    np.testing.assert_allclose(A2, A, rtol=1e-14)
    np.testing.assert_allclose(Q2, Q, rtol=1e-13, atol=1e-16)
