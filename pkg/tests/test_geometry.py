"""Kernel geometry: frozen values, chord relations and Laplacian data."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegalab.errors import DomainError, OnSphereError, UnsupportedConfigurationError
from omegalab.geometry import (
    SphereConfig,
    chords,
    chords_raw,
    fd_gradient,
    fd_laplacian,
    jacobians,
    laplacian_omega,
    level_sphere_value,
    minimal_chord_sum,
    omega,
    omega_angle,
    psi_from_theta,
    schwarz_theta_star,
    theta_from_psi,
)

angles = st.floats(0.0, math.pi)
radii = st.floats(0.5, 5.0)
fractions = st.floats(0.01, 0.99)


@st.composite
def interior_configs(draw):
    R = draw(radii)
    return SphereConfig(draw(st.integers(1, 4)), R, R * draw(fractions))


# frozen values --------------------------------------------------------------------

@pytest.mark.parametrize("theta, expected", [(0.0, 1 / 3), (math.pi, 3.0), (math.pi / 2, 0.6)])
def test_omega_angle_frozen_values(cfg_inside, theta, expected):
    assert omega_angle(cfg_inside, theta) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize(
    "psi, l, q",
    [
        (0.0, 1.0, 3.0),
        (math.pi / 2, math.sqrt(3), math.sqrt(3)),
        (math.pi / 3, 3 / (0.5 + math.sqrt(3.25)), 0.5 + math.sqrt(3.25)),
    ],
)
def test_chords_frozen_values(cfg_inside, psi, l, q):
    c = chords(cfg_inside, psi)
    assert (c.l, c.q) == (pytest.approx(l, rel=1e-14), pytest.approx(q, rel=1e-14))


def test_chords_third_case_rounded(cfg_inside):
    c = chords(cfg_inside, math.pi / 3)
    assert (round(c.l, 4), round(c.q, 4)) == (1.3028, 2.3028)


@pytest.mark.parametrize("psi, theta", [(0.0, 0.0), (math.pi, math.pi), (math.pi / 2, 2 * math.pi / 3)])
def test_theta_from_psi_frozen_values(cfg_inside, psi, theta):
    assert theta_from_psi(cfg_inside, psi) == pytest.approx(theta, abs=1e-14)


def test_jacobian_limits(cfg_inside):
    assert jacobians(cfg_inside, 0.0).dtheta_dpsi == pytest.approx(1.5, rel=1e-14)
    assert jacobians(cfg_inside, 0.0).domega_dpsi == 0.0
    assert jacobians(cfg_inside, math.pi / 2).dchordsum_dpsi == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("theta, star", [(0.0, math.pi), (math.pi, 0.0), (2 * math.pi / 3, 2 * math.pi / 3)])
def test_second_intersection_angle(cfg_inside, theta, star):
    assert schwarz_theta_star(cfg_inside, theta) == pytest.approx(star, abs=1e-12)


def test_laplacian_vanishes_for_planar_case():
    terms = laplacian_omega([0.3, -0.2], [1.0, 1.0])
    assert terms.laplacian == 0.0


def test_laplacian_of_cube_power_vanishes_at_centre():
    assert laplacian_omega([0.0, 0.0, 0.0], [2.0, 0.0, 0.0]).laplacian_pow_k == pytest.approx(0.0, abs=1e-15)


def test_gradient_square_frozen_value():
    assert laplacian_omega([1.0, 0.0, 0.0], [2.0, 0.0, 0.0]).grad_sq == pytest.approx(16.0, rel=1e-14)


# errors -----------------------------------------------------------------------------

def test_point_on_sphere_is_rejected():
    with pytest.raises(OnSphereError):
        SphereConfig(2, 1.0, 1.0)


@pytest.mark.parametrize("k, R, r", [(0, 1.0, 0.5), (2, -1.0, 0.5), (2, 1.0, -0.1), (2, math.inf, 0.5)])
def test_invalid_configuration(k, R, r):
    with pytest.raises(DomainError):
        SphereConfig(k, R, r)


@pytest.mark.parametrize("theta", [-0.1, 3.2])
def test_angle_outside_range(cfg_inside, theta):
    with pytest.raises(DomainError):
        omega_angle(cfg_inside, theta)


def test_chords_need_interior_point():
    with pytest.raises(UnsupportedConfigurationError):
        chords(SphereConfig(2, 1.0, 2.0), 0.5)


def test_coincident_points():
    with pytest.raises(DomainError):
        omega([1.0, 2.0], [1.0, 2.0])


def test_centre_has_unit_kernel():
    cfg = SphereConfig(3, 2.0, 0.0)
    assert cfg.upsilon == 0.0
    assert omega_angle(cfg, 1.0) == 1.0
    assert chords(cfg, 0.4).omega == 1.0


# properties ---------------------------------------------------------------------------

@given(interior_configs(), angles)
def test_power_of_point(cfg, psi):
    c = chords(cfg, psi)
    assert c.l * c.q == pytest.approx(cfg.R**2 - cfg.r**2, rel=1e-12)


@given(interior_configs(), angles)
def test_chord_ratio_is_the_kernel(cfg, psi):
    c = chords(cfg, psi)
    assert omega_angle(cfg, theta_from_psi(cfg, psi)) == pytest.approx(c.l / c.q, rel=1e-12)


@given(interior_configs(), angles)
def test_reflected_chord_swaps_segments(cfg, psi):
    a, b = chords(cfg, psi), chords(cfg, math.pi - psi)
    assert a.l == pytest.approx(b.q, rel=1e-12)


@given(interior_configs(), angles)
def test_chord_is_at_most_a_diameter(cfg, psi):
    c = chords(cfg, psi)
    assert c.l + c.q <= 2 * cfg.R * (1 + 1e-14)


@given(interior_configs(), angles)
def test_angle_maps_are_inverse(cfg, psi):
    assert psi_from_theta(cfg, theta_from_psi(cfg, psi)) == pytest.approx(psi, abs=1e-12)


@given(st.integers(1, 4), radii, st.floats(0.0, 10.0), angles)
def test_kernel_stays_in_range(k, R, frac, theta):
    if abs(frac - 1.0) < 1e-3:
        frac = 0.5
    cfg = SphereConfig(k, R, R * frac)
    lo, hi = cfg.omega_range
    w = omega_angle(cfg, theta)
    assert lo * (1 - 1e-13) <= w <= hi * (1 + 1e-13)


@given(interior_configs(), angles)
def test_angle_kernel_matches_point_kernel(cfg, theta):
    x = np.zeros(cfg.k + 1)
    x[0] = cfg.r
    # theta is measured from the far side, so y points against x at theta = 0.
    y = np.zeros(cfg.k + 1)
    y[0], y[1] = -cfg.R * math.cos(theta), cfg.R * math.sin(theta)
    assert omega(x, y) == pytest.approx(omega_angle(cfg, theta), rel=1e-12)


@given(st.floats(0.1, 1.9), st.floats(0.0, 2 * math.pi))
def test_level_sphere_value(t, phi):
    y = np.array([2.0, 0.0])
    delta = 2.0 - t
    x = np.array([t, 0.0]) + delta * np.array([math.cos(phi), math.sin(phi)])
    if np.linalg.norm(x - y) < 1e-6:
        return
    assert omega(x, y) == pytest.approx(level_sphere_value(t, delta), rel=1e-10)


def test_tangent_path_tends_to_one_and_radial_path_blows_up():
    y = np.array([0.0, 0.0, 1.0])
    assert omega(y + 1e-6 * np.array([1.0, 0.0, 0.0]), y) == pytest.approx(1.0, abs=1e-6)
    radial = [omega((1 - s) * y, y) for s in (1e-1, 1e-2, 1e-3, 1e-4)]
    assert all(b > 5 * a for a, b in zip(radial, radial[1:]))
    assert radial[-1] > 1e4


@pytest.mark.parametrize("psi0", [0.3, 0.8, 1.2])
def test_minimal_chord_sum(psi0):
    assert minimal_chord_sum(1.5, psi0, 60, 60) == pytest.approx(3.0 * math.cos(psi0), rel=1e-9)


def test_chord_estimates_on_far_arc():
    rho = 1.0
    for eta in np.linspace(0.05, 0.95, 19):
        for psi in np.linspace(2 * math.pi / 3, math.pi, 31):
            c = chords_raw(rho, float(eta), float(psi))
            assert c.l >= rho * (1 - 1e-12)
            assert c.q <= 2 * (rho - eta) * (1 + 1e-12)


@st.composite
def interior_pairs(draw):
    k = draw(st.integers(1, 3))
    y = np.array(draw(st.lists(st.floats(-1, 1), min_size=k + 1, max_size=k + 1)))
    if np.linalg.norm(y) < 0.2:
        y = np.ones(k + 1)
    y = 2.0 * y / np.linalg.norm(y)
    x = np.array(draw(st.lists(st.floats(-0.8, 0.8), min_size=k + 1, max_size=k + 1)))
    return x, y


@given(interior_pairs())
def test_laplacian_matches_finite_differences(pair):
    x, y = pair
    terms = laplacian_omega(x, y)
    fd = fd_laplacian(lambda p: omega(p, y), x, h=1e-4)
    assert fd == pytest.approx(terms.laplacian, abs=1e-5 * max(1.0, abs(terms.laplacian)))
    g = fd_gradient(lambda p: omega(p, y), x)
    assert float(g @ g) == pytest.approx(terms.grad_sq, rel=1e-7)


def test_laplacian_difference_error_is_second_order():
    x, y = np.array([0.3, -0.2, 0.1]), np.array([0.0, 0.0, 2.0])
    exact = laplacian_omega(x, y).laplacian
    e1 = abs(fd_laplacian(lambda p: omega(p, y), x, h=2e-2) - exact)
    e2 = abs(fd_laplacian(lambda p: omega(p, y), x, h=1e-2) - exact)
    assert 3.5 < e1 / e2 < 4.5
