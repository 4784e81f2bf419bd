"""Radial eigenfunctions on the ball model and their checks."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegalab.errors import DomainError, ResolutionError
from omegalab.hyperbolic import (
    HyperbolicModel,
    eigen_residual,
    eigenparam,
    epd_residual,
    eta_from_r,
    hyperbolic_laplacian_fd,
    limit_class,
    ode_residual,
    omega_power_field,
    phi_lambda,
    phi_lambda_with_error,
    r_from_eta,
    radialize_euclidean,
    zeros_scan,
)

K2 = HyperbolicModel(2)


# coordinate maps and the eigen-triple ------------------------------------------------

def test_radius_maps_frozen_values():
    assert eta_from_r(HyperbolicModel(2, 1.0), 0.0) == 0.0
    assert r_from_eta(HyperbolicModel(2, 1.0), 0.5) == pytest.approx(math.log(3), rel=1e-15)
    assert eta_from_r(HyperbolicModel(2, 2.0), 2.0) == pytest.approx(2 * math.tanh(0.5), rel=1e-15)


@given(st.floats(0.2, 5.0), st.floats(0.0, 12.0))
def test_radius_maps_are_inverse(rho, x):
    # Recovering r from eta amplifies rounding by about e^(r/rho), so r/rho is kept moderate.
    m = HyperbolicModel(1, rho)
    r = x * rho
    assert r_from_eta(m, eta_from_r(m, r)) == pytest.approx(r, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("kwargs, lam", [({"alpha": 2}, 0.0), ({"alpha": 1}, 1.0)])
def test_eigenvalue_from_exponent(kwargs, lam):
    assert eigenparam(K2, **kwargs).lam == pytest.approx(lam, abs=1e-15)


def test_exponent_from_eigenvalue():
    p = eigenparam(K2, lam=2)
    assert p.b == 1 and p.alpha == 1 + 1j


def test_eigenparam_needs_exactly_one_input():
    with pytest.raises(DomainError):
        eigenparam(K2, lam=1, b=2)
    with pytest.raises(DomainError):
        eigenparam(K2)


@given(st.integers(1, 4), st.floats(0.3, 3.0),
       st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False))
def test_eigen_triple_invariants(k, rho, lam):
    m = HyperbolicModel(k, rho)
    p = eigenparam(m, lam=lam)
    assert p.lam * rho**2 == pytest.approx(p.alpha * k - p.alpha**2, abs=1e-9 * max(1, abs(lam) * rho**2))
    assert p.b == pytest.approx(-1j * p.s, abs=1e-15)
    assert p.b.real >= 0 or p.s.real >= 0


@given(st.integers(1, 4), st.floats(-30, 30))
def test_real_eigenvalues_lie_on_the_cross(k, lam):
    p = eigenparam(HyperbolicModel(k), lam=lam)
    on_cross = abs(p.alpha.imag) < 1e-12 or abs(p.alpha.real - k / 2) < 1e-12
    assert on_cross


# eigenfunction values ------------------------------------------------------------------

def test_constant_eigenfunction():
    assert phi_lambda(HyperbolicModel(3, 1.5), eigenparam(HyperbolicModel(3, 1.5), lam=0), 3.0) == 1.0


def test_explicit_value():
    value = phi_lambda(K2, eigenparam(K2, b=1), 1.0, "explicit_k2")
    assert value == pytest.approx(math.sin(1) / math.sinh(1), rel=1e-15)
    assert round(value, 5) == 0.71602


def test_power_form_matches_explicit():
    p = eigenparam(K2, lam=2)
    assert phi_lambda(K2, p, 1.0, "power") == pytest.approx(phi_lambda(K2, p, 1.0, "explicit_k2"), abs=1e-8)


@pytest.mark.parametrize("rep", ["power", "cosine", "half_range"])
def test_normalisation(rep):
    for k in (1, 2, 3):
        m = HyperbolicModel(k)
        p = eigenparam(m, lam=k * k / 4 + 2)
        assert phi_lambda(m, p, 0.0, rep) == 1.0
        assert phi_lambda(m, p, 1e-7, rep) == pytest.approx(1.0, abs=1e-10)


def test_representation_domain_errors():
    with pytest.raises(DomainError):
        phi_lambda(HyperbolicModel(1), eigenparam(HyperbolicModel(1), lam=2), 1.0, "explicit_k2")
    with pytest.raises(DomainError):
        phi_lambda(K2, eigenparam(K2, lam=0.5), 1.0, "cosine")
    with pytest.raises(DomainError):
        phi_lambda(K2, eigenparam(K2, lam=2), 1.0, "spline")
    with pytest.raises(DomainError):
        phi_lambda(K2, eigenparam(K2, lam=2), -1.0)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("lam_offset", [2.0, 5.0, 10.0])
@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_integral_forms_agree(k, lam_offset, r):
    m = HyperbolicModel(k)
    p = eigenparam(m, lam=lam_offset)
    if p.lam.real <= m.threshold:
        pytest.skip("below the oscillatory range")
    vals, errs = zip(*(phi_lambda_with_error(m, p, r, rep) for rep in ("power", "cosine", "half_range")))
    spread = max(abs(a - b) for a in vals for b in vals)
    assert spread <= max(10 * sum(errs), 1e-12)


@pytest.mark.parametrize("b", [0.5, 1.0, 2.0])
def test_power_form_matches_sine_formula(b):
    p = eigenparam(K2, b=b)
    for r in (0.5, 1.0, 2.0):
        assert phi_lambda(K2, p, r) == pytest.approx(math.sin(b * r) / (b * math.sinh(r)), abs=1e-8)


@given(st.integers(1, 3), st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
       st.floats(0.1, 3.0))
def test_reflected_exponent_gives_same_eigenfunction(k, alpha, r):
    m = HyperbolicModel(k)
    a = phi_lambda(m, eigenparam(m, alpha=alpha), r)
    b = phi_lambda(m, eigenparam(m, alpha=k - alpha), r)
    assert abs(complex(a) - complex(b)) <= 1e-9 * max(1.0, abs(a))


@given(st.integers(1, 3), st.floats(0.0, 2.0), st.floats(0.1, 8.0))
def test_real_exponent_eigenfunctions_are_positive(k, s, r):
    m = HyperbolicModel(k)
    assert phi_lambda(m, eigenparam(m, s=s), r) > 0


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("fraction", [0.3, 0.5, 0.7])
def test_interior_exponents_decay(k, fraction):
    m = HyperbolicModel(k)
    assert abs(phi_lambda(m, eigenparam(m, alpha=fraction * k), 20.0)) < 0.05


# residuals ------------------------------------------------------------------------------

def test_ode_residual_oscillatory():
    assert ode_residual(K2, eigenparam(K2, lam=2), 1.0) < 1e-4


def test_ode_residual_constant():
    m = HyperbolicModel(3)
    assert ode_residual(m, eigenparam(m, lam=0), 2.0) == 0.0


def test_ode_residual_growing():
    m = HyperbolicModel(1)
    p = eigenparam(m, lam=-1)
    assert ode_residual(m, p, 1.5) < 1e-4 * abs(phi_lambda(m, p, 1.5))


def test_ode_residual_rejects_small_radius():
    with pytest.raises(DomainError):
        ode_residual(K2, eigenparam(K2, lam=2), 1e-4)


def test_eigen_residual_frozen_point():
    assert eigen_residual(K2, 1 + 1j, [0.0, 0.0, 1.0], [0.2, 0.1, 0.3]) < 1e-4


def test_constant_field_has_zero_laplacian():
    field = omega_power_field(K2, 0.0, [0.0, 0.0, 1.0])
    assert abs(hyperbolic_laplacian_fd(K2, field, [0.2, 0.1, 0.3])) < 1e-6


def test_boundary_point_is_required():
    with pytest.raises(DomainError):
        omega_power_field(K2, 1.0, [0.0, 0.0, 0.5])


def test_stencil_must_stay_inside():
    with pytest.raises(DomainError):
        eigen_residual(K2, 1.0, [0.0, 0.0, 1.0], [0.0, 0.0, 0.9999])


@given(st.integers(1, 3), st.floats(1.0, 2.0), st.lists(st.floats(-0.5, 0.5), min_size=4, max_size=4),
       st.sampled_from([1 + 1j, 2.0, 0.3 - 0.7j]))
def test_kernel_powers_are_eigenfunctions(k, rho, coords, alpha):
    m = HyperbolicModel(k, rho)
    u = np.zeros(k + 1)
    u[-1] = rho
    point = rho * np.array(coords[: k + 1])
    assert eigen_residual(m, alpha, u, point) < 1e-4 * max(1.0, abs(omega_power_field(m, alpha, u)(point)))


# radialization ----------------------------------------------------------------------------

def test_linear_field_mean_is_centre_value():
    f = lambda p: 2 * p[..., 0] - p[..., 1] + 0.5
    assert radialize_euclidean(f, [0.3, -0.1, 0.2], 0.7) == pytest.approx(0.5 + 0.6 + 0.1, rel=1e-12)


def test_quadratic_field_mean_and_darboux_residual():
    f = lambda p: np.sum(p**2, axis=-1)
    assert radialize_euclidean(f, [0.0, 0.0, 0.0], 1.0) == pytest.approx(1.0, rel=1e-12)
    assert epd_residual(f, np.zeros(3), 1.0) < 1e-6


def test_newtonian_mean_value():
    pole = np.array([2.0, 0.0, 0.0])
    f = lambda p: 1 / np.linalg.norm(p - pole, axis=-1)
    x = np.array([0.1, 0.2, 0.0])
    assert radialize_euclidean(f, x, 0.5) == pytest.approx(float(f(x)), rel=1e-10)


def test_darboux_residual_is_second_order():
    f = lambda p: np.exp(p[..., 0]) * np.cos(p[..., 1])
    x = np.array([0.1, 0.2])
    ratio = epd_residual(f, x, 0.5, h=2e-3) / epd_residual(f, x, 0.5, h=1e-3)
    assert 3.0 < ratio < 5.0


# zeros and limits ---------------------------------------------------------------------------

def test_zeros_of_explicit_eigenfunction():
    scan = zeros_scan(K2, 2.0, 10.0, math.pi / 32)
    assert scan.zeros == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi], abs=1e-8)


def test_no_zeros_at_threshold():
    assert zeros_scan(K2, 1.0, 10.0, 0.1).zeros == []


def test_zero_spacing_within_bounds():
    scan = zeros_scan(HyperbolicModel(1), 5.0, 20.0, 0.08)
    assert len(scan.zeros) >= 6
    assert scan.spacings_ok


def test_coarse_scan_is_rejected():
    with pytest.raises(ResolutionError):
        zeros_scan(K2, 2.0, 10.0, 1.0)


@pytest.mark.parametrize("lam, label", [(-1.0, "Infinity"), (0.0, "One"), (0.5, "Zero")])
def test_limit_class(lam, label):
    assert limit_class(lam) == label


def test_limit_values_at_large_radius():
    assert phi_lambda(K2, eigenparam(K2, lam=-1), 20.0) > 100
    assert phi_lambda(K2, eigenparam(K2, lam=0), 20.0) == pytest.approx(1.0, abs=1e-8)
    assert abs(phi_lambda(K2, eigenparam(K2, lam=0.5), 20.0)) < 0.05
