"""Leading-order terms for large negative and positive eigenvalues."""

import math

import numpy as np
import pytest

from omegalab.asymptotics import (
    F_ratio_neg,
    improvement,
    laplace_assembled,
    leading_F_neg,
    leading_phi_neg,
    leading_phi_pos,
    phi_neg_alternative,
    ratio_scan,
    stationary_phase_k1,
)
from omegalab.errors import DomainError
from omegalab.hyperbolic import HyperbolicModel, eigenparam, eta_from_r, phi_lambda

K1, K2, K3 = HyperbolicModel(1), HyperbolicModel(2), HyperbolicModel(3)


def test_k2_oscillatory_leading_term_frozen_value():
    value = leading_phi_pos(K2, 100.0, 1.0).value
    assert value == pytest.approx(math.sin(10) / (10 * math.sinh(1)), rel=1e-14)
    assert round(value, 4) == -0.0463


def test_k3_decay_class():
    phi = phi_lambda(K3, eigenparam(K3, lam=400.0), 1.0)
    assert abs(phi) * 20 < 0.1
    assert leading_phi_pos(K3, 400.0, 1.0).value == 0.0


@pytest.mark.parametrize("model, s, eta", [(K1, 5.0, 0.3), (K2, 12.0, 0.6), (HyperbolicModel(3, 2.0), 7.5, 1.1)])
def test_laplace_constants_reassemble_leading_term(model, s, eta):
    assert laplace_assembled(model, s, eta) == pytest.approx(leading_F_neg(model, s, eta), rel=1e-12)


@pytest.mark.parametrize("rho, r, lam", [(1.0, 1.0, 100.0), (2.0, 0.7, 37.0), (0.5, 1.3, 900.0)])
def test_stationary_phase_constants(rho, r, lam):
    m = HyperbolicModel(1, rho)
    b = rho * math.sqrt(lam)
    assert stationary_phase_k1(m, b, r) == pytest.approx(leading_phi_pos(m, lam, r).value, rel=1e-12)


def test_k2_leading_term_is_the_growing_exponential():
    for r, s in ((1.0, 10.0), (0.4, 25.0)):
        lam = 1 - s * s
        assert leading_phi_neg(K2, lam, r) == pytest.approx(math.exp(r * s) / (2 * s * math.sinh(r)), rel=1e-12)


def test_ratio_within_bound_at_s10():
    assert abs(F_ratio_neg(K2, 10.0, math.tanh(0.5)) - 1) < 0.15


@pytest.mark.parametrize("model", [K1, K3])
def test_ratio_error_is_first_order(model):
    eta = math.tanh(0.5)
    s = np.array([10.0, 20.0, 40.0, 80.0])
    dev = np.array([abs(F_ratio_neg(model, float(x), eta) - 1) for x in s])
    slope = np.polyfit(np.log(s), np.log(dev), 1)[0]
    assert slope == pytest.approx(-1.0, abs=0.3)
    assert all(0.35 < b / a < 0.65 for a, b in zip(dev, dev[1:]))


def test_k2_oscillatory_error_is_first_order():
    # lambda (phi - leading) tends to -r cos(r sqrt(lambda)) / (2 sinh r).
    r = 1.0
    gaps = []
    for lam in (400.0, 1600.0, 6400.0):
        phi = phi_lambda(K2, eigenparam(K2, lam=lam), r)
        scaled = lam * (phi - leading_phi_pos(K2, lam, r).value)
        gaps.append(abs(scaled + r * math.cos(r * math.sqrt(lam)) / (2 * math.sinh(r))))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[-1] < 0.02


def test_k4_leading_term_sign():
    m = HyperbolicModel(4)
    scaled = []
    for lam in (400.0, 1600.0, 6400.0):
        phi = phi_lambda(m, eigenparam(m, lam=lam), 1.0)
        scaled.append(abs(phi - leading_phi_pos(m, lam, 1.0).value) * lam)
    assert scaled[0] > scaled[-1]
    assert scaled[-1] < 0.05


def test_alternative_formula_is_off_by_about_two():
    rows = ratio_scan(K2, "lambda_neg", [-25.0, -100.0, -400.0], 1.0)
    factors = [row.extra["alternative_over_phi"] for row in rows]
    assert all(1.8 < f < 2.0 for f in factors)
    assert factors[0] < factors[1] < factors[2]


def test_negative_scan_ratios_approach_one():
    rows = ratio_scan(K2, "lambda_neg", [-25.0, -100.0, -400.0], 1.0)
    assert improvement([abs(row.ratio - 1) for row in rows])[2]


def test_positive_scan_k1_bounded():
    rows = ratio_scan(K1, "lambda_pos", [100.0, 400.0, 1600.0], 1.0)
    assert max(row.scaled_residual for row in rows) < 10


def test_positive_scan_k3_envelope_decays():
    rows = ratio_scan(K3, "lambda_pos", [100.0, 400.0, 1600.0], 1.0)
    values = [row.scaled_residual for row in rows]
    assert values[0] > values[1] > values[2]


def test_empty_grid():
    assert ratio_scan(K2, "lambda_neg", [], 1.0) == []


def test_bad_row_is_reported_not_raised():
    rows = ratio_scan(K2, "lambda_neg", [-25.0, 3.0], 1.0)
    assert rows[0].error is None
    assert rows[1].error and rows[1].ratio is None


def test_improvement_ignores_roundoff():
    assert improvement([2e-9, 2.5e-15, 3.9e-15])[2]
    assert not improvement([0.1, 0.2])[2]


@pytest.mark.parametrize("call", [
    lambda: leading_F_neg(K2, -1.0, 0.5),
    lambda: leading_F_neg(K2, 1.0, 1.0),
    lambda: leading_phi_pos(K2, 0.5, 1.0),
    lambda: phi_neg_alternative(K2, 1.0, 1.0),
    lambda: stationary_phase_k1(K2, 1.0, 1.0),
    lambda: ratio_scan(K2, "sideways", [1.0], 1.0),
])
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


def test_eta_matches_radius():
    assert eta_from_r(K2, 1.0) == pytest.approx(math.tanh(0.5))
