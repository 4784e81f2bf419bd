"""Leading-order behaviour of F and phi_lambda for large |lambda|.

Below the spectrum (lambda -> -infinity) the exponent is alpha = k/2 + s with
real s -> infinity, and Laplace's method at the minimum of ln(omega) gives the
leading term. Above it (lambda -> +infinity) alpha = k/2 + i b, and the
oscillatory integral is handled by stationary phase (k = 1), by the exact
solution (k = 2) or by integration by parts (k = 4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, OmegaLabError
from .geometry import SphereConfig
from .hyperbolic import HyperbolicModel, eigenparam, eta_from_r, phi_lambda
from .quadrature import DEFAULT_QUAD, QuadratureSpec
from .sphere_integrals import F_alpha, sigma


@dataclass(frozen=True)
class AsymptoticTerm:
    value: float
    regime: str
    k: int
    order_note: str


def _check_eta(model: HyperbolicModel, eta: float) -> None:
    if not (0 < eta < model.rho):
        raise DomainError("eta must lie in (0, rho)")


def leading_F_neg(model: HyperbolicModel, s: float, eta: float) -> float:
    """Laplace-method leading term of F(k/2 + s) on S^k(rho) at radius eta."""
    if s <= 0:
        raise DomainError("s must be positive")
    _check_eta(model, eta)
    k, rho = model.k, model.rho
    base = math.pi * rho * (rho * rho - eta * eta) / (eta * s)
    return base ** (k / 2) * ((rho + eta) / (rho - eta)) ** s


@dataclass(frozen=True)
class LaplaceConstants:
    """Local data of ln(omega) and the amplitude at the minimum theta = 0."""

    P: float
    mu: float
    Q: float
    nu: float


def laplace_constants(model: HyperbolicModel, eta: float) -> LaplaceConstants:
    _check_eta(model, eta)
    rho, k = model.rho, model.k
    return LaplaceConstants(
        P=rho * eta / (rho + eta) ** 2,
        mu=2.0,
        Q=((rho - eta) / (rho + eta)) ** (k / 2),
        nu=float(k),
    )


def laplace_assembled(model: HyperbolicModel, s: float, eta: float) -> float:
    """Laplace's formula (Q/mu) Gamma(nu/mu) e^(-s p(0)) / (P s)^(nu/mu), scaled to F."""
    c = laplace_constants(model, eta)
    rho, k = model.rho, model.k
    p0 = math.log((rho - eta) / (rho + eta))
    core = c.Q / c.mu * math.gamma(c.nu / c.mu) * math.exp(-s * p0) / (c.P * s) ** (c.nu / c.mu)
    return rho**k * sigma(k - 1) * core


def phi_neg_alternative(model: HyperbolicModel, lam: float, r: float) -> float:
    """Alternative phi-level leading term written directly in lambda (checked, not normative)."""
    if lam >= 0 or r <= 0:
        raise DomainError("needs lambda < 0 and r > 0")
    k, rho = model.k, model.rho
    neg = -lam
    pref = (2 / rho) ** (k / 2) * math.gamma((k + 1) / 2) / (math.sqrt(math.pi) * math.sinh(r / rho))
    return pref * math.exp(r * math.sqrt(neg)) / neg ** (k / 4)


def leading_phi_neg(model: HyperbolicModel, lam: float, r: float) -> float:
    """phi-level leading term implied by leading_F_neg."""
    k, rho = model.k, model.rho
    s = math.sqrt(k * k / 4 - lam * rho * rho)
    return leading_F_neg(model, s, eta_from_r(model, r)) / (sigma(k) * rho**k)


def leading_phi_pos(model: HyperbolicModel, lam: float, r: float) -> AsymptoticTerm:
    """Leading term of phi_lambda(r) as lambda -> +infinity."""
    k, rho = model.k, model.rho
    if lam <= model.threshold:
        raise DomainError("lambda must exceed -kappa k^2/4")
    if r <= 0:
        raise DomainError("r must be positive")
    root = math.sqrt(lam)
    sh = math.sinh(r / rho)
    if k == 1:
        value = math.sqrt(2 / (math.pi * rho * sh)) * math.cos(math.pi / 4 - r * root) / lam**0.25
        note = "error o(lambda^-1/4)"
    elif k == 2:
        value = math.sin(r * root) / (rho * sh * root)
        note = "error o(lambda^-1/2)"
    elif k == 4:
        value = -((math.sqrt(3) / (rho * sh)) ** 2) * math.cos(r * root) / lam
        note = "error o(lambda^-1)"
    else:
        value = 0.0
        note = "phi = o(lambda^-1/2); no explicit leading term"
    return AsymptoticTerm(value=value, regime="lambda_pos", k=k, order_note=note)


def stationary_phase_k1(model: HyperbolicModel, b: float, r: float) -> float:
    """Stationary-phase value for k = 1 assembled from P, mu, Q, nu at offset b."""
    if model.k != 1:
        raise DomainError("stationary phase assembly is for k = 1")
    rho = model.rho
    eta = eta_from_r(model, r)
    P, mu, Q, nu = eta / rho, 2.0, 1 / (2 * rho), 1.0
    phase = nu * math.pi / (2 * mu) + b * math.log((rho - eta) / (rho + eta))
    amp = Q / mu * math.gamma(nu / mu) / (P * b) ** (nu / mu)
    return 4 * math.sqrt(rho * rho - eta * eta) / math.pi * amp * math.cos(phase)


def _pos_scale(k: int, lam: float) -> float:
    if k == 1:
        return lam**0.25
    if k in (2, 4):
        return lam
    return math.sqrt(lam)


@dataclass
class ScanRow:
    lam: float
    phi: float | None
    leading: float | None
    ratio: float | None
    scaled_residual: float | None
    extra: dict = field(default_factory=dict)
    error: str | None = None


def ratio_scan(model: HyperbolicModel, regime: str, grid: list[float], r: float,
               quad: QuadratureSpec = DEFAULT_QUAD) -> list[ScanRow]:
    """Quadrature phi against the leading term on a grid of eigenvalues.

    For ``lambda_neg`` the ratio phi/leading is reported along with the ratio
    against the alternative formula. For ``lambda_pos`` the residual is scaled
    by the order the leading term claims (lambda^(1/4) for k = 1, lambda for
    k = 2 and 4). For other k the scaled quantity is the largest |phi| sqrt(lambda)
    over one oscillation period starting at ``r``.
    """
    if regime not in ("lambda_neg", "lambda_pos"):
        raise DomainError(f"unknown regime {regime!r}")
    rows: list[ScanRow] = []
    for lam in grid:
        lam = float(lam)
        try:
            param = eigenparam(model, lam=lam)
            phi = float(phi_lambda(model, param, r, "power", quad))
            if regime == "lambda_neg":
                if lam >= 0:
                    raise DomainError("lambda_neg rows need lambda < 0")
                lead = leading_phi_neg(model, lam, r)
                alt = phi_neg_alternative(model, lam, r)
                rows.append(ScanRow(lam, phi, lead, phi / lead, abs(phi / lead - 1),
                                    {"alternative": alt, "alternative_over_phi": alt / phi}))
            else:
                term = leading_phi_pos(model, lam, r)
                scale = _pos_scale(model.k, lam)
                if model.k in (1, 2, 4):
                    scaled = abs(phi - term.value) * scale
                else:
                    # A single sample can sit near a node of the oscillation, so
                    # take the envelope over one period starting at r.
                    period = 2 * math.pi / math.sqrt(lam - model.threshold)
                    window = [r + j * period / 16 for j in range(16)]
                    scaled = max(abs(float(phi_lambda(model, param, x, "power", quad))) for x in window) * scale
                ratio = phi / term.value if term.value != 0 else None
                rows.append(ScanRow(lam, phi, term.value, ratio, scaled, {"order": term.order_note}))
        except (OmegaLabError, ValueError, OverflowError) as exc:
            rows.append(ScanRow(lam, None, None, None, None, error=str(exc)))
    return rows


# Deviations below this level are rounding noise; for k = 2 the leading term
# is exact up to exponentially small corrections and reaches it quickly.
RATIO_FLOOR = 1e3 * float(np.finfo(float).eps)


def improvement(deviations: list[float], floor: float = RATIO_FLOOR) -> tuple[float, float, bool]:
    """(largest rise, 0, verdict) for deviations listed in order of growing |lambda| or s.

    The sequence improves when every entry is below its predecessor or already
    below ``floor``.

    >>> improvement([0.1, 0.05, 0.02])[2]
    True
    >>> improvement([2e-9, 2e-15, 4e-15])[2]
    True
    """
    pairs = list(zip(deviations[:-1], deviations[1:]))
    rise = max((b - a for a, b in pairs if b > floor), default=0.0)
    ok = all(b < a or b <= floor for a, b in pairs)
    return rise, 0.0, ok


def F_ratio_neg(model: HyperbolicModel, s: float, eta: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Quadrature F(k/2 + s) divided by leading_F_neg."""
    cfg = SphereConfig(model.k, model.rho, eta)
    value = F_alpha(cfg, model.k / 2 + s, quad).real
    return value / leading_F_neg(model, s, eta)
