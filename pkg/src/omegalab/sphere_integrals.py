"""Spherical integrals of powers of the kernel and related potentials.

Every integrand handled here depends on ``y`` only through the kernel value
(equivalently, through the distance ``|x - y|``), so each integral reduces to a
single angle. The reduction uses the log-kernel variable ``t = ln omega`` on
``[-L, L]`` with ``L = ln((R + r)/|R - r|)``, in which

    integral_0^pi h(omega) sin^(k-1)(theta) d theta
        = (1/sinh L) * integral_{-L}^{L} h(e^t) e^(-t) sin^(k-2)(theta(t)) dt,

followed by ``t = -L cos u`` to remove the endpoint singularity when k = 1.
Oscillatory factors ``cos(b ln omega)`` become plain ``cos(b t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .geometry import SphereConfig
from .quadrature import DEFAULT_QUAD, IntegralResult, QuadratureSpec, integrate


def sigma(k: int) -> float:
    """Surface measure of the unit sphere S^k in R^(k+1); sigma(0) = 2."""
    if k < 0:
        raise DomainError("sphere dimension must be nonnegative")
    return 2.0 * math.pi ** ((k + 1) / 2) / math.gamma((k + 1) / 2)


def sphere_area(k: int, R: float) -> float:
    """|S^k(R)| = sigma_k R^k."""
    return sigma(k) * R**k


def cexpm1(z):
    """exp(z) - 1 for complex arrays without cancellation near z = 0."""
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    re = np.expm1(x) * np.cos(y) - 2.0 * np.sin(0.5 * y) ** 2
    im = np.exp(x) * np.sin(y)
    return re + 1j * im


def _sin_theta_of_u(L: float, u: np.ndarray) -> np.ndarray:
    """sin(theta) at the node t = -L cos(u), computed without cancellation."""
    # tan^2(theta/2) = e^(L-t) (e^(L+t) - 1)/(e^(L-t) - 1), with
    # L + t = 2L sin^2(u/2) and L - t = 2L cos^2(u/2).
    a = 2.0 * L * np.sin(0.5 * u) ** 2
    b = 2.0 * L * np.cos(0.5 * u) ** 2
    tau = np.sqrt(np.exp(b) * np.expm1(a) / np.expm1(b))
    return 2.0 * tau / (1.0 + tau * tau)


def kernel_integral(
    cfg: SphereConfig,
    h: Callable[[np.ndarray], np.ndarray],
    quad: QuadratureSpec = DEFAULT_QUAD,
    log_ratio: float | None = None,
) -> IntegralResult:
    """Integral over S^k(R) of ``h(ln omega)``.

    ``h`` receives an array of log-kernel values and returns real or complex
    values of the same shape. ``log_ratio`` overrides ``cfg.log_ratio`` when the
    caller knows it more accurately (near the sphere, ``R - r`` loses digits).
    """
    k = cfg.k
    total = sigma(k - 1) * cfg.R**k
    L = cfg.log_ratio if log_ratio is None else float(log_ratio)
    if cfg.r == 0 or L == 0:
        value = complex(np.asarray(h(np.zeros(1)))[0]) * sigma(k) * cfg.R**k
        return IntegralResult(value, 0.0, 1)
    scale = total * L / math.sinh(L)

    def integrand(u: np.ndarray) -> np.ndarray:
        t = -L * np.cos(u)
        out = np.asarray(h(t)) * (np.exp(-t) * np.sin(u))
        if k != 2:
            out = out * _sin_theta_of_u(L, u) ** (k - 2)
        return out

    res = integrate(integrand, 0.0, math.pi, _scaled(quad, scale))
    return IntegralResult(scale * res.value, scale * res.error_estimate, res.evaluations)


def _scaled(quad: QuadratureSpec, scale: float) -> QuadratureSpec:
    """Rescale the absolute tolerance to the unscaled integrand."""
    return QuadratureSpec(quad.rel_tol, quad.abs_tol / scale if scale > 0 else quad.abs_tol,
                          quad.max_subdivisions)


def F_alpha(cfg: SphereConfig, alpha: complex, quad: QuadratureSpec = DEFAULT_QUAD) -> IntegralResult:
    """Integral of omega^alpha over S^k(R); real part W, imaginary part I.

    >>> cfg = SphereConfig(1, 1.0, 0.5)
    >>> round(F_alpha(cfg, 0).real / math.pi, 12)
    2.0
    """
    alpha = complex(alpha)
    return kernel_integral(cfg, lambda t: np.exp(alpha * t), quad)


def F_difference(cfg: SphereConfig, alpha: complex, beta: complex,
                 quad: QuadratureSpec = DEFAULT_QUAD) -> IntegralResult:
    """F(alpha) - F(beta) as one integral, accurate when alpha is close to beta."""
    alpha, beta = complex(alpha), complex(beta)
    d = alpha - beta
    return kernel_integral(cfg, lambda t: np.exp(beta * t) * cexpm1(d * t), quad)


def F_derivative(cfg: SphereConfig, alpha: complex, quad: QuadratureSpec = DEFAULT_QUAD) -> IntegralResult:
    """dF/dalpha = integral of omega^alpha ln(omega)."""
    alpha = complex(alpha)
    return kernel_integral(cfg, lambda t: t * np.exp(alpha * t), quad)


def moments(cfg: SphereConfig, m: int, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """M_m = integral of omega^(k/2) (ln omega)^m over the sphere."""
    if m < 0 or int(m) != m:
        raise DomainError("moment order must be a nonnegative integer")
    if cfg.r == 0:
        return sigma(cfg.k) * cfg.R**cfg.k if m == 0 else 0.0
    half = cfg.k / 2
    return kernel_integral(cfg, lambda t: np.exp(half * t) * t**m, quad).real


def F_taylor(cfg: SphereConfig, alpha: complex, terms: int, quad: QuadratureSpec = DEFAULT_QUAD) -> complex:
    """Even Taylor series of F about k/2, truncated after ``terms`` terms."""
    if terms < 1:
        raise DomainError("terms must be >= 1")
    z = complex(alpha) - cfg.k / 2
    total = 0j
    for m in range(terms):
        total += z ** (2 * m) / math.factorial(2 * m) * moments(cfg, 2 * m, quad)
    return total


# Closed forms ---------------------------------------------------------------

def k1_ratio_lhs(a: float, b: float, p: complex, quad: QuadratureSpec = DEFAULT_QUAD) -> complex:
    """Direct quadrature of integral_0^(2 pi) (a - b sin t)^(-p) dt."""
    return integrate(lambda t: (a - b * np.sin(t)) ** (-complex(p)), 0.0, 2 * math.pi, quad).value


def closed_forms(kind: str, params: dict, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Evaluate one of the closed forms.

    ``k1_ratio`` needs ``a, b, p`` and returns the predicted value of
    integral_0^(2 pi) (a - b sin t)^(-p) dt. ``k2_oscillatory`` needs ``R, r, b``
    and ``k2_log`` needs ``R, r``; both give the k = 2 integral of
    omega^(1 + i b).
    """
    if kind == "k1_ratio":
        a, b, p = float(params["a"]), float(params["b"]), params["p"]
        if not (a > b > 0):
            raise DomainError("k1_ratio requires a > b > 0")
        rhs = integrate(lambda t: (a - b * np.sin(t)) ** (complex(p) - 1), 0.0, 2 * math.pi, quad).value
        return float(np.real((a * a - b * b) ** (0.5 - complex(p)) * rhs))
    if kind in ("k2_oscillatory", "k2_log"):
        R, r = float(params["R"]), float(params["r"])
        if R <= 0 or r <= 0 or R == r:
            raise DomainError("k2 closed forms require R > 0, r > 0 and R != r")
        L = math.log((R + r) / abs(R - r))
        pref = 2 * math.pi * R / r * abs(R * R - r * r)
        if kind == "k2_log":
            return pref * L
        b = float(params["b"])
        if b == 0:
            return pref * L
        return pref * math.sin(b * L) / b
    raise DomainError(f"unknown closed form {kind!r}")


# Potentials -------------------------------------------------------------------

def distance_integral(cfg: SphereConfig, g: Callable[[np.ndarray], np.ndarray],
                      quad: QuadratureSpec = DEFAULT_QUAD) -> IntegralResult:
    """Integral over S^k(R) of ``g(|x - y|)`` for |x| = r."""
    if cfg.r == 0:
        return IntegralResult(complex(np.asarray(g(np.array([cfg.R])))[0]) * sphere_area(cfg.k, cfg.R), 0.0, 1)
    power = abs(cfg.R**2 - cfg.r**2)
    return kernel_integral(cfg, lambda t: g(np.sqrt(power) * np.exp(-0.5 * t)), quad)


def distance_power_integral(cfg: SphereConfig, alpha: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Integral of |x - y|^(-alpha) over S^k(R)."""
    if cfg.r == 0:
        return sphere_area(cfg.k, cfg.R) / cfg.R**alpha
    power = abs(cfg.R**2 - cfg.r**2)
    return power ** (-alpha / 2) * F_alpha(cfg, alpha / 2, quad).real


def potential_constants(cfg: SphereConfig, kind: str) -> float:
    """Closed-form value of the Newtonian or Poisson sphere integral."""
    k, R, r = cfg.k, cfg.R, cfg.r
    area = sphere_area(k, R)
    if kind == "newtonian":
        return area / R ** (k - 1) if cfg.inside else area / r ** (k - 1)
    if kind == "poisson":
        return R * sigma(k) if cfg.inside else (R / r) ** (k - 1) * R * sigma(k)
    raise DomainError(f"unknown potential kind {kind!r}")


def potential_quadrature(cfg: SphereConfig, kind: str, quad: QuadratureSpec = DEFAULT_QUAD) -> IntegralResult:
    """Quadrature counterpart of potential_constants."""
    k = cfg.k
    if kind == "newtonian":
        return distance_integral(cfg, lambda d: d ** (1.0 - k), quad)
    if kind == "poisson":
        power = abs(cfg.R**2 - cfg.r**2)
        return distance_integral(cfg, lambda d: power / d ** (k + 1.0), quad)
    raise DomainError(f"unknown potential kind {kind!r}")


def stokes_prediction(cfg: SphereConfig, tau: Callable[[float, float], float],
                      g: Callable[[float], float]) -> float:
    """Predicted sphere integral of g(|x - y|) when tau(|x|,|y|) g(|x-y|) is harmonic in x."""
    area = sphere_area(cfg.k, cfg.R)
    if cfg.inside:
        return tau(0.0, cfg.R) * g(cfg.R) * area / tau(cfg.r, cfg.R)
    return tau(0.0, cfg.r) * g(cfg.r) * area / tau(cfg.R, cfg.r)


def exchange_sides(cfg: SphereConfig, g: Callable[[np.ndarray], np.ndarray],
                   quad: QuadratureSpec = DEFAULT_QUAD) -> tuple[float, float]:
    """Both sides of the sphere exchange rule for a distance-only integrand.

    Returns ``(R^k * int_{S^k(r)} g, r^k * int_{S^k(R)} g)``.
    """
    swapped = SphereConfig(cfg.k, cfg.r, cfg.R)
    lhs = cfg.R**cfg.k * distance_integral(swapped, g, quad).real
    rhs = cfg.r**cfg.k * distance_integral(cfg, g, quad).real
    return lhs, rhs


# Dirichlet problem in the ball ----------------------------------------------

def dirichlet_solve(cfg: SphereConfig, boundary: Callable[[np.ndarray], np.ndarray], x,
                    quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Poisson-integral solution of the Dirichlet problem at ``x``.

    For k = 1, ``boundary`` is a function of the polar angle on the circle and
    ``x`` is a point of the plane. For k >= 2, ``boundary`` is a function of the
    angle between ``y`` and the direction of ``x`` (axially symmetric data),
    and only ``|x|`` matters.
    """
    k, R = cfg.k, cfg.R
    x = np.atleast_1d(np.asarray(x, dtype=float))
    rx = float(np.sqrt(x @ x))
    if rx == R:
        raise DomainError("x lies on the sphere")
    power = abs(R * R - rx * rx)
    norm = 1.0 / (R * sigma(k))
    if k == 1:
        if x.size != 2:
            raise DomainError("k = 1 requires a planar point x")

        def integrand(phi):
            d2 = (x[0] - R * np.cos(phi)) ** 2 + (x[1] - R * np.sin(phi)) ** 2
            return power / d2 * boundary(phi) * R

        # The kernel peaks at the angle of x; keep a panel edge there.
        peak = math.atan2(x[1], x[0]) % (2 * math.pi)
        res = integrate(integrand, 0.0, 2 * math.pi, quad, breakpoints=(peak,))
        return norm * res.real

    def integrand(gam):
        d2 = R * R + rx * rx - 2 * R * rx * np.cos(gam)
        return power / d2 ** ((k + 1) / 2) * boundary(gam) * np.sin(gam) ** (k - 1)

    res = integrate(integrand, 0.0, math.pi, quad)
    return norm * sigma(k - 1) * R**k * res.real


# Inequalities -----------------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    lower: float
    upper: float
    naive_lower: float
    naive_upper: float


def improved_bounds(cfg: SphereConfig, alpha: float) -> Bounds:
    """Two-sided bounds on the integral of |x - y|^(-alpha) over S^k(R)."""
    k, R, r = cfg.k, cfg.R, cfg.r
    alpha = float(alpha)
    area = sphere_area(k, R)
    s = 1.0 if alpha >= 2 * k else -1.0
    near = abs(R - s * r)
    far = abs(R + s * r)
    lower = area / (near**k * far ** (alpha - k))
    upper = area / (far**k * near ** (alpha - k))
    naive_lower = area / (R + r) ** alpha
    naive_upper = area / abs(R - r) ** alpha
    return Bounds(lower, upper, naive_lower, naive_upper)
