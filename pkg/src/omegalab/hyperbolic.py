"""Radial eigenfunctions of the Laplacian on the ball model of hyperbolic space.

The model is the Euclidean ball of radius ``rho`` in R^(k+1) with metric
``2 rho^2 |dx| / (rho^2 - |x|^2)``, of constant curvature ``-1/rho^2``. A point
at Euclidean radius ``eta`` has hyperbolic distance ``r`` from the centre with
``eta = rho tanh(r / (2 rho))``.

For ``|u| = rho`` the function ``omega(., u)^alpha`` is an eigenfunction with
eigenvalue ``lambda = (alpha k - alpha^2)/rho^2``; averaging it over the
sphere of directions gives the radial eigenfunction ``phi_lambda`` with
``phi_lambda(0) = 1``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, ResolutionError
from .geometry import SphereConfig
from .quadrature import DEFAULT_QUAD, QuadratureSpec, gauss_legendre, integrate
from .sphere_integrals import kernel_integral, sigma

REPRESENTATIONS = ("power", "cosine", "half_range", "explicit_k2")


@dataclass(frozen=True)
class HyperbolicModel:
    """Ball model of dimension ``k + 1`` and curvature radius ``rho``."""

    k: int
    rho: float = 1.0

    def __post_init__(self) -> None:
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k}")
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise DomainError(f"rho must be positive and finite, got {self.rho}")

    @property
    def kappa(self) -> float:
        return -1.0 / self.rho**2

    @property
    def n(self) -> int:
        return self.k + 1

    @property
    def threshold(self) -> float:
        """Bottom of the oscillatory range, -kappa k^2 / 4."""
        return self.k**2 / (4.0 * self.rho**2)


def eta_from_r(model: HyperbolicModel, r: float) -> float:
    """Euclidean radius of the point at hyperbolic distance ``r``."""
    if not (r >= 0 and math.isfinite(r)):
        raise DomainError("r must be nonnegative and finite")
    return model.rho * math.tanh(r / (2 * model.rho))


def r_from_eta(model: HyperbolicModel, eta: float) -> float:
    """Hyperbolic distance of the point at Euclidean radius ``eta``."""
    if not (0 <= eta < model.rho):
        raise DomainError("eta must lie in [0, rho)")
    return 2 * model.rho * math.atanh(eta / model.rho)


@dataclass(frozen=True)
class EigenParam:
    """Eigenvalue and exponent linked by lambda rho^2 = alpha k - alpha^2.

    ``b`` and ``s`` are the offsets with alpha = k/2 + i b = k/2 + s.
    """

    lam: complex
    alpha: complex
    b: complex
    s: complex

    @property
    def is_real(self) -> bool:
        return abs(complex(self.lam).imag) == 0.0


def eigenparam(model: HyperbolicModel, *, lam: complex | None = None, alpha: complex | None = None,
               b: complex | None = None, s: complex | None = None) -> EigenParam:
    """Complete the eigen-triple from exactly one of ``lam``, ``alpha``, ``b``, ``s``.

    From ``lam`` the principal root is used: alpha = k/2 + sqrt(k^2/4 - lam rho^2),
    which gives b >= 0 above the threshold and s >= 0 below it.

    >>> p = eigenparam(HyperbolicModel(2), lam=2)
    >>> p.alpha, p.b
    ((1+1j), (1+0j))
    """
    given = [v is not None for v in (lam, alpha, b, s)]
    if sum(given) != 1:
        raise DomainError("give exactly one of lam, alpha, b, s")
    k, rho = model.k, model.rho
    half = k / 2
    if lam is not None:
        lam_c = complex(lam)
        # Adding 0.0 turns a negative zero into +0 so real lambda takes the b >= 0 branch.
        disc = complex(half * half - (lam_c * rho * rho).real, -(lam_c * rho * rho).imag + 0.0)
        offset = cmath.sqrt(disc)
        alpha_c = half + offset
    elif alpha is not None:
        alpha_c = complex(alpha)
    elif b is not None:
        alpha_c = half + 1j * complex(b)
    else:
        alpha_c = half + complex(s)
    offset = alpha_c - half
    lam_out = (alpha_c * k - alpha_c * alpha_c) / rho**2 if lam is None else complex(lam)
    b_out = -1j * offset
    # Clean signed zeros so that purely real or imaginary values print cleanly.
    b_out = complex(b_out.real + 0.0, b_out.imag + 0.0)
    return EigenParam(lam=lam_out, alpha=alpha_c, b=b_out, s=offset)


def _as_output(value: complex, param: EigenParam):
    return float(value.real) if param.is_real else complex(value)


def _check_r(r: float) -> None:
    if not (r >= 0 and math.isfinite(r)):
        raise DomainError("r must be nonnegative and finite")


def phi_lambda(model: HyperbolicModel, param: EigenParam, r: float, rep: str = "power",
               quad: QuadratureSpec = DEFAULT_QUAD):
    """Radial eigenfunction value phi_lambda(r) from the chosen representation.

    Returns a float for real eigenvalues and a complex number otherwise.
    """
    value, _ = phi_lambda_with_error(model, param, r, rep, quad)
    return value


def phi_lambda_with_error(model: HyperbolicModel, param: EigenParam, r: float, rep: str = "power",
                          quad: QuadratureSpec = DEFAULT_QUAD):
    """phi_lambda(r) together with its quadrature error estimate."""
    if rep not in REPRESENTATIONS:
        raise DomainError(f"unknown representation {rep!r}")
    _check_r(r)
    k, rho = model.k, model.rho
    if rep == "cosine":
        if not param.is_real or param.lam.real <= model.threshold:
            raise DomainError("the cosine form needs a real eigenvalue above -kappa k^2/4")
    if rep == "explicit_k2" and k != 2:
        raise DomainError("the explicit form exists for k = 2 only")
    if r == 0:
        return _as_output(1.0 + 0j, param), 0.0
    if param.lam == 0 and rep != "explicit_k2":
        return _as_output(1.0 + 0j, param), 0.0

    L = r / rho
    if rep == "explicit_k2":
        b = complex(param.b)
        if b == 0:
            value = complex(L / math.sinh(L))
        else:
            value = cmath.sin(b * L) / (b * math.sinh(L))
        return _as_output(value, param), 0.0

    norm = 1.0 / (sigma(k) * rho**k)
    cfg = SphereConfig(k, rho, eta_from_r(model, r))
    if rep == "power":
        alpha = complex(param.alpha)
        res = kernel_integral(cfg, lambda t: np.exp(alpha * t), quad, log_ratio=L)
    elif rep == "cosine":
        b = float(param.b.real)
        half = k / 2
        res = kernel_integral(cfg, lambda t: np.exp(half * t) * np.cos(b * t), quad, log_ratio=L)
    else:
        return _half_range(model, param, r, quad)
    return _as_output(norm * res.value, param), norm * res.error_estimate


def _half_range(model: HyperbolicModel, param: EigenParam, r: float, quad: QuadratureSpec):
    """Chord form: an integral over the apex angle psi in [0, pi/2]."""
    k, rho = model.k, model.rho
    eta = eta_from_r(model, r)
    # rho^2 - eta^2 without cancellation near the boundary.
    power = (rho / math.cosh(r / (2 * rho))) ** 2
    b = complex(param.b)

    def integrand(psi):
        q = eta * np.cos(psi) + np.sqrt(rho * rho - (eta * np.sin(psi)) ** 2)
        l = power / q
        log_ratio = np.log(power) - 2.0 * np.log(q)
        out = np.cos(b * log_ratio) / (l + q)
        if k != 1:
            out = out * np.sin(psi) ** (k - 1)
        return out

    res = integrate(integrand, 0.0, math.pi / 2, quad)
    pref = 4 * rho * power ** (k / 2) * sigma(k - 1) / (sigma(k) * rho**k)
    return _as_output(pref * res.value, param), pref * res.error_estimate


def ode_residual(model: HyperbolicModel, param: EigenParam, r: float, h: float = 1e-3,
                 rep: str = "power", quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Residual of phi'' + (k/rho) coth(r/rho) phi' + lambda phi by central differences."""
    if not (h > 0 and r >= 4 * h):
        raise DomainError("need r >= 4h > 0")
    f = [phi_lambda(model, param, r + j * h, rep, quad) for j in (-1, 0, 1)]
    d1 = (f[2] - f[0]) / (2 * h)
    d2 = (f[2] - 2 * f[1] + f[0]) / (h * h)
    coth = 1.0 / math.tanh(r / model.rho)
    res = d2 + model.k / model.rho * coth * d1 + param.lam * f[1]
    return abs(res)


# Ball-model Laplacian -----------------------------------------------------------

def hyperbolic_laplacian_fd(model: HyperbolicModel, f: Callable[[np.ndarray], complex], m, h: float = 1e-3):
    """Ball-model Laplacian of ``f`` at ``m`` by central Euclidean differences.

    Uses the conformal-metric form e^(-2F) (Delta f + (n-2) grad F . grad f)
    with e^F = 2 rho^2 / (rho^2 - |x|^2).
    """
    m = np.asarray(m, dtype=float)
    rho = model.rho
    if m.size != model.n:
        raise DomainError(f"point must have {model.n} coordinates")
    if float(np.sqrt(m @ m)) + h >= rho:
        raise DomainError("stencil leaves the ball")
    f0 = f(m)
    lap = 0.0
    grad = []
    for i in range(m.size):
        e = np.zeros_like(m)
        e[i] = h
        fp, fm = f(m + e), f(m - e)
        lap += (fp - 2 * f0 + fm) / (h * h)
        grad.append((fp - fm) / (2 * h))
    gap = rho * rho - float(m @ m)
    drift = sum(2 * m[i] / gap * grad[i] for i in range(m.size))
    factor = (gap / (2 * rho * rho)) ** 2
    return factor * (lap + (model.n - 2) * drift)


def omega_power_field(model: HyperbolicModel, alpha: complex, u) -> Callable[[np.ndarray], complex]:
    """The field m -> omega(m, u)^alpha for a boundary point u."""
    u = np.asarray(u, dtype=float)
    if not math.isclose(float(np.sqrt(u @ u)), model.rho, rel_tol=1e-12):
        raise DomainError("u must lie on the boundary sphere |u| = rho")
    alpha = complex(alpha)
    rho2 = model.rho**2

    def field(m: np.ndarray) -> complex:
        d = m - u
        return complex((rho2 - float(m @ m)) / float(d @ d)) ** alpha

    return field


def eigen_residual(model: HyperbolicModel, alpha: complex, u, m, h: float = 1e-3) -> float:
    """|Delta_g omega^alpha + (alpha k - alpha^2)/rho^2 omega^alpha| at ``m``."""
    field = omega_power_field(model, alpha, u)
    alpha = complex(alpha)
    lam = (alpha * model.k - alpha * alpha) / model.rho**2
    return abs(hyperbolic_laplacian_fd(model, field, m, h) + lam * field(np.asarray(m, dtype=float)))


# Radialization -----------------------------------------------------------------

@lru_cache(maxsize=32)
def _sphere_rule(n: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Product rule on the unit sphere S^(n-1): directions and normalized weights."""
    if n < 2:
        raise DomainError("ambient dimension must be >= 2")
    phis = 2 * math.pi * np.arange(2 * m) / (2 * m)
    if n == 2:
        dirs = np.stack([np.cos(phis), np.sin(phis)], axis=1)
        return dirs, np.full(2 * m, 1.0 / (2 * m))
    x, w = gauss_legendre(m)
    theta = 0.5 * math.pi * (x + 1)
    grids = [theta] * (n - 2) + [phis]
    mesh = np.meshgrid(*grids, indexing="ij")
    weight = np.ones_like(mesh[0])
    for j in range(n - 2):
        weight = weight * np.sin(mesh[j]) ** (n - 2 - j) * w.reshape(
            [m if a == j else 1 for a in range(n - 1)])
    coords = []
    running = np.ones_like(mesh[0])
    for j in range(n - 2):
        coords.append(running * np.cos(mesh[j]))
        running = running * np.sin(mesh[j])
    coords.append(running * np.cos(mesh[-1]))
    coords.append(running * np.sin(mesh[-1]))
    dirs = np.stack([c.ravel() for c in coords], axis=1)
    wts = weight.ravel()
    return dirs, wts / wts.sum()


def spherical_average(f: Callable[[np.ndarray], np.ndarray], x, r: float, m: int) -> float:
    """Average of ``f`` over the sphere of radius ``r`` about ``x`` with a fixed rule.

    ``f`` takes an array of points with shape (N, n).
    """
    x = np.asarray(x, dtype=float)
    dirs, wts = _sphere_rule(x.size, m)
    return float(np.asarray(f(x[None, :] + r * dirs)) @ wts)


def radialize_euclidean(f: Callable[[np.ndarray], np.ndarray], x, r: float,
                        quad: QuadratureSpec = DEFAULT_QUAD, max_points: int = 2_000_000) -> float:
    """Spherical mean of ``f`` over the sphere of radius ``r`` about ``x``.

    The product rule is refined by doubling until two successive values agree
    to ``quad.rel_tol``.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    m = 8
    prev = spherical_average(f, x, r, m)
    while True:
        m *= 2
        if (2 * m) * m ** (n - 2) > max_points:
            return prev
        cur = spherical_average(f, x, r, m)
        if abs(cur - prev) <= quad.target(cur):
            return cur
        prev = cur


def epd_residual(f: Callable[[np.ndarray], np.ndarray], x, r: float, h: float = 1e-3, m: int = 32) -> float:
    """|Delta_x M - (M_rr + (n-1)/r M_r)| for the spherical mean M(x, r) of ``f``."""
    x = np.asarray(x, dtype=float)
    n = x.size

    def mean(point, radius):
        return spherical_average(f, point, radius, m)

    center = mean(x, r)
    lap = 0.0
    for i in range(n):
        e = np.zeros(n)
        e[i] = h
        lap += (mean(x + e, r) - 2 * center + mean(x - e, r)) / (h * h)
    mp, mm = mean(x, r + h), mean(x, r - h)
    m_rr = (mp - 2 * center + mm) / (h * h)
    m_r = (mp - mm) / (2 * h)
    return abs(lap - (m_rr + (n - 1) / r * m_r))


# Zeros and limits ---------------------------------------------------------------

@dataclass(frozen=True)
class ZeroScan:
    zeros: list[float]
    spacing_bounds: tuple[float, float] | None
    start: float
    spacings_ok: bool


def simmons_q(model: HyperbolicModel, lam: float, r: np.ndarray | float):
    """Coefficient of the normal form Y'' + Q Y = 0 with Y = phi sinh^(k/2)(r/rho)."""
    k, rho = model.k, model.rho
    return lam - k * k / (4 * rho * rho) - k * (k - 2) / (4 * rho * rho * np.sinh(np.asarray(r) / rho) ** 2)


def zeros_scan(model: HyperbolicModel, lam: float, r_max: float, step: float,
               quad: QuadratureSpec = DEFAULT_QUAD, tol: float = 1e-12) -> ZeroScan:
    """Bracket and refine the zeros of phi_lambda on (0, r_max].

    Also checks that successive zeros beyond the start of the oscillatory
    regime are spaced within [pi/M2, pi/M1], where M1^2 <= Q <= M2^2 there.
    """
    lam = float(lam)
    gap = lam - model.threshold
    if gap <= 0:
        return ZeroScan([], None, 0.0, True)
    spacing = math.pi / math.sqrt(gap)
    if step > spacing / 8:
        raise ResolutionError(
            f"step {step} is coarser than 1/8 of the expected zero spacing {spacing:.6g}")
    param = eigenparam(model, lam=lam)
    rep = "explicit_k2" if model.k == 2 else "cosine"

    def phi(x: float) -> float:
        return float(phi_lambda(model, param, x, rep, quad))

    grid = np.arange(step, r_max + 0.5 * step, step)
    grid = grid[grid <= r_max]
    vals = [phi(float(x)) for x in grid]
    zeros: list[float] = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            zeros.append(float(a))
        elif fa * fb < 0:
            zeros.append(brentq(phi, float(a), float(b), xtol=tol * model.rho, rtol=4 * np.finfo(float).eps))
    if vals and vals[-1] == 0.0:
        zeros.append(float(grid[-1]))

    # Start of the regime where Q stays above half its limit.
    rr = np.linspace(max(step, 1e-6), r_max, 4000)
    qv = simmons_q(model, lam, rr)
    ok_region = qv >= gap / 2
    bad = np.flatnonzero(~ok_region)
    start = float(rr[bad[-1] + 1]) if bad.size else 0.0
    usable = [z for z in zeros if z >= start]
    if len(usable) < 2:
        return ZeroScan(zeros, None, start, True)
    span = np.linspace(usable[0], usable[-1], 2000)
    q_span = simmons_q(model, lam, span)
    m1, m2 = math.sqrt(float(q_span.min())), math.sqrt(float(q_span.max()))
    lo, hi = math.pi / m2, math.pi / m1
    diffs = np.diff(usable)
    slack = 1e-9 * max(1.0, hi)
    ok = bool(np.all(diffs >= lo - slack) and np.all(diffs <= hi + slack))
    return ZeroScan(zeros, (lo, hi), start, ok)


def limit_class(lam: float) -> str:
    """Behaviour of phi_lambda(r) as r grows: "Infinity", "One" or "Zero"."""
    lam = float(lam)
    if lam < 0:
        return "Infinity"
    if lam == 0:
        return "One"
    return "Zero"
