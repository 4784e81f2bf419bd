"""Scalar geometry of the chord-ratio kernel.

For a point ``x`` at distance ``r`` from the origin and a point ``y`` on the
sphere of radius ``R`` centred at the origin, the kernel is

    omega(x, y) = | |x|^2 - |y|^2 | / |x - y|^2.

The line through ``y`` and ``x`` meets the sphere a second time at ``y*``.
With ``q = |x - y|`` and ``l = |x - y*|`` the kernel equals ``l / q``.

Angles follow one convention throughout: ``theta = pi - angle(x, O, y)``, so
``theta = 0`` puts ``y`` on the far side of the origin from ``x`` (smallest
kernel value) and ``theta = pi`` puts ``y`` closest to ``x`` (largest value).
``psi`` is the angle at ``x`` between the directions to ``O`` and to ``y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OnSphereError, UnsupportedConfigurationError

# Relative finite-difference step for second-order central schemes.
FD_STEP = np.finfo(float).eps ** (1.0 / 3.0)


@dataclass(frozen=True)
class SphereConfig:
    """Sphere of radius ``R`` in R^(k+1) and an evaluation radius ``r``."""

    k: int
    R: float
    r: float

    def __post_init__(self) -> None:
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k}")
        if not (self.R > 0 and math.isfinite(self.R)):
            raise DomainError(f"R must be positive and finite, got {self.R}")
        if not (self.r >= 0 and math.isfinite(self.r)):
            raise DomainError(f"r must be nonnegative and finite, got {self.r}")
        if self.r == self.R:
            raise OnSphereError("the evaluation point lies on the sphere (r == R)")

    @property
    def inside(self) -> bool:
        return self.r < self.R

    @property
    def upsilon(self) -> float:
        """Ratio min(R/r, r/R) in [0, 1)."""
        if self.r == 0:
            return 0.0
        return min(self.R / self.r, self.r / self.R)

    @property
    def log_ratio(self) -> float:
        """ln((R + r)/|R - r|), the log of the largest kernel value."""
        return math.log((self.R + self.r) / abs(self.R - self.r))

    @property
    def omega_range(self) -> tuple[float, float]:
        u = self.upsilon
        return (1 - u) / (1 + u), (1 + u) / (1 - u)


@dataclass(frozen=True)
class ChordPair:
    """Far segment ``l`` and near segment ``q`` of the chord through x."""

    l: float
    q: float

    @property
    def omega(self) -> float:
        return self.l / self.q


def omega(x, y) -> float:
    """Kernel value for two points of the same Euclidean space."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = x - y
    dist2 = float(d @ d)
    if dist2 == 0.0:
        raise DomainError("x and y coincide")
    # |x|^2 - |y|^2 = (x - y).(x + y) avoids cancellation when |x| is close to |y|.
    return abs(float(d @ (x + y))) / dist2


def _check_angle(value: float, name: str) -> None:
    if not (0.0 <= value <= math.pi):
        raise DomainError(f"{name} must lie in [0, pi], got {value}")


def omega_angle(cfg: SphereConfig, theta: float) -> float:
    """Kernel value as a function of the central angle theta.

    >>> omega_angle(SphereConfig(2, 2.0, 1.0), 0.0)
    0.3333333333333333
    """
    _check_angle(theta, "theta")
    u = cfg.upsilon
    return (1 - u * u) / (1 + u * u + 2 * u * math.cos(theta))


def omega_angle_array(cfg: SphereConfig, theta: np.ndarray) -> np.ndarray:
    """Vectorized omega_angle without domain checks (for quadrature)."""
    u = cfg.upsilon
    return (1 - u * u) / (1 + u * u + 2 * u * np.cos(theta))


def _require_inside(cfg: SphereConfig) -> None:
    if not cfg.inside:
        raise UnsupportedConfigurationError(
            "chord construction is defined for interior points only (r < R)"
        )


def chords_raw(R: float, r: float, psi: float) -> ChordPair:
    """Chord segments for 0 <= r <= R, including the boundary case r == R."""
    q = r * math.cos(psi) + math.sqrt(max(R * R - (r * math.sin(psi)) ** 2, 0.0))
    if r == R:
        # Power of the point vanishes, so the far segment collapses.
        return ChordPair(l=0.0, q=q)
    return ChordPair(l=(R * R - r * r) / q, q=q)


def chords(cfg: SphereConfig, psi: float) -> ChordPair:
    """Chord segments ``(l, q)`` at apex angle ``psi`` for an interior point.

    >>> chords(SphereConfig(2, 2.0, 1.0), 0.0)
    ChordPair(l=1.0, q=3.0)
    """
    _require_inside(cfg)
    _check_angle(psi, "psi")
    if cfg.r == 0:
        return ChordPair(l=cfg.R, q=cfg.R)
    return chords_raw(cfg.R, cfg.r, psi)


def theta_from_psi(cfg: SphereConfig, psi: float) -> float:
    """Central angle of the chord endpoint seen at apex angle psi."""
    _require_inside(cfg)
    _check_angle(psi, "psi")
    return psi + math.asin(cfg.r * math.sin(psi) / cfg.R)


def psi_from_theta(cfg: SphereConfig, theta: float) -> float:
    """Inverse of theta_from_psi."""
    _require_inside(cfg)
    _check_angle(theta, "theta")
    return math.atan2(cfg.R * math.sin(theta), cfg.R * math.cos(theta) + cfg.r)


@dataclass(frozen=True)
class Jacobians:
    dtheta_dpsi: float
    domega_dpsi: float
    dchordsum_dpsi: float


def jacobians(cfg: SphereConfig, psi: float) -> Jacobians:
    """Derivatives of theta, omega and l + q with respect to psi.

    The endpoints 0 and pi are returned as their one-sided limits, which the
    closed forms reproduce without special handling.
    """
    _require_inside(cfg)
    _check_angle(psi, "psi")
    c = chords(cfg, psi)
    s = c.l + c.q
    r = cfg.r
    return Jacobians(
        dtheta_dpsi=2 * c.q / s,
        domega_dpsi=(c.l / c.q) * 4 * r * math.sin(psi) / s,
        dchordsum_dpsi=-2 * r * r * math.sin(2 * psi) / s,
    )


def schwarz_theta_star(cfg: SphereConfig, theta: float) -> float:
    """Central angle of the second intersection y* of the chord through x."""
    psi = psi_from_theta(cfg, theta)
    return theta_from_psi(cfg, math.pi - psi)


@dataclass(frozen=True)
class LaplacianTerms:
    omega: float
    laplacian: float
    grad_sq: float
    laplacian_pow_k: float


def laplacian_omega(x, y) -> LaplacianTerms:
    """Closed-form Laplacian data of omega(., y) at an interior point x.

    ``k`` is read from the ambient dimension ``len(x) - 1``. The Laplacian is
    ``-2(k-1)(1+omega)/|x-y|^2``, the squared gradient ``4|y|^2/|x-y|^4``, and
    the Laplacian of ``omega^k`` follows from the chain rule.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DomainError("x and y must be vectors of the same length")
    k = x.size - 1
    d2 = float((x - y) @ (x - y))
    if d2 == 0.0:
        raise DomainError("x and y coincide; omega is singular there")
    if float(x @ x) >= float(y @ y):
        raise DomainError("laplacian_omega requires |x| < |y|")
    w = (float(y @ y) - float(x @ x)) / d2
    lap = -2.0 * (k - 1) * (1.0 + w) / d2
    grad_sq = 4.0 * float(y @ y) / (d2 * d2)
    lap_k = k * (k - 1) * w ** (k - 2) * grad_sq + k * w ** (k - 1) * lap
    return LaplacianTerms(omega=w, laplacian=lap, grad_sq=grad_sq, laplacian_pow_k=lap_k)


def fd_laplacian(f, x, h: float | None = None) -> float:
    """Central-difference Laplacian of a scalar field on R^n."""
    x = np.asarray(x, dtype=float)
    if h is None:
        h = FD_STEP * max(1.0, float(np.max(np.abs(x))))
    f0 = f(x)
    total = 0.0
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        total += (f(x + e) - 2 * f0 + f(x - e)) / (h * h)
    return total


def fd_gradient(f, x, h: float | None = None) -> np.ndarray:
    """Central-difference gradient of a scalar field on R^n."""
    x = np.asarray(x, dtype=float)
    if h is None:
        h = FD_STEP * max(1.0, float(np.max(np.abs(x))))
    out = np.empty(x.size)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        out[i] = (f(x + e) - f(x - e)) / (2 * h)
    return out


def level_sphere_value(t_dist: float, radius: float) -> float:
    """Kernel value on the level sphere of radius ``|Ty|`` about T on the line Oy."""
    return t_dist / radius


def minimal_chord_sum(rho: float, psi0: float, n_eta: int = 200, n_psi: int = 200) -> float:
    """Smallest l + q over the grid (eta, psi) in (0, rho] x (0, psi0]."""
    best = math.inf
    for eta in np.linspace(rho / n_eta, rho, n_eta):
        for psi in np.linspace(psi0 / n_psi, psi0, n_psi):
            c = chords_raw(rho, float(eta), float(psi))
            best = min(best, c.l + c.q)
    return best
