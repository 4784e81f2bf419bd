"""Dirichlet eigenvalues of hyperbolic disks and related bounds."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import BracketError, DomainError
from .geometry import chords_raw
from .hyperbolic import HyperbolicModel, eigenparam, eta_from_r, phi_lambda, phi_lambda_with_error
from .quadrature import DEFAULT_QUAD, QuadratureSpec


@dataclass(frozen=True)
class DiskProblem:
    """Geodesic disk of hyperbolic radius ``delta`` centred at the origin."""

    model: HyperbolicModel
    delta: float

    def __post_init__(self) -> None:
        if not (self.delta > 0 and math.isfinite(self.delta)):
            raise DomainError("delta must be positive and finite")

    @property
    def delta_euclid(self) -> float:
        return eta_from_r(self.model, self.delta)


@dataclass(frozen=True)
class SpectrumEntry:
    j: int
    lam: float
    b: float
    delta: float
    rho: float

    def eigenfunction(self, r: float) -> float:
        """delta sin(pi j r / delta) / (pi j rho sinh(r / rho)), with value 1 at r = 0."""
        if r == 0:
            return 1.0
        return self.delta * math.sin(math.pi * self.j * r / self.delta) / (
            math.pi * self.j * self.rho * math.sinh(r / self.rho))

    def description(self) -> str:
        return f"delta*sin(pi*{self.j}*r/delta)/(pi*{self.j}*rho*sinh(r/rho))"


def spectrum_k2(problem: DiskProblem, j_max: int) -> list[SpectrumEntry]:
    """Exact Dirichlet eigenvalues of the disk when k = 2."""
    model = problem.model
    if model.k != 2:
        raise DomainError("the explicit spectrum is available for k = 2 only")
    if j_max < 1:
        raise DomainError("j_max must be >= 1")
    out = []
    for j in range(1, j_max + 1):
        lam = -model.kappa + (math.pi * j / problem.delta) ** 2
        out.append(SpectrumEntry(j, lam, math.pi * j * model.rho / problem.delta, problem.delta, model.rho))
    return out


@dataclass(frozen=True)
class MinBounds:
    lower: float | None
    upper: float | None
    exact: float | None


def lambda_min_bounds(problem: DiskProblem) -> MinBounds:
    """Bounds on the smallest Dirichlet eigenvalue of the disk."""
    k, kappa, delta = problem.model.k, problem.model.kappa, problem.delta
    if k == 1:
        return MinBounds(-kappa / 4 + (math.pi / (2 * delta)) ** 2, -kappa / 4 + (math.pi / delta) ** 2, None)
    if k == 2:
        exact = -kappa + (math.pi / delta) ** 2
        return MinBounds(None, None, exact)
    return MinBounds(-kappa * k * k / 4 + (math.pi / delta) ** 2, None, None)


def _boundary_value(problem: DiskProblem, b: float, quad: QuadratureSpec) -> float:
    model = problem.model
    if b == 0:
        param = eigenparam(model, b=0.0)
        return float(phi_lambda(model, param, problem.delta, "power", quad))
    param = eigenparam(model, b=b)
    return float(phi_lambda(model, param, problem.delta, "cosine", quad))


def _lam_of_b(model: HyperbolicModel, b: float) -> float:
    return (model.k**2 / 4 + b * b) / model.rho**2


def _b_of_lam(model: HyperbolicModel, lam: float) -> float:
    return math.sqrt(max(lam * model.rho**2 - model.k**2 / 4, 0.0))


def lambda_min_numeric(problem: DiskProblem, tol: float = 1e-10, samples: int = 64,
                       quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Smallest lambda with phi_lambda(delta) = 0, by scanning in b then Brent's method.

    The initial scan range comes from lambda_min_bounds (upper bound for k = 1,
    the exact value for k = 2, lower bound plus (2 pi/delta)^2 for k >= 3) and
    is doubled until a sign change appears.
    """
    if tol < 1e-14:
        raise DomainError("tol must be >= 1e-14")
    model = problem.model
    bounds = lambda_min_bounds(problem)
    if bounds.upper is not None:
        lam_hi = bounds.upper
    elif bounds.exact is not None:
        lam_hi = bounds.exact + (math.pi / problem.delta) ** 2
    else:
        lam_hi = bounds.lower + (2 * math.pi / problem.delta) ** 2
    b_hi = _b_of_lam(model, lam_hi) * 1.05
    f0 = _boundary_value(problem, 0.0, quad)
    for _ in range(8):
        grid = np.linspace(0.0, b_hi, samples + 1)[1:]
        prev_b, prev_f = 0.0, f0
        for b in grid:
            fb = _boundary_value(problem, float(b), quad)
            if prev_f * fb <= 0:
                if fb == 0:
                    return _lam_of_b(model, float(b))
                root = brentq(lambda x: _boundary_value(problem, x, quad), prev_b, float(b),
                              xtol=tol / max(1.0, 2 * b / model.rho**2), rtol=8 * np.finfo(float).eps)
                return _lam_of_b(model, root)
            prev_b, prev_f = float(b), fb
        b_hi *= 2
    raise BracketError("no sign change of phi(delta) found", 0.0, b_hi, f0, prev_f)


def eigenvalue_scan(problem: DiskProblem, lam_max: float, samples: int = 400,
                    quad: QuadratureSpec = DEFAULT_QUAD, tol: float = 1e-12) -> list[float]:
    """All lambda in (threshold, lam_max] where phi_lambda(delta) changes sign."""
    model = problem.model
    b_max = _b_of_lam(model, lam_max)
    if b_max <= 0:
        return []
    grid = np.linspace(0.0, b_max, samples + 1)
    vals = [_boundary_value(problem, float(b), quad) for b in grid]
    out = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa * fb < 0:
            root = brentq(lambda x: _boundary_value(problem, x, quad), float(a), float(b),
                          xtol=tol, rtol=8 * np.finfo(float).eps)
            out.append(_lam_of_b(model, root))
    return out


@dataclass(frozen=True)
class DomainBounds:
    lower: float
    upper: float | None


def domain_bounds(n: int, kappa: float, d1: float, d2: float) -> DomainBounds:
    """Bounds for a domain squeezed between disks of diameters d1 <= d2."""
    if n < 2 or int(n) != n:
        raise DomainError("n must be an integer >= 2")
    if kappa >= 0:
        raise DomainError("kappa must be negative")
    if not (0 < d1 <= d2):
        raise DomainError("need 0 < d1 <= d2")
    if n == 2:
        return DomainBounds(-kappa / 4 + (math.pi / d2) ** 2, -kappa / 4 + (2 * math.pi / d1) ** 2)
    if n == 3:
        return DomainBounds(-kappa + (2 * math.pi / d2) ** 2, -kappa + (2 * math.pi / d1) ** 2)
    return DomainBounds(-kappa * (n - 1) ** 2 / 4 + (2 * math.pi / d2) ** 2, None)


@dataclass(frozen=True)
class ParabolaRegion:
    """Image of the strip |Im alpha| <= p under alpha -> -kappa (alpha k - alpha^2)."""

    p: float
    kappa: float
    k: int

    def __post_init__(self) -> None:
        if self.p < 0:
            raise DomainError("p must be nonnegative")
        if self.kappa >= 0:
            raise DomainError("kappa must be negative")

    @property
    def vertex(self) -> float:
        return -self.kappa * (self.k**2 / 4 + self.p**2)

    @property
    def axis_crossing(self) -> float:
        """|Im mu| where the boundary meets Re mu = 0."""
        return 2 * abs(self.kappa) * self.p * math.sqrt(self.p**2 + self.k**2 / 4)


def parabola_membership(region: ParabolaRegion, mu: complex, slack: float = 1e-12) -> bool:
    """Whether mu lies in the closed parabola region."""
    mu = complex(mu)
    kappa, p, k = region.kappa, region.p, region.k
    if p == 0:
        return abs(mu.imag) <= slack and mu.real <= -kappa * k * k / 4 + slack
    bound = -kappa * (p * p + k * k / 4) + mu.imag**2 / (4 * kappa * p * p)
    return mu.real <= bound + slack * max(1.0, abs(bound))


def strip_offset(k: int, kappa: float, mu: complex) -> float:
    """|Im alpha| for the principal exponent of the eigenvalue mu."""
    rho2 = -1.0 / kappa
    return abs(cmath.sqrt(k * k / 4 - complex(mu) * rho2).imag)


@dataclass
class OneRadiusReport:
    mu: complex
    nu: complex
    p: float
    interval: tuple[float, float]
    truncated: bool
    samples: int
    min_gap: float
    min_gap_at: float
    min_margin: float
    passed: bool


def one_radius_check(model: HyperbolicModel, mu: complex, nu: complex, samples: int = 512,
                     quad: QuadratureSpec = DEFAULT_QUAD) -> OneRadiusReport:
    """Sample |phi_mu - phi_nu| on (0, pi rho/(2p)] and compare it with quadrature error.

    When p = 0 the interval is unbounded; it is truncated to (0, 20 rho] and the
    report says so.
    """
    mu, nu = complex(mu), complex(nu)
    if mu == nu:
        raise DomainError("mu and nu must differ")
    pm, pn = eigenparam(model, lam=mu), eigenparam(model, lam=nu)
    p = max(abs(pm.alpha.imag), abs(pn.alpha.imag))
    truncated = p == 0
    length = 20 * model.rho if truncated else math.pi * model.rho / (2 * p)

    def gap_and_noise(r: float) -> tuple[float, float]:
        a, ea = phi_lambda_with_error(model, pm, r, "power", quad)
        b, eb = phi_lambda_with_error(model, pn, r, "power", quad)
        return abs(a - b), ea + eb

    rs = length * np.arange(1, samples + 1) / samples
    gaps = []
    margins = []
    for r in rs:
        g, e = gap_and_noise(float(r))
        gaps.append(g)
        margins.append(g - 10 * e)
    i = int(np.argmin(gaps))
    lo = float(rs[max(i - 1, 0)]) if i > 0 else float(rs[0]) * 0.5
    hi = float(rs[min(i + 1, samples - 1)])
    best_r, best_gap = float(rs[i]), float(gaps[i])
    if hi > lo:
        opt = minimize_scalar(lambda r: gap_and_noise(r)[0], bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-10 * length})
        if opt.fun < best_gap:
            best_r, best_gap = float(opt.x), float(opt.fun)
            g, e = gap_and_noise(best_r)
            margins.append(g - 10 * e)
    min_margin = float(min(margins))
    return OneRadiusReport(mu, nu, p, (0.0, length), truncated, samples, best_gap, best_r,
                           min_margin, min_margin > 0)


# Auxiliary properties used in the bound proofs --------------------------------

def max_log_ratio(problem: DiskProblem, b: float, n: int = 201) -> tuple[float, float, float]:
    """Largest |b ln(l/q)| over the grid [0, delta_E] x [0, pi/2] and where it occurs."""
    rho = problem.model.rho
    best = (-1.0, 0.0, 0.0)
    for eta in np.linspace(0.0, problem.delta_euclid, n):
        for psi in np.linspace(0.0, math.pi / 2, n):
            if eta == 0:
                val = 0.0
            else:
                c = chords_raw(rho, float(eta), float(psi))
                val = abs(b * math.log(c.l / c.q))
            if val > best[0]:
                best = (val, float(eta), float(psi))
    return best


def negative_dip(problem: DiskProblem, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """phi(delta) at b = pi rho / delta for k = 1 (negative by the upper-bound argument)."""
    if problem.model.k != 1:
        raise DomainError("negative_dip applies to k = 1")
    return _boundary_value(problem, math.pi * problem.model.rho / problem.delta, quad)
