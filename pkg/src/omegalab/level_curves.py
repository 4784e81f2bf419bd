"""Level curves of W = Re F in the exponent plane alpha = xi + i zeta.

F is entire in alpha, so W and I = Im F satisfy the Cauchy-Riemann relations
and every partial derivative comes from the single complex derivative F'.
Curves are traced in the closed quadrant [k/2, inf) x [0, p], where p is at
most the strip half-width that keeps cos(zeta ln omega) nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, OmegaLabError, TraceError
from .geometry import SphereConfig, omega_angle_array
from .quadrature import DEFAULT_QUAD, QuadratureSpec
from .sphere_integrals import F_alpha, F_derivative, F_difference


def strip_p_max(cfg: SphereConfig) -> float:
    """(pi/2)/ln((R+r)/|R-r|); infinite when the point is the centre.

    >>> round(strip_p_max(SphereConfig(2, 2.0, 1.0)), 4)
    1.4298
    """
    L = cfg.log_ratio
    if L == 0:
        return math.inf
    return (math.pi / 2) / L


def min_cos_on_sphere(cfg: SphereConfig, zeta: float, samples: int = 2001) -> float:
    """Smallest cos(zeta ln omega) over a theta grid that includes 0 and pi."""
    theta = np.linspace(0.0, math.pi, samples)
    return float(np.min(np.cos(zeta * np.log(omega_angle_array(cfg, theta)))))


@dataclass(frozen=True)
class StripSpec:
    """A sphere configuration together with the strip half-width p."""

    cfg: SphereConfig
    p: float

    def __post_init__(self) -> None:
        if not self.p >= 0:
            raise DomainError("p must be nonnegative")
        limit = strip_p_max(self.cfg)
        if self.p > limit * (1 + 1e-12):
            raise DomainError(f"p = {self.p} exceeds the strip bound {limit}")

    @classmethod
    def maximal(cls, cfg: SphereConfig) -> "StripSpec":
        return cls(cfg, strip_p_max(cfg))

    @property
    def corner(self) -> float:
        return self.cfg.k / 2

    def in_quadrant(self, xi: float, zeta: float, slack: float = 1e-12) -> bool:
        return xi >= self.corner - slack and -slack <= zeta <= self.p + slack


@dataclass(frozen=True)
class Partials:
    W: float
    W_xi: float
    W_zeta: float
    I: float
    I_xi: float
    I_zeta: float
    error: float


def partials_W(cfg: SphereConfig, xi: float, zeta: float, quad: QuadratureSpec = DEFAULT_QUAD) -> Partials:
    """W, I and their first partials at alpha = xi + i zeta."""
    if not (math.isfinite(xi) and math.isfinite(zeta)):
        raise DomainError("xi and zeta must be finite")
    alpha = complex(xi, zeta)
    f = F_alpha(cfg, alpha, quad)
    d = F_derivative(cfg, alpha, quad)
    fv, dv = complex(f.value), complex(d.value)
    return Partials(W=fv.real, W_xi=dv.real, W_zeta=-dv.imag, I=fv.imag, I_xi=dv.imag, I_zeta=dv.real,
                    error=f.error_estimate)


def W_value(cfg: SphereConfig, xi: float, zeta: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    return F_alpha(cfg, complex(xi, zeta), quad).real


class CurveType(str, Enum):
    TYPE1 = "Type1_from_vertical_edge"
    TYPE2 = "Type2_from_lower_edge"
    TYPE3 = "Type3_corner_bisector"


@dataclass
class LevelCurve:
    points: list[tuple[float, float]]
    curve_type: CurveType
    level: float
    W: list[float] = field(default_factory=list)
    I: list[float] = field(default_factory=list)
    exit: str = ""

    def first_step_slope(self) -> float:
        """|d xi / d zeta| over the first segment."""
        (x0, z0), (x1, z1) = self.points[0], self.points[1]
        return abs(x1 - x0) / abs(z1 - z0) if z1 != z0 else math.inf


class _Tracer:
    """Arc-length continuation of {W = level} with Newton correction along grad W."""

    def __init__(self, spec: StripSpec, level: float, step: float, tol: float, quad: QuadratureSpec,
                 xi_max: float, max_points: int):
        self.spec, self.level, self.step, self.tol = spec, level, step, tol
        self.quad, self.xi_max, self.max_points = quad, xi_max, max_points

    def residual_ok(self, w: float) -> bool:
        return abs(w - self.level) <= self.tol * max(abs(self.level), 1e-300)

    def correct(self, xi: float, zeta: float, iterations: int = 12):
        for _ in range(iterations):
            p = partials_W(self.spec.cfg, xi, zeta, self.quad)
            if self.residual_ok(p.W):
                return xi, zeta, p
            g2 = p.W_xi**2 + p.W_zeta**2
            if g2 == 0:
                return None
            c = (p.W - self.level) / g2
            xi, zeta = xi - c * p.W_xi, zeta - c * p.W_zeta
        return None

    def solve_on_edge(self, edge: str, guess: float):
        """Point of the level set on a quadrant edge, by Brent's method around the guess."""
        cfg, spec, quad = self.spec.cfg, self.spec, self.quad
        if edge == "top":
            g = lambda x: W_value(cfg, x, spec.p, quad) - self.level
            lo, hi = max(spec.corner, guess - 4 * self.step), guess + 4 * self.step
        elif edge == "left":
            g = lambda z: W_value(cfg, spec.corner, z, quad) - self.level
            lo, hi = max(0.0, guess - 4 * self.step), min(spec.p, guess + 4 * self.step)
        elif edge == "bottom":
            g = lambda x: W_value(cfg, x, 0.0, quad) - self.level
            lo, hi = max(spec.corner, guess - 4 * self.step), guess + 4 * self.step
        else:
            return None
        try:
            root = brentq(g, lo, hi, xtol=1e-14, rtol=8 * np.finfo(float).eps)
        except ValueError:
            return None
        return (root, spec.p) if edge == "top" else (spec.corner, root) if edge == "left" else (root, 0.0)

    def run(self, start, direction_sign: float = 1.0):
        """Trace from ``start`` until the curve leaves the quadrant.

        Returns (points, W values, I values, exit edge).
        """
        spec = self.spec
        xi, zeta = start
        p0 = partials_W(spec.cfg, xi, zeta, self.quad)
        pts, ws, is_ = [(xi, zeta)], [p0.W], [p0.I]
        prev_dir = None
        current = p0
        while len(pts) < self.max_points:
            t = np.array([-current.W_zeta, current.W_xi]) * direction_sign
            norm = float(np.hypot(*t))
            if norm == 0:
                raise TraceError("gradient vanished along the curve", self._partial(pts, ws, is_))
            t /= norm
            if prev_dir is not None and float(t @ prev_dir) < 0:
                t = -t
            h = self.step
            while True:
                pred = (xi + h * t[0], zeta + h * t[1])
                exit_edge = self._exit_edge(*pred)
                if exit_edge is not None:
                    end = self.solve_on_edge(exit_edge, pred[0] if exit_edge in ("top", "bottom") else pred[1])
                    if end is not None:
                        pe = partials_W(spec.cfg, end[0], end[1], self.quad)
                        pts.append(end)
                        ws.append(pe.W)
                        is_.append(pe.I)
                    return pts, ws, is_, exit_edge
                corrected = self.correct(*pred)
                if corrected is not None:
                    cx, cz, cp = corrected
                    moved = math.hypot(cx - xi, cz - zeta)
                    if 0.25 * h <= moved <= 2 * h and spec.in_quadrant(cx, cz, slack=0.0):
                        break
                    if not spec.in_quadrant(cx, cz, slack=0.0):
                        # The corrected point left the quadrant: finish on that edge.
                        edge = self._exit_edge(cx, cz) or "top"
                        end = self.solve_on_edge(edge, cx if edge in ("top", "bottom") else cz)
                        if end is not None:
                            pe = partials_W(spec.cfg, end[0], end[1], self.quad)
                            pts.append(end)
                            ws.append(pe.W)
                            is_.append(pe.I)
                            return pts, ws, is_, edge
                h *= 0.5
                if h < self.step / 1024:
                    raise TraceError("corrector failed to converge", self._partial(pts, ws, is_))
            prev_dir = np.array([cx - xi, cz - zeta]) / moved
            xi, zeta, current = cx, cz, cp
            pts.append((xi, zeta))
            ws.append(cp.W)
            is_.append(cp.I)
        return pts, ws, is_, "max_points"

    def _exit_edge(self, xi: float, zeta: float):
        spec = self.spec
        if zeta > spec.p:
            return "top"
        if zeta < 0:
            return "bottom"
        if xi < spec.corner:
            return "left"
        if xi > self.xi_max:
            return "right"
        return None

    def _partial(self, pts, ws, is_):
        return LevelCurve(list(pts), CurveType.TYPE1, self.level, list(ws), list(is_), "failed")


def _corner_seed(spec: StripSpec, eps: float, quad: QuadratureSpec) -> tuple[float, float]:
    """(k/2 + eps, v) on the level set through the corner, 0 < v <= eps."""
    cfg, c = spec.cfg, spec.corner

    def g(v: float) -> float:
        return F_difference(cfg, complex(c + eps, v), c, quad).real

    lo, hi = 0.0, eps
    glo, ghi = g(lo), g(hi)
    if glo * ghi > 0:
        hi = min(spec.p, 4 * eps)
        ghi = g(hi)
        if glo * ghi > 0:
            raise TraceError("no level point above the corner offset", None)
    v = brentq(g, lo, hi, xtol=1e-15, rtol=8 * np.finfo(float).eps)
    return c + eps, v


def trace_level_curve(spec: StripSpec, seed: tuple[float, float], step: float,
                      quad: QuadratureSpec = DEFAULT_QUAD, tol: float = 1e-10,
                      xi_max: float | None = None, max_points: int = 5000) -> LevelCurve:
    """Trace the level curve of W through ``seed`` across the quadrant.

    A seed on the vertical edge gives a Type1 curve, a seed on the lower edge
    a Type2 curve, and the corner itself a Type3 curve. Interior seeds are
    traced backwards first and classified by the edge reached.
    """
    if not math.isfinite(spec.p) or spec.p <= 0:
        raise DomainError("tracing needs a finite positive strip half-width")
    if not (0 < step <= spec.p / 16 * (1 + 1e-12)):
        raise DomainError("step must lie in (0, p/16]")
    a, b = float(seed[0]), float(seed[1])
    if not spec.in_quadrant(a, b, slack=0.0):
        raise DomainError("seed must lie in the closed quadrant")
    c = spec.corner
    xi_max = c + 50.0 if xi_max is None else xi_max
    cfg = spec.cfg

    if a == c and b == 0:
        level = W_value(cfg, c, 0.0, quad)
        tracer = _Tracer(spec, level, step, tol, quad, xi_max, max_points)
        start = _corner_seed(spec, step, quad)
        pts, ws, is_, exit_edge = tracer.run(start)
        corner_val = F_alpha(cfg, c, quad)
        return LevelCurve([(c, 0.0)] + pts, CurveType.TYPE3, level,
                          [corner_val.real] + ws, [corner_val.imag] + is_, exit_edge)

    level = W_value(cfg, a, b, quad)
    tracer = _Tracer(spec, level, step, tol, quad, xi_max, max_points)
    if a == c:
        kind = CurveType.TYPE1
        pts, ws, is_, exit_edge = tracer.run((a, b))
        return LevelCurve(pts, kind, level, ws, is_, exit_edge)
    if b == 0:
        kind = CurveType.TYPE2
        pts, ws, is_, exit_edge = tracer.run((a, b))
        return LevelCurve(pts, kind, level, ws, is_, exit_edge)

    back_pts, back_w, back_i, entry = tracer.run((a, b), direction_sign=-1.0)
    fwd_pts, fwd_w, fwd_i, exit_edge = tracer.run((a, b))
    first = back_pts[-1]
    if abs(first[0] - c) < 1e-8 and abs(first[1]) < 1e-8:
        kind = CurveType.TYPE3
    elif entry == "left":
        kind = CurveType.TYPE1
    elif entry == "bottom":
        kind = CurveType.TYPE2
    else:
        raise TraceError(f"backward trace ended on the {entry} edge", None)
    pts = back_pts[::-1] + fwd_pts[1:]
    ws = back_w[::-1] + fwd_w[1:]
    is_ = back_i[::-1] + fwd_i[1:]
    return LevelCurve(pts, kind, level, ws, is_, exit_edge)


def corner_slope(spec: StripSpec, epsilon: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """v/epsilon where (k/2 + epsilon, v) lies on the level set through the corner."""
    if not (0 < epsilon <= spec.p / 8 * (1 + 1e-12)):
        raise DomainError("epsilon must lie in (0, p/8]")
    xi, v = _corner_seed(spec, epsilon, quad)
    return v / epsilon


def bisector_profile(spec: StripSpec, s_values, quad: QuadratureSpec = DEFAULT_QUAD) -> list[float]:
    """W(k/2 + s, s) - W(k/2, 0) for each s."""
    c = spec.corner
    return [F_difference(spec.cfg, complex(c + s, s), c, quad).real for s in s_values]


@dataclass
class UniquenessReport:
    beta: complex
    p: float
    grid_shape: tuple[int, int]
    candidates: int
    hits: list[complex]
    expected: list[complex]
    matched: bool
    max_hit_residual: float


def _newton_root(cfg: SphereConfig, beta: complex, start: complex, quad: QuadratureSpec,
                 floor: float, iterations: int = 80):
    """Newton's method on F(alpha) - F(beta); stops on a tiny step or a residual below ``floor``."""
    alpha = start
    for _ in range(iterations):
        dv = complex(F_difference(cfg, alpha, beta, quad).value)
        if abs(dv) <= floor:
            return alpha
        deriv = complex(F_derivative(cfg, alpha, quad).value)
        if deriv == 0:
            return None
        step = dv / deriv
        alpha -= step
        if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)) or abs(alpha) > 1e6:
            return None
        if abs(step) <= 1e-14 * max(1.0, abs(alpha)):
            return alpha
    return alpha


def uniqueness_scan(spec: StripSpec, beta: complex, grid_density: int = 21,
                    quad: QuadratureSpec = DEFAULT_QUAD) -> UniquenessReport:
    """Locate every solution of F(alpha) = F(beta) with |Im alpha| <= p.

    |F(alpha) - F(beta)| is sampled on a grid over the strip; every discrete
    local minimum seeds Newton's method on the analytic difference, and a
    converged point is a hit when it stays in the strip and its residual is
    below 10^3 times the local quadrature error.
    """
    beta = complex(beta)
    cfg, k, p = spec.cfg, spec.cfg.k, spec.p
    if not math.isfinite(p):
        raise DomainError("the scan needs a finite strip half-width")
    if beta.real < k / 2 or not (0 <= beta.imag <= p):
        raise DomainError("beta must lie in the closed quadrant")
    if grid_density < 3:
        raise DomainError("grid_density must be >= 3")
    half = abs(beta.real - k / 2) + 1.0
    xs = np.linspace(k / 2 - half, k / 2 + half, grid_density)
    zs = np.linspace(-p, p, grid_density)
    mags = np.empty((grid_density, grid_density))
    for i, x in enumerate(xs):
        for j, z in enumerate(zs):
            mags[i, j] = abs(complex(F_difference(cfg, complex(x, z), beta, quad).value))
    candidates = []
    for i in range(grid_density):
        for j in range(grid_density):
            window = mags[max(i - 1, 0):i + 2, max(j - 1, 0):j + 2]
            if mags[i, j] <= window.min():
                candidates.append(complex(xs[i], zs[j]))
    scale = abs(complex(F_alpha(cfg, beta, quad).value))
    hits: list[complex] = []
    worst = 0.0
    for start in candidates:
        try:
            root = _newton_root(cfg, beta, start, quad, 4 * np.finfo(float).eps * scale)
        except OmegaLabError:
            continue
        if root is None or abs(root.imag) > p * (1 + 1e-12):
            continue
        res = F_difference(cfg, root, beta, quad)
        threshold = 1e3 * max(res.error_estimate, np.finfo(float).eps * scale)
        if abs(complex(res.value)) >= threshold:
            continue
        if all(abs(root - h) > 1e-6 * max(1.0, abs(h)) for h in hits):
            hits.append(root)
            worst = max(worst, abs(complex(res.value)))
    hits.sort(key=lambda z: (-z.real, -z.imag))
    # At beta = k/2 the two roots merge into a double root, which Newton's
    # method only locates to about the square root of machine precision.
    double = abs(beta - k / 2) < 1e-12
    expected = [beta] if double else [beta, k - beta]
    match_tol = 1e-6 if double else 1e-8
    matched = len(hits) == len(expected) and all(
        any(abs(h - e) <= match_tol * max(1.0, abs(e)) for h in hits) for e in expected)
    return UniquenessReport(beta, p, (grid_density, grid_density), len(candidates), hits, expected,
                            matched, worst)
