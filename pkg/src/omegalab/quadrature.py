"""Adaptive Gauss-Kronrod quadrature for smooth, possibly complex, integrands.

The integrand is called with a 1-D numpy array of nodes and must return an
array of the same shape (real or complex). Panels are refined in batches:
every round splits all panels whose error share exceeds the average that the
tolerance allows, which keeps Python overhead low while staying adaptive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, QuadratureError

# 15-point Kronrod extension of the 7-point Gauss rule (abscissae on [0, 1]
# of the symmetric half, largest first).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full node set on [-1, 1] and the matching weight vectors.
_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
_KW = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
_GW = np.zeros(15)
_GW[1:14:2] = np.concatenate([_WG[:-1], [_WG[-1]], _WG[:-1][::-1]])


_ROUNDOFF = 200 * np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and panel budget for adaptive quadrature."""

    rel_tol: float = 1e-12
    abs_tol: float = 1e-300
    max_subdivisions: int = 4000

    def __post_init__(self) -> None:
        if not (self.rel_tol >= 1e-14):
            raise DomainError(f"rel_tol must be >= 1e-14, got {self.rel_tol}")
        if not (self.abs_tol > 0):
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")

    def target(self, value: complex) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_QUAD = QuadratureSpec()


@dataclass(frozen=True)
class IntegralResult:
    """Integral value with an error estimate and the number of integrand samples."""

    value: complex
    error_estimate: float
    evaluations: int

    @property
    def real(self) -> float:
        return float(np.real(self.value))

    @property
    def imag(self) -> float:
        return float(np.imag(self.value))


def _panel_rule(f: Callable[[np.ndarray], np.ndarray], a: np.ndarray, b: np.ndarray):
    """Apply the G7/K15 pair to many panels at once."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = center[:, None] + half[:, None] * _NODES[None, :]
    y = np.asarray(f(x.ravel())).reshape(x.shape)
    kron = half * (y @ _KW)
    gauss = half * (y @ _GW)
    absval = np.abs(half) * (np.abs(y) @ _KW)
    return kron, np.abs(kron - gauss), absval


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
    breakpoints: tuple[float, ...] = (),
    initial_panels: int = 4,
) -> IntegralResult:
    """Integrate ``f`` over ``[a, b]`` to the tolerance in ``quad``.

    ``breakpoints`` are interior points where the integrand is known to have
    reduced smoothness; panels never straddle them.

    >>> round(integrate(lambda x: x**2, 0.0, 1.0).real, 15)
    0.333333333333333
    """
    if a == b:
        return IntegralResult(0.0, 0.0, 0)
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    cuts = sorted({a, b, *[p for p in breakpoints if a < p < b]})
    edges = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        edges.append(np.linspace(lo, hi, initial_panels + 1))
    left = np.concatenate([e[:-1] for e in edges])
    right = np.concatenate([e[1:] for e in edges])

    values, errors, absvals = _panel_rule(f, left, right)
    evaluations = 15 * left.size
    while True:
        total = values.sum()
        err = float(errors.sum())
        # Below a few hundred ulps of the integral of |f| the estimate is
        # dominated by rounding, so cancellation cannot be resolved further.
        target = max(quad.target(total), _ROUNDOFF * float(absvals.sum()))
        if err <= target:
            break
        if left.size >= quad.max_subdivisions:
            raise QuadratureError(
                f"quadrature did not converge within {quad.max_subdivisions} panels "
                f"(error {err:.3e} > target {target:.3e})",
                complex(sign * total), err, evaluations,
            )
        share = target / left.size
        bad = errors > share
        # Always split at least the worst panel so progress is guaranteed.
        bad[np.argmax(errors)] = True
        room = quad.max_subdivisions - left.size
        idx = np.flatnonzero(bad)
        if idx.size > room:
            idx = idx[np.argsort(errors[idx])[::-1][: max(room, 1)]]
            bad = np.zeros_like(bad)
            bad[idx] = True
        mid = 0.5 * (left[bad] + right[bad])
        if np.any((mid <= left[bad]) | (mid >= right[bad])):
            raise QuadratureError(
                "panel width reached floating point resolution",
                complex(sign * total), err, evaluations,
            )
        new_left = np.concatenate([left[bad], mid])
        new_right = np.concatenate([mid, right[bad]])
        nv, ne, na = _panel_rule(f, new_left, new_right)
        evaluations += 15 * new_left.size
        keep = ~bad
        left = np.concatenate([left[keep], new_left])
        right = np.concatenate([right[keep], new_right])
        values = np.concatenate([values[keep], nv])
        errors = np.concatenate([errors[keep], ne])
        absvals = np.concatenate([absvals[keep], na])
    return IntegralResult(complex(sign * total), err, evaluations)


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``n``-point Gauss-Legendre rule on [-1, 1]."""
    return np.polynomial.legendre.leggauss(n)


def fixed_rule(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int) -> np.ndarray:
    """Fixed ``n``-point Gauss-Legendre estimate; ``f`` may return extra leading axes."""
    x, w = gauss_legendre(n)
    t = 0.5 * (a + b) + 0.5 * (b - a) * x
    return 0.5 * (b - a) * (np.asarray(f(t)) @ w)
