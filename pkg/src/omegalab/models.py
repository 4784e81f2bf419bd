"""Request models shared by the command-line front end and the HTTP service."""

from __future__ import annotations

import math
from typing import Annotated, Literal, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, model_validator

from .hyperbolic import HyperbolicModel
from .quadrature import QuadratureSpec


def parse_complex(value) -> complex:
    """Accept numbers, ``{"re": .., "im": ..}`` records and text such as ``0.8+0.4i``.

    >>> parse_complex("1-2i")
    (1-2j)
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, dict):
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    if isinstance(value, str):
        text = value.strip().replace(" ", "").replace("i", "j")
        if not text:
            raise ValueError("empty complex literal")
        try:
            return complex(text)
        except ValueError as exc:
            raise ValueError(f"cannot parse {value!r} as a complex number") from exc
    raise ValueError(f"cannot parse {value!r} as a complex number")


Complex = Annotated[complex, BeforeValidator(parse_complex)]


class _Base(BaseModel):
    model_config = ConfigDict(extra="forbid")


class QuadOptions(_Base):
    rel_tol: float = Field(1e-12, ge=1e-14, le=1e-2)
    max_subdivisions: int = Field(4000, ge=1)
    check_tol: Optional[float] = Field(None, ge=0, description="override for every check tolerance")

    def quad(self) -> QuadratureSpec:
        return QuadratureSpec(rel_tol=self.rel_tol, max_subdivisions=self.max_subdivisions)

    def check_tolerance(self, default: float) -> float:
        return default if self.check_tol is None else self.check_tol


class SphereFields(QuadOptions):
    k: int = Field(..., ge=1)
    R: float = Field(..., gt=0)
    r: float = Field(..., ge=0)


class HyperbolicFields(QuadOptions):
    k: int = Field(..., ge=1)
    rho: Optional[float] = Field(None, gt=0)
    kappa: Optional[float] = Field(None, lt=0)

    @model_validator(mode="after")
    def _curvature(self):
        if self.rho is not None and self.kappa is not None:
            if not math.isclose(self.kappa, -1.0 / self.rho**2, rel_tol=1e-12):
                raise ValueError("rho and kappa disagree; give only one")
        return self

    def model(self) -> HyperbolicModel:
        if self.rho is not None:
            return HyperbolicModel(self.k, self.rho)
        if self.kappa is not None:
            return HyperbolicModel(self.k, 1.0 / math.sqrt(-self.kappa))
        return HyperbolicModel(self.k, 1.0)


class EvalOmegaRequest(_Base):
    k: Optional[int] = Field(None, ge=1)
    R: Optional[float] = Field(None, gt=0)
    r: Optional[float] = Field(None, ge=0)
    theta: Optional[float] = None
    psi: Optional[float] = None
    x: Optional[list[float]] = None
    y: Optional[list[float]] = None

    @model_validator(mode="after")
    def _mode(self):
        points = self.x is not None or self.y is not None
        angles = self.theta is not None or self.psi is not None
        if points == angles:
            raise ValueError("give either the points x and y or an angle theta/psi")
        if points:
            if self.x is None or self.y is None or len(self.x) != len(self.y) or len(self.x) < 2:
                raise ValueError("x and y must be points of the same dimension >= 2")
        elif self.k is None or self.R is None or self.r is None:
            raise ValueError("angle evaluation needs k, R and r")
        return self


ClosedForm = Literal["k2_oscillatory", "k2_log", "k1_ratio"]


class IntegralRequest(QuadOptions):
    k: Optional[int] = Field(None, ge=1)
    R: Optional[float] = Field(None, gt=0)
    r: Optional[float] = Field(None, ge=0)
    alpha: Complex = 0j
    derivative: bool = False
    closed_form: Optional[ClosedForm] = None
    a: Optional[float] = None
    b: Optional[float] = None
    p: Optional[Complex] = None

    @model_validator(mode="after")
    def _fields(self):
        if self.closed_form == "k1_ratio":
            if self.a is None or self.b is None or self.p is None:
                raise ValueError("k1_ratio needs a, b and p")
            return self
        if self.k is None or self.R is None or self.r is None:
            raise ValueError("k, R and r are required")
        if self.closed_form is not None and self.k != 2:
            raise ValueError("the k2 closed forms need k = 2")
        if self.closed_form == "k2_oscillatory" and self.b is None:
            raise ValueError("k2_oscillatory needs b")
        return self


Suite = Literal["main-identity", "exchange", "moments", "inequalities", "potentials"]


class VerifyRequest(SphereFields):
    suite: Suite
    alphas: Optional[list[Complex]] = None
    m_max: int = Field(7, ge=1, le=20)
    count: int = Field(20, ge=1, le=10_000)
    seed: int = 0


class EigenfunctionRequest(HyperbolicFields):
    lam: Optional[Complex] = None
    alpha: Optional[Complex] = None
    b: Optional[float] = None
    radii: list[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0])
    rep: Literal["power", "cosine", "half_range", "explicit_k2"] = "power"
    compare: bool = False
    zeros_r_max: Optional[float] = Field(None, gt=0)
    zeros_step: Optional[float] = Field(None, gt=0)

    @model_validator(mode="after")
    def _one_parameter(self):
        given = [v is not None for v in (self.lam, self.alpha, self.b)]
        if sum(given) != 1:
            raise ValueError("give exactly one of lam, alpha, b")
        if any(r < 0 for r in self.radii):
            raise ValueError("radii must be nonnegative")
        return self


class DirichletRequest(HyperbolicFields):
    action: Literal["bounds", "spectrum", "lambda-min"]
    delta: Optional[float] = Field(None, gt=0)
    j_max: int = Field(3, ge=1, le=200)
    tol: float = Field(1e-10, ge=1e-14)
    n: Optional[int] = Field(None, ge=2)
    d1: Optional[float] = Field(None, gt=0)
    d2: Optional[float] = Field(None, gt=0)

    @model_validator(mode="after")
    def _fields(self):
        domain = self.d1 is not None or self.d2 is not None
        if domain:
            if self.action != "bounds" or self.d1 is None or self.d2 is None:
                raise ValueError("d1 and d2 go together and only with the bounds action")
        elif self.delta is None:
            raise ValueError("delta is required")
        return self


class OneRadiusRequest(HyperbolicFields):
    mu: Complex
    nu: Complex
    samples: int = Field(512, ge=8, le=100_000)


class AsymptoticsRequest(HyperbolicFields):
    regime: Literal["lambda_neg", "lambda_pos", "F_neg"]
    grid: list[float] = Field(default_factory=list)
    r: float = Field(1.0, gt=0)


class TraceRequest(SphereFields):
    seed: tuple[float, float]
    p: Optional[float] = Field(None, ge=0)
    step: Optional[float] = Field(None, gt=0)
    trace_tol: float = Field(1e-10, gt=0)


SweepOp = Literal["integral", "eval-omega", "asymptotics", "lambda-min", "one-radius"]


class SweepRequest(_Base):
    op: SweepOp
    param: str
    values: list[str] = Field(default_factory=list)
    base: dict = Field(default_factory=dict)
    workers: int = Field(1, ge=1, le=64)
