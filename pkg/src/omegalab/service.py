"""HTTP service exposing the same report builders as the command line.

Run with ``uvicorn omegalab.service:app``. Every POST endpoint accepts the
request model of the matching CLI subcommand and returns the report mapping
{command, inputs, outputs, checks, wall_time} plus a top-level ``passed`` flag.
Domain errors map to 422 and numerical failures to 500.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import __version__, commands
from .errors import DomainError, OmegaLabError
from .models import (AsymptoticsRequest, DirichletRequest, EigenfunctionRequest, EvalOmegaRequest,
                     IntegralRequest, OneRadiusRequest, SweepRequest, TraceRequest, VerifyRequest)
from .report import report_dict, to_jsonable

app = FastAPI(title="omegalab", version=__version__)


def _finite(obj):
    """Replace non-finite floats, which JSON cannot carry, by their names."""
    if isinstance(obj, float) and obj != obj:
        return "nan"
    if isinstance(obj, float) and obj in (float("inf"), float("-inf")):
        return "inf" if obj > 0 else "-inf"
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_finite(v) for v in obj]
    return obj


def _respond(req: BaseModel) -> dict:
    try:
        report = commands.run(req)
    except DomainError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except OmegaLabError as exc:
        raise HTTPException(status_code=500, detail=f"computation failed: {exc}") from exc
    body = report_dict(report, timing=True)
    if report.table_header is not None:
        body["table"] = {"header": report.table_header, "rows": to_jsonable(report.table_rows)}
    body["passed"] = report.passed
    return _finite(body)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/eval-omega")
def eval_omega(req: EvalOmegaRequest) -> dict:
    return _respond(req)


@app.post("/integral")
def integral(req: IntegralRequest) -> dict:
    return _respond(req)


@app.post("/verify")
def verify(req: VerifyRequest) -> dict:
    return _respond(req)


@app.post("/eigenfunction")
def eigenfunction(req: EigenfunctionRequest) -> dict:
    return _respond(req)


@app.post("/dirichlet")
def dirichlet(req: DirichletRequest) -> dict:
    return _respond(req)


@app.post("/one-radius")
def one_radius(req: OneRadiusRequest) -> dict:
    return _respond(req)


@app.post("/asymptotics")
def asymptotics(req: AsymptoticsRequest) -> dict:
    return _respond(req)


@app.post("/trace-curve")
def trace_curve(req: TraceRequest) -> dict:
    return _respond(req)


@app.post("/sweep")
def sweep(req: SweepRequest) -> dict:
    return _respond(req)
