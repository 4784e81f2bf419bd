"""Report builders behind every CLI subcommand and HTTP endpoint.

Each builder takes a validated request model and returns a RunReport whose
checks encode the identity or bound being exercised.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from pydantic import BaseModel, ValidationError

from . import asymptotics as asy
from . import dirichlet as dl
from . import geometry as geo
from . import hyperbolic as hy
from . import level_curves as lc
from . import sphere_integrals as si
from .errors import OmegaLabError
from .models import (AsymptoticsRequest, DirichletRequest, EigenfunctionRequest, EvalOmegaRequest,
                     IntegralRequest, OneRadiusRequest, SweepRequest, TraceRequest, VerifyRequest)
from .report import RunReport


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


def _inputs(req: BaseModel) -> dict:
    return req.model_dump(mode="python")


# eval-omega -----------------------------------------------------------------

def eval_omega(req: EvalOmegaRequest) -> RunReport:
    rep = RunReport("eval-omega", _inputs(req))
    if req.x is not None:
        x, y = np.asarray(req.x, float), np.asarray(req.y, float)
        w = geo.omega(x, y)
        rep.outputs["omega"] = w
        if float(x @ x) < float(y @ y):
            terms = geo.laplacian_omega(x, y)
            fd_lap = geo.fd_laplacian(lambda p: geo.omega(p, y), x, h=1e-4)
            fd_grad = geo.fd_gradient(lambda p: geo.omega(p, y), x)
            rep.outputs.update(laplacian=terms.laplacian, grad_sq=terms.grad_sq,
                               laplacian_pow_k=terms.laplacian_pow_k)
            rep.check("laplacian_vs_finite_difference", abs(fd_lap - terms.laplacian),
                      1e-4 * max(1.0, abs(terms.laplacian)))
            rep.check("grad_sq_vs_finite_difference", abs(float(fd_grad @ fd_grad) - terms.grad_sq),
                      1e-6 * max(1.0, terms.grad_sq))
        return rep
    cfg = geo.SphereConfig(req.k, req.R, req.r)
    rep.outputs.update(upsilon=cfg.upsilon, omega_min=cfg.omega_range[0], omega_max=cfg.omega_range[1])
    if req.theta is not None:
        w = geo.omega_angle(cfg, req.theta)
        rep.outputs["omega"] = w
        lo, hi = cfg.omega_range
        rep.check("omega_within_range", max(lo - w, w - hi, 0.0), 1e-15 * hi)
    if req.psi is not None:
        c = geo.chords(cfg, req.psi)
        theta = geo.theta_from_psi(cfg, req.psi)
        jac = geo.jacobians(cfg, req.psi)
        rep.outputs.update(l=c.l, q=c.q, theta=theta, dtheta_dpsi=jac.dtheta_dpsi,
                           domega_dpsi=jac.domega_dpsi, dchordsum_dpsi=jac.dchordsum_dpsi)
        power = abs(cfg.R**2 - cfg.r**2)
        if power > 0:
            rep.check("power_of_point", abs(c.l * c.q - power) / power, 1e-12)
        rep.check("chord_ratio_matches_kernel", _rel(geo.omega_angle(cfg, theta), c.l / c.q), 1e-12)
    return rep


# integral -------------------------------------------------------------------

def integral(req: IntegralRequest) -> RunReport:
    rep = RunReport("integral", _inputs(req))
    quad = req.quad()
    if req.closed_form == "k1_ratio":
        lhs = si.k1_ratio_lhs(req.a, req.b, req.p, quad)
        rhs = si.closed_forms("k1_ratio", {"a": req.a, "b": req.b, "p": req.p}, quad)
        rep.outputs.update(direct=lhs, closed_form=rhs)
        rep.check("k1_ratio_identity", _rel(lhs, rhs), req.check_tolerance(1e-9))
        return rep
    cfg = geo.SphereConfig(req.k, req.R, req.r)
    alpha = req.alpha
    if req.closed_form == "k2_oscillatory":
        alpha = complex(1.0, req.b)
    elif req.closed_form == "k2_log":
        alpha = 1.0 + 0j
    res = si.F_derivative(cfg, alpha, quad) if req.derivative else si.F_alpha(cfg, alpha, quad)
    rep.outputs.update(alpha=alpha, W=res.real, I=res.imag, error_estimate=res.error_estimate,
                       evaluations=res.evaluations)
    if req.closed_form is not None:
        params = {"R": req.R, "r": req.r, "b": req.b if req.b is not None else 0.0}
        exact = si.closed_forms(req.closed_form, params, quad)
        rep.outputs["closed_form"] = exact
        rep.check(f"{req.closed_form}_closed_form", abs(res.value - exact) / abs(exact), req.check_tolerance(1e-8))
    return rep


# verify suites ----------------------------------------------------------------

def _default_alphas(k: int) -> list[complex]:
    return [0.3 + 0j, 1.7 + 0j, complex(k / 2, 0.6), complex(0.8, 0.4)]


def _verify_main_identity(req: VerifyRequest, rep: RunReport) -> None:
    cfg, quad = geo.SphereConfig(req.k, req.R, req.r), req.quad()
    rows = []
    for a in req.alphas or _default_alphas(req.k):
        f1, f2 = si.F_alpha(cfg, a, quad), si.F_alpha(cfg, req.k - a, quad)
        diff = abs(f1.value - f2.value)
        tol = req.check_tolerance(10 * (f1.error_estimate + f2.error_estimate))
        rep.check(f"F({_fmt(a)}) = F(k - alpha)", diff, tol)
        rows.append({"alpha": a, "F_alpha": f1.value, "F_reflected": f2.value, "difference": diff})
    rep.outputs["rows"] = rows


def _fmt(z: complex) -> str:
    z = complex(z)
    return f"{z.real:g}{z.imag:+g}i" if z.imag else f"{z.real:g}"


def _exchange_functions():
    return {
        "inverse_distance": lambda d: 1.0 / d,
        "power_-2.5": lambda d: d**-2.5,
        "square": lambda d: d * d,
        "gaussian": lambda d: np.exp(-d * d),
    }


def _verify_exchange(req: VerifyRequest, rep: RunReport) -> None:
    cfg, quad = geo.SphereConfig(req.k, req.R, req.r), req.quad()
    if cfg.r == 0:
        raise geo.DomainError("the exchange rule needs r > 0")
    rows = []
    for name, g in _exchange_functions().items():
        lhs, rhs = si.exchange_sides(cfg, g, quad)
        rel = abs(lhs - rhs) / abs(rhs)
        rep.check(f"exchange_{name}", rel, req.check_tolerance(1e-9))
        rows.append({"g": name, "lhs": lhs, "rhs": rhs})
    rep.outputs["rows"] = rows


def _verify_moments(req: VerifyRequest, rep: RunReport) -> None:
    cfg, quad, k = geo.SphereConfig(req.k, req.R, req.r), req.quad(), req.k
    L = cfg.log_ratio
    m0 = si.moments(cfg, 0, quad)
    moms = []
    for m in range(req.m_max + 1):
        mm = si.moments(cfg, m, quad)
        moms.append(mm)
        if m % 2 == 1:
            rep.check(f"odd_moment_{m}_vanishes", abs(mm) / (m0 * max(1.0, L**m)), req.check_tolerance(1e-9))
    rep.outputs["moments"] = moms
    for b in (0.5, 1.0, 2.0, 5.0):
        f = si.F_alpha(cfg, complex(k / 2, b), quad)
        rep.check(f"imaginary_part_vanishes_b={b:g}", abs(f.imag),
                  req.check_tolerance(max(10 * f.error_estimate, 1e-12 * abs(f.real))))
    z = complex(k / 2 + 0.3, 0.2)
    taylor = si.F_taylor(cfg, z, max(req.m_max, 8), quad)
    direct = si.F_alpha(cfg, z, quad).value
    rep.outputs.update(taylor=taylor, direct=direct)
    rep.check("even_taylor_series", abs(taylor - direct) / abs(direct), req.check_tolerance(1e-8))
    grid = np.linspace(-1.0, k + 1.0, 41)
    vals = np.array([si.F_alpha(cfg, float(x), quad).real for x in grid])
    second = vals[:-2] - 2 * vals[1:-1] + vals[2:]
    rep.check("real_axis_convexity", -float(second.min()), 0.0, passed=bool(second.min() > 0))
    beta = k / 2 + 0.7
    fb = si.F_alpha(cfg, beta, quad).real
    diffs = vals - fb
    changes = [0.5 * (grid[i] + grid[i + 1]) for i in range(len(grid) - 1)
               if diffs[i] == 0 or diffs[i] * diffs[i + 1] < 0]
    step = grid[1] - grid[0]
    near = all(min(abs(c - beta), abs(c - (k - beta))) <= step for c in changes)
    rep.outputs["real_solutions_near"] = changes
    rep.check("real_axis_two_solutions", float(len(changes)), 2.0, passed=len(changes) == 2 and near)


def _verify_inequalities(req: VerifyRequest, rep: RunReport) -> None:
    cfg, quad, k = geo.SphereConfig(req.k, req.R, req.r), req.quad(), req.k
    if not cfg.inside:
        raise geo.DomainError("the bounds are stated for interior points")
    rng = np.random.default_rng(req.seed)
    worst = 0.0
    rows = []
    for alpha in rng.uniform(k, 3 * k, req.count):
        alpha = float(alpha)
        b = si.improved_bounds(cfg, alpha)
        value = si.distance_power_integral(cfg, alpha, quad)
        chain = [b.naive_lower, b.lower, value, b.upper, b.naive_upper]
        slack = 1e-12 * value
        violation = max(chain[i] - chain[i + 1] for i in range(4))
        worst = max(worst, violation / value)
        rows.append({"alpha": alpha, "naive_lower": b.naive_lower, "lower": b.lower, "value": value,
                     "upper": b.upper, "naive_upper": b.naive_upper})
        if violation > slack:
            rep.check(f"bound_chain_alpha={alpha:.6f}", violation / value, 1e-12)
    rep.check("bound_chain", worst, req.check_tolerance(1e-12))
    b = si.improved_bounds(cfg, 2.0 * k)
    rep.check("bounds_touch_at_2k", abs(b.upper - b.lower) / b.upper, 1e-12)
    rep.outputs["rows"] = rows


def _verify_potentials(req: VerifyRequest, rep: RunReport) -> None:
    cfg, quad, k = geo.SphereConfig(req.k, req.R, req.r), req.quad(), req.k
    R = cfg.R
    mirror = geo.SphereConfig(k, R, R * R / cfg.r if cfg.r > 0 else 2 * R)
    values = {}
    for label, c in (("given", cfg), ("mirror", mirror)):
        side = "inside" if c.inside else "outside"
        for kind in ("newtonian", "poisson"):
            q = si.potential_quadrature(c, kind, quad).real
            exact = si.potential_constants(c, kind)
            values[f"{kind}_{side}_{label}"] = {"quadrature": q, "constant": exact}
            rep.check(f"{kind}_{side}", abs(q - exact) / exact, req.check_tolerance(1e-9))
    rep.outputs["potentials"] = values
    radii = np.linspace(0.0, 0.9, 5) * R
    means = [si.potential_quadrature(geo.SphereConfig(k, R, float(x)), "newtonian", quad).real for x in radii]
    spread = (max(means) - min(means)) / abs(np.mean(means))
    rep.outputs["newtonian_interior_values"] = means
    rep.check("mean_value_independent_of_x", spread, req.check_tolerance(1e-9))
    power = abs(R * R - cfg.r**2)
    for name, tau, g in (
        ("stokes_newtonian", lambda a, b: 1.0, lambda d: d ** (1.0 - k)),
        ("stokes_poisson", lambda a, b: abs(b * b - a * a), lambda d: d ** (-(k + 1.0))),
    ):
        if power == 0:
            continue
        pred = si.stokes_prediction(cfg, tau, g)
        q = si.distance_integral(cfg, g, quad).real
        rep.check(name, abs(q - pred) / abs(pred), req.check_tolerance(1e-9))
    if cfg.inside:
        if k == 1:
            x = cfg.r * np.array([math.cos(0.3), math.sin(0.3)])
            u = si.dirichlet_solve(cfg, lambda phi: R * np.cos(phi), x, quad)
            exact = float(x[0])
        else:
            u = si.dirichlet_solve(cfg, lambda gam: R * np.cos(gam), [cfg.r], quad)
            exact = cfg.r
        rep.outputs["dirichlet_solution"] = u
        rep.check("dirichlet_linear_data", abs(u - exact), req.check_tolerance(1e-9) * max(1.0, R))


_SUITES = {
    "main-identity": _verify_main_identity,
    "exchange": _verify_exchange,
    "moments": _verify_moments,
    "inequalities": _verify_inequalities,
    "potentials": _verify_potentials,
}


def verify(req: VerifyRequest) -> RunReport:
    rep = RunReport(f"verify {req.suite}", _inputs(req))
    _SUITES[req.suite](req, rep)
    return rep


# eigenfunction ----------------------------------------------------------------

def _param(model: hy.HyperbolicModel, req) -> hy.EigenParam:
    if getattr(req, "lam", None) is not None:
        return hy.eigenparam(model, lam=req.lam)
    if getattr(req, "alpha", None) is not None:
        return hy.eigenparam(model, alpha=req.alpha)
    return hy.eigenparam(model, b=req.b)


def eigenfunction(req: EigenfunctionRequest) -> RunReport:
    rep = RunReport("eigenfunction", _inputs(req))
    model, quad = req.model(), req.quad()
    param = _param(model, req)
    rep.outputs.update(lam=param.lam, alpha=param.alpha, b=param.b, rho=model.rho)
    rep.table_header = ["r", "phi_re", "phi_im", "error"]
    values = []
    for r in req.radii:
        phi, err = hy.phi_lambda_with_error(model, param, r, req.rep, quad)
        phi_c = complex(phi)
        values.append({"r": r, "phi": phi, "error": err})
        rep.table_rows.append([r, phi_c.real, phi_c.imag, err])
        if r > 0:
            res = hy.ode_residual(model, param, r, 1e-3, req.rep, quad)
            rep.check(f"ode_residual_r={r:g}", res, req.check_tolerance(1e-4) * max(1.0, abs(phi_c)))
    rep.outputs["values"] = values
    if req.compare:
        reps = ["power", "half_range"]
        if param.is_real and param.lam.real > model.threshold:
            reps.append("cosine")
        if model.k == 2:
            reps.append("explicit_k2")
        for r in req.radii:
            vals = {name: complex(hy.phi_lambda(model, param, r, name, quad)) for name in reps}
            spread = max(abs(vals[a] - vals[b]) for a in reps for b in reps)
            rep.check(f"representations_agree_r={r:g}", spread, req.check_tolerance(1e-8))
    if param.is_real:
        rep.outputs["limit_class"] = hy.limit_class(param.lam.real)
    if req.zeros_r_max is not None:
        if not param.is_real:
            raise hy.DomainError("zeros are scanned for real lambda only")
        lam = param.lam.real
        gap = lam - model.threshold
        step = req.zeros_step or (math.pi / math.sqrt(gap) / 16 if gap > 0 else req.zeros_r_max / 64)
        scan = hy.zeros_scan(model, lam, req.zeros_r_max, step, quad)
        rep.outputs.update(zeros=scan.zeros, spacing_bounds=scan.spacing_bounds, oscillation_start=scan.start)
        rep.check("zero_spacing_within_bounds", 0.0 if scan.spacings_ok else 1.0, 0.0)
    return rep


# dirichlet --------------------------------------------------------------------

def dirichlet(req: DirichletRequest) -> RunReport:
    rep = RunReport(f"dirichlet {req.action}", _inputs(req))
    model, quad = req.model(), req.quad()
    if req.action == "bounds":
        if req.d1 is not None:
            n = req.n if req.n is not None else model.n
            b = dl.domain_bounds(n, model.kappa, req.d1, req.d2)
            rep.outputs.update(lower=b.lower, upper=b.upper)
            return rep
        b = dl.lambda_min_bounds(dl.DiskProblem(model, req.delta))
        rep.outputs.update(lower=b.lower, upper=b.upper, exact=b.exact)
        return rep
    problem = dl.DiskProblem(model, req.delta)
    if req.action == "spectrum":
        entries = dl.spectrum_k2(problem, req.j_max)
        rep.table_header = ["j", "lambda", "b", "eigenfunction"]
        rep.outputs["spectrum"] = [{"j": e.j, "lambda": e.lam, "b": e.b, "eigenfunction": e.description()}
                                   for e in entries]
        for e in entries:
            rep.table_rows.append([e.j, e.lam, e.b, e.description()])
        lam_max = entries[-1].lam + 1.0
        samples = max(400, 40 * req.j_max)
        found = dl.eigenvalue_scan(problem, lam_max, samples, quad)
        rep.outputs["scanned"] = found
        ok = len(found) == len(entries)
        worst = max((abs(f - e.lam) for f, e in zip(found, entries)), default=0.0) if ok else math.inf
        rep.check("scan_reproduces_spectrum", worst, req.check_tolerance(1e-6), passed=ok and worst <= req.check_tolerance(1e-6))
        return rep
    numeric = dl.lambda_min_numeric(problem, req.tol, quad=quad)
    b = dl.lambda_min_bounds(problem)
    rep.outputs.update(lambda_min=numeric, lower=b.lower, upper=b.upper, exact=b.exact)
    if b.exact is not None:
        rep.check("matches_exact", abs(numeric - b.exact), req.check_tolerance(1e-6))
    if b.lower is not None:
        rep.check("above_lower_bound", b.lower - numeric, 0.0, passed=numeric > b.lower)
    if b.upper is not None:
        rep.check("below_upper_bound", numeric - b.upper, 0.0, passed=numeric < b.upper)
    return rep


# one-radius -------------------------------------------------------------------

def one_radius(req: OneRadiusRequest) -> RunReport:
    rep = RunReport("one-radius", _inputs(req))
    out = dl.one_radius_check(req.model(), req.mu, req.nu, req.samples, req.quad())
    rep.outputs.update(p=out.p, interval=list(out.interval), truncated=out.truncated, samples=out.samples,
                       min_gap=out.min_gap, min_gap_at=out.min_gap_at, min_margin=out.min_margin)
    rep.check("gap_exceeds_ten_times_error", -out.min_margin, 0.0, passed=out.passed)
    return rep


# asymptotics --------------------------------------------------------------------

def asymptotics(req: AsymptoticsRequest) -> RunReport:
    rep = RunReport("asymptotics", _inputs(req))
    model, quad = req.model(), req.quad()
    rows = []
    if req.regime == "F_neg":
        eta = hy.eta_from_r(model, req.r)
        rep.table_header = ["s", "ratio", "error"]
        for s in req.grid:
            try:
                ratio = asy.F_ratio_neg(model, s, eta, quad)
                rows.append({"s": s, "ratio": ratio, "error": None})
            except (OmegaLabError, ValueError, OverflowError) as exc:
                rows.append({"s": s, "ratio": None, "error": str(exc)})
            rep.table_rows.append([rows[-1]["s"], rows[-1]["ratio"], rows[-1]["error"]])
        keyed = [(abs(r["s"]), r["ratio"]) for r in rows if r["ratio"] is not None]
    else:
        scan = asy.ratio_scan(model, req.regime, list(req.grid), req.r, quad)
        rep.table_header = ["lambda", "phi", "leading", "ratio", "scaled_residual", "error"]
        for row in scan:
            d = {"lambda": row.lam, "phi": row.phi, "leading": row.leading, "ratio": row.ratio,
                 "scaled_residual": row.scaled_residual, "error": row.error}
            d.update(row.extra)
            rows.append(d)
            rep.table_rows.append([row.lam, row.phi, row.leading, row.ratio, row.scaled_residual, row.error])
        if req.regime == "lambda_neg":
            keyed = [(abs(r.lam), r.ratio) for r in scan if r.ratio is not None]
        else:
            keyed = [(abs(r.lam), r.scaled_residual) for r in scan if r.scaled_residual is not None]
    rep.outputs["rows"] = rows
    keyed.sort()
    if req.regime in ("lambda_neg", "F_neg") and len(keyed) >= 2:
        dev = [abs(v - 1) for _, v in keyed]
        rep.check("ratio_improves_with_lambda", *asy.improvement(dev))
    elif req.regime == "lambda_pos" and keyed:
        vals = [v for _, v in keyed]
        if model.k in (1, 2, 4):
            rep.check("scaled_residual_bounded", max(vals), req.check_tolerance(10.0))
        elif len(vals) >= 2:
            rise = max(b - a for a, b in zip(vals[:-1], vals[1:]))
            rep.check("envelope_decreases", rise, 0.0, passed=rise < 0)
    return rep


# trace-curve --------------------------------------------------------------------

def trace_curve(req: TraceRequest) -> RunReport:
    rep = RunReport("trace-curve", _inputs(req))
    cfg, quad = geo.SphereConfig(req.k, req.R, req.r), req.quad()
    spec = lc.StripSpec(cfg, req.p if req.p is not None else lc.strip_p_max(cfg))
    step = req.step if req.step is not None else spec.p / 16
    curve = lc.trace_level_curve(spec, req.seed, step, quad, tol=req.trace_tol)
    rep.outputs.update(curve_type=curve.curve_type.value, level=curve.level, exit=curve.exit,
                       points=len(curve.points), p=spec.p, step=step)
    rep.table_header = ["xi", "zeta", "W", "I"]
    for (x, z), w, i in zip(curve.points, curve.W, curve.I):
        rep.table_rows.append([x, z, w, i])
    resid = max(abs(w - curve.level) for w in curve.W) / abs(curve.level)
    rep.check("level_residual", resid, req.check_tolerance(req.trace_tol))
    d_i = np.diff(curve.I)
    rep.check("I_increasing", -float(d_i.min()), 0.0, passed=bool(d_i.min() > 0))
    if curve.curve_type is lc.CurveType.TYPE2:
        slope = curve.first_step_slope()
        rep.outputs["first_step_slope"] = slope
        rep.check("leaves_lower_edge_perpendicularly", slope, req.check_tolerance(0.1))
    if curve.curve_type is lc.CurveType.TYPE3:
        s = lc.corner_slope(spec, 1e-2 * spec.p, quad)
        rep.outputs["corner_slope"] = s
        rep.check("corner_bisector", abs(s - 1), req.check_tolerance(0.05))
    return rep


# sweep -------------------------------------------------------------------------

_SWEEP_TARGETS = {
    "integral": (IntegralRequest, integral),
    "eval-omega": (EvalOmegaRequest, eval_omega),
    "asymptotics": (AsymptoticsRequest, asymptotics),
    "lambda-min": (DirichletRequest, dirichlet),
    "one-radius": (OneRadiusRequest, one_radius),
}


def _flatten(outputs: dict) -> dict:
    flat = {}
    for key, val in outputs.items():
        if isinstance(val, (int, float, complex, str, bool)) or val is None:
            flat[key] = val
        elif key == "rows" and isinstance(val, list) and len(val) == 1:
            flat.update({k: v for k, v in val[0].items() if k != "error"
                         and (isinstance(v, (int, float, complex, str, bool)) or v is None)})
    return flat


def _sweep_point(req: SweepRequest, value: str) -> dict:
    model_cls, builder = _SWEEP_TARGETS[req.op]
    fields = dict(req.base)
    if req.op == "asymptotics" and req.param in ("lambda", "grid", "s"):
        fields["grid"] = [value]
    else:
        fields[req.param] = value
    if req.op == "lambda-min":
        fields["action"] = "lambda-min"
    try:
        sub = builder(model_cls(**fields))
    except (ValidationError, OmegaLabError, ValueError, ArithmeticError) as exc:
        message = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        return {"status": "error", "error": message, "outputs": {}, "checks_passed": None}
    flat = _flatten(sub.outputs)
    if req.op == "asymptotics" and len(sub.outputs.get("rows", [])) == 1:
        row_error = sub.outputs["rows"][0].get("error")
        if row_error:
            return {"status": "error", "error": row_error, "outputs": flat, "checks_passed": None}
    return {"status": "ok", "error": None, "outputs": flat, "checks_passed": sub.passed}


def sweep(req: SweepRequest) -> RunReport:
    """Run one operation over a grid; rows keep grid order whatever the execution order."""
    rep = RunReport("sweep", _inputs(req))
    if req.workers > 1 and len(req.values) > 1:
        with ThreadPoolExecutor(max_workers=req.workers) as pool:
            results = list(pool.map(lambda v: _sweep_point(req, v), req.values))
    else:
        results = [_sweep_point(req, v) for v in req.values]
    rows = []
    keys: list[str] = []
    for i, (value, res) in enumerate(zip(req.values, results)):
        rows.append({"index": i, "value": value, **res})
        for key in res["outputs"]:
            if key not in keys:
                keys.append(key)
    rep.outputs["rows"] = rows
    rep.outputs["failed_points"] = sum(1 for r in rows if r["status"] != "ok")
    rep.table_header = ["index", "value", "status", "error"] + keys
    for r in rows:
        cells = [r["index"], r["value"], r["status"], r["error"]]
        for key in keys:
            v = r["outputs"].get(key)
            cells.append(_cell(v))
        rep.table_rows.append(cells)
    return rep


def _cell(v):
    if isinstance(v, complex):
        return f"{v.real:.16e}{v.imag:+.16e}i"
    return v


# dispatch ----------------------------------------------------------------------

_BUILDERS = {
    EvalOmegaRequest: eval_omega,
    IntegralRequest: integral,
    VerifyRequest: verify,
    EigenfunctionRequest: eigenfunction,
    DirichletRequest: dirichlet,
    OneRadiusRequest: one_radius,
    AsymptoticsRequest: asymptotics,
    TraceRequest: trace_curve,
    SweepRequest: sweep,
}


def run(req: BaseModel) -> RunReport:
    """Build the report for any request model and stamp its wall time."""
    start = time.perf_counter()
    rep = _BUILDERS[type(req)](req)
    rep.wall_time = time.perf_counter() - start
    return rep
