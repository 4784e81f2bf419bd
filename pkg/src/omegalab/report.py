"""Run reports and their deterministic JSON and CSV renderings."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    measured: float
    tolerance: float


@dataclass
class RunReport:
    command: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0
    table_header: list[str] | None = None
    table_rows: list[list] = field(default_factory=list)

    def check(self, name: str, measured: float, tolerance: float, passed: bool | None = None) -> bool:
        """Record ``measured <= tolerance`` (or an explicit verdict) and return it."""
        measured, tolerance = float(measured), float(tolerance)
        ok = (measured <= tolerance) if passed is None else bool(passed)
        if math.isnan(measured):
            ok = False
        self.checks.append(Check(name, ok, measured, tolerance))
        return ok

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def to_jsonable(obj):
    """Plain Python structure; complex numbers become {"re", "im"} records."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def report_dict(report: RunReport, timing: bool = False) -> dict:
    """The report as a plain mapping in the fixed key order of the JSON schema."""
    return {
        "command": report.command,
        "inputs": to_jsonable(report.inputs),
        "outputs": to_jsonable(report.outputs),
        "checks": [to_jsonable({"name": c.name, "passed": c.passed, "measured": c.measured,
                                "tolerance": c.tolerance}) for c in report.checks],
        "wall_time": float(report.wall_time) if timing else 0.0,
    }


def format_number(x: float) -> str:
    """Round-trip scientific notation; non-finite values become JSON strings."""
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".16e")


def _render(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_number(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_render(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if not obj:
        return "[]"
    items = [pad + _render(v, indent, level + 1) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + end + "]"


def emit_json(report: RunReport, timing: bool = False) -> str:
    """Byte-stable JSON text (insertion key order, 17 significant digits)."""
    return _render(report_dict(report, timing), 2, 0) + "\n"


def _csv_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_number(float(v)).strip('"')
    if v is None:
        return ""
    return str(v)


def emit_csv(report: RunReport) -> str:
    """The report's table, or the checks when the command has no table."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if report.table_header is not None:
        writer.writerow(report.table_header)
        for row in report.table_rows:
            writer.writerow([_csv_cell(v) for v in row])
    else:
        writer.writerow(["name", "passed", "measured", "tolerance"])
        for c in report.checks:
            writer.writerow([c.name, _csv_cell(c.passed), _csv_cell(c.measured), _csv_cell(c.tolerance)])
    return buf.getvalue()
