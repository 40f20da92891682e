"""Run reports and their byte-stable JSON/CSV serialisation."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .grid import GridFunction


@dataclass
class Check:
    name: str
    passed: bool
    measured: float
    tolerance: float

    def as_dict(self):
        return {"name": self.name, "pass": self.passed, "measured": self.measured, "tolerance": self.tolerance}


def check_below(name: str, measured: float, tolerance: float) -> Check:
    measured = float(measured)
    return Check(name, bool(measured <= tolerance), measured, float(tolerance))


@dataclass
class RunReport:
    command: str
    parameters: dict[str, Any]
    results: Any
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self):
        return {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "checks": [c.as_dict() for c in self.checks],
        }


def grid_payload(f: GridFunction) -> dict:
    flat = f.values.ravel(order="C")
    return {
        "extents": list(f.extents),
        "spacing": list(f.spacing),
        "values_real": flat.real.tolist(),
        "values_imag": flat.imag.tolist(),
    }


def grid_from_payload(payload: dict) -> GridFunction:
    spacing = tuple(payload["spacing"])
    shape = tuple(int(round(2 * r / h)) + 1 for r, h in zip(payload["extents"], spacing))
    values = np.asarray(payload["values_real"]) + 1j * np.asarray(payload["values_imag"])
    return GridFunction(values.reshape(shape), spacing)


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj, indent: int = 0, level: int = 0) -> str:
    """JSON with every float written at 17 significant digits and key order kept."""
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = "," + pad if indent else ", "
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps({"real": obj.real, "imag": obj.imag}, indent, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [json.dumps(str(k)) + ": " + dumps(v, indent, level + 1) for k, v in obj.items()]
        return "{" + pad + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = obj.tolist() if isinstance(obj, np.ndarray) else obj
        if not seq:
            return "[]"
        # numeric arrays stay on one line
        if all(isinstance(v, (int, float, np.floating, np.integer)) and not isinstance(v, bool) for v in seq):
            return "[" + ", ".join(dumps(v) for v in seq) + "]"
        return "[" + pad + sep.join(dumps(v, indent, level + 1) for v in seq) + end + "]"
    if hasattr(obj, "as_dict"):
        return dumps(obj.as_dict(), indent, level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")
