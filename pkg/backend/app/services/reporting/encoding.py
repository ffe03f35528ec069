from __future__ import annotations

"""
Deterministic JSON rendering.

json.dumps offers no control over float formatting, so reals are written
here with 17 significant digits (exact round trip for doubles). Non-finite
reals become the strings "NaN", "Infinity" and "-Infinity".
"""
import json
import math
from typing import Any, List

from app.schemas.report import Report

INDENT = "  "


def format_real(x: float) -> str:
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    s = format(x, ".17g")
    # keep the JSON type a number that reads back as float
    if not any(c in s for c in ".eE"):
        s += ".0"
    return s


def _emit(value: Any, depth: int, out: List[str]) -> None:
    pad = INDENT * (depth + 1)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, float):
        out.append(format_real(value))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(value.items()):
            out.append(pad + json.dumps(str(k), ensure_ascii=False) + ": ")
            _emit(v, depth + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(INDENT * depth + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(value):
            out.append(pad)
            _emit(v, depth + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(INDENT * depth + "]")
    else:
        raise TypeError(f"cannot encode {type(value).__name__}")


def dumps(value: Any) -> str:
    """Two-space indented JSON with a trailing newline."""
    out: List[str] = []
    _emit(value, 0, out)
    out.append("\n")
    return "".join(out)


def dump_report(report: Report) -> str:
    data = report.model_dump(mode="python", by_alias=True)
    if data.get("timings") is None:
        data.pop("timings", None)
    return dumps(data)
