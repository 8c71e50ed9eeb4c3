"""Deterministic JSON/CSV text output.

Floats are written with 17 significant digits so that every report round-trips
exactly; NaN and infinities become ``null``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def _plain(obj):
    """Convert numpy scalars/arrays, complex numbers and fractions to JSON types."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating, Fraction)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _plain(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(obj, indent: int, level: int, out: list[str]) -> None:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        # short numeric rows stay on one line
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) or v is None for v in obj) or all(
            isinstance(v, list) and len(v) == 2 and all(isinstance(u, (int, float)) for u in v) for v in obj
        ):
            parts: list[str] = []
            for v in obj:
                sub: list[str] = []
                _emit(v, 0, 0, sub)
                parts.append("".join(sub))
            out.append("[" + ", ".join(parts) + "]")
            return
        out.append("[")
        for k, v in enumerate(obj):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            if k < len(obj) - 1:
                out.append(",")
        out.append(end + "]")
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        items = list(obj.items())
        for k, (key, v) in enumerate(items):
            out.append(pad + json.dumps(key, ensure_ascii=False) + ": ")
            _emit(v, indent, level + 1, out)
            if k < len(items) - 1:
                out.append(",")
        out.append(end + "}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    out: list[str] = []
    _emit(_plain(obj), indent, 0, out)
    return "".join(out)


def loads(text: str):
    return json.loads(text)
