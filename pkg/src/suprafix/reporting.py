"""Rendering helpers for machine-readable run documents.

Machine mode emits one JSON document per run with every float printed at 17
significant digits, so reruns with the same seed are byte-identical and the
values round-trip exactly.
"""

from __future__ import annotations

import json
import math

import numpy as np


def _convert(value):
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def _emit(value, out, indent):
    value = _convert(value)
    pad = "  " * indent
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, float):
        # JSON has no NaN/Infinity literals; non-finite values render as null.
        out.append(format(value, ".17g") if math.isfinite(value) else "null")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        items = list(value.items())
        for i, (k, v) in enumerate(items):
            out.append(pad + "  " + json.dumps(str(k)) + ": ")
            _emit(v, out, indent + 1)
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        seq = list(value)
        if not seq:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(seq):
            out.append(pad + "  ")
            _emit(v, out, indent + 1)
            out.append(",\n" if i + 1 < len(seq) else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot render value of type {type(value)!r}")


def dumps_machine(doc):
    """Serialize a run document deterministically (17 significant digits)."""
    out = []
    _emit(doc, out, 0)
    out.append("\n")
    return "".join(out)


def fmt(x):
    """Compact float for text output."""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)
