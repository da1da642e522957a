"""Deterministic serialization of run reports.

JSON is emitted by a small purpose-built writer so float formatting
(17 significant digits) and field order are fixed: identical inputs give
byte-identical output.  CSV mirrors the same rows with a fixed column
schema.
"""

from __future__ import annotations

import hashlib
import io
import math


def format_float(x):
    if isinstance(x, float):
        if math.isnan(x):
            return '"nan"'
        if math.isinf(x):
            return '"inf"' if x > 0 else '"-inf"'
        return format(x, ".17g")
    return None


def dump_json(obj, indent=0):
    """Serialize dicts/lists/scalars with fixed float formatting."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [
            f'{inner}"{k}": {dump_json(v, indent + 1)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [f"{inner}{dump_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        out = io.StringIO()
        out.write('"')
        for ch in obj:
            if ch == '"':
                out.write('\\"')
            elif ch == "\\":
                out.write("\\\\")
            elif ord(ch) < 0x20:
                out.write(f"\\u{ord(ch):04x}")
            else:
                out.write(ch)
        out.write('"')
        return out.getvalue()
    raise TypeError(f"unserializable value {obj!r}")


def config_digest(config):
    """Stable digest of a configuration dict."""
    canonical = _canonical(config)
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


def _canonical(obj):
    if isinstance(obj, dict):
        keys = sorted(obj)
        return "{" + ",".join(f'"{k}":{_canonical(obj[k])}' for k in keys) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_canonical(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return format(obj, ".17g")
    return dump_json(obj)


CSV_COLUMNS = {
    "geometry": [
        "index", "s", "kappa", "tau", "kappa_s", "kappa_ss", "tau_s",
        "t_x", "t_y", "t_z", "n_x", "n_y", "n_z", "b_x", "b_y", "b_z",
        "geometric_potential",
    ],
    "spectrum": ["index", "eigenvalue", "residual", "analytic", "delta"],
    "verify": [
        "name", "levels", "residuals", "observed_order", "tolerance",
        "passed", "note",
    ],
    "helix-check": ["quantity", "pipeline", "closed_form", "delta", "informational"],
}


def _csv_cell(v):
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ";".join(_csv_cell(x) for x in v)
    text = str(v)
    if any(ch in text for ch in ',"\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


def dump_csv(task, rows):
    cols = CSV_COLUMNS[task]
    lines = [",".join(cols)]
    for row in rows:
        lines.append(",".join(_csv_cell(row.get(c, "")) for c in cols))
    return "\n".join(lines) + "\n"
