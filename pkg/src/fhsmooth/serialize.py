"""Text output helpers: 17-significant-digit numbers, JSON, CSV, atomic writes."""

from __future__ import annotations

import math
import os
import sys
import tempfile


def format_float(x) -> str:
    """17 significant digits: enough to reproduce any double exactly."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def json_text(obj, indent: int = 0) -> str:
    """JSON with floats at 17 significant digits (stdlib json can't format)."""
    pad = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return f'"{format_float(obj)}"'  # sentinel, never a bare non-JSON token
        return format_float(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(obj, dict):
        inner = ",\n".join(
            f'{pad}  "{k}": {json_text(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        inner = ", ".join(json_text(v, indent) for v in obj)
        return "[" + inner + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_text(header: str, rows) -> str:
    """Columnar float output under a fixed header line."""
    lines = [header]
    for row in rows:
        lines.append(",".join(format_float(x) for x in row))
    return "\n".join(lines) + "\n"


def write_output(text: str, out_path=None):
    """Print to stdout, or write atomically (temp file + rename) to a path."""
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fhsmooth-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
