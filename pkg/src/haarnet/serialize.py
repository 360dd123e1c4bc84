"""Byte-deterministic JSON and CSV emission.

Identical inputs must produce identical output bytes: keys are sorted,
floats use their shortest round-trip repr, and non-finite floats are
encoded as the strings "inf", "-inf" and "nan" so every file stays valid
JSON.
"""

from __future__ import annotations

import json
import math

__all__ = ["canonical_json", "format_float", "rows_to_csv",
           "spectrum_csv", "spectrum_json_dict", "netmax_csv"]


def _sanitize(obj):
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def canonical_json(obj) -> str:
    return json.dumps(_sanitize(obj), sort_keys=True, indent=2) + "\n"


def format_float(x: float) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def rows_to_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_float(v) for v in row))
    return "\n".join(lines) + "\n"


def spectrum_csv(spectrum) -> str:
    """Columns k1,k2,j1,j2,value; constant factors use k = -1, j = 0."""
    from .transform import spectrum_records

    return rows_to_csv(("k1", "k2", "j1", "j2", "value"), spectrum_records(spectrum))


def spectrum_json_dict(spectrum) -> dict:
    from .transform import spectrum_records

    return {
        "level": spectrum.level,
        "records": [
            {"k1": k1, "k2": k2, "j1": j1, "j2": j2, "value": v}
            for (k1, k2, j1, j2, v) in spectrum_records(spectrum)
        ],
    }


def netmax_csv(table) -> str:
    """Columns s1,s2,size_max,fbar with 1-based integer sizes."""
    return rows_to_csv(("s1", "s2", "size_max", "fbar"), table.records())
