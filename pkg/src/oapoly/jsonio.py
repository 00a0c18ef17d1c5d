"""Canonical JSON and complex-number serialization helpers.

Canonical output is byte-deterministic: object keys sorted, floats
printed with 17 significant digits, no whitespace surprises. Complex
numbers travel as [re, im] pairs everywhere in the file formats.
"""

from __future__ import annotations

import json
import math

import numpy as np


def _float_repr(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("non-finite float in canonical JSON output")
    return format(x, ".17g")


def _canonical(obj, out: list[str]) -> None:
    if obj is None or obj is True or obj is False:
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_float_repr(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError(f"non-string JSON key: {key!r}")
            if i:
                out.append(",")
            out.append(json.dumps(key))
            out.append(":")
            _canonical(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _canonical(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot canonicalize {type(obj).__name__}")


def canonical_dumps(obj) -> str:
    """Serialize to deterministic JSON (sorted keys, fixed float format)."""
    out: list[str] = []
    _canonical(obj, out)
    return "".join(out)


def complex_to_pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def pair_to_complex(pair) -> complex:
    re, im = pair
    return complex(float(re), float(im))


def vector_to_pairs(values) -> list[list[float]]:
    return [complex_to_pair(z) for z in np.asarray(values).ravel()]


def pairs_to_vector(pairs) -> np.ndarray:
    return np.array([pair_to_complex(p) for p in pairs], dtype=np.complex128)


def matrix_to_pairs(mat) -> list[list[list[float]]]:
    mat = np.asarray(mat)
    return [[complex_to_pair(z) for z in row] for row in mat]


def pairs_to_matrix(rows) -> np.ndarray:
    return np.array(
        [[pair_to_complex(p) for p in row] for row in rows], dtype=np.complex128
    )


def rows_to_csv(rows: list[dict], fieldnames: list[str]) -> str:
    """Render table rows as CSV with the given column order."""
    lines = [",".join(fieldnames)]
    for row in rows:
        cells = []
        for name in fieldnames:
            value = row.get(name, "")
            if isinstance(value, (float, np.floating)):
                cells.append(_float_repr(float(value)))
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
