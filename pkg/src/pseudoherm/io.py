"""Deterministic file formats.

Matrices travel as JSON objects {"dim": N, "entries": [[[re, im], ...]]}
with row-major nested arrays of [re, im] pairs, which round-trips IEEE
doubles exactly. CSV output uses '.' decimals and 17 significant digits so
that re-parsing recovers the exact double.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math

import numpy as np

from .errors import DimensionError, ParseError


def format_float(x) -> str:
    """17 significant digits: round-trip safe for IEEE doubles."""
    return f"{float(x):.17g}"


def matrix_to_jsonable(m) -> dict:
    a = np.asarray(m, dtype=complex)
    return {
        "dim": int(a.shape[0]),
        "entries": [
            [[float(z.real), float(z.imag)] for z in row] for row in a
        ],
    }


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_matrix_file(path, m) -> None:
    with open(path, "w") as fh:
        fh.write(dump_json(matrix_to_jsonable(m)))


def parse_matrix_dict(data, where: str = "matrix") -> np.ndarray:
    """Validate the nested [re, im] layout and build the complex matrix."""
    if not isinstance(data, dict) or "dim" not in data or "entries" not in data:
        raise ParseError(f"{where}: expected an object with 'dim' and 'entries'")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"{where}: 'dim' must be a positive integer")
    entries = data["entries"]
    if not isinstance(entries, list) or len(entries) != dim:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise DimensionError(f"{where}: expected {dim} rows, got {got}")
    out = np.zeros((dim, dim), dtype=complex)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != dim:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise DimensionError(f"{where}: row {i} has {got} entries, expected {dim}")
        for j, cell in enumerate(row):
            ok = (
                isinstance(cell, list)
                and len(cell) == 2
                and all(
                    isinstance(v, (int, float)) and not isinstance(v, bool)
                    for v in cell
                )
            )
            if not ok:
                raise ParseError(f"{where}: entry ({i},{j}) must be a [re, im] pair")
            re_, im_ = float(cell[0]), float(cell[1])
            if not (math.isfinite(re_) and math.isfinite(im_)):
                raise ParseError(f"{where}: entry ({i},{j}) is not finite")
            out[i, j] = complex(re_, im_)
    return out


def parse_matrix_file(path) -> np.ndarray:
    """Read the matrix JSON format; rejects non-square and non-finite data."""
    try:
        with open(path) as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc

    def _reject_constant(name):
        raise ParseError(f"{path}: non-finite constant {name!r}")

    try:
        data = json.loads(raw, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        # exc carries line and column diagnostics
        raise ParseError(f"{path}: {exc}") from exc
    return parse_matrix_dict(data, where=str(path))


def render_csv(header, rows) -> str:
    """CSV text with fixed float formatting and '\\n' line endings."""
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([
            cell if isinstance(cell, str) else format_float(cell)
            for cell in row
        ])
    return buf.getvalue()
