"""File formats for matrices and truncated shift models.

Matrix files are plain text: a ``rows cols`` header line, then one line per
row with whitespace-separated ``re,im`` fields.  Values are written with
``repr`` so a write/read cycle is bit-exact.  Model files are JSON with keys
``d``, ``N`` and ``A``, where ``A`` is either a path to a matrix file
(relative paths resolve against the model file) or inline nested arrays whose
entries are numbers or ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .errors import DimensionMismatch
from .operators import TruncatedShiftModel

__all__ = ["save_matrix", "load_matrix", "save_model", "load_model"]


def save_matrix(path: str, m: np.ndarray) -> None:
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    rows, cols = m.shape
    with open(path, "w") as fh:
        fh.write(f"{rows} {cols}\n")
        for r in range(rows):
            fh.write(" ".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in m[r]) + "\n")


def load_matrix(path: str) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise DimensionMismatch(f"{path}: malformed matrix header {header!r}")
        rows, cols = int(header[0]), int(header[1])
        out = np.zeros((rows, cols), dtype=complex)
        for r in range(rows):
            fields = fh.readline().split()
            if len(fields) != cols:
                raise DimensionMismatch(f"{path}: row {r} has {len(fields)} fields, expected {cols}")
            for c, field in enumerate(fields):
                re, im = field.split(",")
                out[r, c] = complex(float(re), float(im))
    return out


def _entry_to_json(z: complex):
    return float(z.real) if z.imag == 0.0 else [float(z.real), float(z.imag)]


def save_model(path: str, model: TruncatedShiftModel, matrix_path: str | None = None) -> None:
    """Write a model JSON; with matrix_path the weight block goes to a side file."""
    if matrix_path is not None:
        save_matrix(matrix_path, model.A)
        a_field = os.path.relpath(matrix_path, os.path.dirname(os.path.abspath(path)))
    else:
        a_field = [[_entry_to_json(z) for z in row] for row in model.A]
    with open(path, "w") as fh:
        json.dump({"d": model.fiber_dim, "N": model.depth, "A": a_field}, fh, indent=2)
        fh.write("\n")


def _entry_from_json(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    re, im = v
    return complex(re, im)


def load_model(path: str) -> TruncatedShiftModel:
    with open(path) as fh:
        obj = json.load(fh)
    a_field = obj["A"]
    if isinstance(a_field, str):
        a = load_matrix(os.path.join(os.path.dirname(os.path.abspath(path)), a_field))
    else:
        a = np.array([[_entry_from_json(v) for v in row] for row in a_field], dtype=complex)
    return TruncatedShiftModel(int(obj["d"]), int(obj["N"]), a)
