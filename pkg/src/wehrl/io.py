"""File formats: state vectors, density matrices, Husimi tables, reports.

Floats go through ``repr`` (shortest round-trip form), so save/load/save
is byte identical. Vectors and tables are always written in lex order.
"""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .entropy import EntropyReport, HusimiTable
from .groups import format_coords

__all__ = [
    "state_vector_to_json",
    "state_vector_from_json",
    "state_vector_to_csv",
    "state_vector_from_csv",
    "density_matrix_to_json",
    "density_matrix_from_json",
    "load_state_text",
    "load_state_file",
    "husimi_to_csv",
    "entropy_report_to_json",
]

_VECTOR_CSV_HEADER = ["index", "re", "im"]


def _pairs(values: np.ndarray) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in values]


def state_vector_to_json(vec: np.ndarray) -> str:
    return json.dumps(_pairs(np.asarray(vec)))


def state_vector_from_json(text: str) -> np.ndarray:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("state vector JSON must be a list of [re, im] pairs")
    return np.array([complex(re, im) for re, im in data], dtype=np.complex128)


def state_vector_to_csv(vec: np.ndarray) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_VECTOR_CSV_HEADER)
    for i, v in enumerate(np.asarray(vec)):
        writer.writerow([i, repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()


def state_vector_from_csv(text: str) -> np.ndarray:
    rows = list(csv.reader(_io.StringIO(text)))
    if not rows or rows[0] != _VECTOR_CSV_HEADER:
        raise ValueError("state vector CSV must start with 'index,re,im'")
    values = np.zeros(len(rows) - 1, dtype=np.complex128)
    for row in rows[1:]:
        idx = int(row[0])
        if not 0 <= idx < len(values):
            raise ValueError(f"row index {idx} out of range")
        values[idx] = complex(float(row[1]), float(row[2]))
    return values


def density_matrix_to_json(rho: np.ndarray) -> str:
    rho = np.asarray(rho)
    payload = {"dim": int(rho.shape[0]), "entries": _pairs(rho.reshape(-1))}
    return json.dumps(payload, sort_keys=True)


def density_matrix_from_json(text: str) -> np.ndarray:
    data = json.loads(text)
    if not isinstance(data, dict) or "dim" not in data or "entries" not in data:
        raise ValueError("density matrix JSON must have 'dim' and 'entries'")
    d = int(data["dim"])
    entries = data["entries"]
    if len(entries) != d * d:
        raise ValueError(f"expected {d * d} entries, got {len(entries)}")
    flat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return flat.reshape(d, d)


def load_state_text(text: str) -> tuple[str, np.ndarray]:
    """Detect and parse one of the state formats.

    Returns ("vector", 1-d array) or ("density", 2-d array).
    """
    stripped = text.lstrip()
    if stripped.startswith("["):
        return "vector", state_vector_from_json(text)
    if stripped.startswith("{"):
        return "density", density_matrix_from_json(text)
    return "vector", state_vector_from_csv(text)


def load_state_file(path: str | Path) -> tuple[str, np.ndarray]:
    return load_state_text(Path(path).read_text())


def husimi_to_csv(table: HusimiTable) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["g", "lambda", "Q"])
    for z, q in zip(table.frame.points(), table.values):
        writer.writerow(
            [format_coords(z.g.coords), format_coords(z.chi.coords), repr(float(q))]
        )
    return buf.getvalue()


def entropy_report_to_json(report: EntropyReport) -> str:
    payload = {
        "wehrl": report.wehrl,
        "von_neumann": report.von_neumann,
        "gap": report.gap,
        "log_base": report.log_base,
    }
    return json.dumps(payload, sort_keys=True)
