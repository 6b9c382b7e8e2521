"""On-disk formats: state files, unitary files and decomposition dumps.

A state file is a JSON document with exactly these fields:

    dims  -- list of subsystem dimensions
    kind  -- "pure" or "mixed"
    re,im -- row-major real and imaginary parts: flat vectors of length
             prod(dims) for a pure state, nested prod(dims)-square lists
             for a mixed one

Inconsistent shapes are rejected rather than coerced.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import List, Tuple

import numpy as np

from .errors import InvalidStateError
from .states import DensityMatrix, PureState, StateLike


def _read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidStateError(f"cannot read state file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"state file {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InvalidStateError(f"state file {path} must hold a JSON object")
    return doc


def _vector(doc: dict, field: str, length: int, path) -> np.ndarray:
    data = doc.get(field)
    if not isinstance(data, list) or len(data) != length:
        raise InvalidStateError(
            f"state file {path}: field {field!r} must be a flat list of length {length}"
        )
    return np.asarray(data, dtype=float)


def _matrix(doc: dict, field: str, dim: int, path) -> np.ndarray:
    data = doc.get(field)
    if (not isinstance(data, list) or len(data) != dim
            or any(not isinstance(row, list) or len(row) != dim for row in data)):
        raise InvalidStateError(
            f"state file {path}: field {field!r} must be a {dim}x{dim} nested list"
        )
    return np.asarray(data, dtype=float)


def load_state(path) -> StateLike:
    """Load a pure or mixed state from a state file."""
    doc = _read_json(path)
    missing = {"dims", "kind", "re", "im"} - set(doc)
    if missing:
        raise InvalidStateError(f"state file {path} lacks fields {sorted(missing)}")
    dims = doc["dims"]
    if (not isinstance(dims, list) or not dims
            or any(not isinstance(d, int) or d < 1 for d in dims)):
        raise InvalidStateError(f"state file {path}: dims must be a list of positive integers")
    total = int(np.prod(dims))
    kind = doc["kind"]
    if kind == "pure":
        amp = _vector(doc, "re", total, path) + 1j * _vector(doc, "im", total, path)
        return PureState(amp, tuple(dims))
    if kind == "mixed":
        mat = _matrix(doc, "re", total, path) + 1j * _matrix(doc, "im", total, path)
        return DensityMatrix(mat, tuple(dims))
    raise InvalidStateError(f"state file {path}: kind must be 'pure' or 'mixed', got {kind!r}")


def _state_doc(state: StateLike) -> dict:
    if isinstance(state, PureState):
        dims = state.subsystem_dims or (state.dim,)
        return {"dims": list(dims), "kind": "pure",
                "re": state.amplitudes.real.tolist(),
                "im": state.amplitudes.imag.tolist()}
    dims = state.subsystem_dims or (state.dim,)
    return {"dims": list(dims), "kind": "mixed",
            "re": state.matrix.real.tolist(),
            "im": state.matrix.imag.tolist()}


def save_state(path, state: StateLike) -> None:
    """Write a state file for a pure or mixed state."""
    Path(path).write_text(json.dumps(_state_doc(state)) + "\n")


def load_unitary(path) -> np.ndarray:
    """Load a square complex matrix from a JSON file with re/im fields."""
    doc = _read_json(path)
    re = doc.get("re")
    if not isinstance(re, list) or not re:
        raise InvalidStateError(f"unitary file {path}: field 're' must be a nested list")
    dim = len(re)
    return _matrix(doc, "re", dim, path) + 1j * _matrix(doc, "im", dim, path)


def save_decomposition(path, decomposition: List[Tuple[float, PureState]]) -> None:
    """Dump a pure-state decomposition as probabilities plus state documents."""
    doc = {
        "probabilities": [float(p) for p, _ in decomposition],
        "states": [_state_doc(state) for _, state in decomposition],
    }
    Path(path).write_text(json.dumps(doc) + "\n")
