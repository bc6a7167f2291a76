"""JSON documents for elements, decisions, paths and reports.

An element document looks like::

    {"signature": [1, 2],
     "coords": [[[[1, 0]]],
                [[[2, 0], [0, 0]], [[0, 0], [0, 0]]]]}

Each matrix is a list of rows, each entry an ``[re, im]`` pair.  Floats go
through ``repr`` so a parse/serialize round trip is exact.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InputError
from .linalg import DirectSumElement, check_signature

__all__ = [
    "decision_to_dict",
    "dump_json",
    "element_from_doc",
    "element_to_doc",
    "jsonable",
    "load_element",
    "lower_bound_to_dict",
    "mutual_to_dict",
    "path_to_dict",
    "write_atomic",
]


def _number(x: float) -> float | int:
    x = float(x)
    if x == 0.0:
        return 0  # folds -0.0
    return int(x) if x.is_integer() and abs(x) < 2**53 else x


def matrix_to_doc(m: np.ndarray) -> list:
    return [[[_number(z.real), _number(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def element_to_doc(e: DirectSumElement) -> dict:
    return {"signature": list(e.signature), "coords": [matrix_to_doc(c) for c in e.coords]}


def _entry(value: Any, where: str) -> complex:
    if not isinstance(value, list) or len(value) != 2:
        raise InputError(f"{where}: expected an [re, im] pair, got {value!r}")
    parts = []
    for part in value:
        if isinstance(part, bool) or not isinstance(part, (int, float)):
            raise InputError(f"{where}: entries must be numbers, got {part!r}")
        if not math.isfinite(part):
            raise InputError(f"{where}: non-finite entry {part!r}")
        parts.append(float(part))
    return complex(parts[0], parts[1])


def element_from_doc(doc: Any) -> DirectSumElement:
    """Parse an element document, reporting the position of the first problem."""
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object with 'signature' and 'coords'")
    for key in ("signature", "coords"):
        if key not in doc:
            raise InputError(f"missing key {key!r}")
    if not isinstance(doc["signature"], list) or any(isinstance(n, bool) or not isinstance(n, int) for n in doc["signature"]):
        raise InputError("signature must be a list of integers")
    sig = check_signature(doc["signature"])
    coords = doc["coords"]
    if not isinstance(coords, list) or len(coords) != len(sig):
        raise InputError(f"coords must be a list of {len(sig)} matrices")
    out = []
    for i, (n, mat) in enumerate(zip(sig, coords)):
        where = f"coords[{i}]"
        if not isinstance(mat, list) or len(mat) != n:
            raise InputError(f"{where}: expected {n} rows")
        arr = np.zeros((n, n), dtype=complex)
        for r, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != n:
                raise InputError(f"{where}[{r}]: expected {n} entries")
            for c, value in enumerate(row):
                arr[r, c] = _entry(value, f"{where}[{r}][{c}]")
        out.append(arr)
    return DirectSumElement(tuple(out))


def load_element(path: str | os.PathLike) -> DirectSumElement:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return element_from_doc(doc)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# reports


def jsonable(x: Any) -> Any:
    """Recursively convert numpy scalars/arrays, enums and infinities into JSON values."""
    if isinstance(x, DirectSumElement):
        return element_to_doc(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, str):
        return str(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(x, (complex, np.complexfloating)):
        return [_number(x.real), _number(x.imag)]
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            return jsonable([complex(v) for v in x.ravel()]) if x.ndim == 1 else matrix_to_doc(x)
        return jsonable(x.tolist())
    if x is None:
        return None
    raise TypeError(f"cannot serialize {type(x).__name__}")


def decision_to_dict(d) -> dict:
    out = {
        "verdict": str(d.verdict),
        "margin": d.margin,
        "subspace": {"verdict": str(d.subspace.verdict), "measure": d.subspace.measure, "margin": d.subspace.margin},
        "ideal": {"verdict": str(d.ideal.verdict), "measure": d.ideal.measure, "margin": d.ideal.margin},
        "certificate": None,
    }
    if d.certificate is not None:
        c = d.certificate
        out["certificate"] = {
            "coordinate_index": c.coordinate_index,
            "witness": c.witness,
            "norm_residual": c.norm_residual,
            "orth_residual": c.orth_residual,
        }
    return jsonable(out)


def mutual_to_dict(m) -> dict:
    return {
        "verdict": str(m.verdict),
        "forward": decision_to_dict(m.forward),
        "backward": decision_to_dict(m.backward),
    }


def path_to_dict(p) -> dict:
    return {
        "theorem_case": str(p.theorem_case),
        "length": p.length,
        "bound": p.bound,
        "hard_case": p.hard_case,
        "vertices": [element_to_doc(v) for v in p.vertices],
        "edges": [mutual_to_dict(e) for e in p.edge_certificates],
    }


def lower_bound_to_dict(r) -> dict:
    return jsonable({
        "claim": f"distance >= {r.claim}",
        "status": str(r.status),
        "scope": r.scope,
        "pair": list(r.pair),
        "steps": [{"name": s.name, "passed": s.passed, "constraint": s.constraint, "detail": s.detail} for s in r.steps],
        "neighbor": r.neighbor,
        "notes": list(r.notes),
    })


def dump_json(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, allow_nan=False)


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
