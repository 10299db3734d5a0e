"""JSON interchange: seed files, basis files, reports.

Floats are written with 17 significant digits so identical inputs give
byte-identical files.  Writes go to a temp file that is renamed into place.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .lifts import CandidateUMEB, LiftParams
from .linalg import Tolerance
from .seeds import matrix_to_pairs, pairs_to_matrix, seed_from_json

INDEX_CONVENTION = ("member[l', k] row-major; state amplitude index k*dB + l'; "
                    "lift rows = outer_row*inner_rows + inner_row")


def _encode(obj, level: int) -> str:
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        s = format(x, ".17g")
        return s if any(ch in s for ch in ".en") else s + ".0"
    if isinstance(obj, str):
        return json.dumps(obj)
    pad, inner = " " * level, " " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_encode(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj) or \
                all(isinstance(v, (list, tuple)) and len(v) == 2
                    and not isinstance(v[0], (list, tuple, dict)) for v in obj):
            return "[" + ", ".join(_encode(v, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + _encode(v, level + 1) for v in obj) + "\n" + pad + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return _encode(obj, 0) + "\n"


def write_json(path, obj) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(dumps(obj))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc


def candidate_to_json(c: CandidateUMEB) -> dict:
    params = None if c.params is None else {"p": c.params.p, "q": c.params.q, "d": c.params.d}
    header = {
        "dA": c.dA,
        "dB": c.dB,
        "theorem": c.theorem,
        "seed_provenance": None if c.seed is None else c.seed.provenance,
        "source": c.source,
        "params": params,
        "member_count": len(c),
        "expected_count": c.expected_count,
        "index_convention": INDEX_CONVENTION,
        "tags": list(c.tags),
        "notes": list(c.notes),
        "seed": None if c.seed is None else c.seed.to_json(),
    }
    return {"header": header, "members": [matrix_to_pairs(m) for m in c.members]}


def candidate_from_json(data: dict) -> CandidateUMEB:
    try:
        h = data["header"]
        dA, dB = int(h["dA"]), int(h["dB"])
        members = tuple(pairs_to_matrix(m, dB, dA) for m in data["members"])
        tags = h.get("tags") or [{"family": "user", "index": i} for i in range(len(members))]
        params = h.get("params")
        params = None if params is None else LiftParams(int(params["p"]), int(params["q"]),
                                                        int(params["d"]))
        seed = h.get("seed")
        # seed problems are reported by the certificate, not rejected here
        seed = None if seed is None else seed_from_json(seed, validate=False)
        return CandidateUMEB(dA, dB, members, tuple(tags), str(h.get("source", "file")),
                             h.get("theorem"), seed, params, tuple(h.get("notes", ())))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed basis file: {exc}") from exc


def load_candidate(path) -> CandidateUMEB:
    return candidate_from_json(read_json(path))


def save_candidate(c: CandidateUMEB, path) -> None:
    write_json(path, candidate_to_json(c))


def report_metadata(tol: Tolerance, rng_seed: int, **extra) -> dict:
    meta = {
        "tool": "umeb",
        "version": __version__,
        "eps_orth": tol.eps_orth,
        "eps_sv": tol.eps_sv,
        "eps_rank": tol.eps_rank,
        "rng_seed": rng_seed,
    }
    meta.update(extra)
    return meta
