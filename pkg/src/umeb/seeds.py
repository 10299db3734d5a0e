"""Seed bases: small unextendible sets of unitary / SV1 matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .linalg import DEFAULT_TOL, Tolerance, as_matrix, gram_matrix, singular_values

GOLDEN = (1 + np.sqrt(5)) / 2
# Tr(W_i^dagger W_j) = 7/5 + (8/5) cos(theta) for overlap 1/5; vanishes at cos(theta) = -7/8
BRAVYI_SMOLIN_COS_THETA = -7 / 8


class SeedKind(str, Enum):
    UUB = "UUB"
    USV1B = "USV1B"


class SeedValidationError(ValueError):
    """A seed basis violates one of its invariants; ``check`` names which."""

    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


@dataclass(frozen=True)
class SeedBasis:
    kind: SeedKind
    d_small: int
    d_large: int
    members: tuple[np.ndarray, ...]
    provenance: str

    @property
    def shape(self) -> tuple[int, int]:
        return (self.d_large, self.d_small)

    def __len__(self) -> int:
        return len(self.members)

    def failures(self, tol: Tolerance = DEFAULT_TOL) -> list[SeedValidationError]:
        """Every invariant violation, in check order."""
        out = []
        if self.kind is SeedKind.UUB and self.d_small != self.d_large:
            out.append(SeedValidationError("shape", "UUB seeds must be square"))
        if self.d_small > self.d_large:
            out.append(SeedValidationError("shape", "rows must be >= cols"))
        bad = [i for i, m in enumerate(self.members) if m.shape != self.shape]
        if bad:
            out.append(SeedValidationError(
                "shape", f"members {bad} do not have shape {self.shape}"))
            return out
        if not self.members:
            out.append(SeedValidationError("completeness", "seed has no members"))
            return out
        dev = max(float(np.max(np.abs(singular_values(m) - 1))) for m in self.members)
        if dev > tol.eps_sv:
            out.append(SeedValidationError(
                "sv1", f"singular values deviate from 1 by {dev:.3e}"))
        g = gram_matrix(self.members)
        res = float(np.max(np.abs(g - self.d_small * np.eye(len(self.members)))))
        if res > tol.eps_orth * self.d_small:
            out.append(SeedValidationError(
                "orthogonality", f"Gram residual {res:.3e} exceeds tolerance"))
        if len(self.members) >= self.d_small * self.d_large:
            out.append(SeedValidationError(
                "completeness",
                f"{len(self.members)} members; need fewer than {self.d_small * self.d_large}"))
        return out

    def validate(self, tol: Tolerance = DEFAULT_TOL) -> "SeedBasis":
        errors = self.failures(tol)
        if errors:
            raise errors[0]
        return self

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "rows": self.d_large,
            "cols": self.d_small,
            "members": [matrix_to_pairs(m) for m in self.members],
            "provenance": self.provenance,
        }


def matrix_to_pairs(m: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(m).reshape(-1)]


def pairs_to_matrix(pairs, rows: int, cols: int) -> np.ndarray:
    arr = np.asarray(pairs, dtype=np.float64)
    if arr.shape != (rows * cols, 2):
        raise ValueError(f"expected {rows * cols} [re, im] pairs, got array of shape {arr.shape}")
    return as_matrix((arr[:, 0] + 1j * arr[:, 1]).reshape(rows, cols))


def golden_states() -> list[np.ndarray]:
    """The six real unit vectors (|a> +/- phi |a+1>)/sqrt(1 + phi^2), a = 0, 1, 2."""
    norm = np.sqrt(1 + GOLDEN**2)
    states = []
    for a in range(3):
        for sign in (1, -1):
            v = np.zeros(3, dtype=np.complex128)
            v[a] = 1
            v[(a + 1) % 3] = sign * GOLDEN
            states.append(v / norm)
    return states


def bravyi_smolin_members(theta: float) -> list[np.ndarray]:
    """W_j = I - (1 - e^{i theta}) |psi_j><psi_j| for the six golden-ratio states."""
    c = 1 - np.exp(1j * theta)
    return [np.eye(3) - c * np.outer(v, v.conj()) for v in golden_states()]


def bravyi_smolin_seed() -> SeedBasis:
    """Six-member UUB in M_3x3 with theta = arccos(-7/8) in (0, pi]."""
    theta = float(np.arccos(BRAVYI_SMOLIN_COS_THETA))
    return SeedBasis(SeedKind.UUB, 3, 3, tuple(bravyi_smolin_members(theta)),
                     "builtin:bravyi-smolin")


def two_by_three_seed() -> SeedBasis:
    """Four-member USV1B in M_3x2: |0'><0| +/- |1'><1| and |0'><1| +/- |1'><0|."""
    def ket_bra(r, c):
        m = np.zeros((3, 2), dtype=np.complex128)
        m[r, c] = 1
        return m

    members = (
        ket_bra(0, 0) + ket_bra(1, 1),
        ket_bra(0, 0) - ket_bra(1, 1),
        ket_bra(0, 1) + ket_bra(1, 0),
        ket_bra(0, 1) - ket_bra(1, 0),
    )
    return SeedBasis(SeedKind.USV1B, 2, 3, members, "builtin:two-by-three")


BUILTIN_SEEDS = {
    "bravyi-smolin": bravyi_smolin_seed,
    "two-by-three": two_by_three_seed,
}


def builtin_seed(name: str) -> SeedBasis:
    key = name.removeprefix("builtin:")
    try:
        return BUILTIN_SEEDS[key]()
    except KeyError:
        raise ValueError(f"unknown builtin seed {name!r}; have {sorted(BUILTIN_SEEDS)}") from None


def seed_from_json(data: dict, *, validate: bool = True,
                   tol: Tolerance = DEFAULT_TOL) -> SeedBasis:
    try:
        kind = SeedKind(data["kind"])
        rows, cols = int(data["rows"]), int(data["cols"])
        members = tuple(pairs_to_matrix(m, rows, cols) for m in data["members"])
        provenance = str(data.get("provenance", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed seed description: {exc}") from exc
    seed = SeedBasis(kind, cols, rows, members, provenance)
    return seed.validate(tol) if validate else seed


def load_seed(path, tol: Tolerance = DEFAULT_TOL) -> SeedBasis:
    """Read a seed JSON file and re-check every invariant.

    Raises ``ValueError`` on parse problems and ``SeedValidationError`` on
    invariant violations.
    """
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    return seed_from_json(data, tol=tol)


def save_seed(seed: SeedBasis, path) -> None:
    from .io import write_json

    write_json(path, seed.to_json())
