"""Dense complex matrix helpers on the Hilbert-Schmidt space of matrices."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class DegeneracyError(ValueError):
    """A matrix set is linearly dependent."""

    def __init__(self, message: str, eigenvalue: float):
        super().__init__(message)
        self.eigenvalue = eigenvalue


@dataclass(frozen=True)
class Tolerance:
    eps_orth: float = 1e-9
    eps_sv: float = 1e-9
    eps_rank: float = 1e-8

    def __post_init__(self):
        for name in ("eps_orth", "eps_sv", "eps_rank"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {value!r}")

    @classmethod
    def from_env(cls, **overrides) -> "Tolerance":
        """Defaults, then ``UMEB_TOLERANCE_{ORTH,SV,RANK}``, then non-None overrides."""
        values = {}
        for name, var in (("eps_orth", "UMEB_TOLERANCE_ORTH"),
                          ("eps_sv", "UMEB_TOLERANCE_SV"),
                          ("eps_rank", "UMEB_TOLERANCE_RANK")):
            if var in os.environ:
                values[name] = float(os.environ[var])
            if overrides.get(name) is not None:
                values[name] = float(overrides[name])
        return cls(**values)


DEFAULT_TOL = Tolerance()


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex128 array with finite entries."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or 0 in m.shape:
        raise DimensionError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(a^dagger b)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def singular_values(a: np.ndarray) -> np.ndarray:
    return np.linalg.svd(np.asarray(a, dtype=np.complex128), compute_uv=False)


def is_sv1(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when every singular value is 1 within ``tol.eps_sv``."""
    return bool(np.all(np.abs(singular_values(a) - 1.0) <= tol.eps_sv))


def rank(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> int:
    # relative cutoff keeps the count scale invariant; absolute floor catches the zero matrix
    s = singular_values(a)
    if s.size == 0 or s[0] <= tol.eps_rank:
        return 0
    return int(np.count_nonzero(s > tol.eps_rank * s[0]))


def stack_vectors(members) -> np.ndarray:
    """Row-major flatten each member into one row of an (n, rows*cols) array."""
    members = [np.asarray(m) for m in members]
    if not members:
        raise DimensionError("empty matrix set")
    shape = members[0].shape
    for m in members:
        if m.shape != shape:
            raise DimensionError(f"shape mismatch: {shape} vs {m.shape}")
    return np.stack([m.reshape(-1) for m in members]).astype(np.complex128)


def gram_matrix(members) -> np.ndarray:
    """G[i, j] = Tr(members[i]^dagger members[j])."""
    v = stack_vectors(members)
    return v.conj() @ v.T


def orthonormal_complement(members, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis (Tr(E^dagger E) = 1) of the complement of span(members).

    Complement vectors come from a complete Householder QR of the stacked
    members, i.e. orthonormalising the elementary basis against the set,
    followed by one re-orthogonalisation pass.
    """
    v = stack_vectors(members)
    shape = np.asarray(members[0]).shape
    n, dim = v.shape
    gram = v.conj() @ v.T
    eig = np.linalg.eigvalsh(gram)
    if eig[0] <= tol.eps_rank * max(eig[-1], 1.0):
        raise DegeneracyError(
            f"member set is linearly dependent (smallest Gram eigenvalue {eig[0]:.3e})",
            float(eig[0]))
    if n >= dim:
        return []
    q, _ = np.linalg.qr(v.T, mode="complete")
    span, comp = q[:, :n], q[:, n:]
    comp = comp - span @ (span.conj().T @ comp)
    comp, _ = np.linalg.qr(comp)
    return [comp[:, i].reshape(shape) for i in range(dim - n)]
