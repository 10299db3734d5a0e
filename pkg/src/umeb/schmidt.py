"""Schmidt-rank structure of the complement of a candidate basis."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .lifts import matrix_to_state
from .linalg import DEFAULT_TOL, Tolerance, orthonormal_complement, rank, stack_vectors
from .seeds import matrix_to_pairs
from .verify import _members, verify_orthonormal

DEFAULT_SAMPLES = 2000


@dataclass
class ComplementProfile:
    complement_dim: int
    max_rank_found: int
    rank_histogram: dict[int, int]
    witness_max_rank: np.ndarray | None
    rho_perp_trace: float
    rho_perp_psd_min_eig: float
    samples: int
    seed_rng: int

    def to_json(self) -> dict:
        w = self.witness_max_rank
        return {
            "complement_dim": self.complement_dim,
            "max_rank_found": self.max_rank_found,
            "rank_histogram": {str(r): c for r, c in sorted(self.rank_histogram.items())},
            "witness_max_rank": None if w is None else {
                "rows": w.shape[0], "cols": w.shape[1], "entries": matrix_to_pairs(w)},
            "rho_perp_trace": self.rho_perp_trace,
            "rho_perp_psd_min_eig": self.rho_perp_psd_min_eig,
            "samples": self.samples,
            "seed_rng": self.seed_rng,
        }


def rho_perp(candidate, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """(I - sum_i |phi_i><phi_i|) / (dA dB - n), the uniform state on the complement."""
    members = _members(candidate)
    _, ok = verify_orthonormal(members, tol)
    if not ok:
        raise ValueError("members are not orthonormal")
    dB, dA = members[0].shape
    n = len(members)
    if n >= dA * dB:
        raise ValueError("complete basis: the complement is empty")
    states = np.stack([matrix_to_state(m) for m in members], axis=1)
    proj = states @ states.conj().T
    return (np.eye(dA * dB) - proj) / (dA * dB - n)


def _sample_ranks(complement, samples, seed_rng, tol):
    """Ranks over the complement basis, then over random unit-norm combinations."""
    hist: Counter[int] = Counter()
    best_rank, witness = -1, None
    for e in complement:
        r = rank(e, tol)
        hist[r] += 1
        if r > best_rank:
            best_rank, witness = r, e
    if samples:
        basis = stack_vectors(complement)
        shape = complement[0].shape
        for child in np.random.SeedSequence(seed_rng).spawn(samples):
            rng = np.random.default_rng(child)
            c = rng.standard_normal(len(complement)) + 1j * rng.standard_normal(len(complement))
            x = ((c / np.linalg.norm(c)) @ basis).reshape(shape)
            r = rank(x, tol)
            hist[r] += 1
            if r > best_rank:
                best_rank, witness = r, x
    return max(best_rank, 0), dict(hist), witness


def complement_rank_profile(candidate, samples: int = DEFAULT_SAMPLES, seed_rng: int = 0,
                            tol: Tolerance = DEFAULT_TOL) -> ComplementProfile:
    """Histogram of ranks found in the complement and a witness of the largest one.

    ``samples = 0`` sweeps only the complement basis, which gives a lower bound.
    """
    members = _members(candidate)
    rho = rho_perp(members, tol)
    complement = orthonormal_complement(members, tol)
    max_rank, hist, witness = _sample_ranks(complement, samples, seed_rng, tol)
    eig = np.linalg.eigvalsh(rho)
    return ComplementProfile(len(complement), max_rank, hist, witness,
                             float(np.trace(rho).real), float(eig[0]), samples, seed_rng)


def seed_complement_rank_bound(seed, samples: int = 1000, seed_rng: int = 0,
                               tol: Tolerance = DEFAULT_TOL) -> int:
    """Largest rank found in the complement of a seed basis (0 if the seed is complete)."""
    members = list(getattr(seed, "members", seed))
    complement = orthonormal_complement(members, tol)
    if not complement:
        return 0
    return _sample_ranks(complement, samples, seed_rng, tol)[0]
