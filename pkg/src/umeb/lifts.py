"""Lifting seed bases to candidate UMEBs in M_{qd x pd}, and the matrix/state map.

A q' x p' matrix A corresponds to the state
sum_{k, l'} A[l', k] / sqrt(p') |k>|l'> in C^{p'} (x) C^{q'}; Schmidt rank equals
rank(A) and <phi_A|phi_B> = Tr(A^dagger B) / p'.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .generators import clock_shift, rect_clock_shift
from .linalg import as_matrix
from .seeds import SeedBasis, SeedKind


@dataclass(frozen=True)
class LiftParams:
    p: int
    q: int
    d: int

    def __post_init__(self):
        if min(self.p, self.q, self.d) < 1:
            raise ValueError(f"p, q, d must be positive, got {self}")
        if self.p > self.q:
            raise ValueError(f"need p <= q, got p={self.p}, q={self.q}")


@dataclass(frozen=True)
class CandidateUMEB:
    dA: int
    dB: int
    members: tuple[np.ndarray, ...]
    tags: tuple[dict, ...]
    source: str
    theorem: str | None = None
    seed: SeedBasis | None = None
    params: LiftParams | None = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if len(self.tags) != len(self.members):
            raise ValueError("one tag per member required")
        for m in self.members:
            if m.shape != (self.dB, self.dA):
                raise ValueError(f"member shape {m.shape} != ({self.dB}, {self.dA})")

    def __len__(self) -> int:
        return len(self.members)

    @property
    def expected_count(self) -> int | None:
        if self.theorem is None or self.seed is None or self.params is None:
            return None
        return expected_count(self.theorem, self.params, len(self.seed))

    def without(self, index: int) -> "CandidateUMEB":
        """Copy with one member removed (provenance is kept)."""
        keep = [i for i in range(len(self)) if i != index]
        return CandidateUMEB(self.dA, self.dB, tuple(self.members[i] for i in keep),
                             tuple(self.tags[i] for i in keep), self.source,
                             self.theorem, self.seed, self.params, self.notes)


def from_matrices(members, source: str = "user") -> CandidateUMEB:
    """Wrap bare matrices as a candidate with no lift provenance."""
    members = tuple(as_matrix(m) for m in members)
    if not members:
        raise ValueError("candidate needs at least one member")
    rows, cols = members[0].shape
    tags = tuple({"family": "user", "index": i} for i in range(len(members)))
    return CandidateUMEB(cols, rows, members, tags, source)


def expected_count(theorem: str, params: LiftParams, n_seed: int) -> int:
    p, q, d = params.p, params.q, params.d
    if theorem == "T1":
        return p * q * d * d - p * (d * d - n_seed)
    if theorem == "T2":
        return p * q * d * d - d * (p * q - n_seed)
    raise ValueError(f"unknown theorem {theorem!r}")


def lift_theorem1(seed: SeedBasis, p: int, q: int) -> CandidateUMEB:
    """C1 = {V_k0 (x) W_j} then C2 = {V_kl (x) U_nm : l >= 1}, lexicographic indices.

    Needs a square UUB seed; members are qd x pd.
    """
    if seed.kind is not SeedKind.UUB:
        raise ValueError(f"seed kind {seed.kind.value} incompatible with T1 (needs UUB)")
    d = seed.d_small
    params = LiftParams(p, q, d)
    members, tags = [], []
    for k in range(p):
        v = rect_clock_shift(p, q, k, 0)
        for j, w in enumerate(seed.members):
            members.append(np.kron(v, w))
            tags.append({"family": "C1", "k": k, "j": j})
    for k in range(p):
        for l in range(1, q):
            v = rect_clock_shift(p, q, k, l)
            for n in range(d):
                for m in range(d):
                    members.append(np.kron(v, clock_shift(d, n, m)))
                    tags.append({"family": "C2", "k": k, "l": l, "n": n, "m": m})
    notes = ()
    if p == q == 1:
        notes = ("degenerate lift: p = q = 1 returns the seed",)
        warnings.warn(notes[0], stacklevel=2)
    return CandidateUMEB(p * d, q * d, tuple(members), tuple(tags),
                         f"T1({seed.provenance}; p={p}, q={q})", "T1", seed, params, notes)


def lift_theorem2(seed: SeedBasis, d: int) -> CandidateUMEB:
    """C1 = {U_n0 (x) W_j} then C2 = {U_nm (x) V_kl : m >= 1}, lexicographic indices.

    Needs a q x p USV1B seed (p <= q); members are qd x pd.
    """
    if seed.kind is not SeedKind.USV1B:
        raise ValueError(f"seed kind {seed.kind.value} incompatible with T2 (needs USV1B)")
    p, q = seed.d_small, seed.d_large
    params = LiftParams(p, q, d)
    members, tags = [], []
    for n in range(d):
        u = clock_shift(d, n, 0)
        for j, w in enumerate(seed.members):
            members.append(np.kron(u, w))
            tags.append({"family": "C1", "n": n, "j": j})
    for n in range(d):
        for m in range(1, d):
            u = clock_shift(d, n, m)
            for k in range(p):
                for l in range(q):
                    members.append(np.kron(u, rect_clock_shift(p, q, k, l)))
                    tags.append({"family": "C2", "n": n, "m": m, "k": k, "l": l})
    notes = ()
    if d == 1:
        notes = ("degenerate lift: d = 1 returns the seed",)
        warnings.warn(notes[0], stacklevel=2)
    return CandidateUMEB(p * d, q * d, tuple(members), tuple(tags),
                         f"T2({seed.provenance}; d={d})", "T2", seed, params, notes)


def lift(seed: SeedBasis, theorem: str, *, p: int | None = None, q: int | None = None,
         d: int | None = None) -> CandidateUMEB:
    if theorem == "T1":
        if p is None or q is None:
            raise ValueError("T1 needs p and q")
        if d is not None and d != seed.d_small:
            raise ValueError(f"T1 takes d from the seed (d={seed.d_small}), got d={d}")
        return lift_theorem1(seed, p, q)
    if theorem == "T2":
        if d is None:
            raise ValueError("T2 needs d")
        for name, given, actual in (("p", p, seed.d_small), ("q", q, seed.d_large)):
            if given is not None and given != actual:
                raise ValueError(f"T2 takes {name} from the seed ({name}={actual}), got {given}")
        return lift_theorem2(seed, d)
    raise ValueError(f"unknown theorem {theorem!r}")


def matrix_to_state(a: np.ndarray) -> np.ndarray:
    """Amplitude vector indexed k * rows + l' with value a[l', k] / sqrt(cols)."""
    a = np.asarray(a, dtype=np.complex128)
    return a.T.reshape(-1) / np.sqrt(a.shape[1])


def state_to_matrix(state: np.ndarray, dA: int, dB: int) -> np.ndarray:
    state = np.asarray(state, dtype=np.complex128)
    if state.shape != (dA * dB,):
        raise ValueError(f"state has {state.size} amplitudes, expected {dA * dB}")
    return state.reshape(dA, dB).T * np.sqrt(dA)
