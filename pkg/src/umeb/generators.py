"""Clock/shift generator families.

``clock_shift(d, n, m)`` is the d x d unitary sending |a> to
exp(2 pi i n a / d) |a + m mod d>.  ``rect_clock_shift(p, q, k, l)`` is the
q x p isometry sending |a> (a < p) to exp(2 pi i k a / p) |a + l mod q>.
"""

from __future__ import annotations

import numpy as np


def _phase(num: int, modulus: int) -> complex:
    # exact angle per entry, no accumulated products
    return complex(np.exp(2j * np.pi * (num % modulus) / modulus))


def clock_shift(d: int, n: int, m: int) -> np.ndarray:
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    if not (0 <= n < d and 0 <= m < d):
        raise ValueError(f"indices n={n}, m={m} out of range for d={d}")
    u = np.zeros((d, d), dtype=np.complex128)
    for a in range(d):
        u[(a + m) % d, a] = _phase(n * a, d)
    return u


def rect_clock_shift(p: int, q: int, k: int, l: int) -> np.ndarray:
    if p < 1 or q < 1:
        raise ValueError(f"dimensions must be positive, got p={p}, q={q}")
    if p > q:
        raise ValueError(f"need p <= q, got p={p}, q={q}")
    if not (0 <= k < p and 0 <= l < q):
        raise ValueError(f"indices k={k}, l={l} out of range for p={p}, q={q}")
    v = np.zeros((q, p), dtype=np.complex128)
    for a in range(p):
        v[(a + l) % q, a] = _phase(k * a, p)
    return v


def clock_shift_basis(d: int) -> list[np.ndarray]:
    """All d^2 clock/shift unitaries, ordered lexicographically in (n, m)."""
    return [clock_shift(d, n, m) for n in range(d) for m in range(d)]


def vandermonde(p: int) -> np.ndarray:
    """p x p matrix H[r, c] = w^(-r c), w = exp(2 pi i / p).

    Maps the block overlaps (Tr(A_h^dagger W_j))_h to the overlaps with the
    phased seed copies; it is sqrt(p) times a unitary DFT matrix.
    """
    return np.array([[_phase(-r * c, p) for c in range(p)] for r in range(p)])
