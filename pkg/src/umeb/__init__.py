"""Unextendible maximally entangled bases in C^{pd} (x) C^{qd}: lifts and checks."""

__version__ = "0.1.0"

from .generators import clock_shift, rect_clock_shift, vandermonde  # noqa: E402
from .lifts import (CandidateUMEB, LiftParams, lift, lift_theorem1, lift_theorem2,  # noqa: E402
                    matrix_to_state, state_to_matrix)
from .linalg import (Tolerance, hs_inner, is_sv1, orthonormal_complement, rank,  # noqa: E402
                     singular_values)
from .seeds import SeedBasis, SeedKind, bravyi_smolin_seed, load_seed, two_by_three_seed  # noqa: E402

__all__ = [
    "CandidateUMEB", "LiftParams", "SeedBasis", "SeedKind", "Tolerance",
    "bravyi_smolin_seed", "clock_shift", "hs_inner", "is_sv1", "lift", "lift_theorem1",
    "lift_theorem2", "load_seed", "matrix_to_state", "orthonormal_complement", "rank",
    "rect_clock_shift", "singular_values", "state_to_matrix", "two_by_three_seed",
    "vandermonde",
]
