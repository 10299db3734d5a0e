"""Checks for the three UMEB conditions: maximal entanglement, orthonormality,
unextendibility.

Unextendibility is argued two ways.  ``structural_certificate`` replays the
lifting argument numerically: every complement element must be supported on
the diagonal blocks, and every diagonal block must be orthogonal to all seed
members (forced by the invertible root-of-unity matrix).  A block-diagonal
matrix whose blocks are non-unitary/non-SV1 cannot be SV1, so the seed's
unextendibility carries over.  ``falsify_unextendibility`` is seed-agnostic:
it searches the complement for a matrix with all singular values 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import least_squares

from .generators import vandermonde
from .lifts import CandidateUMEB, LiftParams
from .linalg import (DEFAULT_TOL, DegeneracyError, Tolerance, gram_matrix, hs_inner,
                     orthonormal_complement, singular_values, stack_vectors)
from .seeds import SeedBasis, SeedKind

log = logging.getLogger(__name__)

DEFAULT_RESTARTS = 200
MAX_ASCENT_ITER = 500
STALL_WINDOW = 20
STALL_GAIN = 1e-12
# falsifier verdict "unrefuted" needs this much room below 1
FALSIFIER_MARGIN = 1e-3


class CertificateStatus(str, Enum):
    PROVEN = "PROVEN"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    FAILED = "FAILED"


@dataclass
class CertificateResult:
    status: CertificateStatus
    s_projection_residual: float = 0.0
    block_orthogonality_max: float = 0.0
    vandermonde_min_singular: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "s_projection_residual": self.s_projection_residual,
            "block_orthogonality_max": self.block_orthogonality_max,
            "vandermonde_min_singular": self.vandermonde_min_singular,
            "notes": list(self.notes),
        }


@dataclass
class FalsifierResult:
    restarts: int
    best_min_singular: float
    best_witness: np.ndarray | None
    converged: bool
    complement_dim: int
    restarts_run: int = 0

    @property
    def applicable(self) -> bool:
        return self.complement_dim > 0

    def to_json(self) -> dict:
        from .seeds import matrix_to_pairs

        w = self.best_witness
        return {
            "restarts": self.restarts,
            "restarts_run": self.restarts_run,
            "best_min_singular": self.best_min_singular,
            "converged": self.converged,
            "complement_dim": self.complement_dim,
            "best_witness": None if w is None else {
                "rows": w.shape[0], "cols": w.shape[1], "entries": matrix_to_pairs(w)},
        }


@dataclass
class VerificationReport:
    orthogonality_max_residual: float
    orthonormal_pass: bool
    sv1_max_deviation: float
    sv1_pass: bool
    member_count: int
    expected_count: int | None
    complement_dim: int | None
    structural_certificate: CertificateResult
    falsifier: FalsifierResult | None
    unextendibility: str
    notes: list[str] = field(default_factory=list)

    @property
    def count_pass(self) -> bool:
        return self.expected_count is None or self.expected_count == self.member_count

    @property
    def passed(self) -> bool:
        return (self.orthonormal_pass and self.sv1_pass and self.count_pass
                and self.unextendibility in ("PROVEN", "UNREFUTED", "NOT_APPLICABLE"))

    def to_json(self) -> dict:
        return {
            "orthogonality_max_residual": self.orthogonality_max_residual,
            "orthonormal_pass": self.orthonormal_pass,
            "sv1_max_deviation": self.sv1_max_deviation,
            "sv1_pass": self.sv1_pass,
            "member_count": self.member_count,
            "expected_count": self.expected_count,
            "count_pass": self.count_pass,
            "complement_dim": self.complement_dim,
            "structural_certificate": self.structural_certificate.to_json(),
            "falsifier": None if self.falsifier is None else self.falsifier.to_json(),
            "unextendibility": self.unextendibility,
            "passed": self.passed,
            "notes": list(self.notes),
        }


def _members(candidate) -> list[np.ndarray]:
    return list(candidate.members) if isinstance(candidate, CandidateUMEB) else list(candidate)


def verify_orthonormal(candidate, tol: Tolerance = DEFAULT_TOL) -> tuple[float, bool]:
    """Largest |Tr(B_i^dagger B_j) - dA delta_ij| and whether it is within eps_orth * dA."""
    members = _members(candidate)
    g = gram_matrix(members)  # raises DimensionError on mixed shapes
    dA = members[0].shape[1]
    residual = float(np.max(np.abs(g - dA * np.eye(len(members)))))
    return residual, residual <= tol.eps_orth * dA


def verify_sv1(candidate, tol: Tolerance = DEFAULT_TOL) -> tuple[float, bool]:
    deviation = max(float(np.max(np.abs(singular_values(m) - 1.0)))
                    for m in _members(candidate))
    return deviation, deviation <= tol.eps_sv


def _block_layout(theorem: str, params: LiftParams) -> tuple[int, int, int]:
    """(block rows, block cols, number of diagonal blocks) of the invariant space S."""
    if theorem == "T1":
        return params.d, params.d, params.p
    if theorem == "T2":
        return params.q, params.p, params.d
    raise ValueError(f"unknown theorem {theorem!r}")


def diagonal_blocks(x: np.ndarray, theorem: str, params: LiftParams) -> list[np.ndarray]:
    br, bc, nb = _block_layout(theorem, params)
    return [x[h * br:(h + 1) * br, h * bc:(h + 1) * bc] for h in range(nb)]


def project_onto_s(x: np.ndarray, theorem: str, params: LiftParams) -> np.ndarray:
    """Keep the diagonal blocks, zero everything else."""
    br, bc, nb = _block_layout(theorem, params)
    out = np.zeros_like(x)
    for h in range(nb):
        out[h * br:(h + 1) * br, h * bc:(h + 1) * bc] = x[h * br:(h + 1) * br, h * bc:(h + 1) * bc]
    return out


def structural_certificate(candidate: CandidateUMEB, seed: SeedBasis | None = None,
                           params: LiftParams | None = None, which: str | None = None,
                           tol: Tolerance = DEFAULT_TOL,
                           complement: list[np.ndarray] | None = None) -> CertificateResult:
    seed = seed if seed is not None else candidate.seed
    params = params if params is not None else candidate.params
    which = which if which is not None else candidate.theorem
    if seed is None or params is None or which is None:
        return CertificateResult(CertificateStatus.NOT_APPLICABLE,
                                 notes=["no lift provenance; structural argument unavailable"])
    notes = []
    expected_kind = SeedKind.UUB if which == "T1" else SeedKind.USV1B
    if seed.kind is not expected_kind:
        return CertificateResult(CertificateStatus.FAILED,
                                 notes=[f"{which} needs a {expected_kind.value} seed"])
    if (candidate.dA, candidate.dB) != (params.p * params.d, params.q * params.d):
        return CertificateResult(CertificateStatus.FAILED,
                                 notes=["member shape does not match lift parameters"])
    seed_errors = seed.failures(tol)
    if seed_errors:
        return CertificateResult(CertificateStatus.FAILED,
                                 notes=[f"seed invalid: {e}" for e in seed_errors])
    _, ortho_ok = verify_orthonormal(candidate, tol)
    if not ortho_ok:
        return CertificateResult(CertificateStatus.FAILED, notes=["members not orthonormal"])
    if complement is None:
        complement = orthonormal_complement(candidate.members, tol)
    if not complement:
        return CertificateResult(CertificateStatus.NOT_APPLICABLE,
                                 notes=["complete basis; nothing to certify"])

    order = _block_layout(which, params)[2]
    h = vandermonde(order)
    h_min = float(singular_values(h)[-1])

    s_residual = 0.0
    block_max = 0.0
    c1 = [m for m, t in zip(candidate.members, candidate.tags) if t.get("family") == "C1"]
    for e in complement:
        s_residual = max(s_residual, float(np.linalg.norm(e - project_onto_s(e, which, params))))
        blocks = diagonal_blocks(e, which, params)
        direct = np.array([[hs_inner(w, a) for a in blocks] for w in seed.members])
        block_max = max(block_max, float(np.max(np.abs(direct))))
        # phased-seed overlaps y = H x; x recovered through H^{-1} must agree with the blocks
        if len(c1) == order * len(seed):
            y = np.array([[hs_inner(c1[k * len(seed) + j], e) for k in range(order)]
                          for j in range(len(seed))])
            solved = np.linalg.solve(h, y.T).T
            block_max = max(block_max, float(np.max(np.abs(solved))))
    if len(c1) != order * len(seed):
        notes.append(f"C1 family has {len(c1)} members, expected {order * len(seed)}; "
                     "root-of-unity route skipped")
    if which == "T2":
        notes.append("member norm Tr(B^dagger B) = pd, not qd, when p != q")

    ok = s_residual <= tol.eps_orth and block_max <= tol.eps_orth and h_min > 0
    if ok:
        notes.append(f"unextendibility inherited from seed {seed.provenance}")
    status = CertificateStatus.PROVEN if ok else CertificateStatus.FAILED
    return CertificateResult(status, s_residual, block_max, h_min, notes)


def _min_singular(x: np.ndarray):
    u, s, vh = np.linalg.svd(x, full_matrices=False)
    return float(s[-1]), u[:, -1], vh[-1]


def _ascend(c, basis, shape, norm, max_iter):
    """Projected subgradient ascent on sigma_min over the sphere |c| = norm."""
    sigma, u, v = _min_singular((c @ basis).reshape(shape))
    history = [sigma]
    step = 0.5
    converged = False
    for _ in range(max_iter):
        g = basis.conj() @ np.outer(u, v).reshape(-1)
        g = g - (np.vdot(c, g).real / norm**2) * c
        gnorm = np.linalg.norm(g)
        if gnorm < 1e-14:
            converged = True
            break
        improved = False
        while step > 1e-14:
            trial = c + step * norm * g / gnorm
            trial *= norm / np.linalg.norm(trial)
            s_new, u_new, v_new = _min_singular((trial @ basis).reshape(shape))
            if s_new > sigma:
                c, sigma, u, v = trial, s_new, u_new, v_new
                step = min(2 * step, 1.0)
                improved = True
                break
            step /= 2
        history.append(sigma)
        if not improved:
            converged = True
            break
        if len(history) > STALL_WINDOW and history[-1] - history[-1 - STALL_WINDOW] < STALL_GAIN:
            converged = True
            break
    return c, sigma, converged


def _polish(c, basis, shape, norm):
    """Least squares on X^dagger X - I; sigma_min has a kink at SV1 points, this does not."""
    k = basis.shape[0]
    eye = np.eye(shape[1])

    def residual(x):
        z = ((x[:k] + 1j * x[k:]) @ basis).reshape(shape)
        r = z.conj().T @ z - eye
        return np.concatenate([r.real.ravel(), r.imag.ravel()])

    sol = least_squares(residual, np.concatenate([c.real, c.imag]), method="lm",
                        xtol=1e-15, ftol=1e-15, gtol=1e-15)
    c = sol.x[:k] + 1j * sol.x[k:]
    c *= norm / np.linalg.norm(c)
    return c, _min_singular((c @ basis).reshape(shape))[0], sol.status > 0


def falsify_unextendibility(candidate, restarts: int = DEFAULT_RESTARTS, seed_rng: int = 0,
                            tol: Tolerance = DEFAULT_TOL, max_iter: int = MAX_ASCENT_ITER,
                            complement: list[np.ndarray] | None = None) -> FalsifierResult:
    """Search the complement for X with Tr(X^dagger X) = dA maximising sigma_min(X).

    Under that norm sigma_min(X) <= 1 with equality iff X is SV1.  Restart r
    draws from ``SeedSequence(seed_rng).spawn(restarts)[r]``; the search stops
    early once a witness with sigma_min >= 1 - eps_sv turns up.
    """
    if restarts < 1:
        raise ValueError("restarts must be positive")
    members = _members(candidate)
    if complement is None:
        complement = orthonormal_complement(members, tol)
    if not complement:
        return FalsifierResult(restarts, 0.0, None, True, 0, 0)
    shape = complement[0].shape
    basis = stack_vectors(complement)
    norm = np.sqrt(shape[1])
    best = (-1.0, None, False)
    run = 0
    for child in np.random.SeedSequence(seed_rng).spawn(restarts):
        run += 1
        rng = np.random.default_rng(child)
        c = rng.standard_normal(len(complement)) + 1j * rng.standard_normal(len(complement))
        c *= norm / np.linalg.norm(c)
        c, sigma, converged = _ascend(c, basis, shape, norm, max_iter)
        c_pol, s_pol, pol_ok = _polish(c, basis, shape, norm)
        if s_pol > sigma:
            c, sigma, converged = c_pol, s_pol, pol_ok
        if sigma > best[0]:
            best = (sigma, c, converged)
        if sigma >= 1 - tol.eps_sv:
            log.info("SV1 witness found at restart %d", run)
            break
    sigma, c, converged = best
    witness = (c @ basis).reshape(shape)
    return FalsifierResult(restarts, max(sigma, 0.0), witness, converged, len(complement), run)


def full_report(candidate: CandidateUMEB, seed: SeedBasis | None = None,
                params: LiftParams | None = None, tol: Tolerance = DEFAULT_TOL,
                restarts: int = DEFAULT_RESTARTS, seed_rng: int = 0) -> VerificationReport:
    seed = seed if seed is not None else candidate.seed
    params = params if params is not None else candidate.params
    notes = list(candidate.notes)
    residual, ortho_ok = verify_orthonormal(candidate, tol)
    deviation, sv1_ok = verify_sv1(candidate, tol)
    n = len(candidate)
    expected = candidate.expected_count if seed is not None and params is not None else None

    complement = None
    complement_dim = None
    if ortho_ok:
        try:
            complement = orthonormal_complement(candidate.members, tol)
            complement_dim = len(complement)
        except DegeneracyError as exc:
            notes.append(str(exc))
    else:
        notes.append("orthonormality failed; complement and unextendibility not evaluated")

    falsifier = None
    if complement is None:
        cert = CertificateResult(CertificateStatus.NOT_APPLICABLE,
                                 notes=["requires an orthonormal member set"])
        verdict = "NOT_EVALUATED"
    elif not complement:
        cert = CertificateResult(CertificateStatus.NOT_APPLICABLE,
                                 notes=["complete basis; nothing to certify"])
        falsifier = FalsifierResult(restarts, 0.0, None, True, 0, 0)
        notes.append("complete basis, unextendibility not applicable")
        verdict = "NOT_APPLICABLE"
    else:
        cert = structural_certificate(candidate, seed, params, candidate.theorem, tol,
                                      complement=complement)
        falsifier = falsify_unextendibility(candidate, restarts, seed_rng, tol,
                                            complement=complement)
        refuted = falsifier.best_min_singular >= 1 - tol.eps_sv
        if cert.status is CertificateStatus.PROVEN and not refuted:
            verdict = "PROVEN"
        elif refuted:
            verdict = "REFUTED"
            notes.append("complement contains a singular-value-1 matrix")
        elif cert.status is CertificateStatus.FAILED:
            verdict = "CERTIFICATE_FAILED"
        elif falsifier.best_min_singular < 1 - FALSIFIER_MARGIN:
            verdict = "UNREFUTED"
        else:
            verdict = "INCONCLUSIVE"
    return VerificationReport(residual, ortho_ok, deviation, sv1_ok, n, expected,
                              complement_dim, cert, falsifier, verdict, notes)
