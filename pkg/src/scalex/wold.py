"""Wold-type decomposition of matrices satisfying the scaling identity.

Any X with (X*X)X = X splits, up to unitary equivalence, into a weighted
one-sided shift, a unitary and a zero block.  The recursion below recovers
that splitting from a dense matrix: the first projection comes from the gap
between right and left support, the polar decomposition of X on it yields the
weight block, and conjugating forward by X walks down the shift fibers.

Truncated inputs violate the identity at one boundary slot.  The recursion
tolerates exactly that failure mode: the boundary test is basis-free (the
residual's range must avoid the right support), the first projection is a
spectral cut rather than a literal difference, and when the recursion claims
space that the support analysis booked as kernel the overlap is reported, not
hidden.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotScalinglike
from .operators import defect_is_boundary, opnorm, _defect

__all__ = ["SupportPair", "WoldReport", "supports", "polar", "wold_decompose", "reconstruct"]


@dataclass(frozen=True, eq=False)
class SupportPair:
    right: np.ndarray
    left: np.ndarray


def supports(x: np.ndarray, tol: float = 1e-9) -> SupportPair:
    """Right and left support projections (row/column space) via SVD."""
    x = np.asarray(x, dtype=complex)
    u, s, vh = np.linalg.svd(x)
    keep = s > tol
    right_basis = vh.conj().T[:, keep]
    left_basis = u[:, keep]
    return SupportPair(
        right=right_basis @ right_basis.conj().T,
        left=left_basis @ left_basis.conj().T,
    )


def polar(x: np.ndarray, tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Polar decomposition x = u p with u a partial isometry and p = |x|."""
    x = np.asarray(x, dtype=complex)
    u_, s, vh = np.linalg.svd(x)
    keep = s > tol
    u = u_[:, keep] @ vh[keep, :]
    p = vh.conj().T @ (s[:, None] * vh)
    return u, p


def _spectral_projection_above(h: np.ndarray, cut: float) -> tuple[np.ndarray, np.ndarray]:
    """(projection, orthonormal basis) onto eigenvectors of Hermitian h above cut."""
    w, v = np.linalg.eigh(h)
    basis = v[:, w > cut]
    return basis @ basis.conj().T, basis


@dataclass(eq=False)
class WoldReport:
    """Everything the recursion recovered, plus diagnostics.

    q_projections are the mutually orthogonal shift-fiber projections;
    u_parts[i] maps fiber i onto fiber i+1 (the first is the polar isometry).
    a_restricted is the weight block expressed on the first fiber basis.
    """

    dimension: int
    q_projections: list[np.ndarray]
    u_parts: list[np.ndarray]
    a_restricted: np.ndarray
    unitary_part: np.ndarray
    kernel_projection: np.ndarray
    fiber_bases: list[np.ndarray] = field(repr=False, default_factory=list)
    p2_basis: np.ndarray = field(repr=False, default=None)
    boundary_overlap_rank: int = 0
    boundary_q_index: int | None = None
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def q_ranks(self) -> list[int]:
        return [int(round(float(np.trace(q).real))) for q in self.q_projections]

    @property
    def unitary_rank(self) -> int:
        return self.unitary_part.shape[0]

    @property
    def kernel_rank(self) -> int:
        return int(round(float(np.trace(self.kernel_projection).real)))

    @property
    def a_eigenvalues(self) -> list[float]:
        if self.a_restricted.size == 0:
            return []
        return [float(v) for v in np.linalg.eigvalsh(self.a_restricted)]

    def to_json(self) -> dict:
        return {
            "q_ranks": self.q_ranks,
            "a_eigenvalues": self.a_eigenvalues,
            "unitary_rank": self.unitary_rank,
            "kernel_rank": self.kernel_rank,
            "residuals": self.residuals,
        }


def wold_decompose(x: np.ndarray, tol: float = 1e-9, max_steps: int | None = None) -> WoldReport:
    """Split x into shift-type, unitary and kernel summands.

    Raises :class:`NotScalinglike` when the scaling identity fails beyond tol
    away from the boundary, and :class:`NoConvergence` when the fiber
    recursion exceeds max_steps (default: the dimension) without dying out.
    """
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    if x.shape != (n, n):
        raise DimensionMismatch("input must be square")
    if max_steps is None:
        max_steps = n

    residual = _defect(x)
    defect_norm = opnorm(residual)
    if defect_norm > tol and not defect_is_boundary(x, tol):
        raise NotScalinglike(
            f"scaling identity fails by {defect_norm:.3e} outside the boundary summand"
        )

    sup = supports(x, tol)
    p0, p0p = sup.right, sup.left
    eye = np.eye(n, dtype=complex)

    # the literal difference right - left is a projection only when the
    # identity holds exactly; the > 1/2 spectral cut survives the boundary
    q0, q0_basis = _spectral_projection_above(p0 - p0p, 0.5)

    q_list: list[np.ndarray] = []
    u_parts: list[np.ndarray] = []
    fiber_bases: list[np.ndarray] = []
    a_restricted = np.zeros((0, 0), dtype=complex)

    if q0_basis.shape[1] > 0:
        q_list.append(q0)
        x0 = x @ q0
        u0, absx0 = polar(x0, tol)
        a_restricted = q0_basis.conj().T @ absx0 @ q0_basis
        q1 = u0 @ u0.conj().T
        q_list.append(q1)
        u_parts.append(u0)
        fiber_bases.append(q0_basis)
        fiber_bases.append(u0 @ q0_basis)
        while True:
            q_next = x @ q_list[-1] @ x.conj().T
            if opnorm(q_next) < 0.5:
                tail_norm = opnorm(q_next)
                break
            if len(q_list) >= max_steps:
                raise NoConvergence(f"fiber recursion still alive after {max_steps} steps")
            u_parts.append(x @ q_list[-1])
            fiber_bases.append(x @ fiber_bases[-1])
            q_list.append(q_next)
    else:
        tail_norm = 0.0

    p1 = sum(q_list, np.zeros_like(eye))

    # kernel estimate, shrunk by whatever the recursion already claimed
    p3_raw = eye - p0
    p3, _ = _spectral_projection_above(p3_raw @ (eye - p1) @ p3_raw, 0.5)
    raw_rank = int(round(float(np.trace(p3_raw).real)))
    p3_rank = int(round(float(np.trace(p3).real)))
    overlap = raw_rank - p3_rank

    p2, p2_basis = _spectral_projection_above(eye - p1 - p3, 0.5)
    unitary_part = p2_basis.conj().T @ x @ p2_basis

    report = WoldReport(
        dimension=n,
        q_projections=q_list,
        u_parts=u_parts,
        a_restricted=a_restricted,
        unitary_part=unitary_part,
        kernel_projection=p3,
        fiber_bases=fiber_bases,
        p2_basis=p2_basis,
        boundary_overlap_rank=overlap,
        boundary_q_index=len(q_list) - 1 if overlap > 0 and q_list else None,
    )
    report.residuals = _diagnostics(x, report, p1, p2, p3, defect_norm, tail_norm)
    return report


def _diagnostics(x, report, p1, p2, p3, defect_norm, tail_norm) -> dict[str, float]:
    qs = report.q_projections
    proj_defect = 0.0
    ortho_defect = 0.0
    for i, q in enumerate(qs):
        proj_defect = max(proj_defect, opnorm(q @ q - q), opnorm(q.conj().T - q))
        for p in qs[i + 1 :]:
            ortho_defect = max(ortho_defect, opnorm(q @ p))
    eye = np.eye(report.dimension, dtype=complex)
    xc = report.unitary_part
    k = xc.shape[0]
    unit_defect = 0.0
    if k:
        unit_defect = max(
            opnorm(xc.conj().T @ xc - np.eye(k)), opnorm(xc @ xc.conj().T - np.eye(k))
        )
    return {
        "scaling_defect": defect_norm,
        "projection_defect": proj_defect,
        "orthogonality_defect": ortho_defect,
        "completeness_defect": opnorm(p1 + p2 + p3 - eye),
        "unitarity_defect": unit_defect,
        "commutation_defect": opnorm(p1 @ x - x @ p1),
        "reconstruction_defect": opnorm(reconstruct(report) - x),
        "boundary_overlap_rank": float(report.boundary_overlap_rank),
        "rejected_tail_norm": tail_norm,
    }


def reconstruct(r: WoldReport) -> np.ndarray:
    """Reassemble shift-block + unitary + zero in the recovered basis."""
    out = np.zeros((r.dimension, r.dimension), dtype=complex)
    if r.fiber_bases:
        v0, v1 = r.fiber_bases[0], r.fiber_bases[1]
        out += v1 @ r.a_restricted @ v0.conj().T
        for va, vb in zip(r.fiber_bases[1:], r.fiber_bases[2:]):
            out += vb @ va.conj().T
    if r.p2_basis is not None and r.p2_basis.shape[1] > 0:
        out += r.p2_basis @ r.unitary_part @ r.p2_basis.conj().T
    return out
