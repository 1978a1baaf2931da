"""Dense-matrix lab for truncated scaling-element models.

A truncated model places a positive block A on the first step of a block
shift and identity blocks afterwards, on N fiber slots of dimension d.  Exact
finite-dimensional scaling elements do not exist: the identity (X*X)X = X
necessarily fails at the last slot, so every check here either reports the
boundary defect explicitly or works on the interior compression (boundary
slot excluded).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import (
    IllConditioned,
    NoGap,
    NotAdmissible,
    NotScalinglike,
    UndefinedAt,
)
from .spectra import Properness, ScalingSpectrum, SpectralSet, nonproper_admissible, normalize

__all__ = [
    "TruncatedShiftModel",
    "PropernessVerdict",
    "ScalingDefect",
    "WitnessReport",
    "PiecewiseFunction",
    "opnorm",
    "matrix_abs",
    "realize",
    "scaling_defect",
    "estimate_spectrum",
    "synthesize",
    "classify_properness",
    "functional_calculus",
    "infinite_projection_witness",
    "conjugate_random",
    "random_unitary",
]

HERMITIAN_TOL = 1e-12
BOUNDARY_TOL = 1e-10


def opnorm(x: np.ndarray) -> float:
    """Operator (spectral) norm."""
    if x.size == 0:
        return 0.0
    return float(np.linalg.norm(x, 2))


def matrix_abs(x: np.ndarray) -> np.ndarray:
    """|X| = (X*X)^(1/2) via SVD."""
    _, s, vh = np.linalg.svd(x)
    return vh.conj().T @ (s[:, None] * vh)


@dataclass(frozen=True, eq=False)
class TruncatedShiftModel:
    """Fiber dimension d, depth N and the positive-definite weight block A."""

    fiber_dim: int
    depth: int
    A: np.ndarray

    def __post_init__(self):
        a = np.array(self.A, dtype=complex)
        if self.fiber_dim < 1 or self.depth < 2:
            raise NotAdmissible("need fiber_dim >= 1 and depth >= 2")
        if a.shape != (self.fiber_dim, self.fiber_dim):
            raise NotAdmissible(f"A must be {self.fiber_dim}x{self.fiber_dim}, got {a.shape}")
        if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
            raise NotAdmissible("A must be Hermitian within 1e-12")
        if np.min(np.linalg.eigvalsh(a)) <= 0.0:
            raise NotAdmissible("A must be positive definite (trivial kernel)")
        a.setflags(write=False)
        object.__setattr__(self, "A", a)

    @property
    def dimension(self) -> int:
        return self.fiber_dim * self.depth


def realize(m: TruncatedShiftModel) -> np.ndarray:
    """The (N d) x (N d) matrix with A on step 0 -> 1 and identities after."""
    d, n = m.fiber_dim, m.depth
    x = np.zeros((n * d, n * d), dtype=complex)
    x[d : 2 * d, 0:d] = m.A
    for k in range(1, n - 1):
        x[(k + 1) * d : (k + 2) * d, k * d : (k + 1) * d] = np.eye(d)
    return x


class ScalingDefect(NamedTuple):
    residual_norm: float
    boundary_localized: bool | None


def _defect(x: np.ndarray) -> np.ndarray:
    return (x.conj().T @ x) @ x - x


def scaling_defect(x: np.ndarray, fiber_dim: int | None = None) -> ScalingDefect:
    """Residual of the scaling identity, and whether it sits in the last slot.

    With a fiber dimension the residual counts as boundary-localized when its
    range lies in the last fiber slot within 1e-10; without one the slot
    structure is unknown and the flag is None.
    """
    r = _defect(np.asarray(x, dtype=complex))
    norm = opnorm(r)
    localized = None
    if fiber_dim is not None:
        n = x.shape[0]
        if n % fiber_dim:
            raise NotAdmissible(f"dimension {n} is not a multiple of fiber_dim {fiber_dim}")
        localized = bool(opnorm(r[: n - fiber_dim, :]) <= BOUNDARY_TOL)
    return ScalingDefect(norm, localized)


def defect_is_boundary(x: np.ndarray, tol: float) -> bool:
    """Basis-free boundary test: the residual's range avoids the right support.

    For truncated models the last slot is exactly the complement of the right
    support, and this formulation survives unitary conjugation.
    """
    r = _defect(x)
    if opnorm(r) <= tol:
        return True
    _, s, vh = np.linalg.svd(x)
    right = vh.conj().T[:, s > tol]
    return opnorm(right @ (right.conj().T @ r)) <= tol


def estimate_spectrum(x: np.ndarray, cluster_tol: float) -> SpectralSet:
    """Singular values of x, clustered into intervals of width <= the gaps.

    Values closer than cluster_tol coalesce; each cluster becomes the interval
    [min, max], so exact multiple values come back as points.
    """
    if cluster_tol <= 0:
        raise NotAdmissible("cluster_tol must be > 0")
    s = np.sort(np.linalg.svd(x, compute_uv=False))
    intervals = []
    lo = hi = float(s[0])
    for v in s[1:]:
        v = float(v)
        if v - hi > cluster_tol:
            intervals.append((lo, hi))
            lo = v
        hi = v
    intervals.append((lo, hi))
    return normalize(intervals)


def synthesize(
    spec: ScalingSpectrum,
    properness: Properness,
    depth: int,
    samples_per_interval: int = 3,
    seed: int = 0,
) -> TruncatedShiftModel:
    """Build a diagonal model whose realized spectrum reproduces ``spec``.

    Interval endpoints are always sampled (so the extreme points of the
    estimate are exact) plus seeded uniform interior points.  Proper models
    always carry eigenvalue 1 inside A; non-proper models sample only the part
    away from 0 and 1, which requires the non-proper admissibility of the
    spectrum.
    """
    if depth < 3:
        raise NotAdmissible("synthesis needs depth >= 3")
    if properness is Properness.NON_PROPER and not nonproper_admissible(spec):
        raise NotAdmissible("spectrum does not admit a non-proper generator")
    rng = np.random.default_rng(seed)
    values: list[float] = []
    for lo, hi in spec.set.intervals:
        if lo == hi:
            pts = [lo]
        else:
            interior = rng.uniform(lo, hi, size=max(0, samples_per_interval - 2))
            pts = sorted({lo, hi, *interior.tolist()})
        values.extend(pts)
    values = [v for v in values if v != 0.0]
    if properness is Properness.NON_PROPER:
        values = [v for v in values if v != 1.0]
    elif 1.0 not in values:
        values.append(1.0)
    values.sort()
    a = np.diag(np.array(values, dtype=complex))
    return TruncatedShiftModel(len(values), depth, a)


@dataclass(frozen=True)
class PropernessVerdict:
    verdict: Properness
    gap_at_0: bool
    gap_at_1: bool
    projection_distance: float


def _interior(m: np.ndarray, fiber_dim: int | None) -> np.ndarray:
    if fiber_dim is None:
        return m
    k = m.shape[0] - fiber_dim
    return m[:k, :k]


def _require_scalinglike(x: np.ndarray, tol: float, fiber_dim: int | None) -> None:
    d = scaling_defect(x, fiber_dim)
    if d.residual_norm <= tol:
        return
    ok = d.boundary_localized if d.boundary_localized is not None else defect_is_boundary(x, tol)
    if not ok:
        raise NotScalinglike(
            f"scaling identity fails by {d.residual_norm:.3e} away from the boundary slot"
        )


def classify_properness(
    x: np.ndarray,
    tol: float = 1e-8,
    gap_tol: float = 0.1,
    fiber_dim: int | None = None,
) -> PropernessVerdict:
    """Decide proper vs non-proper for a (truncated) scaling-like matrix.

    Non-proper needs spectral gaps just above 0 and around 1 (the compactness
    side) and agreement, away from the boundary slot, between the spectral
    projection of |X| at 1 and the left support of X.
    """
    x = np.asarray(x, dtype=complex)
    _require_scalinglike(x, tol, fiber_dim)
    u, s, vh = np.linalg.svd(x)

    # distances of the singular values from the two distinguished points
    dist0, dist1 = s, np.abs(s - 1.0)
    for dist in (dist0, dist1):
        if np.any((dist > tol) & (dist < 2 * tol)):
            raise IllConditioned("singular values inside the (tol, 2 tol) ambiguity band")
    gap_at_0 = not np.any((dist0 > tol) & (dist0 <= gap_tol))
    gap_at_1 = not np.any((dist1 > tol) & (dist1 <= gap_tol))

    # eigenvectors of |X| are right singular vectors; of |X*|, left ones
    v = vh.conj().T
    p1 = v[:, np.abs(s - 1.0) <= tol]
    p1 = p1 @ p1.conj().T
    left = u[:, s > tol]
    left = left @ left.conj().T
    distance = opnorm(_interior(p1 - left, fiber_dim))

    nonproper = gap_at_0 and gap_at_1 and distance <= tol
    return PropernessVerdict(
        Properness.NON_PROPER if nonproper else Properness.PROPER,
        gap_at_0,
        gap_at_1,
        distance,
    )


class PiecewiseFunction:
    """A function defined piecewise on closed intervals; first match wins.

    Pieces are (lo, hi, value) with value either a constant or a callable;
    endpoints may be infinite.  Evaluation outside every piece raises
    :class:`UndefinedAt`.
    """

    def __init__(self, pieces: Sequence[tuple[float, float, Callable[[float], complex] | complex]]):
        self.pieces = [(float(lo), float(hi), v) for lo, hi, v in pieces]

    def __call__(self, x: float) -> complex:
        for lo, hi, v in self.pieces:
            if lo <= x <= hi:
                return v(x) if callable(v) else complex(v)
        raise UndefinedAt(f"{x} lies in no piece of the function's definition")


def functional_calculus(h: np.ndarray, f: Callable[[float], complex]) -> np.ndarray:
    """Apply f to a Hermitian matrix through its eigendecomposition."""
    h = np.asarray(h, dtype=complex)
    if np.max(np.abs(h - h.conj().T)) > HERMITIAN_TOL:
        raise NotAdmissible("matrix is not Hermitian within 1e-12")
    w, q = np.linalg.eigh(h)
    fv = np.array([f(float(lam)) for lam in w], dtype=complex)
    return q @ (fv[:, None] * q.conj().T)


@dataclass(frozen=True)
class WitnessReport:
    gap_point: float
    projection_defect: float
    dominated: bool
    norm_difference: float


def infinite_projection_witness(
    x: np.ndarray,
    c: float,
    tol: float = 1e-9,
    cluster_tol: float = 1e-8,
    fiber_dim: int | None = None,
) -> tuple[np.ndarray, WitnessReport]:
    """Build the partial isometry witnessing an infinite projection.

    With c a gap point of the estimated spectrum, U = X g(|X|) for
    g(t) = 1/t above c and 0 below; on the interior compression U*U is a
    projection strictly dominating UU*.
    """
    x = np.asarray(x, dtype=complex)
    if not (0.0 < c < 1.0):
        raise NotAdmissible(f"gap point must lie in (0, 1), got {c}")
    if estimate_spectrum(x, cluster_tol).contains(c):
        raise NoGap(f"{c} lies in the estimated spectrum")
    _require_scalinglike(x, tol, fiber_dim)

    # eigh of |X| can report eigenvalues a hair below 0; the flat piece absorbs them
    g = PiecewiseFunction([(-math.inf, c, 0.0), (c, math.inf, lambda t: 1.0 / t)])
    u = x @ functional_calculus(matrix_abs(x), g)

    uu = _interior(u.conj().T @ u, fiber_dim)
    uut = _interior(u @ u.conj().T, fiber_dim)
    defect = opnorm(uu @ uu - uu)
    dominated = bool(np.min(np.linalg.eigvalsh(uu - uut)) >= -tol)
    delta = opnorm(uu - uut)
    return u, WitnessReport(c, defect, dominated, delta)


def random_unitary(dim: int, rng: np.random.Generator | int) -> np.ndarray:
    """Haar-ish random unitary from the QR of a seeded complex Gaussian."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def conjugate_random(x: np.ndarray, seed: int) -> np.ndarray:
    """W x W* for a deterministic seeded random unitary W."""
    x = np.asarray(x, dtype=complex)
    w = random_unitary(x.shape[0], seed)
    return w @ x @ w.conj().T
