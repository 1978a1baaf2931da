"""Exact interval-set algebra over [0, oo) and the generator decision procedures.

A spectrum is described by finitely many disjoint closed intervals with exact
endpoints (points are degenerate intervals).  Every comparison in this module
is exact on endpoints; tolerances belong to the numerical lab, not here, so
each decision procedure is deterministic.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import InvalidInterval, NegativeEndpoint, NotAdmissible, NotMember

__all__ = [
    "SpectralSet",
    "ScalingSpectrum",
    "GeneratorDescriptor",
    "Properness",
    "normalize",
    "nonproper_admissible",
    "hom_exists",
    "iso_exists",
    "has_infinite_projection",
    "has_compact_open_at_one",
    "proper_default",
]


class Properness(Enum):
    PROPER = "proper"
    NON_PROPER = "nonproper"


def _check_endpoints(lo: float, hi: float) -> tuple[float, float]:
    lo, hi = float(lo), float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise InvalidInterval(f"non-finite interval endpoint ({lo}, {hi})")
    if lo > hi:
        raise InvalidInterval(f"interval with lo > hi: ({lo}, {hi})")
    if lo < 0.0:
        raise NegativeEndpoint(f"spectrum endpoints must be >= 0, got {lo}")
    return lo, hi


@dataclass(frozen=True)
class SpectralSet:
    """A finite union of disjoint closed intervals in [0, oo), kept sorted."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ivs = tuple(_check_endpoints(lo, hi) for lo, hi in self.intervals)
        for (_, hi), (lo2, _) in zip(ivs, ivs[1:]):
            if hi >= lo2:
                raise InvalidInterval(
                    "intervals must be sorted and strictly disjoint; "
                    "use normalize() to coalesce raw input"
                )
        object.__setattr__(self, "intervals", ivs)

    def contains(self, x: float) -> bool:
        """Closed-endpoint membership test."""
        i = bisect_right(self.intervals, (float(x), math.inf)) - 1
        return i >= 0 and self.intervals[i][0] <= x <= self.intervals[i][1]

    def interval_index_of(self, x: float) -> int:
        """Index of the interval (= connected component) containing x."""
        i = bisect_right(self.intervals, (float(x), math.inf)) - 1
        if i < 0 or not (self.intervals[i][0] <= x <= self.intervals[i][1]):
            raise NotMember(f"{x} is not in the set")
        return i

    def is_subset(self, other: "SpectralSet") -> bool:
        """Exact interval-wise containment: every point of self lies in other."""
        # A closed interval is connected, so it fits inside the disjoint union
        # `other` iff a single interval of `other` contains it.
        return all(
            any(blo <= lo and hi <= bhi for blo, bhi in other.intervals)
            for lo, hi in self.intervals
        )

    def isolated_at(self, x: float) -> bool:
        """True iff the component containing x is the single point {x}."""
        lo, hi = self.intervals[self.interval_index_of(x)]
        return lo == hi

    def is_empty(self) -> bool:
        return not self.intervals

    def to_json(self) -> dict:
        return {"intervals": [[lo, hi] for lo, hi in self.intervals]}

    @classmethod
    def from_json(cls, obj: dict) -> "SpectralSet":
        if not isinstance(obj, dict) or "intervals" not in obj:
            raise InvalidInterval("spectral-set JSON must be {'intervals': [[lo, hi], ...]}")
        return normalize(obj["intervals"])


def normalize(raw: Iterable[Sequence[float]]) -> SpectralSet:
    """Sort and coalesce raw (lo, hi) pairs into the canonical representation.

    Overlapping or touching intervals merge; the result is strictly disjoint
    and the map is idempotent.
    """
    pairs = sorted(_check_endpoints(lo, hi) for lo, hi in raw)
    merged: list[tuple[float, float]] = []
    for lo, hi in pairs:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return SpectralSet(tuple(merged))


@dataclass(frozen=True)
class ScalingSpectrum:
    """A spectral set that is admissible as spec(|X*|): it must contain 0 and 1."""

    set: SpectralSet

    def __post_init__(self):
        if not (self.set.contains(0.0) and self.set.contains(1.0)):
            raise NotAdmissible("a scaling spectrum must contain both 0 and 1")

    @classmethod
    def from_intervals(cls, raw: Iterable[Sequence[float]]) -> "ScalingSpectrum":
        return cls(normalize(raw))

    def to_json(self) -> dict:
        return self.set.to_json()

    @classmethod
    def from_json(cls, obj: dict) -> "ScalingSpectrum":
        return cls(SpectralSet.from_json(obj))


@dataclass(frozen=True)
class GeneratorDescriptor:
    """Complete isomorphism invariant of a generated algebra: spectrum + flag."""

    spectrum: ScalingSpectrum
    properness: Properness

    def __post_init__(self):
        if self.properness is Properness.NON_PROPER and not nonproper_admissible(self.spectrum):
            raise NotAdmissible(
                "non-proper generators exist only when the spectrum minus {0, 1} "
                "is non-empty and compact (0 and 1 isolated)"
            )

    def to_json(self) -> dict:
        return {
            "spectrum": self.spectrum.to_json(),
            "proper": self.properness is Properness.PROPER,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GeneratorDescriptor":
        if not isinstance(obj, dict) or "spectrum" not in obj or "proper" not in obj:
            raise InvalidInterval(
                "descriptor JSON must be {'spectrum': <spectral-set>, 'proper': bool}"
            )
        flag = Properness.PROPER if obj["proper"] else Properness.NON_PROPER
        return cls(ScalingSpectrum.from_json(obj["spectrum"]), flag)


def nonproper_admissible(s: ScalingSpectrum) -> bool:
    """Whether a non-proper generator with this spectrum exists.

    Requires the spectrum minus {0, 1} to be non-empty and compact; on the
    interval representation that means 0 and 1 are isolated points and at
    least one further component exists.
    """
    return (
        s.set.isolated_at(0.0)
        and s.set.isolated_at(1.0)
        and len(s.set.intervals) >= 3
    )


def hom_exists(x: GeneratorDescriptor, y: GeneratorDescriptor) -> bool:
    """Whether a generator-sending *-homomorphism from x's algebra onto y's exists."""
    if not y.spectrum.set.is_subset(x.spectrum.set):
        return False
    if x.properness is Properness.NON_PROPER:
        return y.properness is Properness.NON_PROPER
    return True


def iso_exists(x: GeneratorDescriptor, y: GeneratorDescriptor) -> bool:
    """Whether a generator-sending *-isomorphism exists: equal spectra, equal flags."""
    return x.spectrum.set == y.spectrum.set and x.properness is y.properness


def has_infinite_projection(s: ScalingSpectrum) -> bool:
    """True iff the generated algebra contains an infinite projection.

    Decided by an interval cover walk: the algebra has an infinite projection
    exactly when the spectrum fails to cover all of [0, 1].
    """
    cursor = 0.0
    for lo, hi in s.set.intervals:
        if lo > cursor:
            return True
        cursor = max(cursor, hi)
        if cursor >= 1.0:
            return False
    return True


def has_compact_open_at_one(s: ScalingSpectrum) -> bool:
    """True iff the punctured spectrum has a compact open piece around 1.

    Equivalent criterion to :func:`has_infinite_projection`, decided by a
    different route: scan for a gap below 1, i.e. some cut c in [0, 1) outside
    the set, which makes the part of the spectrum above c clopen and compact.
    """
    # Gaps of a normalized set sit strictly between consecutive intervals.
    for (_, hi), _next in zip(s.set.intervals, s.set.intervals[1:]):
        if hi < 1.0:
            return True
    return False


def proper_default(s: ScalingSpectrum) -> GeneratorDescriptor:
    """The proper descriptor; a proper generator exists for every spectrum."""
    return GeneratorDescriptor(s, Properness.PROPER)
