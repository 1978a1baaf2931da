import numpy as np
import pytest
from hypothesis import strategies as st

from scalex.spectra import (
    GeneratorDescriptor,
    Properness,
    ScalingSpectrum,
    nonproper_admissible,
    normalize,
)

finite_endpoints = st.floats(
    min_value=0.0, max_value=4.0, allow_nan=False, allow_infinity=False, width=32
)


@st.composite
def raw_interval_lists(draw, max_intervals=5):
    n = draw(st.integers(min_value=0, max_value=max_intervals))
    pairs = []
    for _ in range(n):
        a = draw(finite_endpoints)
        b = draw(finite_endpoints)
        pairs.append((min(a, b), max(a, b)))
    return pairs


@st.composite
def spectral_sets(draw, max_intervals=5):
    return normalize(draw(raw_interval_lists(max_intervals)))


@st.composite
def scaling_spectra(draw, max_intervals=4):
    raw = draw(raw_interval_lists(max_intervals)) + [(0.0, 0.0), (1.0, 1.0)]
    return ScalingSpectrum(normalize(raw))


@st.composite
def descriptors(draw):
    spectrum = draw(scaling_spectra())
    if nonproper_admissible(spectrum) and draw(st.booleans()):
        return GeneratorDescriptor(spectrum, Properness.NON_PROPER)
    return GeneratorDescriptor(spectrum, Properness.PROPER)


def random_positive_definite(rng: np.random.Generator, dim: int, lo=0.3, hi=1.8) -> np.ndarray:
    """Random Hermitian positive-definite block with eigenvalues in [lo, hi]."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    eigs = rng.uniform(lo, hi, size=dim)
    a = q @ np.diag(eigs).astype(complex) @ q.conj().T
    return (a + a.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
