"""Born-rule simulation for Choi states of unitaries.

The Choi vector of an operator never needs materializing: its overlap with
another Choi vector is the normalized Hilbert-Schmidt inner product, and the
Pauli-basis measurement distribution is the operator's Pauli spectrum. The
random streams here are counter-based (numpy Philox keyed by seed and
stream_id), so identical (seed, stream_id) reproduces identical draws and
distinct stream ids are independent.
"""

from __future__ import annotations

import numpy as np

from .linalg import as_operator, hs_inner
from .pauli import PauliSpectrum, index_to_string

DEFAULT_SEED = 0xC0FFEE


class RngStream:
    """Reproducible random stream keyed by (seed, stream_id)."""

    def __init__(self, seed: int = DEFAULT_SEED, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        key = np.array(
            [self.seed & 0xFFFFFFFFFFFFFFFF, self.stream_id & 0xFFFFFFFFFFFFFFFF],
            dtype=np.uint64,
        )
        self.generator = np.random.Generator(np.random.Philox(key=key))

    def __repr__(self):
        return f"RngStream(seed={self.seed:#x}, stream_id={self.stream_id})"


def choi_overlap(u: np.ndarray, v: np.ndarray) -> complex:
    """Inner product of the Choi states of u and v: tr(u† v) / N."""
    u, v = as_operator(u), as_operator(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")
    return hs_inner(u, v) / u.shape[0]


def sample_pauli_indices(spec: PauliSpectrum, rng: RngStream, size: int) -> np.ndarray:
    """Draw `size` outcome indices from the spectrum's Born distribution.

    Inverse-CDF over the renormalized probability table; raises if the raw
    mass deviates from 1 by more than 1e-6 (non-unitary operator upstream).
    """
    mass = float(spec.probabilities.sum())
    if abs(mass - 1.0) > 1e-6:
        raise ValueError(
            f"probability mass {mass} deviates from 1 by more than 1e-6; "
            "the measured operator is not unitary"
        )
    draws = rng.generator.random(size)
    return np.searchsorted(spec.cumulative(), draws, side="right")


def sample_pauli_measurement(spec: PauliSpectrum, rng: RngStream) -> tuple[int, ...]:
    """One Pauli-basis measurement outcome of the Choi state, as a Pauli string."""
    idx = int(sample_pauli_indices(spec, rng, 1)[0])
    return index_to_string(idx, spec.n)


def bell_test_success_prob(u: np.ndarray) -> float:
    """Probability |tr(u u^T)|^2 / N^2 that the Bell-state test succeeds.

    u^T is the plain transpose (no conjugation); equals 1 exactly when u is
    real orthogonal, and is invariant under a global phase of u.
    """
    u = as_operator(u)
    n_dim = u.shape[0]
    trace = np.sum(u * u.T)  # tr(u @ u.T) without forming the product
    return float(abs(trace) ** 2 / n_dim**2)


def sample_bell_test(u: np.ndarray, rng: RngStream) -> bool:
    """Bernoulli draw of one Bell-state test iteration on u."""
    return bool(rng.generator.random() < bell_test_success_prob(u))
