"""Dense complex linear algebra on qubit-sized operators.

Operators are plain numpy arrays of shape (2**n, 2**n), complex128,
row-major. Qubit indices are 1-based; qubit 1 is the most significant
bit of a basis index.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_UNITARY_TOL = 1e-9


def as_operator(a) -> np.ndarray:
    """Coerce to a square complex matrix whose dimension is a power of two."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"operator must be a square matrix, got shape {a.shape}")
    dim = a.shape[0]
    if dim < 1 or dim & (dim - 1) != 0:
        raise ValueError(f"operator dimension {dim} is not a power of two")
    return a


def n_qubits_of(a: np.ndarray) -> int:
    """Number of qubits of a square operator (dimension must be 2**n)."""
    return as_operator(a).shape[0].bit_length() - 1


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product tr(a† b)."""
    a, b = as_operator(a), as_operator(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return complex(np.vdot(a, b))


def frobenius_norm(a: np.ndarray) -> float:
    """Frobenius (Hilbert-Schmidt) norm sqrt(sum |a_ij|^2)."""
    return float(np.linalg.norm(a))


def is_unitary(a: np.ndarray, tol: float = DEFAULT_UNITARY_TOL) -> bool:
    """True iff ||a†a - I||_F <= tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = as_operator(a)
    gram = a.conj().T @ a
    return float(np.linalg.norm(gram - np.eye(a.shape[0]))) <= tol


def distance_d(u: np.ndarray, v: np.ndarray, tol: float = DEFAULT_UNITARY_TOL) -> float:
    """Global-phase-invariant distance sqrt(1 - |tr(u† v)| / N) between unitaries.

    This closed form realizes the minimization over a global phase exactly
    for unitary inputs.
    """
    u, v = as_operator(u), as_operator(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")
    if not is_unitary(u, tol):
        raise ValueError("first argument is not unitary")
    if not is_unitary(v, tol):
        raise ValueError("second argument is not unitary")
    n_dim = u.shape[0]
    return math.sqrt(max(0.0, 1.0 - abs(hs_inner(u, v)) / n_dim))


@dataclass(frozen=True)
class SvdResult:
    """Decomposition a = left @ diag(singular_values) @ right."""

    left: np.ndarray
    singular_values: np.ndarray
    right: np.ndarray


def svd(a: np.ndarray) -> SvdResult:
    """Singular value decomposition with unitary factors and descending values."""
    a = as_operator(a)
    left, values, right = np.linalg.svd(a)
    return SvdResult(left=left, singular_values=values, right=right)


def nearest_unitary(a: np.ndarray) -> np.ndarray:
    """Unitary polar factor left @ right of the SVD; the closest unitary to a."""
    result = svd(a)
    return result.left @ result.right


def nuclear_norm(a: np.ndarray) -> float:
    """Sum of singular values."""
    return float(np.linalg.svd(as_operator(a), compute_uv=False).sum())


def partial_trace(a: np.ndarray, keep) -> np.ndarray:
    """Trace out all qubits not in `keep` (1-based indices, original order kept).

    tr(result) equals tr(a); keep may be empty, yielding a 1x1 matrix.
    """
    a = as_operator(a)
    n = n_qubits_of(a)
    kept = sorted(set(int(q) for q in keep))
    for q in kept:
        if q < 1 or q > n:
            raise ValueError(f"qubit index {q} out of range 1..{n}")
    if not kept:
        return np.array([[np.trace(a)]], dtype=np.complex128)
    if len(kept) == n:
        return a.copy()
    t = a.reshape((2,) * (2 * n))
    # row axis q-1 and column axis n+q-1 carry qubit q; traced qubits share a label
    subscripts = list(range(n)) + [
        n + j if j + 1 in kept else j for j in range(n)
    ]
    out = [q - 1 for q in kept] + [n + q - 1 for q in kept]
    reduced = np.einsum(t, subscripts, out)
    k = len(kept)
    return reduced.reshape(2**k, 2**k)


@dataclass
class DistanceReport:
    """Oracle distance value with a witness for the nearest element."""

    value: float
    witness_phase: float = 0.0
    witness_index: object = None


# --- matrix file format (shared repo-wide) ---------------------------------
# JSON object {"n_qubits": int, "entries": [[re, im], ...]} in row-major order.


def matrix_to_dict(a: np.ndarray) -> dict:
    a = as_operator(a)
    n = n_qubits_of(a)
    flat = a.reshape(-1)
    return {
        "n_qubits": n,
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_dict(obj: dict) -> np.ndarray:
    if not isinstance(obj, dict) or "n_qubits" not in obj or "entries" not in obj:
        raise ValueError("matrix object must have 'n_qubits' and 'entries' fields")
    n = obj["n_qubits"]
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n_qubits must be a non-negative integer, got {n!r}")
    entries = obj["entries"]
    if len(entries) != 4**n:
        raise ValueError(
            f"entries length {len(entries)} does not equal 4^n_qubits = {4**n}"
        )
    dim = 2**n
    flat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return flat.reshape(dim, dim)


def save_matrix(path, a: np.ndarray) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_dict(a), fh)


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        obj = json.load(fh)
    return matrix_from_dict(obj)
