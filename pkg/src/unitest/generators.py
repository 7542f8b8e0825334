"""Reproducible construction of test operators: Haar unitaries, orthogonals,
Clifford circuits, juntas, permutations, and calibrated far perturbations."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .choi import RngStream
from .linalg import as_operator, n_qubits_of

GATE_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
GATE_S = np.array([[1, 0], [0, 1j]], dtype=np.complex128)


def single_qubit_gate(gate: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Embed a 2x2 gate on the given qubit (1-based) of an n-qubit system."""
    if qubit < 1 or qubit > n:
        raise ValueError(f"qubit {qubit} out of range 1..{n}")
    m = np.eye(1, dtype=np.complex128)
    for j in range(1, n + 1):
        m = np.kron(m, gate if j == qubit else np.eye(2))
    return m


def cnot_gate(control: int, target: int, n: int) -> np.ndarray:
    """CNOT with 1-based control/target; qubit 1 is the most significant bit."""
    if control == target:
        raise ValueError("control and target must differ")
    for q in (control, target):
        if q < 1 or q > n:
            raise ValueError(f"qubit {q} out of range 1..{n}")
    dim = 2**n
    m = np.zeros((dim, dim), dtype=np.complex128)
    c_bit, t_bit = n - control, n - target
    for b in range(dim):
        out = b ^ (((b >> c_bit) & 1) << t_bit)
        m[out, b] = 1.0
    return m


def clifford_generators(n: int) -> list[tuple[str, np.ndarray]]:
    """Named generating set {H_i, S_i, CNOT_ij} of the n-qubit Clifford group."""
    gens = []
    for q in range(1, n + 1):
        gens.append((f"H{q}", single_qubit_gate(GATE_H, q, n)))
        gens.append((f"S{q}", single_qubit_gate(GATE_S, q, n)))
    for c, t in itertools.permutations(range(1, n + 1), 2):
        gens.append((f"CNOT{c}{t}", cnot_gate(c, t, n)))
    return gens


def haar_unitary(n: int, rng: RngStream) -> np.ndarray:
    """Haar-random unitary on n qubits via QR of a Ginibre matrix.

    The QR phases are fixed from the R diagonal so the distribution is Haar.
    """
    if n < 1 or n > 8:
        raise ValueError(f"n must be in 1..8, got {n}")
    dim = 2**n
    g = rng.generator
    z = (g.normal(size=(dim, dim)) + 1j * g.normal(size=(dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_orthogonal(n: int, rng: RngStream) -> np.ndarray:
    """Haar-random real orthogonal matrix (stored complex, zero imaginary part)."""
    if n < 1 or n > 8:
        raise ValueError(f"n must be in 1..8, got {n}")
    dim = 2**n
    z = rng.generator.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    q = q * np.sign(np.diagonal(r))
    return q.astype(np.complex128)


def random_clifford(n: int, depth: int, rng: RngStream) -> np.ndarray:
    """Product of `depth` uniformly chosen Clifford generators."""
    if n < 1 or n > 4:
        raise ValueError(f"n must be in 1..4, got {n}")
    if depth < 20 * n:
        raise ValueError(f"depth must be at least 20*n = {20 * n}, got {depth}")
    gens = [m for _, m in clifford_generators(n)]
    picks = rng.generator.integers(0, len(gens), size=depth)
    u = np.eye(2**n, dtype=np.complex128)
    for i in picks:
        u = gens[i] @ u
    return u


def embed_on_qubits(v: np.ndarray, targets, n: int) -> np.ndarray:
    """Place an operator on the given (1-based, distinct) qubits, identity elsewhere."""
    v = as_operator(v)
    targets = [int(t) for t in targets]
    k = len(targets)
    if len(set(targets)) != k or any(t < 1 or t > n for t in targets):
        raise ValueError(f"targets must be distinct qubits in 1..{n}, got {targets}")
    if v.shape[0] != 2**k:
        raise ValueError("operator dimension does not match the target count")
    full = np.kron(v, np.eye(2 ** (n - k), dtype=np.complex128))
    # full acts with v on qubits 1..k; permute qubit axes so v lands on targets
    src = [0] * n
    t0 = [t - 1 for t in targets]
    rest = [j for j in range(n) if j not in t0]
    for i, pos in enumerate(t0):
        src[pos] = i
    for i, pos in enumerate(rest):
        src[pos] = k + i
    t = full.reshape((2,) * (2 * n))
    perm = src + [s + n for s in src]
    return t.transpose(perm).reshape(2**n, 2**n)


def random_junta(n: int, k: int, rng: RngStream) -> np.ndarray:
    """Haar unitary on a uniform k-subset of qubits, identity on the rest."""
    if not 1 <= k <= n <= 8:
        raise ValueError(f"need 1 <= k <= n <= 8, got k={k}, n={n}")
    subset = sorted(int(q) + 1 for q in rng.generator.choice(n, size=k, replace=False))
    v = haar_unitary(k, rng)
    return embed_on_qubits(v, subset, n)


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1..n} as the tuple of images (mapping[j-1] = tau(j))."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(1, n + 1)):
            raise ValueError(f"mapping {self.mapping} is not a bijection on 1..{n}")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, j: int) -> int:
        return self.mapping[j - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, image in enumerate(self.mapping, start=1):
            inv[image - 1] = j
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """The permutation whose matrix is matrix(self) @ matrix(other)."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(other(self(j)) for j in range(1, self.n + 1)))

    def cycle_count(self) -> int:
        """Number of cycles, counting fixed points as 1-cycles."""
        seen = [False] * self.n
        cycles = 0
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cycles += 1
            j = start
            while not seen[j - 1]:
                seen[j - 1] = True
                j = self(j)
        return cycles

    def to_text(self) -> str:
        return " ".join(str(v) for v in self.mapping)

    @classmethod
    def from_text(cls, text: str) -> "Permutation":
        return cls(tuple(int(v) for v in text.split()))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))


def permutation_matrix(p: Permutation) -> np.ndarray:
    """Unitary relabeling qubits: |i_1..i_n> -> |i_tau(1)..i_tau(n)>."""
    n = p.n
    if n > 8:
        raise ValueError(f"n must be at most 8, got {n}")
    dim = 2**n
    m = np.zeros((dim, dim), dtype=np.complex128)
    for b in range(dim):
        out = 0
        for j in range(1, n + 1):
            bit = (b >> (n - p(j))) & 1
            out |= bit << (n - j)
        m[out, b] = 1.0
    return m


def all_permutations(n: int) -> list[Permutation]:
    """All n! permutations in a deterministic (lexicographic) order."""
    return [Permutation(m) for m in itertools.permutations(range(1, n + 1))]


def random_permutation(n: int, rng: RngStream) -> Permutation:
    return Permutation(tuple(int(v) + 1 for v in rng.generator.permutation(n)))


def random_traceless_hermitian(n: int, rng: RngStream) -> np.ndarray:
    """Random Hermitian direction: traceless, unit Frobenius norm."""
    dim = 2**n
    g = rng.generator
    z = g.normal(size=(dim, dim)) + 1j * g.normal(size=(dim, dim))
    h = (z + z.conj().T) / 2
    h -= np.trace(h) / dim * np.eye(dim)
    return h / np.linalg.norm(h)


def unitary_exp(h: np.ndarray, t: float) -> np.ndarray:
    """exp(i t h) for Hermitian h, via eigendecomposition (exactly unitary)."""
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(1j * t * evals)) @ evecs.conj().T


def perturb_toward_far(
    base: np.ndarray,
    class_oracle,
    epsilon: float,
    rng: RngStream,
    max_steps: int = 60,
) -> np.ndarray:
    """Walk base * exp(i t H) along a random Hermitian direction until the
    class oracle reports a distance in [epsilon, epsilon + 0.05].

    Raises if bracketing or bisection fails within max_steps; the caller may
    retry with a fresh stream (new H).
    """
    base = as_operator(base)
    n = n_qubits_of(base)
    h = random_traceless_hermitian(n, rng)
    evals, evecs = np.linalg.eigh(h)

    def at(t: float) -> np.ndarray:
        return base @ ((evecs * np.exp(1j * t * evals)) @ evecs.conj().T)

    window = (epsilon, epsilon + 0.05)
    lo, hi = 0.0, 0.1
    for step in range(max_steps):
        d = float(class_oracle(at(hi)))
        if d >= epsilon:
            break
        lo, hi = hi, hi * 2.0
    else:
        raise ValueError(
            f"could not bracket distance >= {epsilon} within {max_steps} doublings"
        )
    if d <= window[1]:
        return at(hi)
    for _ in range(max_steps):
        mid = (lo + hi) / 2.0
        d = float(class_oracle(at(mid)))
        if window[0] <= d <= window[1]:
            return at(mid)
        if d < epsilon:
            lo = mid
        else:
            hi = mid
    raise ValueError(f"bisection did not land in {window} within {max_steps} steps")
