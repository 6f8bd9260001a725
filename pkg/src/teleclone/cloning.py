"""Symmetric (Dicke) states and the optimal 1 -> M universal cloner.

The cloner is represented as an isometry from the input qubit onto
``2m - 1`` qubits: ``m - 1`` ancillas ``A1..A{m-1}`` followed by ``m``
copies ``C1..Cm``. Ancilla level ``j`` is encoded as the symmetric
``(m-1)``-qubit state with ``j`` excitations, which turns the Pauli
covariance of the two code words into literal many-qubit identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import LabelCollisionError, NotNormalizedError, ShapeMismatchError
from .linalg import NORM_TOL, PAULIS, PureState, QubitGate, apply_local

_AMPLITUDE_TOL = NORM_TOL


def ancilla_labels(m: int) -> tuple[str, ...]:
    return tuple(f"A{i}" for i in range(1, m))


def copy_labels(m: int) -> tuple[str, ...]:
    return tuple(f"C{i}" for i in range(1, m + 1))


def _dicke_vector(m: int, j: int) -> np.ndarray:
    weights = np.bitwise_count(np.arange(2**m, dtype=np.uint64))
    vec = np.zeros(2**m, dtype=complex)
    vec[weights == j] = 1.0 / math.sqrt(math.comb(m, j))
    return vec


def dicke_state(m: int, j: int, labels: Optional[Sequence[str]] = None) -> PureState:
    """Equal superposition of all ``m``-qubit basis states with ``j`` ones."""
    if m < 1:
        raise ValueError(f"Dicke state needs m >= 1 qubits, got {m}")
    if not 0 <= j <= m:
        raise ValueError(f"excitation count j={j} outside [0, {m}]")
    if labels is None:
        labels = tuple(f"q{i}" for i in range(m))
    if len(labels) != m:
        raise ShapeMismatchError(f"{len(labels)} labels for a {m}-qubit Dicke state")
    return PureState(_dicke_vector(m, j), tuple(labels))


def alpha_coeff(m: int, j: int) -> float:
    if m < 1:
        raise ValueError(f"copy count must be >= 1, got {m}")
    if not 0 <= j <= m - 1:
        raise ValueError(f"index j={j} outside [0, {m - 1}]")
    return math.sqrt(2 * (m - j) / (m * (m + 1)))


def optimal_fidelity(n: int, m: int) -> float:
    """Best achievable single-copy fidelity of an ``n -> m`` universal cloner."""
    if n < 1:
        raise ValueError(f"number of originals must be >= 1, got {n}")
    if m < n:
        raise ValueError(f"cannot clone {n} originals into fewer ({m}) outputs")
    return (m * (n + 1) + n) / (m * (n + 2))


def orthogonal_complement(a: complex, b: complex) -> tuple[complex, complex]:
    """Amplitudes of the state orthogonal to ``a|0> + b|1>``: ``-conj(b)|0> + conj(a)|1>``."""
    return -np.conj(b), np.conj(a)


def shrinking_form(a: complex, b: complex, gamma: float) -> np.ndarray:
    """``gamma |phi><phi| + (1 - gamma) |phi_perp><phi_perp|`` as a 2x2 matrix."""
    phi = np.array([a, b], dtype=complex)
    perp = np.array(orthogonal_complement(a, b), dtype=complex)
    return gamma * np.outer(phi, phi.conj()) + (1 - gamma) * np.outer(perp, perp.conj())


@dataclass(frozen=True, eq=False)
class CloneBasisPair:
    """Images of ``|0>`` and ``|1>`` under the optimal cloning isometry."""

    m: int
    phi0: PureState
    phi1: PureState

    @property
    def layout(self) -> tuple[str, ...]:
        return self.phi0.labels

    @property
    def ancillas(self) -> tuple[str, ...]:
        return ancilla_labels(self.m)

    @property
    def copies(self) -> tuple[str, ...]:
        return copy_labels(self.m)


@lru_cache(maxsize=32)
def clone_basis(m: int) -> CloneBasisPair:
    if m < 1:
        raise ValueError(f"copy count must be >= 1, got {m}")
    labels = ancilla_labels(m) + copy_labels(m)
    if m == 1:
        return CloneBasisPair(1, PureState([1, 0], labels), PureState([0, 1], labels))

    dim = 2 ** (2 * m - 1)
    v0 = np.zeros(dim, dtype=complex)
    v1 = np.zeros(dim, dtype=complex)
    for j in range(m):
        alpha = alpha_coeff(m, j)
        # ancilla occupies the low bits of the index
        v0 += alpha * np.kron(_dicke_vector(m, j), _dicke_vector(m - 1, j))
        v1 += alpha * np.kron(_dicke_vector(m, m - j), _dicke_vector(m - 1, m - 1 - j))
    return CloneBasisPair(m, PureState(v0, labels), PureState(v1, labels))


def apply_clone_isometry(a: complex, b: complex, m: int) -> PureState:
    """Output ``a phi0 + b phi1`` of the cloner on input ``a|0> + b|1>``."""
    norm2 = abs(a) ** 2 + abs(b) ** 2
    if abs(norm2 - 1.0) > _AMPLITUDE_TOL:
        raise NotNormalizedError(f"|a|^2 + |b|^2 = {norm2!r}")
    basis = clone_basis(m)
    return PureState(a * basis.phi0.amplitudes + b * basis.phi1.amplitudes, basis.layout)


def _pauli(g: QubitGate) -> QubitGate:
    for p in PAULIS:
        if np.allclose(g.matrix, p.matrix, atol=1e-12, rtol=0):
            return p
    raise ValueError(f"gate {g.name!r} is not one of identity, sigma_x, sigma_y, sigma_z")


def simultaneous_pauli(s: PureState, g: QubitGate) -> PureState:
    """Apply the same Pauli operator to every qubit of ``s``."""
    return apply_local(_pauli(g), s.labels, s)


def clone_qubit(s: PureState, q: str, m: int) -> PureState:
    """Apply the cloning isometry to qubit ``q`` of a possibly entangled state.

    Qubit ``q`` is consumed; the ancilla and copy qubits are appended after
    the remaining labels of ``s``.
    """
    basis = clone_basis(m)
    k = s.index(q)
    rest = tuple(l for l in s.labels if l != q)
    clash = set(rest) & set(basis.layout)
    if clash:
        raise LabelCollisionError(f"labels {sorted(clash)} already used by the cloner")
    t = np.moveaxis(s.tensor(), k, -1)
    cols = t.reshape((2 ** len(rest), 2), order="F")
    vec = np.kron(basis.phi0.amplitudes, cols[:, 0]) + np.kron(basis.phi1.amplitudes, cols[:, 1])
    return PureState(vec, rest + basis.layout)
