"""Dense state-vector and density-operator kernel.

Basis convention is little-endian over the layout: bit ``k`` of a basis
index is the value of the ``k``-th label. Internally states are viewed as
rank-``n`` tensors with Fortran ordering so that tensor axis ``k`` is
label ``k``.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    LabelCollisionError,
    NotHermitianError,
    NotNormalizedError,
    ShapeMismatchError,
    UnknownLabelError,
)

NORM_TOL = 1e-10
HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-12


def _as_tensor(vec: np.ndarray, n: int) -> np.ndarray:
    return vec.reshape((2,) * n, order="F")


def _as_vector(t: np.ndarray) -> np.ndarray:
    return t.reshape(-1, order="F")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over labeled qubits."""

    amplitudes: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(l) for l in self.labels)
        if len(set(labels)) != len(labels):
            raise LabelCollisionError(f"duplicate labels in layout {labels}")
        amps = _frozen(np.ravel(self.amplitudes))
        if amps.size != 2 ** len(labels):
            raise ShapeMismatchError(
                f"{amps.size} amplitudes for {len(labels)} qubits (need {2 ** len(labels)})"
            )
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalizedError(f"squared norm {norm2!r} differs from 1")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "labels", labels)

    @property
    def num_qubits(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabelError(f"label {label!r} not in layout {self.labels}") from None

    def tensor(self) -> np.ndarray:
        return _as_tensor(self.amplitudes, self.num_qubits)

    def __repr__(self) -> str:
        return f"PureState(labels={self.labels}, dim={self.amplitudes.size})"


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive semidefinite matrix on labeled qubits.

    ``check=False`` skips the invariant checks, for callers that produce the
    matrix by a construction that guarantees them (e.g. ``M @ M^H``).
    """

    matrix: np.ndarray
    labels: tuple[str, ...]
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        labels = tuple(str(l) for l in self.labels)
        if len(set(labels)) != len(labels):
            raise LabelCollisionError(f"duplicate labels in layout {labels}")
        mat = _frozen(self.matrix)
        dim = 2 ** len(labels)
        if mat.shape != (dim, dim):
            raise ShapeMismatchError(f"matrix shape {mat.shape} for {len(labels)} qubits")
        if check:
            dev = hermitian_deviation(mat)
            if dev > HERMITIAN_TOL:
                raise NotHermitianError(f"max |rho - rho^H| = {dev:.3e}")
            tr = np.trace(mat).real
            if abs(tr - 1.0) > NORM_TOL:
                raise NotNormalizedError(f"trace {tr!r} differs from 1")
            lo = np.linalg.eigvalsh(mat)[0]
            if lo < -NORM_TOL:
                raise ValueError(f"density operator has negative eigenvalue {lo:.3e}")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "labels", labels)

    @property
    def num_qubits(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class QubitGate:
    """A named 2x2 unitary."""

    name: str
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = _frozen(self.matrix)
        if mat.shape != (2, 2):
            raise ShapeMismatchError(f"single-qubit gate must be 2x2, got {mat.shape}")
        err = np.max(np.abs(mat.conj().T @ mat - np.eye(2)))
        if err > UNITARY_TOL:
            raise ValueError(f"gate {self.name!r} is not unitary (deviation {err:.3e})")
        object.__setattr__(self, "matrix", mat)


IDENTITY = QubitGate("identity", np.eye(2))
SIGMA_X = QubitGate("sigma_x", [[0, 1], [1, 0]])
SIGMA_Y = QubitGate("sigma_y", [[0, -1j], [1j, 0]])
SIGMA_Z = QubitGate("sigma_z", [[1, 0], [0, -1]])
# i*sigma_y; equals sigma_x sigma_z up to an overall sign
I_SIGMA_Y = QubitGate("i_sigma_y", [[0, 1], [-1, 0]])

PAULIS = (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z)


def state(amplitudes: Iterable[complex], labels: Sequence[str]) -> PureState:
    return PureState(np.asarray(list(amplitudes), dtype=complex), tuple(labels))


def basis_state(bits: Union[str, Sequence[int]], labels: Sequence[str]) -> PureState:
    """Computational basis state; ``bits[k]`` is the value of ``labels[k]``."""
    bits = [int(b) for b in bits]
    if len(bits) != len(labels):
        raise ShapeMismatchError(f"{len(bits)} bits for {len(labels)} labels")
    amps = np.zeros(2 ** len(bits), dtype=complex)
    amps[sum(b << k for k, b in enumerate(bits))] = 1.0
    return PureState(amps, tuple(labels))


def normalized(amplitudes: np.ndarray, labels: Sequence[str]) -> PureState:
    amps = np.asarray(amplitudes, dtype=complex)
    return PureState(amps / np.linalg.norm(amps), tuple(labels))


def tensor_product(a: PureState, b: PureState) -> PureState:
    """Composite state with ``a``'s labels first."""
    clash = set(a.labels) & set(b.labels)
    if clash:
        raise LabelCollisionError(f"labels {sorted(clash)} appear in both factors")
    # little-endian: a occupies the low bits
    return PureState(np.kron(b.amplitudes, a.amplitudes), a.labels + b.labels)


def apply_one_qubit(g: QubitGate, q: str, s: PureState) -> PureState:
    k = s.index(q)
    # bit k of the index: view as (high bits, qubit k, low bits)
    v = s.amplitudes.reshape(-1, 2, 1 << k)
    out = np.empty_like(v)
    (g00, g01), (g10, g11) = g.matrix
    np.add(g00 * v[:, 0], g01 * v[:, 1], out=out[:, 0])
    np.add(g10 * v[:, 0], g11 * v[:, 1], out=out[:, 1])
    return PureState(out.reshape(-1), s.labels)


def apply_local(g: QubitGate, targets: Iterable[str], s: PureState) -> PureState:
    """Apply ``g`` independently to every qubit in ``targets``."""
    for q in targets:
        s = apply_one_qubit(g, q, s)
    return s


def inner(a: PureState, b: PureState) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    if a.labels != b.labels:
        raise ShapeMismatchError(f"layouts differ: {a.labels} vs {b.labels}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def overlap_squared(a: PureState, b: PureState) -> float:
    return abs(inner(a, b)) ** 2


def equal_up_to_phase(a: PureState, b: PureState, tol: float = NORM_TOL) -> bool:
    return overlap_squared(a, b) >= 1.0 - tol


def reorder(s: PureState, order: Sequence[str]) -> PureState:
    """Same physical state expressed in a different label order."""
    order = tuple(order)
    if sorted(order) != sorted(s.labels):
        raise ShapeMismatchError(f"{order} is not a permutation of {s.labels}")
    t = np.transpose(s.tensor(), [s.index(l) for l in order])
    return PureState(_as_vector(t), order)


def relabel(s: PureState, mapping: dict[str, str]) -> PureState:
    """Rename qubits; amplitudes are untouched."""
    return PureState(s.amplitudes, tuple(mapping.get(l, l) for l in s.labels))


def swap_qubits(s: PureState, q1: str, q2: str) -> PureState:
    """Exchange the contents of two qubits, keeping the layout."""
    t = np.swapaxes(s.tensor(), s.index(q1), s.index(q2))
    return PureState(_as_vector(t), s.labels)


def projector(s: PureState) -> DensityOperator:
    v = s.amplitudes
    return DensityOperator(np.outer(v, v.conj()), s.labels, check=False)


def _check_keep(labels: tuple[str, ...], keep: Sequence[str]) -> list[int]:
    keep = list(keep)
    if not keep:
        raise ValueError("partial trace needs at least one qubit to keep")
    if len(set(keep)) != len(keep):
        raise LabelCollisionError(f"duplicate labels in keep set {keep}")
    missing = [l for l in keep if l not in labels]
    if missing:
        raise UnknownLabelError(f"labels {missing} not in layout {labels}")
    return [labels.index(l) for l in keep]


def partial_trace(
    s: Union[PureState, DensityOperator], keep: Sequence[str]
) -> DensityOperator:
    """Reduced operator on ``keep`` (in the given order)."""
    keep_ax = _check_keep(s.labels, keep)
    n, k = s.num_qubits, len(keep_ax)
    rest = [i for i in range(n) if i not in keep_ax]
    if isinstance(s, PureState):
        t = np.transpose(s.tensor(), keep_ax + rest)
        mat = t.reshape((2**k, 2 ** (n - k)), order="F")
        rho = mat @ mat.conj().T
    else:
        t = s.matrix.reshape((2,) * (2 * n), order="F")
        axes = keep_ax + rest + [n + i for i in keep_ax] + [n + i for i in rest]
        t = np.transpose(t, axes).reshape(
            (2**k, 2 ** (n - k), 2**k, 2 ** (n - k)), order="F"
        )
        rho = np.trace(t, axis1=1, axis2=3)
    return DensityOperator(rho, tuple(keep), check=False)


def hermitian_deviation(mat: np.ndarray) -> float:
    return float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0


def eig_hermitian(d: Union[DensityOperator, np.ndarray]) -> np.ndarray:
    """Real eigenvalues in ascending order."""
    mat = d.matrix if isinstance(d, DensityOperator) else np.asarray(d, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ShapeMismatchError(f"expected a square matrix, got shape {mat.shape}")
    dev = hermitian_deviation(mat)
    if dev > HERMITIAN_TOL:
        raise NotHermitianError(f"max |A - A^H| = {dev:.3e}")
    return np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))


def fidelity_pure(rho: DensityOperator, phi: PureState) -> float:
    """<phi|rho|phi>, clipped to [0, 1]."""
    if rho.dim != phi.amplitudes.size:
        raise ShapeMismatchError(
            f"density operator of dimension {rho.dim} vs state of dimension {phi.amplitudes.size}"
        )
    v = phi.amplitudes
    f = np.vdot(v, rho.matrix @ v).real
    return float(min(1.0, max(0.0, f)))


def haar_random_qubit(seed: int, label: str = "q0") -> PureState:
    """Uniformly distributed qubit on the Bloch sphere, deterministic in ``seed``."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return PureState(z / np.linalg.norm(z), (label,))
