"""Telecloning resource state, Bell measurement, corrections and secret sharing."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .cloning import (
    ancilla_labels,
    clone_basis,
    copy_labels,
    optimal_fidelity,
    shrinking_form,
    _dicke_vector,
)
from .config import check_m
from .errors import ShapeMismatchError, SubspaceViolationError, UnknownLabelError
from .linalg import (
    IDENTITY,
    I_SIGMA_Y,
    SIGMA_X,
    SIGMA_Z,
    DensityOperator,
    PureState,
    QubitGate,
    apply_local,
    fidelity_pure,
    partial_trace,
    reorder,
    tensor_product,
)

PORT = "P"
INPUT = "X"
# branches lighter than this are treated as impossible
ZERO_BRANCH_TOL = 1e-14
SECRET_RESIDUAL_TOL = 1e-8


class BellOutcome(enum.Enum):
    """Bell measurement result; ``bits = (is_psi, is_minus)``."""

    PHI_PLUS = (0, 0)
    PHI_MINUS = (0, 1)
    PSI_PLUS = (1, 0)
    PSI_MINUS = (1, 1)

    @property
    def bits(self) -> tuple[int, int]:
        return self.value

    @classmethod
    def from_bits(cls, b1: int, b2: int) -> "BellOutcome":
        return cls((int(b1), int(b2)))

    @property
    def short(self) -> str:
        return {"PHI_PLUS": "phi+", "PHI_MINUS": "phi-", "PSI_PLUS": "psi+", "PSI_MINUS": "psi-"}[
            self.name
        ]

    @classmethod
    def parse(cls, text: str) -> "BellOutcome":
        key = text.strip().lower()
        for o in cls:
            if key in (o.short, o.name.lower(), o.name.lower().replace("_", "")):
                return o
        raise ValueError(f"unknown Bell outcome {text!r}; expected one of phi+, phi-, psi+, psi-")


OUTCOMES = tuple(BellOutcome)


def bell_state(o: BellOutcome, labels: tuple[str, str] = ("q0", "q1")) -> PureState:
    """``(|00> +- |11>)/sqrt2`` or ``(|01> +- |10>)/sqrt2``, first ket letter = first label."""
    is_psi, is_minus = o.bits
    sign = -1.0 if is_minus else 1.0
    amps = np.zeros(4, dtype=complex)
    if is_psi:
        amps[0b10] = 1.0  # first label 0, second 1
        amps[0b01] = sign
    else:
        amps[0b00] = 1.0
        amps[0b11] = sign
    return PureState(amps / math.sqrt(2), labels)


_CORRECTIONS = {
    BellOutcome.PHI_PLUS: IDENTITY,
    BellOutcome.PHI_MINUS: SIGMA_Z,
    BellOutcome.PSI_PLUS: SIGMA_X,
    BellOutcome.PSI_MINUS: I_SIGMA_Y,
}


def correction_for(o: BellOutcome) -> QubitGate:
    return _CORRECTIONS[o]


@dataclass(frozen=True, eq=False)
class TelecloningState:
    """The ``2m``-qubit resource shared by the sender and the receivers.

    Layout is ``P, A1..A{m-1}, C1..Cm``; ``P`` and the ancillas form the
    sending side, the ``C`` qubits the receiving side.
    """

    m: int
    state: PureState

    @property
    def sending_side(self) -> tuple[str, ...]:
        return (PORT,) + ancilla_labels(self.m)

    @property
    def receiving_side(self) -> tuple[str, ...]:
        return copy_labels(self.m)

    def opposite_side(self, label: str) -> tuple[str, ...]:
        if label in self.sending_side:
            return self.receiving_side
        if label in self.receiving_side:
            return self.sending_side
        raise UnknownLabelError(f"label {label!r} not in layout {self.state.labels}")


def _layout(m: int) -> tuple[str, ...]:
    return (PORT,) + ancilla_labels(m) + copy_labels(m)


def build_telecloning_state(m: int) -> TelecloningState:
    """``(|0>_P phi0 + |1>_P phi1) / sqrt2``."""
    return _telecloning_state(check_m(m))


@lru_cache(maxsize=16)
def _telecloning_state(m: int) -> TelecloningState:
    basis = clone_basis(m)
    vec = (np.kron(basis.phi0.amplitudes, [1, 0]) + np.kron(basis.phi1.amplitudes, [0, 1])) / math.sqrt(2)
    return TelecloningState(m, PureState(vec, _layout(m)))


def build_telecloning_state_dicke(m: int) -> TelecloningState:
    """Same resource written as ``sum_j |D(m,j)>_PA |D(m,j)>_C / sqrt(m+1)``."""
    check_m(m)
    vec = sum(np.kron(_dicke_vector(m, j), _dicke_vector(m, j)) for j in range(m + 1))
    return TelecloningState(m, PureState(vec / math.sqrt(m + 1), _layout(m)))


@dataclass(frozen=True, eq=False)
class BellBranch:
    outcome: BellOutcome
    probability: float
    post_state: Optional[PureState]

    @property
    def possible(self) -> bool:
        return self.post_state is not None


def bell_project(joint: PureState, x: str, p: str, o: BellOutcome) -> BellBranch:
    """Project qubits ``(x, p)`` onto a Bell state and renormalize the rest."""
    ix, ip = joint.index(x), joint.index(p)
    if ix == ip:
        raise ValueError("Bell measurement needs two distinct qubits")
    rest = tuple(l for l in joint.labels if l not in (x, p))
    bell = bell_state(o).tensor()
    t = np.moveaxis(joint.tensor(), [ix, ip], [0, 1])
    branch = np.tensordot(bell.conj(), t, axes=([0, 1], [0, 1]))
    vec = branch.reshape(-1, order="F")
    prob = float(np.vdot(vec, vec).real)
    if prob < ZERO_BRANCH_TOL:
        return BellBranch(o, prob, None)
    return BellBranch(o, prob, PureState(vec / math.sqrt(prob), rest))


@dataclass(frozen=True)
class ForcedOutcome:
    outcome: BellOutcome


@dataclass(frozen=True)
class Sampled:
    seed: int


Policy = Union[ForcedOutcome, Sampled]


@dataclass(frozen=True)
class Correction:
    gate: str
    targets: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class Transcript:
    """Record of one telecloning run."""

    a: complex
    b: complex
    m: int
    port: str
    outcome: BellOutcome
    outcome_probability: float
    corrections: Correction
    correct_ancilla: bool
    clone_labels: tuple[str, ...]
    clone_density_ops: tuple[DensityOperator, ...] = field(repr=False)
    clone_fidelities: tuple[float, ...]
    output_state: PureState = field(repr=False)
    seed: Optional[int] = None

    @property
    def gamma_theory(self) -> float:
        return optimal_fidelity(1, self.m)

    def max_fidelity_error(self) -> float:
        return max(abs(f - self.gamma_theory) for f in self.clone_fidelities)

    def max_shrinking_error(self) -> float:
        expected = shrinking_form(self.a, self.b, self.gamma_theory)
        return max(float(np.max(np.abs(r.matrix - expected))) for r in self.clone_density_ops)


def _input_state(a: complex, b: complex) -> PureState:
    return PureState(np.array([a, b], dtype=complex), (INPUT,))


def _measure(joint: PureState, port: str, policy: Policy) -> BellBranch:
    if isinstance(policy, ForcedOutcome):
        branch = bell_project(joint, INPUT, port, policy.outcome)
        if not branch.possible:
            raise ValueError(f"outcome {policy.outcome.short} has zero probability")
        return branch
    if isinstance(policy, Sampled):
        branches = [bell_project(joint, INPUT, port, o) for o in OUTCOMES]
        probs = np.array([br.probability for br in branches])
        rng = np.random.default_rng(policy.seed)
        return branches[rng.choice(len(branches), p=probs / probs.sum())]
    raise TypeError(f"unsupported measurement policy {policy!r}")


def run_with_port(
    s: TelecloningState,
    port: str,
    a: complex,
    b: complex,
    policy: Policy,
    correct_ancilla: bool = True,
) -> Transcript:
    """Teleclone ``a|0> + b|1>`` using ``port`` as the measured resource qubit.

    The clones appear on the side of the resource opposite ``port``. The
    resource is symmetric under same-side permutations and under exchanging
    the two sides, so the correction rule is the same for every port.
    """
    if port not in s.state.labels:
        raise UnknownLabelError(f"port {port!r} not in layout {s.state.labels}")
    phi = _input_state(a, b)
    joint = tensor_product(phi, s.state)
    branch = _measure(joint, port, policy)
    out = branch.post_state

    clones = s.opposite_side(port)
    targets = out.labels if correct_ancilla else clones
    gate = correction_for(branch.outcome)
    if gate is not IDENTITY:
        out = apply_local(gate, targets, out)

    rhos = tuple(partial_trace(out, [c]) for c in clones)
    return Transcript(
        a=complex(a),
        b=complex(b),
        m=s.m,
        port=port,
        outcome=branch.outcome,
        outcome_probability=branch.probability,
        corrections=Correction(gate.name, tuple(targets)),
        correct_ancilla=correct_ancilla,
        clone_labels=clones,
        clone_density_ops=rhos,
        clone_fidelities=tuple(fidelity_pure(r, phi) for r in rhos),
        output_state=out,
        seed=policy.seed if isinstance(policy, Sampled) else None,
    )


def run_telecloning(
    a: complex,
    b: complex,
    m: int,
    policy: Policy = Sampled(0),
    correct_ancilla: bool = True,
) -> Transcript:
    return run_with_port(build_telecloning_state(m), PORT, a, b, policy, correct_ancilla)


@dataclass(frozen=True, eq=False)
class SharedSecretState:
    """Ancilla and clone qubits gathered in one place (layout ``A.., C..``)."""

    m: int
    ac_state: PureState

    def __post_init__(self):
        layout = clone_basis(self.m).layout
        if sorted(self.ac_state.labels) != sorted(layout):
            raise ShapeMismatchError(f"expected qubits {layout}, got {self.ac_state.labels}")
        object.__setattr__(self, "ac_state", reorder(self.ac_state, layout))

    @classmethod
    def from_transcript(cls, t: Transcript) -> "SharedSecretState":
        if t.port != PORT:
            raise ValueError("secret sharing is defined for the default port P only")
        return cls(t.m, t.output_state)

    def code_amplitudes(self) -> tuple[complex, complex, float]:
        """Projections onto ``phi0``, ``phi1`` and the norm of what is left over."""
        basis = clone_basis(self.m)
        v = self.ac_state.amplitudes
        c0 = complex(np.vdot(basis.phi0.amplitudes, v))
        c1 = complex(np.vdot(basis.phi1.amplitudes, v))
        residual = float(np.linalg.norm(v - c0 * basis.phi0.amplitudes - c1 * basis.phi1.amplitudes))
        return c0, c1, residual


def reconstruct_secret(shared: SharedSecretState) -> tuple[complex, complex]:
    """Invert the cloning isometry on the gathered ancilla + clone qubits."""
    c0, c1, residual = shared.code_amplitudes()
    if residual > SECRET_RESIDUAL_TOL:
        raise SubspaceViolationError(residual)
    norm = math.hypot(abs(c0), abs(c1))
    return c0 / norm, c1 / norm
