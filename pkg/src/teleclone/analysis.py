"""Entanglement diagnostics of the telecloning resource state."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from itertools import combinations, product
from typing import Optional, Sequence, Union

import numpy as np

from .cloning import clone_qubit
from .config import check_m
from .errors import ShapeMismatchError, UnknownLabelError
from .linalg import (
    NORM_TOL,
    DensityOperator,
    PureState,
    eig_hermitian,
    partial_trace,
    relabel,
    reorder,
)
from .protocol import INPUT, PORT, BellOutcome, TelecloningState, bell_state, build_telecloning_state

PT_ENTANGLED_TOL = 1e-12

State = Union[PureState, DensityOperator]


def _log(base):
    if base == 2:
        return np.log2
    if base == "e" or base == math.e:
        return np.log
    raise ValueError(f"unsupported logarithm base {base!r}; use 2 or 'e'")


def von_neumann_entropy(rho: DensityOperator, base=2) -> float:
    ev = eig_hermitian(rho)
    if ev[0] < -NORM_TOL:
        raise ValueError(f"negative eigenvalue {ev[0]:.3e} in density operator")
    return _shannon(ev, base)


def _shannon(p: np.ndarray, base=2) -> float:
    log = _log(base)
    p = p[p > 0]
    return float(-np.sum(p * log(p))) + 0.0


def _split(s: State, side: Sequence[str]) -> tuple[list[str], list[str]]:
    side = list(dict.fromkeys(side))
    missing = [l for l in side if l not in s.labels]
    if missing:
        raise UnknownLabelError(f"labels {missing} not in layout {s.labels}")
    if not side or len(side) == s.num_qubits:
        raise ValueError("bipartition needs a proper, nonempty subset of qubits")
    rest = [l for l in s.labels if l not in side]
    return side, rest


def schmidt_coefficients(s: PureState, side: Sequence[str], cutoff: float = 1e-12) -> np.ndarray:
    """Nonzero Schmidt coefficients across ``side | rest``, descending."""
    side, rest = _split(s, side)
    t = reorder(s, side + rest).amplitudes
    mat = t.reshape((2 ** len(side), 2 ** len(rest)), order="F")
    sv = np.concatenate(
        [np.linalg.svd(mat[np.ix_(r, c)], compute_uv=False) for r, c in _blocks(mat != 0)]
        or [np.zeros(0)]
    )
    sv = np.sort(sv)[::-1]
    return sv[sv > cutoff]


def _blocks(mask: np.ndarray):
    """Row/column index sets of the connected blocks of a sparsity pattern.

    Singular values of a matrix are the union of those of its blocks, so
    splitting first keeps structured states cheap at large sizes.
    """
    free_r = mask.any(axis=1)
    free_c = np.ones(mask.shape[1], dtype=bool)
    while free_r.any():
        rows = np.zeros_like(free_r)
        rows[np.argmax(free_r)] = True
        cols = np.zeros_like(free_c)
        while True:
            new_c = mask[rows].any(axis=0) & ~cols
            if not new_c.any():
                break
            cols |= new_c
            rows |= mask[:, new_c].any(axis=1)
        free_r &= ~rows
        free_c &= ~cols
        yield np.flatnonzero(rows), np.flatnonzero(cols)


def bipartite_entanglement(s: PureState, side: Sequence[str], base=2) -> float:
    """Entropy of entanglement of a pure state across ``side | rest``."""
    return _shannon(schmidt_coefficients(s, side, cutoff=0.0) ** 2, base)


def theoretical_rho_pc(m: int, labels: tuple[str, str] = (PORT, "C1")) -> DensityOperator:
    """Reduced operator of any pair on opposite sides of the resource."""
    if m < 2:
        raise ValueError(f"opposite-side pair matrix needs m >= 2, got {m}")
    d, off, mid = 2 * m + 1, m + 2, m - 1
    mat = np.array(
        [[d, 0, 0, off], [0, mid, 0, 0], [0, 0, mid, 0], [off, 0, 0, d]], dtype=complex
    ) / (6 * m)
    return DensityOperator(mat, labels)


def theoretical_rho_pa(labels: tuple[str, str] = (PORT, "A1")) -> DensityOperator:
    """Reduced operator of any pair on the same side (independent of m)."""
    mat = np.array([[2, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 2]], dtype=complex) / 6
    return DensityOperator(mat, labels)


def partial_transpose(rho: DensityOperator, label: str) -> np.ndarray:
    """Transpose the indices of one qubit; returns a plain Hermitian matrix."""
    n = rho.num_qubits
    if label not in rho.labels:
        raise UnknownLabelError(f"label {label!r} not in layout {rho.labels}")
    k = rho.labels.index(label)
    t = rho.matrix.reshape((2,) * (2 * n), order="F")
    t = np.swapaxes(t, k, n + k)
    return t.reshape((rho.dim, rho.dim), order="F")


def _require_two_qubits(rho: DensityOperator):
    if rho.matrix.shape != (4, 4):
        raise ShapeMismatchError(f"expected a 4x4 two-qubit operator, got {rho.matrix.shape}")


def partial_transpose_2q(rho: DensityOperator) -> np.ndarray:
    """Partial transpose on the second qubit of a two-qubit operator."""
    _require_two_qubits(rho)
    return partial_transpose(rho, rho.labels[1])


def ppt_min_eigenvalue(rho: DensityOperator) -> float:
    """Smallest eigenvalue of the partial transpose; negative iff entangled."""
    _require_two_qubits(rho)
    return float(eig_hermitian(partial_transpose_2q(rho))[0])


def is_entangled_2q(rho: DensityOperator, tol: float = PT_ENTANGLED_TOL) -> bool:
    return ppt_min_eigenvalue(rho) < -tol


def mutual_information(s: State, i: str, j: str, base=2) -> float:
    """``S(i) + S(j) - S(ij)``."""
    if i == j:
        raise ValueError("mutual information needs two distinct qubits")
    h = lambda keep: von_neumann_entropy(partial_trace(s, keep), base)
    return max(0.0, h([i]) + h([j]) - h([i, j]))


@dataclass(frozen=True)
class EbitBudget:
    telecloning: float
    clone_then_teleport: float
    port_flexible: float


def ebit_accounting(m: int) -> EbitBudget:
    """Shared entanglement needed by telecloning vs. clone-then-teleport."""
    if m < 1:
        raise ValueError(f"copy count must be >= 1, got {m}")
    return EbitBudget(math.log2(m + 1), float(m), float(m * m))


def entangled_input_state(m: int) -> PureState:
    """Clone one half of ``(|00> + |11>)/sqrt2``; the partner qubit is labelled P.

    By linearity this equals the telecloning resource, which is why the
    resource needs at least ``log2(m+1)`` e-bits across the two sides.
    """
    pair = bell_state(BellOutcome.PHI_PLUS, ("D", INPUT))
    return relabel(clone_qubit(pair, INPUT, m), {"D": PORT})


@dataclass
class PairDiagnostics:
    labels: tuple[str, str]
    matrix: list
    theoretical: list
    max_deviation: float
    min_pt_eigenvalue: float
    entangled: bool
    mutual_information_bits: float


@dataclass
class EntanglementReport:
    m: int
    total_entanglement_bits: float
    schmidt_coefficients: list
    pair_class_opposite: PairDiagnostics
    pair_class_same: PairDiagnostics
    ebits: EbitBudget
    max_deviation: float
    # spread of pair matrices within each class; None unless all pairs were scanned
    class_uniformity_deviation: Optional[float] = None

    def to_dict(self) -> dict:
        return asdict(self)


def _real_rows(mat: np.ndarray) -> list:
    return [[float(x) for x in row] for row in np.real(mat)]


def _pair(s: PureState, labels: tuple[str, str], theory: DensityOperator) -> PairDiagnostics:
    rho = partial_trace(s, labels)
    pt_min = ppt_min_eigenvalue(rho)
    return PairDiagnostics(
        labels=labels,
        matrix=_real_rows(rho.matrix),
        theoretical=_real_rows(theory.matrix),
        max_deviation=float(np.max(np.abs(rho.matrix - theory.matrix))),
        min_pt_eigenvalue=pt_min,
        entangled=pt_min < -PT_ENTANGLED_TOL,
        mutual_information_bits=mutual_information(s, *labels),
    )


def pair_classes(tc: TelecloningState) -> tuple[list, list]:
    """All opposite-side pairs and all same-side pairs of the resource."""
    left, right = tc.sending_side, tc.receiving_side
    opposite = list(product(left, right))
    same = list(combinations(left, 2)) + list(combinations(right, 2))
    return opposite, same


def entanglement_report(m: int, all_pairs: bool = False) -> EntanglementReport:
    check_m(m, lo=2)
    tc = build_telecloning_state(m)
    s = tc.state
    side = list(tc.sending_side)
    opposite = _pair(s, (PORT, "C1"), theoretical_rho_pc(m))
    same = _pair(s, ("C1", "C2"), theoretical_rho_pa(("C1", "C2")))

    uniformity = None
    if all_pairs:
        opp, sm = pair_classes(tc)
        ref_o = partial_trace(s, (PORT, "C1")).matrix
        ref_s = partial_trace(s, ("C1", "C2")).matrix
        uniformity = max(
            [float(np.max(np.abs(partial_trace(s, p).matrix - ref_o))) for p in opp]
            + [float(np.max(np.abs(partial_trace(s, p).matrix - ref_s))) for p in sm]
        )

    sc = schmidt_coefficients(s, side)
    return EntanglementReport(
        m=m,
        total_entanglement_bits=_shannon(sc**2),
        schmidt_coefficients=[float(x) for x in sc],
        pair_class_opposite=opposite,
        pair_class_same=same,
        ebits=ebit_accounting(m),
        max_deviation=max(opposite.max_deviation, same.max_deviation),
        class_uniformity_deviation=uniformity,
    )
