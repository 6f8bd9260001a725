"""Simulator for 1 -> M quantum telecloning.

Builds the telecloning resource state, runs the Bell-measurement protocol
with Pauli corrections, verifies the optimal clones, and computes the
entanglement diagnostics of the resource.
"""

from .analysis import (
    EbitBudget,
    EntanglementReport,
    bipartite_entanglement,
    ebit_accounting,
    entangled_input_state,
    entanglement_report,
    mutual_information,
    partial_transpose,
    partial_transpose_2q,
    ppt_min_eigenvalue,
    schmidt_coefficients,
    theoretical_rho_pa,
    theoretical_rho_pc,
    von_neumann_entropy,
)
from .cloning import (
    CloneBasisPair,
    alpha_coeff,
    apply_clone_isometry,
    clone_basis,
    clone_qubit,
    dicke_state,
    optimal_fidelity,
    simultaneous_pauli,
)
from .config import DEFAULT_M_CAP, m_cap
from .linalg import (
    IDENTITY,
    I_SIGMA_Y,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DensityOperator,
    PureState,
    QubitGate,
    apply_one_qubit,
    eig_hermitian,
    fidelity_pure,
    haar_random_qubit,
    inner,
    partial_trace,
    tensor_product,
)
from .protocol import (
    BellOutcome,
    ForcedOutcome,
    Sampled,
    SharedSecretState,
    TelecloningState,
    Transcript,
    bell_project,
    bell_state,
    build_telecloning_state,
    build_telecloning_state_dicke,
    correction_for,
    reconstruct_secret,
    run_telecloning,
    run_with_port,
)

__version__ = "0.1.0"
