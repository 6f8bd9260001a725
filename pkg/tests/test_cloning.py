import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teleclone.cloning import (
    alpha_coeff,
    apply_clone_isometry,
    clone_basis,
    clone_qubit,
    dicke_state,
    optimal_fidelity,
    orthogonal_complement,
    shrinking_form,
    simultaneous_pauli,
)
from teleclone.errors import LabelCollisionError, NotNormalizedError
from teleclone.linalg import (
    IDENTITY,
    I_SIGMA_Y,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    basis_state,
    fidelity_pure,
    haar_random_qubit,
    inner,
    partial_trace,
    swap_qubits,
)

from oracles import dicke_combinations, kron_ordered


class TestDicke:
    def test_three_one(self):
        # (|001> + |010> + |100>) / sqrt3
        d = dicke_state(3, 1)
        expected = np.zeros(8)
        expected[[0b001, 0b010, 0b100]] = 1 / math.sqrt(3)
        np.testing.assert_allclose(d.amplitudes, expected, atol=1e-15)

    @pytest.mark.parametrize("m", [1, 3, 6])
    def test_no_excitations(self, m):
        d = dicke_state(m, 0)
        assert d.amplitudes[0] == 1 and np.count_nonzero(d.amplitudes) == 1

    def test_two_one(self):
        np.testing.assert_allclose(dicke_state(2, 1).amplitudes, [0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0])

    @pytest.mark.parametrize("m", range(1, 10))
    def test_matches_enumeration(self, m):
        for j in range(m + 1):
            np.testing.assert_allclose(dicke_state(m, j).amplitudes, dicke_combinations(m, j), atol=1e-15)

    @pytest.mark.parametrize("m", range(2, 7))
    def test_adjacent_transposition_invariance(self, m):
        for j in range(m + 1):
            d = dicke_state(m, j)
            for i in range(m - 1):
                swapped = swap_qubits(d, f"q{i}", f"q{i + 1}")
                np.testing.assert_allclose(swapped.amplitudes, d.amplitudes, atol=1e-15)

    @pytest.mark.parametrize("j", [-1, 4])
    def test_out_of_range(self, j):
        with pytest.raises(ValueError):
            dicke_state(3, j)


class TestAlpha:
    def test_single_copy(self):
        assert alpha_coeff(1, 0) == 1

    def test_two_copies(self):
        assert alpha_coeff(2, 0) == pytest.approx(math.sqrt(2 / 3))
        assert alpha_coeff(2, 1) == pytest.approx(math.sqrt(1 / 3))

    @pytest.mark.parametrize("m", range(1, 13))
    def test_squares_sum_to_one(self, m):
        assert sum(alpha_coeff(m, j) ** 2 for j in range(m)) == pytest.approx(1, abs=1e-14)

    @pytest.mark.parametrize("m", range(2, 13))
    def test_strictly_decreasing(self, m):
        vals = [alpha_coeff(m, j) for j in range(m)]
        assert all(x > y for x, y in zip(vals, vals[1:]))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            alpha_coeff(3, 3)


class TestOptimalFidelity:
    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_identity_case(self, n):
        assert optimal_fidelity(n, n) == 1

    def test_one_to_two(self):
        assert optimal_fidelity(1, 2) == pytest.approx(5 / 6, abs=1e-15)

    def test_large_m_limit(self):
        assert abs(optimal_fidelity(1, 10**6) - 2 / 3) < 1e-5

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_decreasing_in_m(self, n):
        vals = [optimal_fidelity(n, m) for m in range(n, n + 30)]
        assert all(x > y for x, y in zip(vals, vals[1:]))

    def test_fewer_outputs_rejected(self):
        with pytest.raises(ValueError):
            optimal_fidelity(3, 2)


class TestCloneBasis:
    def test_single_copy(self):
        cb = clone_basis(1)
        assert cb.layout == ("C1",)
        np.testing.assert_array_equal(cb.phi0.amplitudes, [1, 0])
        np.testing.assert_array_equal(cb.phi1.amplitudes, [0, 1])

    def test_two_copies_expanded(self):
        # sqrt(2/3)|0>_A|00>_C + sqrt(1/3)|1>_A(|01>+|10>)_C/sqrt2 ; layout A1, C1, C2
        cb = clone_basis(2)
        assert cb.layout == ("A1", "C1", "C2")
        s2 = 1 / math.sqrt(2)
        expected = math.sqrt(2 / 3) * kron_ordered([1, 0], [1, 0], [1, 0]) + math.sqrt(1 / 3) * s2 * (
            kron_ordered([0, 1], [0, 1], [1, 0]) + kron_ordered([0, 1], [1, 0], [0, 1])
        )
        np.testing.assert_allclose(cb.phi0.amplitudes, expected, atol=1e-15)

    @pytest.mark.parametrize("m", range(1, 13))
    def test_orthonormal(self, m):
        cb = clone_basis(m)
        assert abs(np.linalg.norm(cb.phi0.amplitudes) - 1) < 1e-10
        assert abs(np.linalg.norm(cb.phi1.amplitudes) - 1) < 1e-10
        assert abs(inner(cb.phi0, cb.phi1)) < 1e-12

    @pytest.mark.parametrize("m", range(1, 9))
    def test_pauli_symmetries(self, m):
        cb = clone_basis(m)
        p0, p1 = cb.phi0.amplitudes, cb.phi1.amplitudes
        np.testing.assert_allclose(simultaneous_pauli(cb.phi0, SIGMA_Z).amplitudes, p0, atol=1e-12)
        np.testing.assert_allclose(simultaneous_pauli(cb.phi1, SIGMA_Z).amplitudes, -p1, atol=1e-12)
        np.testing.assert_allclose(simultaneous_pauli(cb.phi0, SIGMA_X).amplitudes, p1, atol=1e-12)
        np.testing.assert_allclose(simultaneous_pauli(cb.phi1, SIGMA_X).amplitudes, p0, atol=1e-12)

    def test_identity_is_trivial(self):
        cb = clone_basis(3)
        np.testing.assert_array_equal(simultaneous_pauli(cb.phi0, IDENTITY).amplitudes, cb.phi0.amplitudes)

    def test_sigma_y_acts_like_single_qubit(self):
        # Y = i X Z on each of 2m-1 qubits gives i^(2m-1) * (X Z)^n
        m = 3
        cb = clone_basis(m)
        out = simultaneous_pauli(cb.phi0, SIGMA_Y)
        np.testing.assert_allclose(out.amplitudes, (1j) ** (2 * m - 1) * cb.phi1.amplitudes, atol=1e-12)

    def test_non_pauli_rejected(self):
        with pytest.raises(ValueError):
            simultaneous_pauli(clone_basis(2).phi0, I_SIGMA_Y)


class TestCloneIsometry:
    def test_zero_input_m2(self):
        out = apply_clone_isometry(1, 0, 2)
        np.testing.assert_allclose(out.amplitudes, clone_basis(2).phi0.amplitudes)
        for c in ("C1", "C2"):
            np.testing.assert_allclose(partial_trace(out, [c]).matrix, np.diag([5 / 6, 1 / 6]), atol=1e-15)

    @pytest.mark.parametrize("m", [1, 2, 5])
    def test_one_input(self, m):
        np.testing.assert_allclose(apply_clone_isometry(0, 1, m).amplitudes, clone_basis(m).phi1.amplitudes)

    def test_random_m3_fidelity(self):
        phi = haar_random_qubit(2024)
        a, b = phi.amplitudes
        out = apply_clone_isometry(a, b, 3)
        for c in ("C1", "C2", "C3"):
            assert fidelity_pure(partial_trace(out, [c]), phi) == pytest.approx(7 / 9, abs=1e-10)

    def test_unnormalized_rejected(self):
        with pytest.raises(NotNormalizedError):
            apply_clone_isometry(1, 1, 2)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**31), m=st.integers(1, 6))
    def test_copies_identical_and_shrunk(self, seed, m):
        phi = haar_random_qubit(seed)
        a, b = phi.amplitudes
        out = apply_clone_isometry(a, b, m)
        expected = shrinking_form(a, b, optimal_fidelity(1, m))
        first = partial_trace(out, ["C1"]).matrix
        for k in range(1, m + 1):
            rho = partial_trace(out, [f"C{k}"]).matrix
            np.testing.assert_allclose(rho, first, atol=1e-12)
            np.testing.assert_allclose(rho, expected, atol=1e-10)


class TestOrthogonalComplement:
    @pytest.mark.parametrize("seed", range(5))
    def test_orthogonal(self, seed):
        a, b = haar_random_qubit(seed).amplitudes
        pa, pb = orthogonal_complement(a, b)
        assert abs(np.conj(a) * pa + np.conj(b) * pb) < 1e-15


class TestCloneQubit:
    def test_product_input_matches_isometry(self):
        phi = haar_random_qubit(1, label="X")
        a, b = phi.amplitudes
        out = clone_qubit(phi, "X", 3)
        np.testing.assert_allclose(out.amplitudes, apply_clone_isometry(a, b, 3).amplitudes, atol=1e-15)

    def test_spectator_qubits_kept_first(self):
        s = basis_state("10", ["D", "X"])
        out = clone_qubit(s, "X", 2)
        assert out.labels == ("D", "A1", "C1", "C2")

    def test_label_collision(self):
        with pytest.raises(LabelCollisionError):
            clone_qubit(basis_state("00", ["C1", "X"]), "X", 2)
