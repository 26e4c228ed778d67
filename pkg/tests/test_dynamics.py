import math

import numpy as np
import pytest

from qreservoir.dynamics import (
    BASIS_ONE,
    BASIS_THREE,
    BASIS_TWO,
    DensityMatrix,
    SubsystemSpec,
    chi_map,
    coherence_asymptote,
    coherence_l1,
    epr_state,
    partial_trace,
    single_qubit_state,
    three_qubit_closed_form,
    three_qubit_evolve,
    two_qubit_closed_form,
    two_qubit_evolve,
    w_state,
)
from qreservoir.reservoir import ReservoirSpec, survival_factor
from qreservoir.smallmat import eigenvalues_hermitian

SQ2 = 1.0 / math.sqrt(2.0)
SQ3 = 1.0 / math.sqrt(3.0)


def sub(label, lam, delta=2.0, n=1, amp=SQ2):
    return SubsystemSpec(
        label=label,
        reservoir=ReservoirSpec(gamma0=1.0, lam=lam, delta=delta, n_qubits=n),
        amp0=amp,
    )


def random_subsystems(rng, count):
    amps = rng.normal(size=count) + 1j * rng.normal(size=count)
    amps /= np.linalg.norm(amps)
    return [
        sub(
            "ABC"[i],
            lam=float(rng.choice((0.5, 15.0))),
            delta=float(rng.choice((0.0, 2.0))),
            n=int(rng.choice((1, 2, 3, 6))),
            amp=complex(amps[i]),
        )
        for i in range(count)
    ]


class TestDensityMatrix:
    def test_basis_orderings(self):
        assert BASIS_ONE == ("e", "g")
        assert BASIS_TWO == ("ee", "eg", "ge", "gg")
        assert BASIS_THREE[0] == "eee"
        assert BASIS_THREE[3] == "egg"
        assert BASIS_THREE[5] == "geg"
        assert BASIS_THREE[6] == "gge"
        assert BASIS_THREE[7] == "ggg"

    def test_validate_catches_violations(self):
        bad_trace = DensityMatrix(np.diag([0.6, 0.6]), BASIS_ONE)
        with pytest.raises(ValueError, match="trace"):
            bad_trace.validate()
        bad_herm = DensityMatrix(np.array([[0.5, 0.1], [0.3, 0.5]]), BASIS_ONE)
        with pytest.raises(ValueError, match="Hermiticity"):
            bad_herm.validate()
        bad_pos = DensityMatrix(np.diag([1.5, -0.5]), BASIS_ONE)
        with pytest.raises(ValueError, match="eigenvalue"):
            bad_pos.validate()

    def test_dimension_must_match_basis(self):
        with pytest.raises(ValueError, match="basis"):
            DensityMatrix(np.eye(4) / 4.0, BASIS_ONE)


class TestSingleQubitState:
    def test_balanced_superposition_at_t0(self):
        spec = ReservoirSpec(gamma0=1.0, lam=15.0)
        rho = single_qubit_state(0.0, SQ2, SQ2, spec)
        np.testing.assert_allclose(rho.matrix, 0.5 * np.ones((2, 2)), atol=1e-15)

    def test_decays_to_ground_without_spectators(self):
        spec = ReservoirSpec(gamma0=1.0, lam=15.0, n_qubits=1)
        rho = single_qubit_state(100.0, SQ2, SQ2, spec)
        np.testing.assert_allclose(rho.matrix, np.diag([0.0, 1.0]), atol=1e-10)

    def test_protected_coherence_with_spectators(self):
        spec = ReservoirSpec(gamma0=1.0, lam=15.0, n_qubits=6)
        rho = single_qubit_state(100.0, SQ2, SQ2, spec)
        assert abs(rho.matrix[0, 1]) == pytest.approx(5.0 / 12.0, abs=1e-10)

    def test_normalisation_precondition(self):
        spec = ReservoirSpec(gamma0=1.0, lam=1.0)
        with pytest.raises(ValueError, match="must be 1"):
            single_qubit_state(0.0, 1.0, 0.5, spec)


class TestCoherence:
    def test_diagonal_state_has_none(self):
        assert coherence_l1(np.diag([0.3, 0.7])) == 0.0

    def test_initial_balanced_value(self):
        spec = ReservoirSpec(gamma0=1.0, lam=15.0)
        assert coherence_l1(single_qubit_state(0.0, SQ2, SQ2, spec)) == pytest.approx(1.0)

    def test_asymptote_two_spectators(self):
        spec = ReservoirSpec(gamma0=1.0, lam=15.0, n_qubits=2)
        got = coherence_l1(single_qubit_state(100.0, SQ2, SQ2, spec))
        assert got == pytest.approx(0.5, abs=1e-10)

    def test_asymptote_helper(self):
        assert coherence_asymptote(2, SQ2, SQ2) == pytest.approx(0.5)
        assert coherence_asymptote(math.inf, SQ2, SQ2) == pytest.approx(1.0)
        assert coherence_asymptote(1, SQ2, SQ2) == 0.0


class TestChiMap:
    def test_identity_at_t0(self):
        m = chi_map(0.0, sub("A", 15.0))
        assert m.g == 1.0
        rng = np.random.default_rng(0)
        rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        np.testing.assert_allclose(m.apply(rho), rho, atol=1e-15)

    def test_full_damping_endpoint(self):
        # no spectators, long time: everything lands in the ground state
        m = chi_map(100.0, sub("A", 15.0, n=1))
        assert abs(m.g) < 1e-10
        out = m.apply(np.array([[0.7, 0.2], [0.2, 0.3]], dtype=complex))
        np.testing.assert_allclose(out, np.diag([0.0, 1.0]), atol=1e-9)

    def test_excited_population_column(self):
        m = chi_map(1.3, sub("A", 0.5, n=3))
        g = m.g
        out = m.apply(np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex))
        np.testing.assert_allclose(out, np.diag([abs(g) ** 2, 1 - abs(g) ** 2]), atol=1e-15)

    def test_matrix_representation_columns(self):
        m = chi_map(2.0, sub("A", 0.5, n=2))
        g = m.g
        mat = m.as_matrix()
        np.testing.assert_allclose(mat[:, 0], [abs(g) ** 2, 0, 0, 1 - abs(g) ** 2], atol=1e-15)
        assert mat[1, 1] == g and mat[2, 2] == g.conjugate() and mat[3, 3] == 1.0

    def test_trace_preserved_exactly(self):
        rng = np.random.default_rng(3)
        m = chi_map(0.8, sub("A", 0.5, n=2))
        for _ in range(20):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            rho = a @ a.conj().T
            assert np.trace(m.apply(rho)) == pytest.approx(np.trace(rho).real, abs=1e-14)

    def test_completely_positive_for_physical_survival(self):
        # Choi matrix of the element-wise map must be positive whenever
        # |g| <= 1 (amplitude-damping form)
        basis = [np.zeros((2, 2), dtype=complex) for _ in range(4)]
        for k in range(4):
            basis[k][divmod(k, 2)] = 1.0
        for t in (0.0, 0.4, 1.7, 6.0, 30.0):
            m = chi_map(t, sub("A", 0.5, n=2))
            assert abs(m.g) <= 1.0 + 1e-12
            choi = np.zeros((4, 4), dtype=complex)
            for k, e in enumerate(basis):
                i, j = divmod(k, 2)
                choi += np.kron(e, m.apply(e.copy()))
            assert eigenvalues_hermitian(choi)[-1] >= -1e-12


class TestTwoQubitEvolve:
    def test_identity_at_t0(self):
        sa, sb = sub("A", 15.0), sub("B", 0.5)
        rho0 = epr_state(sa, sb)
        out = two_qubit_evolve(rho0, 0.0, sa, sb)
        np.testing.assert_array_equal(out.matrix, rho0.matrix)

    def test_matches_closed_form_elements(self):
        sa, sb = sub("A", 15.0, n=2), sub("B", 0.5, n=6)
        t = 3.7
        out = two_qubit_evolve(epr_state(sa, sb), t, sa, sb)
        ga = complex(survival_factor(t, sa.reservoir))
        gb = complex(survival_factor(t, sb.reservoir))
        assert out.matrix[1, 1] == pytest.approx(abs(ga) ** 2 / 2.0, abs=1e-14)
        assert out.matrix[2, 2] == pytest.approx(abs(gb) ** 2 / 2.0, abs=1e-14)
        assert out.matrix[3, 3] == pytest.approx(
            1 - abs(ga) ** 2 / 2 - abs(gb) ** 2 / 2, abs=1e-14
        )
        assert out.matrix[1, 2] == pytest.approx(ga * gb.conjugate() / 2.0, abs=1e-14)
        assert out.matrix[0, 0] == 0.0
        closed = two_qubit_closed_form(t, sa, sb)
        np.testing.assert_allclose(out.matrix, closed.matrix, atol=1e-14)

    def test_product_states_stay_products(self):
        rng = np.random.default_rng(11)
        sa, sb = sub("A", 0.5, n=2), sub("B", 15.0, n=3)
        for _ in range(10):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            ra = a @ a.conj().T
            ra /= np.trace(ra).real
            rb = b @ b.conj().T
            rb /= np.trace(rb).real
            t = float(rng.uniform(0.0, 10.0))
            joint = two_qubit_evolve(np.kron(ra, rb), t, sa, sb)
            ca = chi_map(t, sa).apply(ra)
            cb = chi_map(t, sb).apply(rb)
            assert float(np.abs(joint.matrix - np.kron(ca, cb)).max()) < 1e-12


class TestThreeQubitEvolve:
    def test_identity_at_t0(self):
        sa, sb, sc = (sub(l, 0.5, amp=SQ3) for l in "ABC")
        rho0 = w_state(sa, sb, sc)
        out = three_qubit_evolve(rho0, 0.0, sa, sb, sc)
        np.testing.assert_array_equal(out.matrix, rho0.matrix)

    def test_equal_reservoir_population_pattern(self):
        sa, sb, sc = (sub(l, 0.5, n=2, amp=SQ3) for l in "ABC")
        t = 2.1
        out = three_qubit_evolve(w_state(sa, sb, sc), t, sa, sb, sc)
        g = complex(survival_factor(t, sa.reservoir))
        p = abs(g) ** 2 / 3.0
        for idx in (3, 5, 6):
            assert out.matrix[idx, idx] == pytest.approx(p, abs=1e-14)
        assert out.matrix[7, 7] == pytest.approx(1 - abs(g) ** 2, abs=1e-13)
        closed = three_qubit_closed_form(t, sa, sb, sc)
        np.testing.assert_allclose(out.matrix, closed.matrix, atol=1e-14)

    def test_partial_trace_commutes_with_evolution(self):
        rng = np.random.default_rng(17)
        sa, sb, sc = random_subsystems(rng, 3)
        t = 1.9
        evolved = three_qubit_evolve(w_state(sa, sb, sc), t, sa, sb, sc)
        reduced_after = partial_trace(evolved, drop=2)
        reduced_before = partial_trace(w_state(sa, sb, sc), drop=2)
        evolved_reduced = two_qubit_evolve(reduced_before, t, sa, sb)
        np.testing.assert_allclose(
            reduced_after.matrix, evolved_reduced.matrix, atol=1e-14
        )


class TestPhysicality:
    def test_evolved_states_are_physical(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            t = float(rng.uniform(0.0, 30.0))
            sa, sb = random_subsystems(rng, 2)
            two_qubit_evolve(epr_state(sa, sb), t, sa, sb).validate()
            sa, sb, sc = random_subsystems(rng, 3)
            state = three_qubit_evolve(w_state(sa, sb, sc), t, sa, sb, sc)
            state.validate()
            ev = eigenvalues_hermitian(state.matrix)
            assert ev[-1] >= -1e-10
