import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from thermocap.exceptions import InvalidStateError
from thermocap.states import (
    Code,
    QubitState,
    ThermalContext,
    binary_entropy,
    check_density_matrix,
    free_energy,
    gibbs_state,
    holevo_information,
    negentropy,
    relative_entropy,
    relative_entropy_of_coherence,
    von_neumann_entropy,
)

H_QUARTER = 0.811278124459132863909695792039  # mpmath, 30 digits


@st.composite
def qubit_states(draw):
    x, y, z = (draw(st.floats(-1, 1)) for _ in range(3))
    norm = math.sqrt(x * x + y * y + z * z)
    if norm > 1:
        x, y, z = x / norm, y / norm, z / norm
    return QubitState.from_bloch(x, y, z)


def logm_relative_entropy(a, b):
    """Oracle: S(a||b) via matrix logarithms (full-rank inputs only)."""
    return float(np.real(np.trace(a @ (scipy.linalg.logm(a) - scipy.linalg.logm(b))))) / math.log(2)


class TestThermalContext:
    @pytest.mark.parametrize("lam, g", [(1.0, 0.5), (0.0, 1.0), (0.5, 2 / 3)])
    def test_gibbs_population(self, lam, g):
        ctx = ThermalContext.from_lambda(lam)
        assert gibbs_state(ctx) == QubitState(g, 0.0)
        assert ctx.g * (1 + ctx.lam) == pytest.approx(1.0, abs=1e-12)

    def test_temperature_tokens(self):
        assert ThermalContext.from_temp_ratio(0).lam == 0.0
        assert ThermalContext.from_temp_ratio(math.inf).lam == 1.0
        ctx = ThermalContext.from_temp_ratio(1.5)
        assert ctx.lam == pytest.approx(math.exp(-1 / 1.5), abs=1e-12)
        assert ThermalContext.from_lambda(ctx.lam).temp_ratio == pytest.approx(1.5)

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            ThermalContext.from_lambda(1.2)
        with pytest.raises(ValueError):
            ThermalContext.from_temp_ratio(-1)
        with pytest.raises(ValueError):
            ThermalContext(0.5, 3.0)


class TestQubitState:
    def test_matrix_round_trip(self):
        s = QubitState(0.3, 0.2 - 0.1j)
        assert QubitState.from_matrix(s.matrix()) == s

    def test_bloch_round_trip(self):
        s = QubitState.from_bloch(0.3, -0.4, 0.5)
        assert s.bloch == pytest.approx((0.3, -0.4, 0.5))

    def test_positivity_enforced(self):
        with pytest.raises(InvalidStateError):
            QubitState(0.5, 0.6)
        with pytest.raises(InvalidStateError):
            QubitState(1.1, 0)

    def test_check_density_matrix(self):
        with pytest.raises(InvalidStateError, match="Hermitian"):
            check_density_matrix([[0.5, 0.1], [0.2, 0.5]])
        with pytest.raises(InvalidStateError, match="trace"):
            check_density_matrix(np.eye(2))
        with pytest.raises(InvalidStateError, match="negative"):
            check_density_matrix([[1.5, 0], [0, -0.5]])
        # tiny negative drift is clamped rather than rejected
        m = np.diag([1 + 5e-13, -5e-13])
        assert von_neumann_entropy(m) == pytest.approx(0.0, abs=1e-10)


class TestEntropies:
    @pytest.mark.parametrize(
        "state, expected",
        [(QubitState(1, 0), 0.0), (QubitState(0.5, 0), 1.0), (QubitState(0.5, 0.5), 0.0)],
    )
    def test_von_neumann(self, state, expected):
        assert von_neumann_entropy(state) == pytest.approx(expected, abs=1e-12)
        assert von_neumann_entropy(state.matrix()) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("x, expected", [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0), (0.25, H_QUARTER)])
    def test_binary_entropy(self, x, expected):
        assert binary_entropy(x) == pytest.approx(expected, abs=1e-14)
        assert binary_entropy(np.array([x]))[0] == pytest.approx(expected, abs=1e-14)

    def test_binary_entropy_domain(self):
        with pytest.raises(ValueError):
            binary_entropy(1.5)
        with pytest.raises(ValueError):
            binary_entropy(np.array([0.2, -0.1]))

    @given(qubit_states())
    def test_closed_form_matches_eigendecomposition(self, s):
        eig = np.clip(np.linalg.eigvalsh(s.matrix()), 0, None)
        eig = eig[eig > 0]
        assert von_neumann_entropy(s) == pytest.approx(float(-np.sum(eig * np.log2(eig))), abs=1e-10)

    def test_relative_entropy_examples(self):
        gamma = QubitState(2 / 3, 0)
        assert relative_entropy(gamma, gamma) == pytest.approx(0.0, abs=1e-12)
        assert relative_entropy(QubitState(1, 0), QubitState(0.5, 0)) == pytest.approx(1.0, abs=1e-12)
        assert relative_entropy(QubitState(1, 0), QubitState(0, 0)) == math.inf

    def test_relative_entropy_dimension_mismatch(self):
        with pytest.raises(InvalidStateError):
            relative_entropy(QubitState(1, 0), np.eye(3) / 3)

    @settings(max_examples=50)
    @given(qubit_states(), qubit_states())
    def test_relative_entropy_matches_logm(self, a, b):
        am = 0.98 * a.matrix() + 0.01 * np.eye(2)
        bm = 0.98 * b.matrix() + 0.01 * np.eye(2)
        assert relative_entropy(am, bm) == pytest.approx(logm_relative_entropy(am, bm), abs=1e-8)
        assert relative_entropy(am, bm) >= 0

    @pytest.mark.parametrize(
        "rho, lam, expected",
        [
            (QubitState(2 / 3, 0), 0.5, 0.0),
            (QubitState(0, 0), 0.5, 1.584962500721156),  # log2 3
            (QubitState(1, 0), 1.0, 1.0),
        ],
    )
    def test_free_energy(self, rho, lam, expected):
        assert free_energy(rho, ThermalContext.from_lambda(lam)) == pytest.approx(expected, abs=1e-12)

    def test_free_energy_general_dimension(self):
        gibbs = np.diag([0.5, 0.3, 0.2])
        assert free_energy(np.diag([1.0, 0, 0]), gibbs=gibbs) == pytest.approx(1.0)
        with pytest.raises(ValueError):
            free_energy(np.diag([1.0, 0, 0]))

    @pytest.mark.parametrize(
        "rho, expected",
        [
            (QubitState(0.3, 0), 0.0),
            (QubitState(0.5, 0.5), 1.0),
            # S(diag) = 1, eigenvalues {3/4, 1/4}
            (QubitState(0.5, 0.25), 1 - H_QUARTER),
        ],
    )
    def test_coherence(self, rho, expected):
        assert relative_entropy_of_coherence(rho) == pytest.approx(expected, abs=1e-12)

    def test_coherence_equals_relative_entropy_to_diagonal(self):
        rho = QubitState(0.4, 0.2 + 0.1j).matrix()
        diag = np.diag(np.diag(rho))
        assert relative_entropy_of_coherence(rho) == pytest.approx(logm_relative_entropy(rho, diag), abs=1e-10)

    @pytest.mark.parametrize(
        "rho, expected",
        [(QubitState(0.5, 0.5), 1.0), (QubitState(0.5, 0), 0.0), (QubitState(0.75, 0), 1 - H_QUARTER)],
    )
    def test_negentropy(self, rho, expected):
        assert negentropy(rho) == pytest.approx(expected, abs=1e-12)

    @given(qubit_states(), st.floats(0, 2 * math.pi), st.floats(0, 1))
    def test_phase_invariance(self, s, theta, lam):
        rotated = QubitState(s.r, s.alpha * complex(math.cos(theta), math.sin(theta)))
        ctx = ThermalContext.from_lambda(lam)
        assert free_energy(rotated, ctx) == pytest.approx(free_energy(s, ctx), abs=1e-9)
        assert negentropy(rotated) == pytest.approx(negentropy(s), abs=1e-12)
        assert relative_entropy_of_coherence(rotated) == pytest.approx(relative_entropy_of_coherence(s), abs=1e-12)


class TestHolevo:
    def test_examples(self):
        zero, one = QubitState(1, 0).matrix(), QubitState(0, 0).matrix()
        assert holevo_information(Code((0.5, 0.5), (zero, one))) == pytest.approx(1.0, abs=1e-12)
        assert holevo_information(Code((1.0,), (QubitState(0.3, 0.2).matrix(),))) == pytest.approx(0.0, abs=1e-12)
        mixed = QubitState(0.5, 0).matrix()
        assert holevo_information(Code((0.5, 0.5), (zero, mixed))) == pytest.approx(
            0.311278124459132863909695792039, abs=1e-12
        )

    def test_code_validation(self):
        with pytest.raises(InvalidStateError):
            Code((), ())
        with pytest.raises(InvalidStateError):
            Code((0.5, 0.4), (np.eye(2) / 2, np.eye(2) / 2))
        with pytest.raises(InvalidStateError):
            Code((0.5, 0.5), (np.eye(2) / 2, np.eye(3) / 3))
        with pytest.raises(InvalidStateError):
            Code((1.0, 0.0), (np.eye(2) / 2, np.eye(2) / 2))

    @given(st.lists(st.tuples(st.floats(0.01, 1), qubit_states()), min_size=1, max_size=5))
    def test_bounds(self, items):
        total = sum(w for w, _ in items)
        code = Code.from_pairs((w / total, s.matrix()) for w, s in items)
        chi = holevo_information(code)
        assert chi >= 0
        assert chi <= von_neumann_entropy(code.average()) + 1e-12 <= 1 + 2e-12

    def test_equal_codewords_give_zero(self):
        s = QubitState(0.3, 0.1j).matrix()
        assert holevo_information(Code((0.2, 0.3, 0.5), (s, s, s))) == pytest.approx(0.0, abs=1e-12)
