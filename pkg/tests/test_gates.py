import numpy as np
import pytest

from psgate.achievability import check_gate
from psgate.cartan import CanonicalTriple, canonical_matrix
from psgate.exceptions import NonUnitaryError
from psgate.gates import CNOT, CZ, ISWAP, SQRT_SWAP, SWAP, cphase, resolve_gate
from psgate.linalg import is_unitary


class TestNamedGates:
    @pytest.mark.parametrize("name", ["cnot", "cz", "swap", "iswap", "sqrt_swap"])
    def test_resolves_and_is_unitary(self, name):
        spec = resolve_gate([name])
        assert spec.name == name
        assert spec.matrix.shape == (4, 4)
        assert is_unitary(spec.matrix, 1e-12)

    def test_cphase_pi_is_cz(self):
        assert np.max(np.abs(cphase(np.pi) - CZ)) < 1e-15

    def test_sqrt_swap_squares_to_swap(self):
        assert np.max(np.abs(SQRT_SWAP @ SQRT_SWAP - SWAP)) < 1e-15

    def test_cnot_control_is_first_qubit(self):
        # |10> -> |11> and |11> -> |10>; |0x> untouched.
        assert np.array_equal(CNOT @ np.eye(4)[:, 2], np.eye(4)[:, 3])
        assert np.array_equal(CNOT @ np.eye(4)[:, 0], np.eye(4)[:, 0])

    def test_canonical_gate_matches_generator(self):
        spec = resolve_gate(["canonical", "0.2", "0.1", "0.05"])
        assert np.max(
            np.abs(spec.matrix - canonical_matrix(CanonicalTriple(0.2, 0.1, 0.05)))
        ) < 1e-15
        assert spec.name == "canonical(0.2, 0.1, 0.05)"

    @pytest.mark.parametrize(
        "name", ["cnot", "cz", "swap", "iswap", "sqrt_swap"]
    )
    def test_whole_library_is_achievable(self, name):
        verdict, _ = check_gate(resolve_gate([name]).matrix, 1e-6)
        assert verdict.achievable

    @pytest.mark.parametrize("phi", [0.3, 1.0, np.pi, 5.0])
    def test_all_controlled_phases_achievable(self, phi):
        verdict, _ = check_gate(cphase(phi), 1e-6)
        assert verdict.achievable

    def test_iswap_matrix(self):
        assert ISWAP[1, 2] == 1j and ISWAP[2, 1] == 1j


class TestResolveGateErrors:
    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown gate"):
            resolve_gate(["toffoli"])

    def test_wrong_arity(self):
        with pytest.raises(ValueError, match="parameter"):
            resolve_gate(["cphase"])
        with pytest.raises(ValueError, match="parameter"):
            resolve_gate(["cnot", "1.0"])

    def test_non_numeric_parameter(self):
        with pytest.raises(ValueError, match="numeric"):
            resolve_gate(["cphase", "45deg"])

    def test_empty(self):
        with pytest.raises(ValueError, match="no gate"):
            resolve_gate([])

    def test_matrix_and_name_conflict(self):
        with pytest.raises(ValueError, match="not both"):
            resolve_gate(["cnot"], np.eye(4))

    def test_non_unitary_matrix(self):
        with pytest.raises(NonUnitaryError):
            resolve_gate(None, np.ones((4, 4)))
