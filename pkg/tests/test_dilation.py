import numpy as np
import pytest

from psgate.dilation import (
    BeamSplitter,
    OpticalNetwork,
    PhaseShifter,
    dilate,
    network_to_unitary,
    reck_decompose,
)
from psgate.exceptions import NonUnitaryError, NotContractionError
from testutil import haar_unitary, random_contraction

I4 = np.eye(4, dtype=complex)


class TestDilate:
    def test_scalar_contraction(self):
        out = dilate(0.5 * I4)
        assert np.array_equal(out[:4, :4], 0.5 * I4)
        assert np.max(np.abs(out[:4, 4:] - np.sqrt(3) / 2 * I4)) < 1e-12
        assert np.max(np.abs(out[4:, :4] - np.sqrt(3) / 2 * I4)) < 1e-12
        assert np.max(np.abs(out[4:, 4:] + 0.5 * I4)) < 1e-12

    def test_unitary_input_gives_vanishing_off_blocks(self, rng):
        u = haar_unitary(4, rng)
        out = dilate(u)
        assert np.max(np.abs(out[:4, 4:])) < 1e-7
        assert np.max(np.abs(out.conj().T @ out - np.eye(8))) < 1e-12

    def test_corner_preserved_bit_for_bit(self, rng):
        m = random_contraction(4, rng)
        out = dilate(m)
        assert np.array_equal(out[:4, :4], m)

    def test_unitarity_over_random_contractions(self, rng):
        worst = 0.0
        for _ in range(300):
            m = random_contraction(4, rng)
            out = dilate(m)
            worst = max(worst, float(np.max(np.abs(out.conj().T @ out - np.eye(8)))))
        assert worst < 1e-10

    def test_rejects_expansion(self):
        with pytest.raises(NotContractionError):
            dilate(1.5 * I4)

    def test_clip_band(self):
        out = dilate((1 + 5e-9) * I4, tol=1e-8)
        assert np.array_equal(out[:4, :4], (1 + 5e-9) * I4)


class TestNetworkElements:
    def test_single_fifty_fifty_splitter(self):
        net = OpticalNetwork(4, [BeamSplitter(0, 1, np.pi / 4, 0.0)])
        u = network_to_unitary(net)
        expected = np.eye(4, dtype=complex)
        expected[:2, :2] = np.array([[1, -1], [1, 1]]) / np.sqrt(2)
        assert np.max(np.abs(u - expected)) < 1e-15

    def test_empty_network(self):
        assert np.array_equal(network_to_unitary(OpticalNetwork(5, [])), np.eye(5))

    def test_phase_shifter(self):
        net = OpticalNetwork(3, [PhaseShifter(1, 0.7)])
        u = network_to_unitary(net)
        assert abs(u[1, 1] - np.exp(0.7j)) < 1e-15

    def test_application_order(self):
        # Elements apply input to output: last element multiplies leftmost.
        bs = BeamSplitter(0, 1, 0.3, 0.4)
        ps = PhaseShifter(0, 1.1)
        net = OpticalNetwork(2, [bs, ps])
        expected = ps.embed(2) @ bs.embed(2)
        assert np.max(np.abs(network_to_unitary(net) - expected)) < 1e-15

    def test_malformed_elements(self):
        with pytest.raises(ValueError):
            network_to_unitary(OpticalNetwork(3, [BeamSplitter(0, 5, 0.1, 0.0)]))
        with pytest.raises(ValueError):
            network_to_unitary(OpticalNetwork(3, [BeamSplitter(1, 1, 0.1, 0.0)]))
        with pytest.raises(ValueError):
            network_to_unitary(OpticalNetwork(3, [PhaseShifter(3, 0.1)]))


class TestReckDecompose:
    def test_identity_gives_empty_network(self):
        net = reck_decompose(np.eye(6, dtype=complex))
        assert net.elements == []

    def test_two_by_two_single_splitter_plus_phases(self, rng):
        net = reck_decompose(haar_unitary(2, rng))
        assert net.beam_splitter_count() == 1
        assert net.phase_shifter_count() <= 2

    def test_round_trip_up_to_twelve_modes(self, rng):
        for n in range(2, 13):
            u = haar_unitary(n, rng)
            net = reck_decompose(u)
            assert np.max(np.abs(network_to_unitary(net) - u)) < 1e-9
            assert net.beam_splitter_count() <= n * (n - 1) // 2
            assert net.phase_shifter_count() <= n

    def test_eight_mode_element_budget(self, rng):
        net = reck_decompose(haar_unitary(8, rng))
        assert net.beam_splitter_count() <= 28

    def test_rejects_non_unitary(self):
        with pytest.raises(NonUnitaryError):
            reck_decompose(np.ones((4, 4)))

    def test_json_round_trip(self, rng):
        u = haar_unitary(8, rng)
        net = reck_decompose(u)
        loaded = OpticalNetwork.from_json(net.to_json())
        assert loaded.n_modes == net.n_modes
        assert loaded.elements == net.elements
        assert np.max(np.abs(network_to_unitary(loaded) - u)) < 1e-9

    def test_json_rejects_malformed(self):
        with pytest.raises(ValueError):
            OpticalNetwork.from_json('{"n_modes": 4, "elements": [{"kind": "laser"}]}')
        with pytest.raises(ValueError):
            OpticalNetwork.from_json('{"elements": []}')
