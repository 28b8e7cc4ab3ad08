import numpy as np
import pytest

from psgate.cartan import (
    CanonicalTriple,
    canonical_matrix,
    kak_decompose,
    weights_from_triple,
)
from psgate.dilation import dilate
from psgate.exceptions import NoConvergenceError, NotAchievableError, NotProportionalError
from psgate.gatemap import transfer_matrix
from psgate.gates import CNOT, CZ, ISWAP
from psgate.linalg import kron, singular_values
from psgate.probability import (
    OptimizationConfig,
    optimize,
    probability_of_network,
    success_probability,
)
from psgate.solver import solve_nonzero, transport_submatrix, valid_branches
from testutil import haar_unitary, random_nonzero_achievable_triple, random_nonzero_complex

CNOT_WEIGHTS = weights_from_triple(CanonicalTriple(np.pi / 4, 0, 0))


def simulator_probability(submatrix: np.ndarray, target: np.ndarray) -> float:
    """Independent measurement: dilate a rescaled solution and post-select."""
    s1 = float(singular_values(submatrix)[0])
    scaled = submatrix / max(1.0, s1)
    return probability_of_network(dilate(scaled), target)


class TestSuccessProbability:
    def test_unit_singular_value(self):
        assert success_probability(np.eye(4)) == 1.0

    def test_formula(self):
        assert abs(success_probability(2 * np.eye(4)) - 1 / 16) < 1e-15

    def test_capped_at_one(self):
        assert success_probability(0.5 * np.eye(4)) == 1.0

    def test_matches_simulator(self, rng):
        branch = valid_branches(CNOT_WEIGHTS, 1e-9)[0]
        point = solve_nonzero(CNOT_WEIGHTS, branch, 1.2 + 0.1j, 0.8 - 0.4j)
        target = canonical_matrix(CanonicalTriple(np.pi / 4, 0, 0))
        measured = simulator_probability(point.submatrix, target)
        assert abs(measured - success_probability(point.submatrix)) < 1e-9


class TestScalingExponent:
    def test_quartic_scaling(self, rng):
        # Scaling a solution by c in (0, 1) scales the implemented block by
        # c^2 and the measured probability by c^4.
        t = random_nonzero_achievable_triple(rng)
        w = weights_from_triple(t)
        branch = valid_branches(w, 1e-9)[0]
        point = solve_nonzero(w, branch, random_nonzero_complex(rng), random_nonzero_complex(rng))
        target = canonical_matrix(t)
        s1 = float(singular_values(point.submatrix)[0])
        base = point.submatrix / s1
        p_base = probability_of_network(dilate(base), target)
        for c in (0.9, 0.6, 0.3):
            block = transfer_matrix(dilate(c * base)).block
            scalar = np.trace(target.conj().T @ block) / 4.0
            assert abs(abs(scalar) ** 2 - c**4 * p_base) < 1e-12


class TestOptimize:
    def test_cnot_reaches_one_ninth(self):
        rep = optimize(CNOT, OptimizationConfig(restarts=16, seed=7))
        assert abs(rep.best_p - 1 / 9) < 1e-3
        assert rep.starts_converged > 0
        assert set(rep.per_branch_best) == {"++++", "++-+", "+++-", "++--"}

    def test_identity_probability_one(self):
        rep = optimize(canonical_matrix(CanonicalTriple(0, 0, 0)))
        assert rep.best_p == 1.0
        assert np.array_equal(rep.best_point.submatrix, np.eye(4))

    def test_weights_input(self):
        rep = optimize(CNOT_WEIGHTS, OptimizationConfig(restarts=8, seed=1))
        assert abs(rep.best_p - 1 / 9) < 1e-3

    def test_zero_case_gate(self):
        rep = optimize(ISWAP, OptimizationConfig(restarts=12, seed=5))
        assert 0 < rep.best_p <= 1
        assert all(label.startswith("zero/") for label in rep.per_branch_best)

    def test_best_p_consistent_with_best_point(self):
        rep = optimize(CNOT, OptimizationConfig(restarts=8, seed=3))
        assert abs(rep.best_p - success_probability(rep.best_point.submatrix)) < 1e-12

    def test_deterministic(self):
        cfg = OptimizationConfig(restarts=6, seed=11)
        rep1 = optimize(CNOT, cfg)
        rep2 = optimize(CNOT, cfg)
        assert rep1.best_p == rep2.best_p
        assert rep1.per_branch_best == rep2.per_branch_best
        assert np.array_equal(rep1.best_point.submatrix, rep2.best_point.submatrix)

    def test_restart_monotonicity(self):
        p_small = optimize(CZ, OptimizationConfig(restarts=4, seed=2)).best_p
        p_large = optimize(CZ, OptimizationConfig(restarts=8, seed=2)).best_p
        assert p_large >= p_small - 1e-12

    def test_phase_invariance(self):
        cfg = OptimizationConfig(restarts=8, seed=4)
        p1 = optimize(CNOT, cfg).best_p
        p2 = optimize(np.exp(0.7j) * CNOT, cfg).best_p
        assert abs(p1 - p2) < 1e-6

    def test_local_invariance(self, rng):
        cfg = OptimizationConfig(restarts=8, seed=6)
        locals_ = [haar_unitary(2, rng) for _ in range(4)]
        conjugated = kron(locals_[0], locals_[1]) @ CNOT @ kron(locals_[2], locals_[3])
        p1 = optimize(CNOT, cfg).best_p
        p2 = optimize(conjugated, cfg).best_p
        assert abs(p1 - p2) < 2e-3

    def test_not_achievable(self):
        with pytest.raises(NotAchievableError):
            optimize(canonical_matrix(CanonicalTriple(0.3, 0.5, 0.7)))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            OptimizationConfig(restarts=0)
        with pytest.raises(ValueError):
            OptimizationConfig(start_radius=0.5)

    def test_no_convergence_surfaces(self, monkeypatch):
        import psgate.probability as probability_module

        def always_fails(objective, starts, cfg):
            return float("inf"), None, 0, [float("inf")] * len(starts)

        monkeypatch.setattr(probability_module, "_minimize_multistart", always_fails)
        with pytest.raises(NoConvergenceError):
            optimize(CNOT, OptimizationConfig(restarts=2, seed=0))


class TestProbabilityOfNetwork:
    def test_dilated_identity(self):
        p = probability_of_network(dilate(np.eye(4, dtype=complex)), np.eye(4))
        assert abs(p - 1.0) < 1e-12

    def test_matches_submatrix_probability(self, rng):
        t = random_nonzero_achievable_triple(rng)
        w = weights_from_triple(t)
        branch = valid_branches(w, 1e-9)[0]
        point = solve_nonzero(w, branch, random_nonzero_complex(rng), random_nonzero_complex(rng))
        measured = simulator_probability(point.submatrix, canonical_matrix(t))
        assert abs(measured - success_probability(point.submatrix)) < 1e-9

    def test_optimized_cnot_network(self):
        rep = optimize(CNOT, OptimizationConfig(restarts=16, seed=7))
        dec = kak_decompose(CNOT)
        unscaled = transport_submatrix(dec, rep.best_point.submatrix)
        s1 = float(singular_values(unscaled)[0])
        p = probability_of_network(dilate(unscaled / max(1.0, s1)), CNOT)
        assert abs(p - 1 / 9) < 1e-3
        assert abs(p - rep.best_p) < 1e-9

    def test_rejects_wrong_target(self):
        with pytest.raises(NotProportionalError):
            probability_of_network(dilate(np.eye(4, dtype=complex)), CNOT)
