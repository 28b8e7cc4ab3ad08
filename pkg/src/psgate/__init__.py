"""Two-qubit gates from two photons, linear optics, and post-selection.

The package decides whether a two-qubit gate is implementable by such a
circuit, constructs explicit optical realizations when it is, and computes
the optimal post-selection success probability, all cross-checked against a
brute-force two-photon Fock simulator.
"""

from .achievability import AchievabilityVerdict, check_gate, check_triple, check_weights
from .cartan import (
    CanonicalTriple,
    CanonicalWeights,
    CartanDecomposition,
    canonical_matrix,
    canonicalize_triple,
    conjugate_submatrix,
    kak_decompose,
    weights_from_triple,
)
from .dilation import (
    BeamSplitter,
    OpticalNetwork,
    PhaseShifter,
    dilate,
    network_to_unitary,
    reck_decompose,
)
from .exceptions import (
    DegenerateInputError,
    GateSynthesisError,
    InvalidBranchError,
    InvalidPairError,
    NoConvergenceError,
    NonUnitaryError,
    NotAchievableError,
    NotContractionError,
    NotPSDError,
    NotProportionalError,
    NotZeroCaseError,
    NumericalFailureError,
    ZeroWeightError,
)
from .gatemap import (
    PostselectedBlock,
    TwoPhotonState,
    evolve_two_photons,
    gate_map,
    gate_map_block,
    postselect_computational,
    transfer_matrix,
)
from .gates import CNOT, CZ, ISWAP, SQRT_SWAP, SWAP, GateSpec, canonical_gate, cphase, resolve_gate
from .linalg import is_unitary, kron, psd_sqrt, singular_values
from .probability import (
    OptimizationConfig,
    OptimizationReport,
    optimize,
    probability_of_network,
    success_probability,
)
from .solver import (
    SignBranch,
    SolutionPoint,
    ZeroCasePoint,
    kernel_matrices,
    reduce_to_w1_zero,
    solve_gate,
    solve_nonzero,
    solve_zero,
    transport_submatrix,
    valid_branches,
)

__version__ = "0.1.0"

__all__ = [
    "AchievabilityVerdict",
    "BeamSplitter",
    "CNOT",
    "CZ",
    "CanonicalTriple",
    "CanonicalWeights",
    "CartanDecomposition",
    "DegenerateInputError",
    "GateSpec",
    "GateSynthesisError",
    "ISWAP",
    "InvalidBranchError",
    "InvalidPairError",
    "NoConvergenceError",
    "NonUnitaryError",
    "NotAchievableError",
    "NotContractionError",
    "NotPSDError",
    "NotProportionalError",
    "NotZeroCaseError",
    "NumericalFailureError",
    "OpticalNetwork",
    "OptimizationConfig",
    "OptimizationReport",
    "PhaseShifter",
    "PostselectedBlock",
    "SQRT_SWAP",
    "SWAP",
    "SignBranch",
    "SolutionPoint",
    "TwoPhotonState",
    "ZeroCasePoint",
    "ZeroWeightError",
    "canonical_gate",
    "canonical_matrix",
    "canonicalize_triple",
    "check_gate",
    "check_triple",
    "check_weights",
    "conjugate_submatrix",
    "cphase",
    "dilate",
    "evolve_two_photons",
    "gate_map",
    "gate_map_block",
    "is_unitary",
    "kak_decompose",
    "kernel_matrices",
    "kron",
    "network_to_unitary",
    "optimize",
    "postselect_computational",
    "probability_of_network",
    "psd_sqrt",
    "reck_decompose",
    "reduce_to_w1_zero",
    "resolve_gate",
    "singular_values",
    "solve_gate",
    "solve_nonzero",
    "solve_zero",
    "success_probability",
    "transfer_matrix",
    "transport_submatrix",
    "valid_branches",
    "weights_from_triple",
]
