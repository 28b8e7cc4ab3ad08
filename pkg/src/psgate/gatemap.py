"""Two-photon circuit semantics: the induced action on the logical subspace.

One photon shared between modes 0/1 encodes the first qubit, one shared
between modes 2/3 the second; the logical basis states |00>, |01>, |10>,
|11> are the mode pairs (0,2), (0,3), (1,2), (1,3).  A mode unitary acts on
creation operators, and after post-selecting one photon per encoding pair
the surviving action on the logical subspace is a quadratic map of the
unitary's top-left 4x4 corner.  ``gate_map`` evaluates that map directly;
``evolve_two_photons`` simulates the full Fock-space evolution and serves as
the package-wide brute-force oracle.

Doubly occupied output modes carry the bosonic sqrt(2) normalization so that
the simulated evolution is exactly norm preserving.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidPairError, NonUnitaryError, NumericalFailureError
from .linalg import SWAP_OPERATOR, as_matrix, is_unitary

#: Logical basis states as (mode, mode) pairs, in |00>,|01>,|10>,|11> order.
COMPUTATIONAL_PAIRS = ((0, 2), (0, 3), (1, 2), (1, 3))

#: The simulator handles exactly two photons; mode count is capped.
MAX_MODES = 16

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class TwoPhotonState:
    """Amplitudes of a two-photon state over unordered mode pairs.

    Keys are canonical ``(k, l)`` tuples with ``k <= l``; ``k == l`` is a
    doubly occupied mode.  Missing keys mean amplitude zero.
    """

    n_modes: int
    amplitudes: dict[tuple[int, int], complex]

    def __post_init__(self):
        if self.n_modes < 2:
            raise ValueError("a two-photon state needs at least 2 modes")
        for k, l in self.amplitudes:
            if not (0 <= k <= l < self.n_modes):
                raise ValueError(f"mode pair ({k}, {l}) out of range for {self.n_modes} modes")

    def amplitude(self, k: int, l: int) -> complex:
        if k > l:
            k, l = l, k
        return self.amplitudes.get((k, l), 0j)

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values())))


@dataclass(frozen=True)
class PostselectedBlock:
    """Logical-subspace transfer matrix and per-input success probabilities.

    ``success_probabilities[j]`` is the squared column norm of column ``j``
    of ``block``: the probability that logical input ``j`` survives
    post-selection.
    """

    block: np.ndarray
    success_probabilities: tuple[float, float, float, float]


def gate_map(u) -> np.ndarray:
    """Unnormalized logical gate induced by a 4x4 corner ``u``.

    Entry (r, c) is the amplitude for logical input ``c`` to come out as
    logical output ``r``: with output modes (p1, p2) and input modes
    (q1, q2) it equals ``u[p1,q1]*u[p2,q2] + u[p2,q1]*u[p1,q2]``.  The map is
    quadratic, so scaling ``u`` by ``c`` scales the result by ``c**2``.
    No unitarity is required of ``u``.
    """
    u = as_matrix(u, (4, 4))
    out = np.empty((4, 4), dtype=complex)
    for r, (p1, p2) in enumerate(COMPUTATIONAL_PAIRS):
        for c, (q1, q2) in enumerate(COMPUTATIONAL_PAIRS):
            out[r, c] = u[p1, q1] * u[p2, q2] + u[p2, q1] * u[p1, q2]
    return out


def gate_map_block(u) -> np.ndarray:
    """Block form of :func:`gate_map`: A (x) D + (B (x) C) S.

    A, B, C, D are the 2x2 blocks of ``u`` (row-major) and S the two-qubit
    swap operator.  Agrees with the entrywise form identically.
    """
    u = as_matrix(u, (4, 4))
    a, b = u[:2, :2], u[:2, 2:]
    c, d = u[2:, :2], u[2:, 2:]
    return np.kron(a, d) + np.kron(b, c) @ SWAP_OPERATOR


def evolve_two_photons(u, input_pair: tuple[int, int], tol: float = 1e-8) -> TwoPhotonState:
    """Evolve the state with one photon in each mode of ``input_pair``.

    Args:
        u: N x N mode unitary (N <= 16).
        input_pair: distinct modes (i, j) with i < j holding the photons.
        tol: unitarity tolerance for ``u``.

    Returns:
        The output TwoPhotonState.  The amplitude on the unordered pair
        {k, l} with k != l is ``u[k,i]*u[l,j] + u[l,i]*u[k,j]``; a doubly
        occupied mode {k, k} carries ``sqrt(2)*u[k,i]*u[k,j]``.

    Raises:
        NonUnitaryError: ``u`` fails the unitarity check.
        InvalidPairError: modes are equal or out of range.
    """
    u = as_matrix(u)
    n = u.shape[0]
    if n > MAX_MODES:
        raise ValueError(f"mode count {n} exceeds the supported maximum {MAX_MODES}")
    if not is_unitary(u, tol):
        raise NonUnitaryError("mode transformation is not unitary within tolerance")
    i, j = input_pair
    if not (0 <= i < j < n):
        raise InvalidPairError(f"input pair ({i}, {j}) must satisfy 0 <= i < j < {n}")

    amplitudes: dict[tuple[int, int], complex] = {}
    for k in range(n):
        for l in range(k, n):
            if k == l:
                amp = _SQRT2 * u[k, i] * u[k, j]
            else:
                amp = u[k, i] * u[l, j] + u[l, i] * u[k, j]
            if amp != 0:
                amplitudes[(k, l)] = complex(amp)
    return TwoPhotonState(n_modes=n, amplitudes=amplitudes)


def postselect_computational(state: TwoPhotonState) -> tuple[np.ndarray, float]:
    """Project on the logical subspace.

    Returns the four amplitudes on the pairs (0,2), (0,3), (1,2), (1,3) in
    logical order, together with their total squared norm (the success
    probability of the post-selection).
    """
    if state.n_modes < 4:
        raise ValueError("post-selection requires at least 4 modes")
    vec = np.array([state.amplitude(*pair) for pair in COMPUTATIONAL_PAIRS], dtype=complex)
    return vec, float(np.sum(np.abs(vec) ** 2))


def transfer_matrix(u, tol: float = 1e-8) -> PostselectedBlock:
    """Post-selected logical transfer matrix of a mode unitary.

    The block is evaluated two independent ways: by the Fock simulator
    (evolve each logical basis state, then post-select) and as
    ``gate_map`` of the top-left 4x4 corner.  The two must agree to 1e-10;
    the routine is the end-to-end consistency anchor for the whole package.

    Raises:
        NonUnitaryError: ``u`` fails the unitarity check.
        NumericalFailureError: simulator and corner formula disagree.
    """
    u = as_matrix(u)
    if u.shape[0] < 4:
        raise ValueError("need at least 4 modes to host two dual-rail qubits")
    if not is_unitary(u, tol):
        raise NonUnitaryError("mode transformation is not unitary within tolerance")

    formula = gate_map(u[:4, :4])
    columns = []
    for pair in COMPUTATIONAL_PAIRS:
        state = evolve_two_photons(u, pair, tol=tol)
        vec, _ = postselect_computational(state)
        columns.append(vec)
    oracle = np.stack(columns, axis=1)

    deviation = float(np.max(np.abs(oracle - formula)))
    if deviation > 1e-10:
        raise NumericalFailureError(
            f"simulator and corner formula disagree by {deviation:.3e}"
        )
    probs = tuple(float(np.sum(np.abs(formula[:, c]) ** 2)) for c in range(4))
    return PostselectedBlock(block=formula, success_probabilities=probs)
