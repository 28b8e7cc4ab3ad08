"""Canonical form of two-qubit gates and transport across local equivalence.

Every 4x4 unitary W factors as

    W = g * (v1 (x) v2) * expm(i*(alpha XX + beta YY + gamma ZZ)) * (v3 (x) v4)

with 2x2 unitaries v1..v4 and a unit-modulus global phase g.  The middle
factor, written out, is the sparse matrix

    [[w1, 0,  0,  w4],
     [0,  w2, w3, 0 ],
     [0,  w3, w2, 0 ],
     [w4, 0,  0,  w1]]

with w1 = e^{i gamma} cos(alpha - beta), w2 = e^{-i gamma} cos(alpha + beta),
w3 = i e^{-i gamma} sin(alpha + beta), w4 = i e^{i gamma} sin(alpha - beta).

The decomposition is not unique; triples are canonicalized into the Weyl
chamber region pi/4 >= alpha >= beta >= |gamma| >= 0 (with gamma >= 0 on the
alpha = pi/4 face) by moves that are absorbable into the local factors:
quarter-period shifts, paired sign flips, and coordinate permutations.

The extraction itself runs in the magic (Bell) basis, where the local
subgroup becomes SO(4) and the canonical factor is diagonal: conjugate,
form the complex symmetric product M^T M, diagonalize it with a real
orthogonal matrix, and read the angles off the eigenvalue phases.
Eigenvector ordering and signs are fixed deterministically so equal inputs
always produce identical decompositions.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from .exceptions import NonUnitaryError, NumericalFailureError
from .linalg import (
    IDENTITY_2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    as_matrix,
    is_unitary,
    kron,
)

MAGIC_BASIS = (
    np.array(
        [
            [1, 0, 0, 1j],
            [0, 1j, 1, 0],
            [0, 1j, -1, 0],
            [1, 0, 0, -1j],
        ],
        dtype=complex,
    )
    / np.sqrt(2.0)
)
_MAGIC_DAG = MAGIC_BASIS.conj().T

_QUARTER = np.pi / 4
_HALF = np.pi / 2

_PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

# Single-qubit conjugations that exchange a pair of interaction axes while
# leaving the third invariant (up to paired sign flips that cancel).
_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
_S_GATE = np.array([[1, 0], [0, 1j]], dtype=complex)
_V_GATE = np.array([[1, -1j], [-1j, 1]], dtype=complex) / np.sqrt(2.0)
_AXIS_SWAPPERS = {(0, 1): _S_GATE, (0, 2): _HADAMARD, (1, 2): _V_GATE}


@dataclass(frozen=True)
class CanonicalTriple:
    """Interaction angles (alpha, beta, gamma), in radians.

    Raw triples from intermediate computations may lie anywhere; canonical
    ones satisfy pi/4 >= alpha >= beta >= |gamma| >= 0.
    """

    alpha: float
    beta: float
    gamma: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)

    def in_canonical_region(self, tol: float = 1e-9) -> bool:
        a, b, g = self.alpha, self.beta, self.gamma
        return (
            a <= _QUARTER + tol
            and b <= a + tol
            and abs(g) <= b + tol
            and b >= -tol
        )


@dataclass(frozen=True)
class CanonicalWeights:
    """The four distinct entries of the canonical matrix.

    For weights obtained from a real triple, (w1, w4) and (w2, w3) are rows
    of 2x2 unitaries: |w1|^2 + |w4|^2 = 1 = |w2|^2 + |w3|^2, and
    w1*conj(w4), w2*conj(w3) are purely imaginary.
    """

    w1: complex
    w2: complex
    w3: complex
    w4: complex

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.w1, self.w2, self.w3, self.w4)

    def min_modulus(self) -> float:
        return min(abs(w) for w in self.as_tuple())

    def validate(self, tol: float = 1e-10) -> None:
        """Check the unitary-row invariants; raise ValueError on failure."""
        w1, w2, w3, w4 = self.as_tuple()
        checks = {
            "norm(w1,w4)": abs(abs(w1) ** 2 + abs(w4) ** 2 - 1.0),
            "norm(w2,w3)": abs(abs(w2) ** 2 + abs(w3) ** 2 - 1.0),
            "orth(w1,w4)": abs((w1 * w4.conjugate()).real) * 2,
            "orth(w2,w3)": abs((w2 * w3.conjugate()).real) * 2,
        }
        for name, dev in checks.items():
            if dev > tol:
                raise ValueError(f"canonical weight invariant {name} violated by {dev:.3e}")


@dataclass(frozen=True)
class CartanDecomposition:
    """Local factors, canonical triple, and global phase of a two-qubit gate."""

    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray
    v4: np.ndarray
    triple: CanonicalTriple
    global_phase: complex

    def reconstruct(self) -> np.ndarray:
        middle = canonical_matrix(self.triple)
        return self.global_phase * (kron(self.v1, self.v2) @ middle @ kron(self.v3, self.v4))

    def residual(self, target) -> float:
        return float(np.max(np.abs(self.reconstruct() - as_matrix(target, (4, 4)))))


def weights_from_triple(t: CanonicalTriple) -> CanonicalWeights:
    """Evaluate the four canonical-matrix entries at the given angles."""
    a, b, g = t.alpha, t.beta, t.gamma
    phase = complex(math.cos(g), math.sin(g))
    return CanonicalWeights(
        w1=phase * math.cos(a - b),
        w2=phase.conjugate() * math.cos(a + b),
        w3=1j * phase.conjugate() * math.sin(a + b),
        w4=1j * phase * math.sin(a - b),
    )


def canonical_matrix(t: CanonicalTriple) -> np.ndarray:
    """The gate expm(i*(alpha XX + beta YY + gamma ZZ)) in matrix form."""
    w = weights_from_triple(t)
    return canonical_matrix_from_weights(w)


def canonical_matrix_from_weights(w: CanonicalWeights) -> np.ndarray:
    return np.array(
        [
            [w.w1, 0, 0, w.w4],
            [0, w.w2, w.w3, 0],
            [0, w.w3, w.w2, 0],
            [w.w4, 0, 0, w.w1],
        ],
        dtype=complex,
    )


def conjugate_submatrix(u, v1, v2, v3, v4, tol: float = 1e-10) -> np.ndarray:
    """Apply local mode rotations around a 4x4 corner submatrix.

    Returns X @ u @ Y with X = diag(v1, v2) and Y = diag(v3, v4) acting on
    the mode pairs (0,1)/(2,3).  The defining property, used throughout as a
    transport rule, is

        gate_map(X @ u @ Y) = (v1 (x) v2) @ gate_map(u) @ (v3 (x) v4).

    Raises:
        NonUnitaryError: one of the local factors is not unitary.
    """
    u = as_matrix(u, (4, 4))
    locals_ = [as_matrix(v, (2, 2)) for v in (v1, v2, v3, v4)]
    for v in locals_:
        if not is_unitary(v, tol):
            raise NonUnitaryError("local factors must be unitary")
    x = block_diag(locals_[0], locals_[1])
    y = block_diag(locals_[2], locals_[3])
    return x @ u @ y


# ---------------------------------------------------------------------------
# Weyl chamber canonicalization with tracked local factors.


def _canonicalize_tracked(alpha: float, beta: float, gamma: float, atol: float = 1e-9):
    """Move a raw triple into the canonical region, tracking the conjugations.

    Returns (triple, phase, (l1, l2), (r1, r2)) such that

        E(input) = phase * (l1 (x) l2) @ E(triple) @ (r1 (x) r2)

    where E is ``canonical_matrix``.
    """
    v = [float(alpha), float(beta), float(gamma)]
    phase = complex(1.0)
    left = [IDENTITY_2.copy(), IDENTITY_2.copy()]
    right = [IDENTITY_2.copy(), IDENTITY_2.copy()]

    def shift(k: int, steps: int) -> None:
        # E(v + steps*pi/2 * e_k) = (i P_k (x) P_k)^steps E(v)
        nonlocal phase
        if steps == 0:
            return
        v[k] += steps * _HALF
        phase *= (-1j) ** (steps % 4)
        if steps % 2:
            p = _PAULIS[k]
            left[0] = left[0] @ p
            left[1] = left[1] @ p

    def negate(j: int, l: int) -> None:
        # Conjugating by P_k (x) I flips the signs of the other two axes.
        k = 3 - j - l
        p = _PAULIS[k]
        v[j] *= -1.0
        v[l] *= -1.0
        left[0] = left[0] @ p
        right[0] = p @ right[0]

    def swap(j: int, l: int) -> None:
        q = _AXIS_SWAPPERS[(min(j, l), max(j, l))]
        v[j], v[l] = v[l], v[j]
        qdag = q.conj().T
        left[0] = left[0] @ qdag
        left[1] = left[1] @ qdag
        right[0] = q @ right[0]
        right[1] = q @ right[1]

    # Fold each angle into (-pi/4, pi/4].
    for k in range(3):
        steps = -int(np.floor((v[k] + _QUARTER) / _HALF))
        shift(k, steps)
        while v[k] > _QUARTER + 1e-15:
            shift(k, -1)
        while v[k] <= -_QUARTER - 1e-15:
            shift(k, 1)

    # Sort by decreasing magnitude.
    if abs(v[0]) < abs(v[1]):
        swap(0, 1)
    if abs(v[1]) < abs(v[2]):
        swap(1, 2)
    if abs(v[0]) < abs(v[1]):
        swap(0, 1)

    # Push all negativity into the last coordinate.
    if v[0] < 0:
        negate(0, 2)
    if v[1] < 0:
        negate(1, 2)

    # On the alpha = pi/4 face, (pi/4, beta, -g) and (pi/4, beta, g) are the
    # same class; prefer the non-negative representative.
    if v[0] > _QUARTER - atol and v[2] < -atol:
        shift(0, -1)
        negate(0, 2)

    triple = CanonicalTriple(v[0] + 0.0, v[1] + 0.0, v[2] + 0.0)
    return triple, phase, (left[0], left[1]), (right[0], right[1])


def canonicalize_triple(t: CanonicalTriple, atol: float = 1e-9) -> CanonicalTriple:
    """Equivalent triple inside pi/4 >= alpha >= beta >= |gamma| >= 0.

    The returned triple generates a gate locally equivalent to the input's:
    the moves used (quarter-period shifts, paired sign flips, coordinate
    permutations) are exactly those absorbable into local factors and a
    global phase.
    """
    return _canonicalize_tracked(t.alpha, t.beta, t.gamma, atol=atol)[0]


# ---------------------------------------------------------------------------
# KAK extraction.


def _orthogonal_diagonalizer(m: np.ndarray) -> np.ndarray:
    """Real orthogonal P with P.T @ m @ P diagonal, for unitary symmetric m.

    The real and imaginary parts of m are commuting real symmetric matrices;
    eigenvectors of the real part are refined within (near-)degenerate
    eigenspaces to also diagonalize the imaginary part.  Escalates the
    grouping tolerance until the verification passes.
    """
    sym = 0.5 * (m + m.T)
    re, im = sym.real, sym.imag
    for group_tol in (1e-8, 1e-6, 1e-4, 1e-2):
        evals, p = np.linalg.eigh(re)
        p = p.copy()
        start = 0
        while start < 4:
            stop = start + 1
            while stop < 4 and evals[stop] - evals[stop - 1] <= group_tol:
                stop += 1
            if stop - start > 1:
                blk = p[:, start:stop].T @ im @ p[:, start:stop]
                _, q = np.linalg.eigh(0.5 * (blk + blk.T))
                p[:, start:stop] = p[:, start:stop] @ q
            start = stop
        d = p.T @ m @ p
        if np.max(np.abs(d - np.diag(np.diag(d)))) < 1e-10:
            return p
    raise NumericalFailureError("failed to diagonalize the magic-basis symmetric matrix")


def _fix_column_conventions(p: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Deterministic column signs and ordering for the diagonalizer.

    Signs: largest-magnitude entry of each column made positive.  Order:
    ascending principal argument of the associated eigenvalue, ties broken
    lexicographically on the rounded column entries.  Finally the last
    column is flipped if needed to reach determinant +1.
    """
    p = p.copy()
    for k in range(4):
        idx = int(np.argmax(np.abs(p[:, k])))
        if p[idx, k] < 0:
            p[:, k] = -p[:, k]
    d = np.diag(p.T @ m @ p)
    order = sorted(
        range(4),
        key=lambda k: (round(float(np.angle(d[k])), 10), tuple(np.round(p[:, k], 9))),
    )
    p = p[:, order]
    if np.linalg.det(p) < 0:
        p[:, 3] = -p[:, 3]
    return p


def _factor_local_product(k: np.ndarray, tol: float = 1e-9):
    """Split k = g * (v1 (x) v2) with det(v1) = det(v2) = 1.

    The reference entry is the one of largest magnitude; both factors are
    read off the rows/columns through it and rescaled to unit determinant.

    Raises:
        NumericalFailureError: k is not a tensor product within ``tol``.
    """
    k = as_matrix(k, (4, 4))
    a_idx, b_idx = np.unravel_index(int(np.argmax(np.abs(k))), (4, 4))
    f1 = np.zeros((2, 2), dtype=complex)
    f2 = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            f1[(a_idx >> 1) ^ i, (b_idx >> 1) ^ j] = k[a_idx ^ (i << 1), b_idx ^ (j << 1)]
            f2[(a_idx & 1) ^ i, (b_idx & 1) ^ j] = k[a_idx ^ i, b_idx ^ j]
    det1 = np.linalg.det(f1)
    det2 = np.linalg.det(f2)
    if abs(det1) < 1e-12 or abs(det2) < 1e-12:
        raise NumericalFailureError("local factorization hit a singular 2x2 factor")
    f1 = f1 / np.sqrt(det1)
    f2 = f2 / np.sqrt(det2)
    g = k[a_idx, b_idx] / (f1[a_idx >> 1, b_idx >> 1] * f2[a_idx & 1, b_idx & 1])
    if g.real < 0:
        f1 = -f1
        g = -g
    deviation = float(np.max(np.abs(g * np.kron(f1, f2) - k)))
    if deviation > tol:
        raise NumericalFailureError(f"matrix is not a local tensor product: {deviation:.3e}")
    return g, f1, f2


def kak_decompose(w, tol: float = 1e-8) -> CartanDecomposition:
    """Canonical (KAK) decomposition of a 4x4 unitary.

    Args:
        w: the 4x4 unitary to decompose.
        tol: unitarity tolerance on the input.

    Returns:
        A CartanDecomposition whose triple lies in the canonical region and
        which reconstructs the input to better than 1e-9.

    Raises:
        NonUnitaryError: the input fails the unitarity check.
        NumericalFailureError: an internal step or the final reconstruction
            check fails.
    """
    w = as_matrix(w, (4, 4))
    if not is_unitary(w, tol):
        raise NonUnitaryError("kak_decompose requires a unitary input")

    det = complex(np.linalg.det(w))
    det_phase = det ** 0.25
    w_su = w / det_phase

    m_magic = _MAGIC_DAG @ w_su @ MAGIC_BASIS
    sym = m_magic.T @ m_magic

    p = _orthogonal_diagonalizer(sym)
    p = _fix_column_conventions(p, sym)
    d = np.diag(p.T @ sym @ p)

    theta = np.angle(d) / 2.0
    o1 = m_magic @ p @ np.diag(np.exp(-1j * theta))
    if np.linalg.det(o1).real < 0:
        theta[3] += np.pi
        o1 = m_magic @ p @ np.diag(np.exp(-1j * theta))

    imag_dev = float(np.max(np.abs(o1.imag)))
    if imag_dev > 1e-8:
        raise NumericalFailureError(f"left orthogonal factor has imaginary part {imag_dev:.3e}")
    o1 = o1.real.astype(float)

    k1 = MAGIC_BASIS @ o1 @ _MAGIC_DAG
    k2 = MAGIC_BASIS @ p.T @ _MAGIC_DAG
    g1, v1, v2 = _factor_local_product(k1)
    g2, v3, v4 = _factor_local_product(k2)

    # Angles attach to the magic-basis projectors; the axis signatures of the
    # four basis vectors give the linear map from eigenphases to the triple.
    delta = float(np.sum(theta) / 4.0)
    alpha = float((theta[0] + theta[1] - theta[2] - theta[3]) / 4.0)
    beta = float((-theta[0] + theta[1] - theta[2] + theta[3]) / 4.0)
    gamma = float((theta[0] - theta[1] - theta[2] + theta[3]) / 4.0)

    triple, phase_c, (l1, l2), (r1, r2) = _canonicalize_tracked(alpha, beta, gamma)

    dec = CartanDecomposition(
        v1=v1 @ l1,
        v2=v2 @ l2,
        v3=r1 @ v3,
        v4=r2 @ v4,
        triple=triple,
        global_phase=det_phase * g1 * g2 * np.exp(1j * delta) * phase_c,
    )
    residual = dec.residual(w)
    if residual > 1e-7:
        raise NumericalFailureError(f"kak reconstruction residual {residual:.3e} exceeds 1e-7")
    return dec
