"""Dense complex matrix helpers for small (at most 16x16) problems.

Everything downstream works on plain numpy arrays of complex128. The helpers
here add the predicates and factorizations the rest of the package relies
on, with explicit tolerances rather than hidden defaults: algebraic
identities are held to ``ALGEBRAIC_TOL`` while physical yes/no decisions,
which sit on a measure-zero set, use the much looser ``DECISION_TOL``.
"""

import numpy as np

from .exceptions import NotPSDError

ALGEBRAIC_TOL = 1e-10
DECISION_TOL = 1e-6

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

# Swap operator on two qubits in the |00>,|01>,|10>,|11> ordering.  Also the
# column permutation appearing in the block form of the two-photon gate map.
SWAP_OPERATOR = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)


def as_matrix(m, shape=None) -> np.ndarray:
    """Coerce to a complex 2d array, optionally enforcing a shape."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2d matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix contains non-finite entries")
    if shape is not None and a.shape != shape:
        raise ValueError(f"expected shape {shape}, got {a.shape}")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices.

    Row/column index convention is (i1, i2) -> 2*i1 + i2, matching the
    computational basis ordering |00>, |01>, |10>, |11|.
    """
    a = as_matrix(a, (2, 2))
    b = as_matrix(b, (2, 2))
    return np.kron(a, b)


def singular_values(m) -> np.ndarray:
    """Singular values of ``m``, descending.

    Computed from the eigenvalues of the Gram matrix; for the small, well
    conditioned matrices used here this matches a full SVD to machine
    precision.
    """
    m = as_matrix(m)
    if m.shape[0] >= m.shape[1]:
        gram = m.conj().T @ m
    else:
        gram = m @ m.conj().T
    evals = np.linalg.eigvalsh(gram)
    return np.sqrt(np.clip(evals, 0.0, None))[::-1]


def largest_singular_value(m) -> float:
    return float(singular_values(m)[0])


def psd_sqrt(m, tol: float = ALGEBRAIC_TOL) -> np.ndarray:
    """Hermitian PSD square root R of a Hermitian PSD matrix, R @ R = m.

    Eigenvalues in [-tol, 0) are treated as zero.

    Raises:
        NotPSDError: if ``m`` deviates from Hermitian by more than ``tol``
            or has an eigenvalue below ``-tol``.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("psd_sqrt requires a square matrix")
    herm_dev = float(np.max(np.abs(m - m.conj().T)))
    if herm_dev > tol:
        raise NotPSDError(f"matrix is not Hermitian: deviation {herm_dev:.3e} > {tol:.1e}")
    evals, vecs = np.linalg.eigh(0.5 * (m + m.conj().T))
    if evals[0] < -tol:
        raise NotPSDError(f"matrix has negative eigenvalue {evals[0]:.3e} < -{tol:.1e}")
    root = vecs @ np.diag(np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T
    return 0.5 * (root + root.conj().T)


def is_unitary(m, tol: float = ALGEBRAIC_TOL) -> bool:
    """True iff the max-norm of (m^dag m - I) is at most ``tol``."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("is_unitary requires a square matrix")
    n = m.shape[0]
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(n))) <= tol)
