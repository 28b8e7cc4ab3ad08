"""Explicit 4x4 submatrices realizing achievable canonical gates.

Given canonical weights (w1, w2, w3, w4), a submatrix ``u`` with
``gate_map(u) = W`` is built one of two ways.

Non-zero weights: the eight homogeneous equations force two kernel systems
whose compatibility reduces, after back-substitution, to the sign
constraint ``b2*w2 = b1*b4*w3 - b4*w4 + w1`` over signs (b1, b2, b4).  Each
satisfying sign branch, together with a free sign b3 and two free nonzero
complex parameters (u23, u30), yields a concrete solution by the
substitution chain in ``solve_nonzero``; no entry of a non-zero-case
solution can vanish.

Some weight zero: a fixed zero pattern kills most equations.  With the zero
rotated into the w1 slot, the remaining system collapses to a single
quadratic for u10 (or a closed form when w2 or w3 also vanishes).  The two
scale parameters that the construction pins to 1 are exposed as free
nonzero scalars so an optimizer has a family to search; every generalized
candidate is verified against ``gate_map`` after assembly.

The auxiliary substitution variable that would clash with the Cartan angle
alpha is named ``a`` throughout.
"""

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .achievability import check_triple
from .cartan import (
    CanonicalWeights,
    CartanDecomposition,
    canonical_matrix_from_weights,
    conjugate_submatrix,
    kak_decompose,
    weights_from_triple,
)
from .exceptions import (
    DegenerateInputError,
    InvalidBranchError,
    NotAchievableError,
    NotZeroCaseError,
    NumericalFailureError,
    ZeroWeightError,
)
from .gatemap import gate_map
from .linalg import DECISION_TOL, IDENTITY_2, PAULI_X, as_matrix, singular_values

_SOLUTION_TOL = 1e-9


@dataclass(frozen=True)
class SignBranch:
    """A sign assignment (b1, b2, b3, b4), each +1 or -1.

    (b1, b2, b4) must satisfy the branch constraint for the target weights;
    b3 is free and only selects the square-root sheet entering u31.
    """

    b1: int
    b2: int
    b3: int
    b4: int

    def __post_init__(self):
        for name, b in (("b1", self.b1), ("b2", self.b2), ("b3", self.b3), ("b4", self.b4)):
            if b not in (-1, 1):
                raise ValueError(f"{name} must be +1 or -1, got {b}")

    def constraint_residual(self, w: CanonicalWeights) -> float:
        """|b2*w2 - (b1*b4*w3 - b4*w4 + w1)|, zero on a valid branch."""
        return abs(self.b2 * w.w2 - (self.b1 * self.b4 * w.w3 - self.b4 * w.w4 + w.w1))

    @property
    def label(self) -> str:
        return "".join("+" if b > 0 else "-" for b in (self.b1, self.b2, self.b3, self.b4))

    @classmethod
    def from_label(cls, label: str) -> "SignBranch":
        if len(label) != 4 or any(c not in "+-" for c in label):
            raise ValueError(f"branch label must be four of '+'/'-', got {label!r}")
        signs = [1 if c == "+" else -1 for c in label]
        return cls(*signs)


@dataclass(frozen=True)
class SolutionPoint:
    """A non-zero-case solution: free parameters plus the assembled submatrix."""

    u23: complex
    u30: complex
    branch: SignBranch
    a: complex
    lam: complex
    mu: complex
    submatrix: np.ndarray

    def min_entry_modulus(self) -> float:
        """Smallest |u_ij|; strictly positive for any valid non-zero-case solution."""
        return float(np.min(np.abs(self.submatrix)))


@dataclass(frozen=True)
class ZeroCasePoint:
    """A zero-case solution with its free scale parameters.

    ``subcase`` is 'quadratic', 'w2-zero' or 'w3-zero' (in the rotated
    orientation); ``root_index`` identifies the quadratic root used, if any.
    ``unsnapped_residual`` is the gate_map residual against the weights as
    given, before near-zero entries were snapped to exactly zero.
    """

    u30: complex
    u32: complex
    subcase: str
    root_index: int | None
    submatrix: np.ndarray
    unsnapped_residual: float


@dataclass(frozen=True)
class WeightPermutation:
    """Local conjugation moving a vanishing weight into the w1 slot.

    ``forward`` maps the original gate to the rotated one,
    W_rot = (f1 (x) f2) W (f3 (x) f4); ``inverse`` undoes it.  Solutions are
    transported with ``transport``, which applies the inverse as block-local
    mode rotations around the submatrix.
    """

    zero_index: int
    forward: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    inverse: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]

    def permuted_weights(self, w: CanonicalWeights) -> CanonicalWeights:
        order = _WEIGHT_ORDERS[self.zero_index]
        ws = w.as_tuple()
        return CanonicalWeights(*(ws[i] for i in order))

    def transport(self, submatrix: np.ndarray) -> np.ndarray:
        v1, v2, v3, v4 = self.inverse
        return conjugate_submatrix(submatrix, v1, v2, v3, v4)


# Index permutations realizable by local Pauli conjugations/multiplications,
# keyed by which weight they move into slot 0.
_WEIGHT_ORDERS = {
    0: (0, 1, 2, 3),
    1: (1, 0, 3, 2),
    2: (2, 3, 0, 1),
    3: (3, 2, 1, 0),
}

_I = IDENTITY_2
_PERMUTATION_LOCALS = {
    0: (_I, _I, _I, _I),
    1: (PAULI_X, _I, PAULI_X, _I),
    2: (_I, PAULI_X, PAULI_X, _I),
    3: (PAULI_X, PAULI_X, _I, _I),
}


def valid_branches(w: CanonicalWeights, tol: float = DECISION_TOL) -> list[SignBranch]:
    """All sign branches compatible with non-zero weights.

    Enumerates (b1, b2, b4) in lexicographic order with +1 first, keeps
    those whose constraint residual is at most ``tol``, and expands each
    with both values of the free sign b3 (+1 first).

    Raises:
        ZeroWeightError: some |w_i| <= tol; use the zero-case path instead.
    """
    if w.min_modulus() <= tol:
        raise ZeroWeightError("a canonical weight vanishes; no sign branches exist")
    branches = []
    for b1, b2, b4 in product((1, -1), repeat=3):
        residual = abs(b2 * w.w2 - (b1 * b4 * w.w3 - b4 * w.w4 + w.w1))
        if residual <= tol:
            for b3 in (1, -1):
                branches.append(SignBranch(b1, b2, b3, b4))
    return branches


def _principal_sqrt(z: complex) -> complex:
    return complex(z) ** 0.5


def solve_nonzero(
    w: CanonicalWeights,
    branch: SignBranch,
    u23: complex,
    u30: complex,
    tol: float = DECISION_TOL,
    check: bool = True,
) -> SolutionPoint:
    """Assemble the non-zero-case solution for a valid branch and free parameters.

    The back-substitution runs in this order: u31 from the weight-ratio
    square root (sign b3); lam = (w2/u30) / (1 - b4*w1/w4); mu = b1*lam*
    u31/u30; a = -lam*w1/(mu*w4); then u33 = a*u23, u32 = b1*u23,
    u22 = b2*a*u23, u21 = (u31 - w1/mu)/a, u20 = (u30 - w2/lam)/a; finally
    the top two rows from the kernel parametrizations scaled by lam and mu.
    All complex square roots are principal; the sheet ambiguity is exactly
    the free sign b3.

    Args:
        w: canonical weights, all nonzero beyond ``tol``.
        branch: a sign branch valid for ``w``.
        u23, u30: free nonzero complex parameters.
        tol: tolerance for weight-nonzeroness and the branch constraint.
        check: verify gate_map(submatrix) against the canonical matrix
            (disable only in tight optimizer loops; the final point of any
            search must be rebuilt with the check on).

    Raises:
        DegenerateInputError: a weight or free parameter is (near) zero.
        InvalidBranchError: the branch violates its constraint.
        NumericalFailureError: the assembled matrix fails verification.
    """
    if w.min_modulus() <= tol:
        raise DegenerateInputError("non-zero-case solver requires all weights nonzero")
    u23 = complex(u23)
    u30 = complex(u30)
    if abs(u23) < 1e-12 or abs(u30) < 1e-12:
        raise DegenerateInputError("free parameters u23 and u30 must be nonzero")
    if branch.constraint_residual(w) > tol:
        raise InvalidBranchError(
            f"branch {branch.label} violates its constraint by {branch.constraint_residual(w):.3e}"
        )

    w1, w2, w3, w4 = w.as_tuple()
    b1, b2, b3, b4 = branch.b1, branch.b2, branch.b3, branch.b4

    ratio = _principal_sqrt(w1) * _principal_sqrt(w3) / (_principal_sqrt(w2) * _principal_sqrt(w4))
    u31 = b3 * ratio * u30

    denom = 1.0 - b4 * w1 / w4
    if abs(denom) < 1e-12:
        # Cannot occur for weights of a real triple: w1/w4 is purely imaginary.
        raise DegenerateInputError("degenerate weights: 1 - b4*w1/w4 vanishes")
    lam = (w2 / u30) / denom
    mu = b1 * lam * u31 / u30
    a = -lam * w1 / (mu * w4)

    u33 = a * u23
    u32 = b1 * u23
    u22 = b2 * a * u23
    u21 = (u31 - w1 / mu) / a
    u20 = (u30 - w2 / lam) / a
    if abs(u20) < 1e-14 or abs(u21) < 1e-14:
        raise DegenerateInputError("derived entries u20/u21 vanished unexpectedly")

    row0 = [lam * (-u20 / u23), lam * (-u31 / u33), lam * (u20 * u32 / (u23 * u30)), lam]
    row1 = [mu * (-u30 / u33), mu * (-u21 / u23), mu * (u22 * u30 / (u20 * u33)), mu]
    submatrix = np.array(
        [row0, row1, [u20, u21, u22, u23], [u30, u31, u32, u33]], dtype=complex
    )

    if check:
        target = canonical_matrix_from_weights(w)
        residual = float(np.max(np.abs(gate_map(submatrix) - target)))
        if residual > _SOLUTION_TOL:
            raise NumericalFailureError(
                f"assembled solution fails gate_map verification: {residual:.3e}"
            )
    return SolutionPoint(u23=u23, u30=u30, branch=branch, a=a, lam=lam, mu=mu, submatrix=submatrix)


def kernel_matrices(s: SolutionPoint) -> tuple[np.ndarray, np.ndarray]:
    """The two 4x4 kernel matrices of a non-zero-case solution.

    Both are singular (det = u22*u23*u30*u31 - u20*u21*u32*u33 = 0); the top
    rows of the submatrix span their kernels, and applying them to the
    opposite rows reproduces the weight vector and its reversal.
    """
    u = s.submatrix
    m1 = np.array(
        [
            [u[3, 2], 0, u[3, 0], 0],
            [u[2, 3], 0, 0, u[2, 0]],
            [0, u[2, 2], u[2, 1], 0],
            [0, u[3, 3], 0, u[3, 1]],
        ],
        dtype=complex,
    )
    m2 = np.array(
        [
            [u[2, 2], 0, u[2, 0], 0],
            [u[3, 3], 0, 0, u[3, 0]],
            [0, u[3, 2], u[3, 1], 0],
            [0, u[2, 3], 0, u[2, 1]],
        ],
        dtype=complex,
    )
    return m1, m2


def reduce_to_w1_zero(
    w: CanonicalWeights, tol: float = DECISION_TOL
) -> tuple[WeightPermutation, CanonicalWeights]:
    """Rotate a vanishing weight into the w1 slot by local Pauli moves.

    The usable permutations form a Klein four-group: identity,
    (w1 w2)(w3 w4) by X(x)I conjugation, (w1 w3)(w2 w4) by I(x)X / X(x)I
    mixed conjugation, and full reversal by left multiplication with X(x)X.
    The first vanishing weight (ascending index) is moved.

    Raises:
        NotZeroCaseError: no weight vanishes within ``tol``.
    """
    moduli = [abs(x) for x in w.as_tuple()]
    zero_index = next((i for i, m in enumerate(moduli) if m <= tol), None)
    if zero_index is None:
        raise NotZeroCaseError("no canonical weight vanishes within tolerance")
    forward = _PERMUTATION_LOCALS[zero_index]
    inverse = tuple(v.conj().T for v in forward)
    perm = WeightPermutation(zero_index=zero_index, forward=forward, inverse=inverse)
    return perm, perm.permuted_weights(w)


def _quadratic_roots(w2: complex, w3: complex, w4: complex) -> list[complex]:
    """Roots of w4 x^2 + (w2^2 - w3^2 - w4^2) x + w3^2 w4 = 0, deterministic order.

    Sorted by decreasing modulus, ties by decreasing principal argument.
    Neither 0 nor w4 can be a root when w2, w3 are nonzero.
    """
    qa, qb, qc = w4, w2 * w2 - w3 * w3 - w4 * w4, w3 * w3 * w4
    disc = _principal_sqrt(qb * qb - 4.0 * qa * qc)
    roots = [(-qb + disc) / (2.0 * qa), (-qb - disc) / (2.0 * qa)]
    roots.sort(key=lambda z: (-abs(z), -math.atan2(z.imag, z.real)))
    return roots


def _solve_zero_oriented(
    w2: complex,
    w3: complex,
    w4: complex,
    u30: complex,
    u32: complex,
    root_index: int | None,
    tol: float,
) -> tuple[np.ndarray, str, int | None]:
    """Zero-pattern solution for weights (0, w2, w3, w4); returns the submatrix."""
    if abs(w4) <= tol:
        raise DegenerateInputError("w4 cannot vanish together with w1")
    if abs(u30) < 1e-12 or abs(u32) < 1e-12:
        raise DegenerateInputError("free scale parameters u30 and u32 must be nonzero")

    if abs(w2) <= tol:
        u21 = 0j
        u23 = w4 * u32 / w3
        u10 = w3 * w3 / (w4 * u32)
        u12 = (w4 - w3 * w3 / w4) / u30
        u01 = w3 / u32
        u03 = 0j
        subcase, root = "w2-zero", None
    elif abs(w3) <= tol:
        u23 = 0j
        u01 = 0j
        u21 = w4 * u30 / w2
        u12 = w2 * w2 / (w4 * u30)
        u10 = (w4 - w2 * w2 / w4) / u32
        u03 = w2 / u30
        subcase, root = "w3-zero", None
    else:
        roots = _quadratic_roots(w2, w3, w4)
        root = 0 if root_index is None else root_index
        if root not in (0, 1):
            raise ValueError("root_index must be 0 or 1")
        v = roots[root]
        if abs(v) < 1e-12 or abs(w4 - v) < 1e-12:
            raise DegenerateInputError("quadratic root degenerated; weights inconsistent")
        u10 = v / u32
        u23 = w3 * u32 / v
        u12 = (w4 - v) / u30
        u21 = w2 * u30 / (w4 - v)
        u01 = w3 / u32
        u03 = w2 / u30
        subcase = "quadratic"

    submatrix = np.array(
        [
            [0, u01, 0, u03],
            [u10, 0, u12, 0],
            [0, u21, 0, u23],
            [u30, 0, u32, 0],
        ],
        dtype=complex,
    )
    return submatrix, subcase, root


def solve_zero(
    w: CanonicalWeights,
    u30: complex = 1.0,
    u32: complex = 1.0,
    root_index: int | None = None,
    tol: float = DECISION_TOL,
    check: bool = True,
) -> ZeroCasePoint:
    """Solve the zero case: some canonical weight vanishes.

    The vanishing weight is rotated into the w1 slot, the fixed zero pattern
    applied, and the remaining equations solved: generically through the
    quadratic for u10, or in closed form when w2 or w3 also vanishes.  The
    construction's two unit scales are exposed as free nonzero parameters
    (u30, u32); the assembled candidate is verified by gate_map against the
    snapped weights, and the residual against the unsnapped ones is
    reported on the returned point.

    Near-zero weights (0 < |w_i| <= tol) are snapped to exactly zero; the
    caller decides whether the unsnapped residual is acceptable.

    Raises:
        NotZeroCaseError: no weight vanishes within ``tol``.
        DegenerateInputError: a free scale parameter is (near) zero.
        NumericalFailureError: verification against snapped weights failed.
    """
    if max(abs(w.w1 - 1), abs(w.w2 - 1), abs(w.w3), abs(w.w4)) <= tol:
        # Locally trivial gate: the identity matrix itself is a solution and,
        # unlike the zero-pattern family, sits exactly at unit singular value.
        identity = np.eye(4, dtype=complex)
        unsnapped = float(
            np.max(np.abs(gate_map(identity) - canonical_matrix_from_weights(w)))
        )
        return ZeroCasePoint(
            u30=complex(u30),
            u32=complex(u32),
            subcase="identity",
            root_index=None,
            submatrix=identity,
            unsnapped_residual=unsnapped,
        )

    perm, rotated = reduce_to_w1_zero(w, tol)
    snapped = CanonicalWeights(
        w1=0j,
        w2=0j if abs(rotated.w2) <= tol else rotated.w2,
        w3=0j if abs(rotated.w3) <= tol else rotated.w3,
        w4=rotated.w4,
    )
    oriented, subcase, root = _solve_zero_oriented(
        snapped.w2, snapped.w3, snapped.w4, complex(u30), complex(u32), root_index, tol
    )
    if check:
        target = canonical_matrix_from_weights(snapped)
        residual = float(np.max(np.abs(gate_map(oriented) - target)))
        if residual > _SOLUTION_TOL:
            raise NumericalFailureError(
                f"zero-case solution fails gate_map verification: {residual:.3e}"
            )
    submatrix = perm.transport(oriented)
    unsnapped = float(
        np.max(np.abs(gate_map(submatrix) - canonical_matrix_from_weights(w)))
    )
    return ZeroCasePoint(
        u30=complex(u30),
        u32=complex(u32),
        subcase=subcase,
        root_index=root,
        submatrix=submatrix,
        unsnapped_residual=unsnapped,
    )


def transport_submatrix(dec: CartanDecomposition, submatrix: np.ndarray) -> np.ndarray:
    """Carry a canonical-frame solution to the decomposed gate's frame.

    If gate_map(submatrix) equals the canonical matrix of ``dec.triple``,
    the returned matrix maps to the original gate: the local factors act as
    block rotations and the global phase enters through its square root
    (the gate map is quadratic).  Singular values are unchanged.
    """
    rotated = conjugate_submatrix(submatrix, dec.v1, dec.v2, dec.v3, dec.v4)
    return complex(dec.global_phase) ** 0.5 * rotated


def solve_gate(
    w_in,
    point: tuple[SignBranch, complex, complex] | None = None,
    tol: float = DECISION_TOL,
) -> tuple[np.ndarray, float]:
    """End-to-end: a contraction submatrix and success probability for a gate.

    Pipeline: KAK-decompose, decide achievability, solve in the canonical
    frame (zero or non-zero path), transport through the local factors,
    then rescale so the largest singular value is at most 1.  The returned
    probability is min(1, s1**-4) of the unscaled solution; rescaling the
    submatrix by 1/s1 scales the implemented block by s1**-2 = sqrt(p).

    Args:
        w_in: 4x4 unitary gate.
        point: optional (branch, u23, u30) selecting a specific non-zero-case
            family member; defaults to the first valid branch at
            u23 = u30 = 1.
        tol: decision tolerance.

    Returns:
        (submatrix, p): the s1 <= 1 submatrix and its success probability.

    Raises:
        NonUnitaryError: input not unitary.
        NotAchievableError: the gate fails the achievability criterion.
    """
    w_in = as_matrix(w_in, (4, 4))
    dec = kak_decompose(w_in)
    verdict = check_triple(dec.triple, tol)
    if not verdict.achievable:
        raise NotAchievableError(
            f"gate is not achievable: nearest condition {verdict.witness} "
            f"misses by {verdict.residual:.3e}"
        )
    weights = weights_from_triple(dec.triple)

    if weights.min_modulus() <= tol:
        canonical_solution = solve_zero(weights, tol=tol).submatrix
    else:
        if point is not None:
            branch, u23, u30 = point
        else:
            branches = valid_branches(weights, 3 * tol)
            if not branches:
                raise NotAchievableError(
                    "achievable by the angle criterion but no sign branch validates; "
                    "the gate sits on the decision boundary"
                )
            branch, u23, u30 = branches[0], 1.0, 1.0
        canonical_solution = solve_nonzero(weights, branch, u23, u30, tol=3 * tol).submatrix

    unscaled = transport_submatrix(dec, canonical_solution)
    s1 = float(singular_values(unscaled)[0])
    p = min(1.0, s1 ** -4) if s1 > 0 else 1.0
    submatrix = unscaled / max(1.0, s1)

    residual = float(np.max(np.abs(gate_map(submatrix) - math.sqrt(p) * w_in)))
    if residual > 1e-8:
        raise NumericalFailureError(f"transported solution residual {residual:.3e} exceeds 1e-8")
    return submatrix, p
