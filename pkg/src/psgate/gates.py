"""Named two-qubit gate library and gate-specification resolution.

Basis convention: logical states ordered |00>, |01>, |10>, |11> with the
first factor encoded in modes 0/1 and the second in modes 2/3.  The control
of cnot/cz/cphase is the first qubit.  Angles are radians only.
"""

import math
from dataclasses import dataclass

import numpy as np

from .cartan import CanonicalTriple, canonical_matrix
from .exceptions import NonUnitaryError
from .linalg import as_matrix, is_unitary

CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
CZ = np.diag([1, 1, 1, -1]).astype(complex)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)
ISWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex
)
SQRT_SWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, 0.5 + 0.5j, 0.5 - 0.5j, 0],
        [0, 0.5 - 0.5j, 0.5 + 0.5j, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)


def cphase(phi: float) -> np.ndarray:
    """Controlled phase gate diag(1, 1, 1, e^{i phi})."""
    return np.diag([1, 1, 1, np.exp(1j * float(phi))]).astype(complex)


def canonical_gate(alpha: float, beta: float, gamma: float) -> np.ndarray:
    return canonical_matrix(CanonicalTriple(float(alpha), float(beta), float(gamma)))


#: name -> (parameter count, builder)
NAMED_GATES = {
    "cnot": (0, lambda: CNOT),
    "cz": (0, lambda: CZ),
    "swap": (0, lambda: SWAP),
    "iswap": (0, lambda: ISWAP),
    "sqrt_swap": (0, lambda: SQRT_SWAP),
    "cphase": (1, cphase),
    "canonical": (3, canonical_gate),
}


@dataclass(frozen=True)
class GateSpec:
    """A resolved gate: display name plus the unitary matrix."""

    name: str
    matrix: np.ndarray


def resolve_gate(
    args: list[str] | None, matrix: np.ndarray | None = None, tol: float = 1e-8
) -> GateSpec:
    """Resolve a named gate (with numeric parameters) or a literal matrix.

    Raises:
        ValueError: unknown name, wrong parameter count, or non-numeric
            parameters.
        NonUnitaryError: the resolved matrix is not unitary within ``tol``.
    """
    if matrix is not None:
        if args:
            raise ValueError("give either a gate name or a matrix, not both")
        m = as_matrix(matrix, (4, 4))
        if not is_unitary(m, tol):
            raise NonUnitaryError("gate matrix is not unitary within tolerance")
        return GateSpec(name="matrix", matrix=m)

    if not args:
        raise ValueError("no gate given: name one of " + ", ".join(sorted(NAMED_GATES)))
    name, params = args[0].lower(), args[1:]
    if name not in NAMED_GATES:
        raise ValueError(f"unknown gate {name!r}; known: " + ", ".join(sorted(NAMED_GATES)))
    arity, builder = NAMED_GATES[name]
    if len(params) != arity:
        raise ValueError(f"gate {name!r} takes {arity} parameter(s), got {len(params)}")
    try:
        values = [float(p) for p in params]
    except ValueError as exc:
        raise ValueError(f"gate parameters must be numeric (radians): {exc}") from exc
    if any(not math.isfinite(v) for v in values):
        raise ValueError("gate parameters must be finite")
    m = builder(*values)
    display = name if not values else f"{name}({', '.join(f'{v:g}' for v in values)})"
    return GateSpec(name=display, matrix=m)
