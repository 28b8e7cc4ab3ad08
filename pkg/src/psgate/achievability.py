"""Decide whether a two-qubit gate survives the two-photon post-selection scheme.

Two equivalent criteria are implemented and kept as mutual regression
checks.  The angle criterion: the gate is achievable iff at least one of the
six values alpha+-beta, alpha+-gamma, beta+-gamma lands on 0 or pi/2 modulo
pi.  The weight criterion: iff some canonical weight vanishes or some signed
sum w1 +- w2 +- w3 +- w4 does.  Both produce a named witness and a residual
so a caller can see how close a near-miss was.

Since achievable gates form a measure-zero set, any numerical verdict needs
an explicit decision band: ``tol`` below.
"""

import math
from dataclasses import dataclass
from itertools import product

from .cartan import CanonicalTriple, CanonicalWeights, CartanDecomposition, kak_decompose
from .linalg import DECISION_TOL

_HALF_PI = math.pi / 2.0

#: Fixed evaluation order for the six angle conditions (tie-break order).
_ANGLE_NAMES = ("alpha-beta", "alpha+beta", "alpha-gamma", "alpha+gamma", "beta-gamma", "beta+gamma")


@dataclass(frozen=True)
class AchievabilityVerdict:
    """Outcome of an achievability check.

    ``witness`` names the condition closest to exact satisfaction (the
    deciding one when ``achievable``); ``residual`` is its distance from
    exact satisfaction, in radians for the angle criterion and in modulus
    for the weight criterion.
    """

    achievable: bool
    witness: str
    residual: float


def _lattice_distance(value: float) -> float:
    """Distance of ``value`` to the nearest multiple of pi/2."""
    r = value % _HALF_PI
    return min(r, _HALF_PI - r)


def _lattice_target(value: float) -> str:
    """Which lattice point (mod pi) the value is nearest to."""
    n = round(value / _HALF_PI)
    return "0" if n % 2 == 0 else "pi/2"


def check_triple(t: CanonicalTriple, tol: float = DECISION_TOL) -> AchievabilityVerdict:
    """Angle criterion on a canonical triple.

    Achievable iff the minimum over the six values alpha+-beta, alpha+-gamma,
    beta+-gamma of the distance to {0, pi/2} mod pi is at most ``tol``.
    Ties are broken by the fixed evaluation order of ``_ANGLE_NAMES``.
    """
    a, b, g = t.alpha, t.beta, t.gamma
    values = (a - b, a + b, a - g, a + g, b - g, b + g)
    best_idx = 0
    best_dist = _lattice_distance(values[0])
    for idx in range(1, 6):
        dist = _lattice_distance(values[idx])
        if dist < best_dist:
            best_idx = idx
            best_dist = dist
    witness = f"{_ANGLE_NAMES[best_idx]} = {_lattice_target(values[best_idx])} (mod pi)"
    return AchievabilityVerdict(achievable=best_dist <= tol, witness=witness, residual=best_dist)


_SIGN_TRIPLES = tuple(product((1, -1), repeat=3))
_WEIGHT_CONDITION_NAMES = tuple(f"w{i + 1} = 0" for i in range(4)) + tuple(
    f"w1 {'+' if s2 > 0 else '-'} w2 {'+' if s3 > 0 else '-'} w3 {'+' if s4 > 0 else '-'} w4 = 0"
    for s2, s3, s4 in _SIGN_TRIPLES
)


def check_weights(w: CanonicalWeights, tol: float = DECISION_TOL) -> AchievabilityVerdict:
    """Weight criterion on canonical weights.

    Achievable iff some |w_i| <= tol, or one of the eight signed sums
    w1 +- w2 +- w3 +- w4 has modulus <= tol.  Zero weights are checked first
    (indices ascending), then the sign triples in lexicographic order with
    '+' before '-'.
    """
    w1, w2, w3, w4 = w.as_tuple()
    residuals = [abs(w1), abs(w2), abs(w3), abs(w4)]
    for s2, s3, s4 in _SIGN_TRIPLES:
        residuals.append(abs(w1 + s2 * w2 + s3 * w3 + s4 * w4))
    best_idx = 0
    best_dist = residuals[0]
    for idx in range(1, 12):
        if residuals[idx] < best_dist:
            best_idx = idx
            best_dist = residuals[idx]
    return AchievabilityVerdict(
        achievable=best_dist <= tol,
        witness=_WEIGHT_CONDITION_NAMES[best_idx],
        residual=best_dist,
    )


def check_gate(w, tol: float = DECISION_TOL) -> tuple[AchievabilityVerdict, CartanDecomposition]:
    """Decompose a 4x4 unitary and apply the angle criterion to its triple.

    Returns both the verdict and the decomposition so callers can report the
    canonical data alongside the decision.

    Raises:
        NonUnitaryError: the input is not unitary.
    """
    dec = kak_decompose(w)
    return check_triple(dec.triple, tol), dec
