"""Optimal post-selection success probability over the solution family.

A solution submatrix ``u`` with ``gate_map(u) = W`` implements W with
probability min(1, s1(u)**-4): rescaling u by 1/s1 makes it a valid unitary
corner provided s1 >= 1, and the quadratic gate map turns that rescaling
into a factor s1**-2 = sqrt(p) on the implemented block.  The exponent is
pinned down end to end by the Fock simulator (see the acceptance suite).

``optimize`` runs seeded multi-start quasi-Newton descent of s1 over the
free complex parameters of each sign branch (non-zero case) or each
quadratic root of the generalized zero-case family.  Gradients are central
differences; s1 is smooth away from singular-value crossings and starts
sitting on a crossing are nudged off it.  The contract is best-found, not
certified-global.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .achievability import check_triple, check_weights
from .cartan import CanonicalWeights, kak_decompose, weights_from_triple
from .exceptions import (
    DegenerateInputError,
    NoConvergenceError,
    NotAchievableError,
    NotProportionalError,
)
from .gatemap import transfer_matrix
from .linalg import DECISION_TOL, as_matrix, singular_values
from .solver import (
    SignBranch,
    SolutionPoint,
    ZeroCasePoint,
    reduce_to_w1_zero,
    solve_nonzero,
    solve_zero,
    valid_branches,
)

_PENALTY = 1e6
_CROSSING_GAP = 1e-9


@dataclass(frozen=True)
class OptimizationConfig:
    """Deterministic multi-start settings.

    Identical config and inputs produce identical reports.  Start magnitudes
    are log-uniform in [1/start_radius, start_radius] with uniform phases;
    ``objective_tolerance`` is the quasi-Newton gradient-norm stopping
    threshold.  Each branch derives its own child PRNG stream from ``seed``,
    so the first k starts of a branch do not depend on ``restarts``.
    """

    restarts: int = 64
    max_iterations: int = 500
    objective_tolerance: float = 1e-10
    seed: int = 0
    start_radius: float = 3.0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be a positive integer")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be a positive integer")
        if self.start_radius <= 1.0:
            raise ValueError("start_radius must exceed 1")


@dataclass
class OptimizationReport:
    """Outcome of a success-probability search."""

    best_p: float
    best_point: SolutionPoint | ZeroCasePoint
    per_branch_best: dict[str, float]
    starts_converged: int
    objective_history: list[float] = field(default_factory=list)


def success_probability(u) -> float:
    """min(1, s1(u)**-4) for a solution submatrix ``u``."""
    s1 = float(singular_values(u)[0])
    if s1 <= 0.0:
        return 1.0
    return min(1.0, s1**-4)


def _central_difference_gradient(fun, x: np.ndarray, rel_step: float = 1e-6) -> np.ndarray:
    grad = np.empty_like(x)
    for i in range(x.size):
        h = rel_step * max(1.0, abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        grad[i] = (fun(xp) - fun(xm)) / (2.0 * h)
    return grad


def _minimize_multistart(objective, starts: list[np.ndarray], cfg: OptimizationConfig):
    """Quasi-Newton descent from each start.

    Returns (best_value, best_x, converged, trace) where ``trace`` holds the
    best value seen after each start (inf until one converges).
    """
    best_value = math.inf
    best_x = None
    converged = 0
    trace: list[float] = []
    jac = lambda x: _central_difference_gradient(objective, x)
    for x0 in starts:
        if objective(x0) < _PENALTY:
            result = minimize(
                objective,
                x0,
                method="BFGS",
                jac=jac,
                options={
                    "gtol": max(cfg.objective_tolerance, 1e-12),
                    "maxiter": cfg.max_iterations,
                },
            )
            value = float(result.fun)
            if np.isfinite(value) and value < _PENALTY:
                converged += 1
                if value < best_value:
                    best_value = value
                    best_x = np.array(result.x)
        trace.append(best_value)
    return best_value, best_x, converged, trace


def _branch_starts(cfg: OptimizationConfig, branch_index: int, spread_fun) -> list[np.ndarray]:
    """Starts for one branch, drawn from a per-branch child stream.

    ``spread_fun`` maps a start to its singular-value gap; starts landing on
    a crossing are nudged deterministically.
    """
    rng = np.random.default_rng(np.random.SeedSequence([int(cfg.seed), branch_index]))
    log_r = math.log(cfg.start_radius)
    starts = []
    for _ in range(cfg.restarts):
        mags = np.exp(rng.uniform(-log_r, log_r, size=2))
        phases = rng.uniform(-math.pi, math.pi, size=2)
        z = mags * np.exp(1j * phases)
        x0 = np.array([z[0].real, z[0].imag, z[1].real, z[1].imag])
        if spread_fun is not None and spread_fun(x0) < _CROSSING_GAP:
            x0 = x0 * (1.0 + 1e-6) + 1e-8
        starts.append(x0)
    return starts


def _probability_trace(trace: list[float], prior_best: float) -> list[float]:
    """Best-so-far success probabilities, folding in earlier branches."""
    out = []
    for value in trace:
        running = min(value, prior_best)
        out.append(min(1.0, running**-4) if math.isfinite(running) else 0.0)
    return out


def _resolve_weights(target) -> tuple[CanonicalWeights, float]:
    """Accept canonical weights or a 4x4 unitary; return weights + residual check."""
    if isinstance(target, CanonicalWeights):
        verdict = check_weights(target, DECISION_TOL)
        if not verdict.achievable:
            raise NotAchievableError(
                f"weights are not achievable: best condition {verdict.witness} "
                f"misses by {verdict.residual:.3e}"
            )
        return target, verdict.residual
    dec = kak_decompose(as_matrix(target, (4, 4)))
    verdict = check_triple(dec.triple, DECISION_TOL)
    if not verdict.achievable:
        raise NotAchievableError(
            f"gate is not achievable: best condition {verdict.witness} "
            f"misses by {verdict.residual:.3e}"
        )
    return weights_from_triple(dec.triple), verdict.residual


def optimize(target, cfg: OptimizationConfig | None = None, tol: float = DECISION_TOL) -> OptimizationReport:
    """Best-found success probability for an achievable gate.

    Args:
        target: CanonicalWeights, or a 4x4 unitary (which is decomposed
            first; the search then runs in the canonical frame, where the
            optimum is the same by local invariance).
        cfg: multi-start settings; defaults to OptimizationConfig().
        tol: decision tolerance for achievability and branch validity.

    Returns:
        An OptimizationReport.  ``best_point.submatrix`` is the unscaled
        family member whose success_probability equals ``best_p``; it lives
        in the canonical frame.

    Raises:
        NotAchievableError: the gate fails the achievability criterion.
        NoConvergenceError: no start converged on any branch.
    """
    cfg = cfg or OptimizationConfig()
    weights, _ = _resolve_weights(target)

    if weights.min_modulus() <= tol:
        return _optimize_zero(weights, cfg, tol)
    return _optimize_nonzero(weights, cfg, tol)


def _finish_report(
    best_value: float,
    rebuild,
    per_branch: dict[str, float],
    converged: int,
    history: list[float],
) -> OptimizationReport:
    if not math.isfinite(best_value) or rebuild is None:
        raise NoConvergenceError("no optimizer start converged; partial results: " + repr(per_branch))
    best_point = rebuild()
    return OptimizationReport(
        best_p=success_probability(best_point.submatrix),
        best_point=best_point,
        per_branch_best=per_branch,
        starts_converged=converged,
        objective_history=history,
    )


def _optimize_nonzero(w: CanonicalWeights, cfg: OptimizationConfig, tol: float) -> OptimizationReport:
    branches = valid_branches(w, 3 * tol)
    if not branches:
        raise NotAchievableError("no valid sign branch for the given weights")

    def make_objective(branch: SignBranch):
        def objective(x: np.ndarray) -> float:
            u23 = complex(x[0], x[1])
            u30 = complex(x[2], x[3])
            if min(abs(u23), abs(u30)) < 1e-8 or max(abs(u23), abs(u30)) > 1e8:
                return _PENALTY + float(np.dot(x, x))
            try:
                point = solve_nonzero(w, branch, u23, u30, tol=3 * tol, check=False)
            except DegenerateInputError:
                return _PENALTY + float(np.dot(x, x))
            return float(singular_values(point.submatrix)[0])

        return objective

    def make_gap(objective_branch: SignBranch):
        def gap(x: np.ndarray) -> float:
            try:
                point = solve_nonzero(
                    w, objective_branch, complex(x[0], x[1]), complex(x[2], x[3]),
                    tol=3 * tol, check=False,
                )
            except DegenerateInputError:
                return math.inf
            sv = singular_values(point.submatrix)
            return float(sv[0] - sv[1])

        return gap

    best_value = math.inf
    best_branch = None
    best_x = None
    per_branch: dict[str, float] = {}
    converged_total = 0
    history: list[float] = []
    for index, branch in enumerate(branches):
        objective = make_objective(branch)
        starts = _branch_starts(cfg, index, make_gap(branch))
        value, x, converged, trace = _minimize_multistart(objective, starts, cfg)
        converged_total += converged
        history.extend(_probability_trace(trace, best_value))
        if math.isfinite(value):
            per_branch[branch.label] = min(1.0, value**-4)
            if value < best_value:
                best_value, best_branch, best_x = value, branch, x
        else:
            per_branch[branch.label] = float("nan")

    rebuild = None
    if best_x is not None:
        rebuild = lambda: solve_nonzero(
            w, best_branch, complex(best_x[0], best_x[1]), complex(best_x[2], best_x[3]),
            tol=3 * tol, check=True,
        )
    return _finish_report(best_value, rebuild, per_branch, converged_total, history)


def _optimize_zero(w: CanonicalWeights, cfg: OptimizationConfig, tol: float) -> OptimizationReport:
    identity_like = max(abs(w.w1 - 1), abs(w.w2 - 1), abs(w.w3), abs(w.w4)) <= tol
    if identity_like:
        point = solve_zero(w, tol=tol)
        return OptimizationReport(
            best_p=success_probability(point.submatrix),
            best_point=point,
            per_branch_best={"zero/identity": success_probability(point.submatrix)},
            starts_converged=0,
            objective_history=[success_probability(point.submatrix)],
        )

    _, rotated = reduce_to_w1_zero(w, tol)
    quadratic = min(abs(rotated.w2), abs(rotated.w3)) > tol
    root_indices: list[int | None] = [0, 1] if quadratic else [None]

    def make_objective(root_index: int | None):
        def objective(x: np.ndarray) -> float:
            u30 = complex(x[0], x[1])
            u32 = complex(x[2], x[3])
            if min(abs(u30), abs(u32)) < 1e-8 or max(abs(u30), abs(u32)) > 1e8:
                return _PENALTY + float(np.dot(x, x))
            try:
                point = solve_zero(w, u30=u30, u32=u32, root_index=root_index, tol=tol, check=False)
            except DegenerateInputError:
                return _PENALTY + float(np.dot(x, x))
            return float(singular_values(point.submatrix)[0])

        return objective

    best_value = math.inf
    best_root = None
    best_x = None
    per_branch: dict[str, float] = {}
    converged_total = 0
    history: list[float] = []
    for index, root_index in enumerate(root_indices):
        label = "zero/closed-form" if root_index is None else f"zero/root{root_index}"
        objective = make_objective(root_index)
        starts = _branch_starts(cfg, index, None)
        value, x, converged, trace = _minimize_multistart(objective, starts, cfg)
        converged_total += converged
        history.extend(_probability_trace(trace, best_value))
        if math.isfinite(value):
            per_branch[label] = min(1.0, value**-4)
            if value < best_value:
                best_value, best_root, best_x = value, root_index, x
        else:
            per_branch[label] = float("nan")

    rebuild = None
    if best_x is not None:
        rebuild = lambda: solve_zero(
            w, u30=complex(best_x[0], best_x[1]), u32=complex(best_x[2], best_x[3]),
            root_index=best_root, tol=tol, check=True,
        )
    return _finish_report(best_value, rebuild, per_branch, converged_total, history)


def probability_of_network(u_modes, target_w, tol: float = 1e-7) -> float:
    """Measured success probability of a mode unitary implementing a gate.

    Runs the Fock simulator on ``u_modes``, requires the post-selected block
    to be proportional to ``target_w`` up to a phase within ``tol``, and
    returns the proportionality modulus squared: the common per-input
    success probability.

    Raises:
        NotProportionalError: the block is not a phase-scalar multiple of
            the target.
    """
    target = as_matrix(target_w, (4, 4))
    block = transfer_matrix(u_modes).block
    scalar = complex(np.trace(target.conj().T @ block) / 4.0)
    residual = float(np.max(np.abs(block - scalar * target)))
    if residual > tol:
        raise NotProportionalError(
            f"post-selected block deviates from the target by {residual:.3e} "
            f"(proportionality tolerance {tol:.1e})"
        )
    return float(abs(scalar) ** 2)
