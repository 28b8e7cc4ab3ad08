"""Embed contractions into mode unitaries and synthesize them optically.

A matrix sits in the corner of some unitary exactly when its largest
singular value is at most 1.  ``dilate`` builds the standard 2x-size
embedding; ``reck_decompose`` factors any mode unitary into a triangular
mesh of two-parameter beam splitters followed by per-mode phase shifters,
and ``network_to_unitary`` multiplies a network back out.

Beam-splitter convention: ``beam_splitter(i, j, theta, phi)`` acts on modes
(i, j) as

    [[exp(i*phi)*cos(theta), -sin(theta)],
     [exp(i*phi)*sin(theta),  cos(theta)]]

with theta in [0, pi/2] and phi in (-pi, pi].  Elements of a network are
listed input-to-output: the network unitary is the matrix product of the
embedded elements with the last element leftmost.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .exceptions import NonUnitaryError, NotContractionError, NumericalFailureError
from .linalg import as_matrix, is_unitary

#: Mode-count cap, matching the two-photon simulator.
MAX_MODES = 16

_NEGLIGIBLE = 1e-14


@dataclass(frozen=True)
class BeamSplitter:
    mode_i: int
    mode_j: int
    theta: float
    phi: float

    def embed(self, n_modes: int) -> np.ndarray:
        i, j = self.mode_i, self.mode_j
        if not (0 <= i < n_modes and 0 <= j < n_modes) or i == j:
            raise ValueError(f"beam splitter modes ({i}, {j}) invalid for {n_modes} modes")
        if not (np.isfinite(self.theta) and np.isfinite(self.phi)):
            raise ValueError("beam splitter angles must be finite")
        m = np.eye(n_modes, dtype=complex)
        c, s = np.cos(self.theta), np.sin(self.theta)
        ph = np.exp(1j * self.phi)
        m[i, i] = ph * c
        m[i, j] = -s
        m[j, i] = ph * s
        m[j, j] = c
        return m

    def to_json_dict(self) -> dict:
        return {
            "kind": "beam_splitter",
            "modes": [self.mode_i, self.mode_j],
            "theta": float(self.theta),
            "phi": float(self.phi),
        }


@dataclass(frozen=True)
class PhaseShifter:
    mode: int
    phi: float

    def embed(self, n_modes: int) -> np.ndarray:
        if not 0 <= self.mode < n_modes:
            raise ValueError(f"phase shifter mode {self.mode} invalid for {n_modes} modes")
        if not np.isfinite(self.phi):
            raise ValueError("phase shifter angle must be finite")
        m = np.eye(n_modes, dtype=complex)
        m[self.mode, self.mode] = np.exp(1j * self.phi)
        return m

    def to_json_dict(self) -> dict:
        return {
            "kind": "phase_shifter",
            "modes": [self.mode],
            "theta": 0.0,
            "phi": float(self.phi),
        }


Element = BeamSplitter | PhaseShifter


@dataclass
class OpticalNetwork:
    """An ordered list of optical elements on ``n_modes`` modes."""

    n_modes: int
    elements: list[Element] = field(default_factory=list)

    def beam_splitter_count(self) -> int:
        return sum(1 for e in self.elements if isinstance(e, BeamSplitter))

    def phase_shifter_count(self) -> int:
        return sum(1 for e in self.elements if isinstance(e, PhaseShifter))

    def to_json_dict(self) -> dict:
        return {
            "n_modes": self.n_modes,
            "elements": [e.to_json_dict() for e in self.elements],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json_dict(cls, payload: dict) -> "OpticalNetwork":
        try:
            n_modes = int(payload["n_modes"])
            raw_elements = payload["elements"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"network payload missing n_modes/elements: {exc}") from exc
        elements: list[Element] = []
        for idx, entry in enumerate(raw_elements):
            try:
                kind = entry["kind"]
                modes = entry["modes"]
                phi = float(entry["phi"])
                if kind == "beam_splitter":
                    elements.append(
                        BeamSplitter(int(modes[0]), int(modes[1]), float(entry["theta"]), phi)
                    )
                elif kind == "phase_shifter":
                    elements.append(PhaseShifter(int(modes[0]), phi))
                else:
                    raise ValueError(f"unknown element kind {kind!r}")
            except (KeyError, TypeError, IndexError, ValueError) as exc:
                raise ValueError(f"malformed network element at index {idx}: {exc}") from exc
        return cls(n_modes=n_modes, elements=elements)

    @classmethod
    def from_json(cls, text: str) -> "OpticalNetwork":
        return cls.from_json_dict(json.loads(text))


def network_to_unitary(net: OpticalNetwork) -> np.ndarray:
    """Multiply out a network, elements applied in list order."""
    if net.n_modes < 1 or net.n_modes > MAX_MODES:
        raise ValueError(f"network must have between 1 and {MAX_MODES} modes")
    u = np.eye(net.n_modes, dtype=complex)
    for element in net.elements:
        u = element.embed(net.n_modes) @ u
    return u


def dilate(u, tol: float = 1e-8) -> np.ndarray:
    """Embed a contraction as the top-left corner of a unitary twice its size.

    Returns [[u, R1], [R2, -u^dag]] with R1, R2 the PSD square roots of
    I - u u^dag and I - u^dag u.  Both roots are formed from a single SVD of
    ``u`` so the off-diagonal cancellation holds to machine precision even
    when ``u`` is itself (numerically) unitary.  The corner block is ``u``
    bit for bit; singular values in (1, 1 + tol] are treated as 1 when
    forming the complementary blocks, which relaxes the unitarity guarantee
    by the amount of the clip.

    Raises:
        NotContractionError: the largest singular value exceeds 1 + tol.
    """
    u = as_matrix(u)
    n = u.shape[0]
    if u.shape[1] != n:
        raise ValueError("dilate requires a square matrix")
    v, sigma, wh = np.linalg.svd(u)
    s1 = float(sigma[0])
    if s1 > 1.0 + tol:
        raise NotContractionError(f"largest singular value {s1:.6f} exceeds 1 + {tol:.1e}")

    # sqrt(I - u u^dag) = V f V^dag and sqrt(I - u^dag u) = W f W^dag with
    # f = sqrt(1 - sigma^2), sharing the singular vectors of u.
    f = np.sqrt(np.clip(1.0 - sigma**2, 0.0, None))
    r1 = v @ np.diag(f) @ v.conj().T
    r2 = wh.conj().T @ np.diag(f) @ wh
    out = np.empty((2 * n, 2 * n), dtype=complex)
    out[:n, :n] = u
    out[:n, n:] = 0.5 * (r1 + r1.conj().T)
    out[n:, :n] = 0.5 * (r2 + r2.conj().T)
    out[n:, n:] = -u.conj().T

    allowed = max(1e-10, 2.5 * max(0.0, s1 * s1 - 1.0))
    residual = float(np.max(np.abs(out.conj().T @ out - np.eye(2 * n))))
    if residual > allowed:
        raise NumericalFailureError(
            f"dilation unitarity residual {residual:.3e} exceeds {allowed:.1e}"
        )
    return out


def reck_decompose(u, tol: float = 1e-8) -> OpticalNetwork:
    """Triangular beam-splitter mesh realizing a mode unitary.

    Below-diagonal entries are eliminated row by row from the bottom with
    adjacent-mode column mixes, leaving a phase diagonal: at most
    N(N-1)/2 beam splitters plus at most N phase shifters.  Elements whose
    matrix is the identity are dropped, so e.g. the identity gives an empty
    network.

    Raises:
        NonUnitaryError: the input is not unitary within ``tol``.
    """
    u = as_matrix(u)
    n = u.shape[0]
    if u.shape[1] != n:
        raise ValueError("reck_decompose requires a square matrix")
    if n > MAX_MODES:
        raise ValueError(f"mode count {n} exceeds the supported maximum {MAX_MODES}")
    if not is_unitary(u, tol):
        raise NonUnitaryError("reck_decompose requires a unitary matrix")

    work = u.copy()
    splitters: list[BeamSplitter] = []
    for row in range(n - 1, 0, -1):
        for col in range(0, row):
            a = work[row, col]
            b = work[row, col + 1]
            if abs(a) <= _NEGLIGIBLE:
                continue
            if abs(b) <= _NEGLIGIBLE:
                theta, phi = np.pi / 2, 0.0
            else:
                ratio = a / b
                theta = float(np.arctan(abs(ratio)))
                phi = float(np.angle(ratio))
            bs = BeamSplitter(col, col + 1, theta, phi)
            # Right-multiplying by the adjoint core zeroes work[row, col].
            core = BeamSplitter(0, 1, theta, phi).embed(2)
            work[:, col : col + 2] = work[:, col : col + 2] @ core.conj().T
            splitters.append(bs)

    off_diag = float(np.max(np.abs(work - np.diag(np.diag(work)))))
    if off_diag > 1e-9:
        raise NumericalFailureError(f"triangular elimination left residue {off_diag:.3e}")

    elements: list[Element] = list(splitters)
    for mode in range(n):
        delta = float(np.angle(work[mode, mode]))
        if abs(delta) > _NEGLIGIBLE:
            elements.append(PhaseShifter(mode, delta))

    net = OpticalNetwork(n_modes=n, elements=elements)
    round_trip = float(np.max(np.abs(network_to_unitary(net) - u)))
    if round_trip > 1e-9:
        raise NumericalFailureError(f"mesh reconstruction residual {round_trip:.3e} exceeds 1e-9")
    return net
