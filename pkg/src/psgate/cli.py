"""Command-line front end.

Subcommands: ``check`` (achievability verdict), ``solve`` (one explicit
submatrix), ``optimize`` (best success probability), ``compile`` (full
beam-splitter network written to JSON), ``simulate`` (run the two-photon
simulator on a network or mode-unitary file).

Exit codes: 0 on success / achievable, 1 when a gate is not achievable (or a
simulated circuit fails its target check), 2 on invalid input.

File formats:
  * Matrix JSON: ``{"rows": [[[re, im], ...], ...]}``, row-major.
  * Network JSON: ``{"n_modes": N, "elements": [{"kind", "modes", "theta",
    "phi"}, ...]}`` with elements listed input to output (see
    :mod:`psgate.dilation` for the beam-splitter convention).
  * Reports: JSON documents carrying ``"schema": "psgate/1"``; all floats
    appear with their residuals/tolerances in ``diagnostics``.

The default decision tolerance is 1e-6, overridable per invocation with
``--tol`` or globally through the ``PSGATE_DEFAULT_TOL`` environment
variable.  All angles are radians.  With ``--figures DIR`` each command also
renders matplotlib figures (and, where a table is natural, a CSV) into DIR.
"""

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .achievability import AchievabilityVerdict, check_gate
from .cartan import (
    CanonicalTriple,
    CanonicalWeights,
    canonical_matrix_from_weights,
    kak_decompose,
    weights_from_triple,
)
from .dilation import OpticalNetwork, dilate, network_to_unitary, reck_decompose
from .exceptions import (
    GateSynthesisError,
    NotAchievableError,
    NotProportionalError,
    ZeroWeightError,
)
from .gatemap import evolve_two_photons, gate_map, postselect_computational, transfer_matrix
from .gates import GateSpec, resolve_gate
from .linalg import DECISION_TOL, singular_values
from .probability import (
    OptimizationConfig,
    optimize,
    probability_of_network,
    success_probability,
)
from .solver import SignBranch, solve_gate, transport_submatrix, valid_branches

SCHEMA = "psgate/1"
EXIT_OK = 0
EXIT_NOT_ACHIEVABLE = 1
EXIT_INVALID = 2

_LOGICAL_INPUTS = ("00", "01", "10", "11")


class InputError(Exception):
    """Invalid command-line input; maps to exit code 2."""


# ---------------------------------------------------------------------------
# JSON (de)serialization helpers.


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _matrix_rows(m: np.ndarray) -> list:
    return [[_pair(z) for z in row] for row in np.asarray(m, dtype=complex)]


def parse_matrix_payload(payload) -> np.ndarray:
    """Parse the matrix JSON schema with row/column diagnostics."""
    if not isinstance(payload, dict) or "rows" not in payload:
        raise InputError('matrix JSON must be an object with a "rows" key')
    rows = payload["rows"]
    if not isinstance(rows, list) or not rows:
        raise InputError('"rows" must be a non-empty list of rows')
    width = None
    data = []
    for r, row in enumerate(rows):
        if not isinstance(row, list):
            raise InputError(f"rows[{r}]: expected a list of [re, im] pairs")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError(f"rows[{r}]: ragged row, expected {width} entries, got {len(row)}")
        entries = []
        for c, cell in enumerate(row):
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or not all(isinstance(x, (int, float)) and math.isfinite(x) for x in cell)
            ):
                raise InputError(f"rows[{r}][{c}]: expected a finite [re, im] pair")
            entries.append(complex(cell[0], cell[1]))
        data.append(entries)
    return np.array(data, dtype=complex)


def load_matrix_file(path: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    return parse_matrix_payload(payload)


def load_network_file(path: str) -> OpticalNetwork:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    try:
        return OpticalNetwork.from_json_dict(payload)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _verdict_dict(v: AchievabilityVerdict) -> dict:
    return {"achievable": v.achievable, "witness": v.witness, "residual": v.residual}


def _triple_dict(t: CanonicalTriple) -> dict:
    return {"alpha": t.alpha, "beta": t.beta, "gamma": t.gamma}


def _weights_dict(w: CanonicalWeights) -> dict:
    return {"w1": _pair(w.w1), "w2": _pair(w.w2), "w3": _pair(w.w3), "w4": _pair(w.w4)}


# ---------------------------------------------------------------------------
# Report document.


@dataclass
class ReportDocument:
    """Everything a command learned, rendered as text or schema'd JSON."""

    command: str
    gate: str | None = None
    verdict: AchievabilityVerdict | None = None
    triple: CanonicalTriple | None = None
    weights: CanonicalWeights | None = None
    solution: dict | None = None
    optimization: dict | None = None
    network: dict | None = None
    simulation: dict | None = None
    diagnostics: dict = field(default_factory=dict)
    figures: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        doc: dict = {"schema": SCHEMA, "command": self.command}
        if self.gate is not None:
            doc["gate"] = self.gate
        if self.verdict is not None:
            doc["verdict"] = _verdict_dict(self.verdict)
        if self.triple is not None:
            doc["triple"] = _triple_dict(self.triple)
        if self.weights is not None:
            doc["weights"] = _weights_dict(self.weights)
        for key in ("solution", "optimization", "network", "simulation"):
            value = getattr(self, key)
            if value is not None:
                doc[key] = value
        doc["diagnostics"] = self.diagnostics
        if self.figures:
            doc["figures"] = self.figures
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    def render_text(self) -> str:
        lines = [f"psgate {self.command}" + (f": {self.gate}" if self.gate else "")]
        if self.verdict is not None:
            state = "ACHIEVABLE" if self.verdict.achievable else "NOT ACHIEVABLE"
            lines.append(f"  verdict    : {state}")
            lines.append(f"  witness    : {self.verdict.witness} (residual {self.verdict.residual:.3e})")
        if self.triple is not None:
            t = self.triple
            lines.append(f"  triple     : alpha={t.alpha:.9f} beta={t.beta:.9f} gamma={t.gamma:.9f}")
        if self.weights is not None:
            w = self.weights
            lines.append(
                "  weights    : "
                + "  ".join(
                    f"w{i + 1}={z.real:+.6f}{z.imag:+.6f}j"
                    for i, z in enumerate(w.as_tuple())
                )
            )
        if self.solution is not None:
            lines.append(f"  p          : {self.solution['p']:.9f}")
            lines.append(f"  path       : {self.solution['path']}")
            lines.append("  submatrix  :")
            lines.extend(_format_matrix(self.solution["submatrix"], indent=4))
        if self.optimization is not None:
            opt = self.optimization
            lines.append(f"  best_p     : {opt['best_p']:.9f}")
            lines.append(f"  converged  : {opt['starts_converged']} starts")
            for label, value in opt["per_branch_best"].items():
                lines.append(f"    branch {label:>16s} : p = {value:.9f}")
        if self.network is not None:
            net = self.network
            lines.append(
                f"  network    : {net['n_modes']} modes, "
                f"{net['beam_splitters']} beam splitters, {net['phase_shifters']} phase shifters"
            )
            if "path" in net:
                lines.append(f"  written to : {net['path']}")
        if self.simulation is not None:
            sim = self.simulation
            if "block" in sim:
                lines.append("  block      :")
                lines.extend(_format_matrix(sim["block"], indent=4))
            if "amplitudes" in sim:
                amps = sim["amplitudes"]
                lines.append(
                    "  amplitudes : "
                    + "  ".join(
                        f"|{b}>={a[0]:+.6f}{a[1]:+.6f}j" for b, a in zip(_LOGICAL_INPUTS, amps)
                    )
                )
            if "success_probabilities" in sim:
                probs = sim["success_probabilities"]
                lines.append(
                    "  p per input: " + "  ".join(f"{b}:{p:.9f}" for b, p in zip(_LOGICAL_INPUTS, probs))
                )
            if "success_probability" in sim:
                lines.append(f"  p          : {sim['success_probability']:.9f}")
            if "measured_p" in sim:
                lines.append(f"  measured p : {sim['measured_p']:.9f}")
        if self.diagnostics:
            lines.append("  diagnostics:")
            for key in sorted(self.diagnostics):
                lines.append(f"    {key} = {self.diagnostics[key]:.3e}")
        for figure in self.figures:
            lines.append(f"  figure     : {figure}")
        return "\n".join(lines) + "\n"


def _format_matrix(rows: list, indent: int) -> list[str]:
    pad = " " * indent
    out = []
    for row in rows:
        cells = "  ".join(f"{re:+.6f}{im:+.6f}j" for re, im in row)
        out.append(pad + cells)
    return out


def _emit(report: ReportDocument, as_json: bool) -> None:
    sys.stdout.write(report.to_json() if as_json else report.render_text())


def _figure_dir(args) -> str | None:
    directory = getattr(args, "figures", None)
    if directory:
        os.makedirs(directory, exist_ok=True)
    return directory


# ---------------------------------------------------------------------------
# Commands.


def _resolve_gate_from_args(args) -> GateSpec:
    matrix = None
    if getattr(args, "matrix", None):
        matrix = load_matrix_file(args.matrix)
        if matrix.shape != (4, 4):
            raise InputError(f"gate matrix must be 4x4, got {matrix.shape}")
    try:
        return resolve_gate(args.gate or None, matrix, tol=1e-8)
    except (ValueError, GateSynthesisError) as exc:
        raise InputError(str(exc)) from exc


def cmd_check(args) -> int:
    gate = _resolve_gate_from_args(args)
    verdict, dec = check_gate(gate.matrix, args.tol)
    weights = weights_from_triple(dec.triple)
    report = ReportDocument(
        command="check",
        gate=gate.name,
        verdict=verdict,
        triple=dec.triple,
        weights=weights,
        diagnostics={
            "decision_tol": args.tol,
            "kak_reconstruction_residual": dec.residual(gate.matrix),
        },
    )
    directory = _figure_dir(args)
    if directory:
        from . import plots

        report.figures.append(
            plots.save_weyl_chamber(dec.triple, os.path.join(directory, "check_weyl_chamber.png"))
        )
    _emit(report, args.json)
    return EXIT_OK if verdict.achievable else EXIT_NOT_ACHIEVABLE


def _parse_point_args(args, weights: CanonicalWeights, tol: float):
    """Optional (branch, u23, u30) from --branch/--u23/--u30 flags."""
    if args.branch is None and args.u23 is None and args.u30 is None:
        return None
    if weights.min_modulus() <= tol:
        raise InputError("--branch/--u23/--u30 apply to the non-zero-weight case only")
    try:
        branch = (
            SignBranch.from_label(args.branch)
            if args.branch is not None
            else valid_branches(weights, 3 * tol)[0]
        )
        u23 = complex(args.u23) if args.u23 is not None else 1.0
        u30 = complex(args.u30) if args.u30 is not None else 1.0
    except (ValueError, ZeroWeightError, IndexError) as exc:
        raise InputError(f"invalid solution point: {exc}") from exc
    return branch, u23, u30


def cmd_solve(args) -> int:
    gate = _resolve_gate_from_args(args)
    verdict, dec = check_gate(gate.matrix, args.tol)
    weights = weights_from_triple(dec.triple)
    point = _parse_point_args(args, weights, args.tol)
    submatrix, p = solve_gate(gate.matrix, point=point, tol=args.tol)
    f_residual = float(np.max(np.abs(gate_map(submatrix) - math.sqrt(p) * gate.matrix)))
    path = "zero-case" if weights.min_modulus() <= args.tol else "non-zero-case"
    report = ReportDocument(
        command="solve",
        gate=gate.name,
        verdict=verdict,
        triple=dec.triple,
        weights=weights,
        solution={
            "submatrix": _matrix_rows(submatrix),
            "p": p,
            "path": path,
        },
        diagnostics={
            "decision_tol": args.tol,
            "kak_reconstruction_residual": dec.residual(gate.matrix),
            "solution_residual": f_residual,
            "largest_singular_value": float(singular_values(submatrix)[0]),
        },
    )
    directory = _figure_dir(args)
    if directory:
        from . import plots

        report.figures.append(
            plots.save_block_heatmap(
                gate_map(submatrix),
                os.path.join(directory, "solve_block.png"),
                title="implemented block (sqrt(p) * gate)",
            )
        )
    _emit(report, args.json)
    return EXIT_OK


def _optimized_mode_unitary(gate: GateSpec, rep, tol: float) -> np.ndarray:
    """Transport the optimizer's canonical point to the gate frame and dilate."""
    dec = kak_decompose(gate.matrix)
    unscaled = transport_submatrix(dec, rep.best_point.submatrix)
    s1 = float(singular_values(unscaled)[0])
    return dilate(unscaled / max(1.0, s1), tol=1e-8)


def cmd_optimize(args) -> int:
    gate = _resolve_gate_from_args(args)
    verdict, dec = check_gate(gate.matrix, args.tol)
    cfg = OptimizationConfig(restarts=args.restarts, seed=args.seed)
    rep = optimize(gate.matrix, cfg, tol=args.tol)
    optimization = {
        "best_p": rep.best_p,
        "per_branch_best": dict(sorted(rep.per_branch_best.items())),
        "starts_converged": rep.starts_converged,
        "objective_history": rep.objective_history,
        "restarts": args.restarts,
        "seed": args.seed,
    }
    if args.emit_unitary:
        optimization["mode_unitary"] = _matrix_rows(_optimized_mode_unitary(gate, rep, args.tol))
    weights = weights_from_triple(dec.triple)
    family_residual = float(
        np.max(np.abs(gate_map(rep.best_point.submatrix) - canonical_matrix_from_weights(weights)))
    )
    report = ReportDocument(
        command="optimize",
        gate=gate.name,
        verdict=verdict,
        triple=dec.triple,
        weights=weights,
        optimization=optimization,
        diagnostics={
            "decision_tol": args.tol,
            "best_point_residual": family_residual,
            "best_p_check": abs(rep.best_p - success_probability(rep.best_point.submatrix)),
        },
    )
    directory = _figure_dir(args)
    if directory:
        from . import plots

        report.figures.append(
            plots.save_convergence(
                rep.objective_history, os.path.join(directory, "optimize_convergence.png")
            )
        )
        report.figures.append(
            plots.save_weyl_chamber(dec.triple, os.path.join(directory, "optimize_weyl_chamber.png"))
        )
        table = os.path.join(directory, "optimize_branches.csv")
        with open(table, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["branch", "best_p"])
            for label, value in sorted(rep.per_branch_best.items()):
                writer.writerow([label, f"{value:.12f}"])
        report.figures.append(table)
    _emit(report, args.json)
    return EXIT_OK


def cmd_compile(args) -> int:
    gate = _resolve_gate_from_args(args)
    verdict, dec = check_gate(gate.matrix, args.tol)
    cfg = OptimizationConfig(restarts=args.restarts, seed=args.seed)
    rep = optimize(gate.matrix, cfg, tol=args.tol)
    u_modes = _optimized_mode_unitary(gate, rep, args.tol)
    net = reck_decompose(u_modes)

    # Verify before writing: mesh reproduces the unitary and the simulated
    # block is proportional to the target with the optimizer's probability.
    round_trip = float(np.max(np.abs(network_to_unitary(net) - u_modes)))
    measured_p = probability_of_network(network_to_unitary(net), gate.matrix)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(net.to_json())

    report = ReportDocument(
        command="compile",
        gate=gate.name,
        verdict=verdict,
        triple=dec.triple,
        optimization={
            "best_p": rep.best_p,
            "per_branch_best": dict(sorted(rep.per_branch_best.items())),
            "starts_converged": rep.starts_converged,
            "restarts": args.restarts,
            "seed": args.seed,
        },
        network={
            "n_modes": net.n_modes,
            "beam_splitters": net.beam_splitter_count(),
            "phase_shifters": net.phase_shifter_count(),
            "path": args.out,
        },
        simulation={"measured_p": measured_p},
        diagnostics={
            "decision_tol": args.tol,
            "network_round_trip_residual": round_trip,
            "measured_vs_best_p": abs(measured_p - rep.best_p),
        },
    )
    directory = _figure_dir(args)
    if directory:
        from . import plots

        report.figures.append(
            plots.save_network_diagram(net, os.path.join(directory, "compile_network.png"))
        )
    _emit(report, args.json)
    return EXIT_OK


def _parse_input_spec(spec: str, n_modes: int) -> tuple[str, tuple[int, int] | None]:
    spec = spec.strip().lower()
    if spec == "all":
        return "all", None
    if spec in _LOGICAL_INPUTS:
        idx = _LOGICAL_INPUTS.index(spec)
        pairs = ((0, 2), (0, 3), (1, 2), (1, 3))
        return spec, pairs[idx]
    if spec.startswith("modes:"):
        try:
            i, j = (int(x) for x in spec[len("modes:"):].split(","))
        except ValueError as exc:
            raise InputError(f"bad --input mode pair {spec!r}: {exc}") from exc
        if not (0 <= i < j < n_modes):
            raise InputError(f"--input modes ({i},{j}) must satisfy 0 <= i < j < {n_modes}")
        return spec, (i, j)
    raise InputError(f"--input must be all, 00, 01, 10, 11 or modes:i,j; got {spec!r}")


def cmd_simulate(args) -> int:
    if bool(args.network) == bool(args.unitary):
        raise InputError("give exactly one of --network or --unitary")
    if args.network:
        net = load_network_file(args.network)
        u_modes = network_to_unitary(net)
        source = args.network
    else:
        u_modes = load_matrix_file(args.unitary)
        source = args.unitary
    if u_modes.shape[0] < 4:
        raise InputError("simulation needs at least 4 modes (two dual-rail qubits)")

    simulation: dict = {"source": source, "n_modes": int(u_modes.shape[0])}
    diagnostics: dict = {}
    label, pair = _parse_input_spec(args.input, u_modes.shape[0])
    tm = None
    if label == "all":
        tm = transfer_matrix(u_modes)
        simulation["block"] = _matrix_rows(tm.block)
        simulation["success_probabilities"] = list(tm.success_probabilities)
    else:
        state = evolve_two_photons(u_modes, pair)
        vec, p = postselect_computational(state)
        simulation["input"] = label
        simulation["amplitudes"] = [_pair(z) for z in vec]
        simulation["success_probability"] = p

    exit_code = EXIT_OK
    if args.target or args.target_matrix:
        target_matrix = None
        if args.target_matrix:
            target_matrix = load_matrix_file(args.target_matrix)
        try:
            target = resolve_gate(args.target or None, target_matrix, tol=1e-8)
        except (ValueError, GateSynthesisError) as exc:
            raise InputError(str(exc)) from exc
        try:
            measured = probability_of_network(u_modes, target.matrix)
            simulation["measured_p"] = measured
            simulation["target"] = target.name
            block = transfer_matrix(u_modes).block
            scalar = complex(np.trace(target.matrix.conj().T @ block) / 4.0)
            diagnostics["proportionality_residual"] = float(
                np.max(np.abs(block - scalar * target.matrix))
            )
        except NotProportionalError as exc:
            simulation["target"] = target.name
            simulation["target_error"] = str(exc)
            exit_code = EXIT_NOT_ACHIEVABLE

    report = ReportDocument(
        command="simulate", simulation=simulation, diagnostics=diagnostics
    )
    directory = _figure_dir(args)
    if directory and tm is not None:
        from . import plots

        report.figures.append(
            plots.save_block_heatmap(tm.block, os.path.join(directory, "simulate_block.png"))
        )
    _emit(report, args.json)
    return exit_code


# ---------------------------------------------------------------------------
# Parser.


def _default_tol() -> float:
    raw = os.environ.get("PSGATE_DEFAULT_TOL")
    if raw is None:
        return DECISION_TOL
    try:
        value = float(raw)
    except ValueError as exc:
        raise InputError(f"PSGATE_DEFAULT_TOL is not a number: {raw!r}") from exc
    if not (0 < value < 1):
        raise InputError(f"PSGATE_DEFAULT_TOL must be in (0, 1): {value}")
    return value


def _add_gate_arguments(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "gate",
        nargs="*",
        help="named gate with numeric parameters in radians: "
        "cnot | cz | swap | iswap | sqrt_swap | cphase PHI | canonical A B G",
    )
    sub.add_argument("--matrix", help="JSON file with a literal 4x4 gate matrix")


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--tol", type=float, default=None, help="decision tolerance (default 1e-6)")
    sub.add_argument("--json", action="store_true", help="emit a JSON report")
    sub.add_argument("--figures", metavar="DIR", help="render figures (and tables) into DIR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psgate",
        description="Two-qubit gates from two photons, linear optics, and post-selection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="decide achievability")
    _add_gate_arguments(p_check)
    _add_common_flags(p_check)
    p_check.set_defaults(func=cmd_check)

    p_solve = sub.add_parser("solve", help="construct one explicit submatrix")
    _add_gate_arguments(p_solve)
    _add_common_flags(p_solve)
    p_solve.add_argument("--branch", help="sign branch label, e.g. ++-+")
    p_solve.add_argument("--u23", help="free complex parameter, e.g. '1+0.5j'")
    p_solve.add_argument("--u30", help="free complex parameter, e.g. '-0.3j'")
    p_solve.set_defaults(func=cmd_solve)

    p_opt = sub.add_parser("optimize", help="best success probability")
    _add_gate_arguments(p_opt)
    _add_common_flags(p_opt)
    p_opt.add_argument("--restarts", type=int, default=64)
    p_opt.add_argument("--seed", type=int, default=0)
    p_opt.add_argument(
        "--emit-unitary", action="store_true", help="include the dilated 8x8 mode unitary"
    )
    p_opt.set_defaults(func=cmd_optimize)

    p_compile = sub.add_parser("compile", help="optimize, dilate, and mesh-decompose")
    _add_gate_arguments(p_compile)
    _add_common_flags(p_compile)
    p_compile.add_argument("--restarts", type=int, default=64)
    p_compile.add_argument("--seed", type=int, default=0)
    p_compile.add_argument("--out", default="network.json", help="output network file")
    p_compile.set_defaults(func=cmd_compile)

    p_sim = sub.add_parser("simulate", help="run the two-photon simulator")
    p_sim.add_argument("--network", help="network JSON file")
    p_sim.add_argument("--unitary", help="mode-unitary matrix JSON file")
    p_sim.add_argument(
        "--input", default="all", help="all | 00 | 01 | 10 | 11 | modes:i,j (default all)"
    )
    p_sim.add_argument("--target", nargs="*", help="named gate to compare the block against")
    p_sim.add_argument("--target-matrix", help="matrix JSON file to compare the block against")
    _add_common_flags(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching the invalid-input code.
        return int(exc.code) if exc.code is not None else EXIT_INVALID
    try:
        if getattr(args, "tol", None) is None and hasattr(args, "tol"):
            args.tol = _default_tol()
        return args.func(args)
    except InputError as exc:
        print(f"psgate: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NotAchievableError as exc:
        print(f"psgate: {exc}", file=sys.stderr)
        return EXIT_NOT_ACHIEVABLE
    except GateSynthesisError as exc:
        print(f"psgate: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
