import json

import numpy as np
import pytest

from psgate.cli import main, parse_matrix_payload
from psgate.cli import InputError
from psgate.dilation import OpticalNetwork
from psgate.gates import CNOT


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_matrix(path, matrix) -> str:
    rows = [[[z.real, z.imag] for z in row] for row in np.asarray(matrix, dtype=complex)]
    path.write_text(json.dumps({"rows": rows}))
    return str(path)


class TestCheckCommand:
    def test_cnot_achievable(self, capsys):
        code, out, _ = run_cli(capsys, "check", "cnot")
        assert code == 0
        assert "ACHIEVABLE" in out
        assert "beta-gamma" in out

    def test_generic_not_achievable(self, capsys):
        code, out, _ = run_cli(capsys, "check", "canonical", "0.3", "0.5", "0.7")
        assert code == 1
        assert "NOT ACHIEVABLE" in out

    def test_non_unitary_matrix_file(self, capsys, tmp_path):
        path = write_matrix(tmp_path / "bad.json", np.ones((4, 4)))
        code, _, err = run_cli(capsys, "check", "--matrix", path)
        assert code == 2
        assert "unitary" in err

    def test_unknown_gate(self, capsys):
        code, _, err = run_cli(capsys, "check", "toffoli")
        assert code == 2
        assert "unknown gate" in err

    def test_json_schema_field(self, capsys):
        code, out, _ = run_cli(capsys, "check", "cz", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == "psgate/1"
        assert doc["verdict"]["achievable"] is True

    def test_matrix_file_gate(self, capsys, tmp_path):
        path = write_matrix(tmp_path / "cnot.json", CNOT)
        code, out, _ = run_cli(capsys, "check", "--matrix", path, "--json")
        assert code == 0
        assert json.loads(out)["verdict"]["achievable"] is True


class TestSolveCommand:
    def test_cnot(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "cnot", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["solution"]["path"] == "non-zero-case"
        assert doc["diagnostics"]["solution_residual"] < 1e-9
        assert 0 < doc["solution"]["p"] <= 1

    def test_iswap_takes_zero_path(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "iswap", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["solution"]["path"] == "zero-case"
        assert doc["diagnostics"]["solution_residual"] < 1e-9

    def test_explicit_point(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", "cnot", "--branch", "++++", "--u23", "1+0.5j", "--u30", "0.9", "--json"
        )
        assert code == 0
        assert json.loads(out)["diagnostics"]["solution_residual"] < 1e-9

    def test_point_flags_rejected_for_zero_case(self, capsys):
        code, _, err = run_cli(capsys, "solve", "iswap", "--branch", "++++")
        assert code == 2
        assert "non-zero-weight" in err

    def test_not_achievable(self, capsys):
        code, _, err = run_cli(capsys, "solve", "canonical", "0.3", "0.5", "0.7")
        assert code == 1


class TestOptimizeCommand:
    def test_cnot_benchmark_value(self, capsys):
        code, out, _ = run_cli(
            capsys, "optimize", "cnot", "--restarts", "8", "--seed", "7", "--json"
        )
        assert code == 0
        doc = json.loads(out)
        assert abs(doc["optimization"]["best_p"] - 1 / 9) < 1e-3

    def test_identity(self, capsys):
        code, out, _ = run_cli(capsys, "optimize", "canonical", "0", "0", "0", "--json")
        assert code == 0
        assert json.loads(out)["optimization"]["best_p"] == 1.0

    def test_byte_identical_reports(self, capsys):
        args = ("optimize", "cnot", "--restarts", "4", "--seed", "9", "--json")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_emit_unitary(self, capsys):
        code, out, _ = run_cli(
            capsys, "optimize", "cz", "--restarts", "4", "--seed", "1", "--json", "--emit-unitary"
        )
        assert code == 0
        doc = json.loads(out)
        rows = doc["optimization"]["mode_unitary"]
        assert len(rows) == 8 and len(rows[0]) == 8

    def test_not_achievable_exit(self, capsys):
        code, _, _ = run_cli(capsys, "optimize", "canonical", "0.3", "0.5", "0.7")
        assert code == 1


class TestCompileCommand:
    def test_cnot_pipeline(self, capsys, tmp_path):
        out_path = tmp_path / "cnot_net.json"
        code, out, _ = run_cli(
            capsys,
            "compile", "cnot", "--restarts", "8", "--seed", "7",
            "--out", str(out_path), "--json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["network"]["beam_splitters"] <= 28
        assert abs(doc["simulation"]["measured_p"] - 1 / 9) < 1e-3
        assert doc["diagnostics"]["network_round_trip_residual"] < 1e-9

        net = OpticalNetwork.from_json(out_path.read_text())
        assert net.n_modes == 8

    def test_trivial_gate(self, capsys, tmp_path):
        out_path = tmp_path / "id_net.json"
        code, out, _ = run_cli(
            capsys, "compile", "canonical", "0", "0", "0", "--out", str(out_path), "--json"
        )
        assert code == 0
        doc = json.loads(out)
        assert abs(doc["simulation"]["measured_p"] - 1.0) < 1e-9

    def test_not_achievable(self, capsys, tmp_path):
        out_path = tmp_path / "never.json"
        code, _, _ = run_cli(
            capsys, "compile", "canonical", "0.3", "0.5", "0.7", "--out", str(out_path)
        )
        assert code == 1
        assert not out_path.exists()


class TestSimulateCommand:
    def test_identity_network(self, capsys, tmp_path):
        path = tmp_path / "id_net.json"
        path.write_text(OpticalNetwork(4, []).to_json())
        code, out, _ = run_cli(capsys, "simulate", "--network", str(path), "--input", "00", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["simulation"]["amplitudes"][0] == [1.0, 0.0]
        assert doc["simulation"]["success_probability"] == 1.0

    def test_hong_ou_mandel_network(self, capsys, tmp_path):
        path = tmp_path / "hom.json"
        net = OpticalNetwork.from_json_dict(
            {
                "n_modes": 4,
                "elements": [
                    {"kind": "beam_splitter", "modes": [0, 1], "theta": np.pi / 4, "phi": 0.0}
                ],
            }
        )
        path.write_text(net.to_json())
        code, out, _ = run_cli(
            capsys, "simulate", "--network", str(path), "--input", "modes:0,1", "--json"
        )
        assert code == 0
        assert json.loads(out)["simulation"]["success_probability"] < 1e-14

    def test_compiled_network_against_target(self, capsys, tmp_path):
        out_path = tmp_path / "cz_net.json"
        run_cli(capsys, "compile", "cz", "--restarts", "8", "--seed", "3", "--out", str(out_path))
        code, out, _ = run_cli(
            capsys, "simulate", "--network", str(out_path), "--target", "cz", "--json"
        )
        assert code == 0
        doc = json.loads(out)
        assert abs(doc["simulation"]["measured_p"] - 1 / 9) < 1e-3
        assert doc["diagnostics"]["proportionality_residual"] < 1e-7

    def test_wrong_target_exits_one(self, capsys, tmp_path):
        path = tmp_path / "id_net.json"
        path.write_text(OpticalNetwork(4, []).to_json())
        code, out, _ = run_cli(capsys, "simulate", "--network", str(path), "--target", "cnot", "--json")
        assert code == 1
        assert "target_error" in json.loads(out)["simulation"]

    def test_unitary_file_input(self, capsys, tmp_path):
        path = write_matrix(tmp_path / "u.json", np.eye(6))
        code, out, _ = run_cli(capsys, "simulate", "--unitary", str(path), "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["simulation"]["success_probabilities"] == [1.0, 1.0, 1.0, 1.0]

    def test_requires_exactly_one_source(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "simulate")
        assert code == 2

    def test_malformed_network_file(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _, err = run_cli(capsys, "simulate", "--network", str(path))
        assert code == 2
        assert "line" in err


class TestReportRoundTrip:
    @pytest.mark.parametrize(
        "argv",
        [
            ("check", "cnot", "--json"),
            ("solve", "iswap", "--json"),
            ("optimize", "cz", "--restarts", "4", "--seed", "1", "--json"),
        ],
    )
    def test_parse_print_fixed_point(self, capsys, argv):
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0
        doc = json.loads(out)
        assert json.dumps(doc, indent=2, sort_keys=True) + "\n" == out


class TestMatrixFileFormat:
    def test_round_trip(self, tmp_path):
        m = np.array([[1, 2j], [3 - 1j, 0.5]], dtype=complex)
        payload = {"rows": [[[z.real, z.imag] for z in row] for row in m]}
        assert np.array_equal(parse_matrix_payload(payload), m)

    def test_ragged_rows_diagnostic(self):
        with pytest.raises(InputError, match=r"rows\[1\]"):
            parse_matrix_payload({"rows": [[[1, 0], [0, 0]], [[1, 0]]]})

    def test_non_numeric_diagnostic(self):
        with pytest.raises(InputError, match=r"rows\[0\]\[1\]"):
            parse_matrix_payload({"rows": [[[1, 0], ["x", 0]]]})

    def test_missing_rows_key(self):
        with pytest.raises(InputError, match="rows"):
            parse_matrix_payload([1, 2, 3])


class TestEnvironmentTolerance:
    def test_env_var_overrides_default(self, capsys, monkeypatch):
        # A tolerance wide enough to call a near-miss achievable.
        monkeypatch.setenv("PSGATE_DEFAULT_TOL", "0.05")
        code, out, _ = run_cli(capsys, "check", "canonical", "0.76", "0.01", "0.0", "--json")
        assert code == 0
        assert json.loads(out)["diagnostics"]["decision_tol"] == 0.05

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("PSGATE_DEFAULT_TOL", "0.05")
        code, _, _ = run_cli(capsys, "check", "canonical", "0.76", "0.01", "0.0", "--tol", "1e-6")
        assert code == 1

    def test_invalid_env_value(self, capsys, monkeypatch):
        monkeypatch.setenv("PSGATE_DEFAULT_TOL", "banana")
        code, _, err = run_cli(capsys, "check", "cnot")
        assert code == 2


class TestFigures:
    def test_check_writes_figure(self, capsys, tmp_path):
        figdir = tmp_path / "figs"
        code, out, _ = run_cli(capsys, "check", "cnot", "--figures", str(figdir), "--json")
        assert code == 0
        files = json.loads(out)["figures"]
        assert len(files) == 1
        assert (figdir / "check_weyl_chamber.png").exists()

    def test_optimize_writes_figures_and_table(self, capsys, tmp_path):
        figdir = tmp_path / "figs"
        code, out, _ = run_cli(
            capsys,
            "optimize", "cnot", "--restarts", "4", "--seed", "2",
            "--figures", str(figdir), "--json",
        )
        assert code == 0
        assert (figdir / "optimize_convergence.png").exists()
        assert (figdir / "optimize_weyl_chamber.png").exists()
        table = (figdir / "optimize_branches.csv").read_text().splitlines()
        assert table[0] == "branch,best_p"
        assert len(table) == 5

    def test_compile_writes_network_diagram(self, capsys, tmp_path):
        figdir = tmp_path / "figs"
        code, _, _ = run_cli(
            capsys,
            "compile", "cz", "--restarts", "4", "--seed", "2",
            "--out", str(tmp_path / "net.json"), "--figures", str(figdir),
        )
        assert code == 0
        assert (figdir / "compile_network.png").exists()
