import csv
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from banach_sylvester import io
from banach_sylvester.algebra import AlgebraDescriptor, AlgebraMatrix, residual_norms
from banach_sylvester.cli import main
from banach_sylvester.exceptions import BandwidthOverflow, ShapeMismatch
from banach_sylvester.roth import BlockTriangular

from _builders import manufactured_wiener

FIXTURES = Path(__file__).parent / "fixtures"
SOLVABLE = sorted((FIXTURES / "solvable").glob("*.json"))
OVERLAP = sorted((FIXTURES / "overlap").glob("*.json"))
ROTH = FIXTURES / "roth"


def run(*args):
    return main([str(a) for a in args])


def corrupt_first_coefficient(obj, delta=1e-2):
    entry = obj["X"]["entries"][0]
    pair = entry if isinstance(entry, list) and not isinstance(entry[0], list) else None
    if pair is None:
        pair = next(iter(entry.values())) if isinstance(entry, dict) else entry[0]
    pair[0] += delta


class TestSerialization:
    @pytest.mark.parametrize("path", SOLVABLE + OVERLAP + sorted(ROTH.glob("*.json")), ids=lambda p: p.stem)
    def test_problem_byte_stable(self, path):
        text = path.read_text()
        assert io.dumps(io.problem_to_json(io.load_problem(path))) == text

    def test_result_byte_stable(self, tmp_path):
        out = tmp_path / "x.json"
        assert run("solve", FIXTURES / "solvable" / "wiener_manufactured.json", "--out", out) == 0
        text = out.read_text()
        assert io.dumps(json.loads(text)) == text
        again = io.matrix_to_json(io.solution_x_from_json(json.loads(text)))
        assert again == json.loads(text)["X"]

    def test_full_precision(self, tmp_path, rng):
        a, b, c, _ = manufactured_wiener(rng, 2, 2, 2)
        path = tmp_path / "p.json"
        io.save_problem(path, io.Problem(a.descriptor, a, b, c))
        back = io.load_problem(path)
        for name, m in zip("ABC", (a, b, c)):
            np.testing.assert_array_equal(getattr(back, name).data, m.with_descriptor(back.descriptor).data)

    def test_negative_keys(self):
        d = AlgebraDescriptor.wiener(3, 8)
        m = AlgebraMatrix.from_coefficients({-3: [[1.5]], 2: [[-0.25j]]}, d)
        obj = io.matrix_to_json(m)
        assert obj["entries"][0] == {"-3": [1.5, 0.0], "2": [-0.0, -0.25]}

    def test_bad_inputs(self):
        d = AlgebraDescriptor.wiener(1, 8)
        with pytest.raises(BandwidthOverflow):
            io.matrix_from_json({"rows": 1, "cols": 1, "entries": [{"2": [1, 0]}]}, d)
        with pytest.raises(ShapeMismatch):
            io.matrix_from_json({"rows": 2, "cols": 1, "entries": [{"0": [1, 0]}]}, d)
        with pytest.raises(ValueError):
            io.matrix_from_json({"rows": 1, "cols": 1, "entries": [[1, 0]]}, d)
        with pytest.raises(ShapeMismatch):
            io.matrix_from_json({"rows": 1, "cols": 1, "entries": [[[1, 0]]]}, AlgebraDescriptor.sampled(2))


class TestCheckSeparation:
    def test_scalar(self, capsys):
        assert run("check-separation", FIXTURES / "solvable" / "scalar_basic.json") == 0
        out = capsys.readouterr().out
        assert "global_min_gap: 2.0" in out and "separated: yes" in out

    def test_touching(self, capsys):
        assert run("check-separation", FIXTURES / "overlap" / "wiener_touching.json") == 2
        assert "violating_points: [0]" in capsys.readouterr().out

    def test_csv_rows(self, tmp_path):
        path = tmp_path / "gaps.csv"
        assert run("check-separation", FIXTURES / "solvable" / "wiener_manufactured.json",
                   "--grid", 32, "--csv", path) == 0
        with open(path) as fh:
            assert len(list(csv.reader(fh))) == 1 + 32

    def test_refine_flag(self, capsys):
        assert run("check-separation", FIXTURES / "solvable" / "wiener_geometric.json", "--refine", 2) == 0
        assert "points_checked: 68" in capsys.readouterr().out


class TestSolve:
    def test_manufactured(self, tmp_path):
        out = tmp_path / "x.json"
        assert run("solve", FIXTURES / "solvable" / "wiener_manufactured.json", "--out", out) == 0
        x = io.solution_x_from_json(io.read_json(out))
        expected = io.solution_x_from_json(io.read_json(FIXTURES / "wiener_manufactured.expected.json"))
        for k in range(-2, 3):
            np.testing.assert_allclose(x.coefficient(k), expected.coefficient(k), atol=1e-8)

    def test_zero_c(self, tmp_path):
        out = tmp_path / "x.json"
        assert run("solve", FIXTURES / "solvable" / "wiener_zero_c.json", "--out", out) == 0
        assert not np.any(io.solution_x_from_json(io.read_json(out)).data)

    @pytest.mark.parametrize("path", OVERLAP, ids=lambda p: p.stem)
    def test_overlap(self, path, capsys):
        assert run("solve", path) == 2
        assert "violating_points: [0]" in capsys.readouterr().err

    def test_stdout_and_config_echo(self, capsys):
        assert run("solve", FIXTURES / "solvable" / "scalar_basic.json", "--crosscheck-kron") == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["X"]["entries"] == [[0.5, 0.0]]
        assert obj["config"]["crosscheck_kron"] is True and obj["crosscheck_error"] == 0.0

    def test_residual_failure(self):
        # bandwidth 1 cannot represent 1 / (2 + e^{i theta} / 4) to 1e-6
        assert run("solve", FIXTURES / "solvable" / "wiener_geometric.json", "--bandwidth", 1) == 3

    def test_recorded_residuals_reproduce(self, tmp_path):
        problem = FIXTURES / "solvable" / "wiener_geometric.json"
        out = tmp_path / "x.json"
        assert run("solve", problem, "--bandwidth", 6, "--max-residual", 1e-3, "--out", out) == 0
        result = io.read_json(out)
        p = io.load_problem(problem)
        res_w, res_sup = residual_norms(p.A, p.B, p.C, io.solution_x_from_json(result))
        assert abs(res_w - result["residual_wiener"]) <= 1e-12
        assert abs(res_sup - result["residual_sup"]) <= 1e-12


class TestRoth:
    def test_two_block(self, tmp_path):
        out = tmp_path / "cert.json"
        assert run("roth", ROTH / "two_block_scalar.json", "--out", out) == 0
        cert = io.read_json(out)
        assert cert["S"]["entries"][1] == [1.0, 0.0]
        assert cert["valid"] is True

    def test_three_block(self, tmp_path):
        out = tmp_path / "cert.json"
        assert run("roth", ROTH / "three_block_scalar.json", "--out", out) == 0
        cert = io.read_json(out)
        desc = io.descriptor_from_json(cert["algebra"])
        s = io.matrix_from_json(cert["S"], desc).data[:, :, 0]
        s_inv = io.matrix_from_json(cert["S_inv"], desc).data[:, :, 0]
        t = io.load_problem(ROTH / "three_block_scalar.json").blocks.to_matrix().data[:, :, 0]
        eigs = np.sort_complex(np.linalg.eigvals(s @ t @ s_inv))
        np.testing.assert_allclose(eigs, [1, 2, 3], atol=1e-10)

    def test_touching(self):
        assert run("roth", ROTH / "touching_blocks.json") == 2


class TestVerify:
    @pytest.mark.parametrize("path", SOLVABLE, ids=lambda p: p.stem)
    def test_round_trip(self, path, tmp_path):
        out = tmp_path / "x.json"
        assert run("solve", path, "--out", out) == 0
        assert run("verify", path, out) == 0

    def test_corruption(self, tmp_path):
        path = FIXTURES / "solvable" / "wiener_manufactured.json"
        out = tmp_path / "x.json"
        assert run("solve", path, "--out", out) == 0
        obj = io.read_json(out)
        corrupt_first_coefficient(obj)
        io.write_json(out, obj)
        assert run("verify", path, out) == 3

    def test_hand_written_solution(self, tmp_path):
        out = tmp_path / "x.json"
        out.write_text(json.dumps({
            "algebra": {"kind": "Scalar", "grid_size": 1, "bandwidth": 0},
            "X": {"rows": 1, "cols": 1, "entries": [[0.5, 0.0]]},
        }))
        assert run("verify", FIXTURES / "solvable" / "scalar_basic.json", out) == 0


class TestExitCodes:
    def test_missing_file(self, tmp_path):
        assert run("solve", tmp_path / "nope.json") == 1

    def test_malformed_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run("check-separation", bad) == 1

    def test_missing_matrix(self, tmp_path):
        obj = io.read_json(FIXTURES / "solvable" / "scalar_basic.json")
        del obj["C"]
        path = tmp_path / "p.json"
        io.write_json(path, obj)
        assert run("solve", path) == 1

    def test_insufficient_grid(self):
        assert run("solve", FIXTURES / "solvable" / "wiener_manufactured.json",
                   "--grid", 8, "--bandwidth", 5) == 1

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "banach_sylvester", "check-separation",
             str(FIXTURES / "overlap" / "scalar_overlap.json")],
            capture_output=True, text=True,
        )
        assert proc.returncode == 2


def test_blocks_with_mixed_bandwidth(tmp_path, rng):
    narrow, wide = AlgebraDescriptor.wiener(1, 16), AlgebraDescriptor.wiener(3, 16)
    diagonal = [AlgebraMatrix.constant([[2.0]], narrow), AlgebraMatrix.constant([[-2.0]], wide)]
    upper = {(0, 1): AlgebraMatrix.from_coefficients({3: [[0.5]]}, wide)}
    problem = io.Problem(wide, blocks=BlockTriangular.from_blocks(diagonal, upper))
    path = tmp_path / "blocks.json"
    io.save_problem(path, problem)
    back = io.load_problem(path)
    np.testing.assert_array_equal(back.blocks.to_matrix().data, problem.blocks.to_matrix().data)
    assert run("roth", path) == 0
