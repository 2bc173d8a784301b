import json
import math
import subprocess
import sys

import pytest

from ckshift.cli import main


@pytest.fixture
def golden_file(tmp_path):
    path = tmp_path / "golden.txt"
    path.write_text("1 1\n1 0\n")
    return str(path)


@pytest.fixture
def full2_file(tmp_path):
    path = tmp_path / "full2.json"
    path.write_text('{"n": 2, "rows": [[1, 1], [1, 1]]}')
    return str(path)


@pytest.fixture
def perm_file(tmp_path):
    path = tmp_path / "perm.txt"
    path.write_text("0 1\n1 0\n")
    return str(path)


@pytest.fixture
def reducible_file(tmp_path):
    path = tmp_path / "red.txt"
    path.write_text("1 0\n0 1\n")
    return str(path)


@pytest.fixture
def int_file(tmp_path):
    path = tmp_path / "int.txt"
    path.write_text("0 2\n1 0\n")
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_ok(self, capsys, golden_file):
        code, out, _ = run(capsys, ["validate", "--matrix", golden_file, "--format", "json"])
        assert code == 0
        payload = json.loads(out)
        assert payload == {"n": 2, "irreducible": True, "permutation": False}

    def test_invalid_matrix_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("1 2\n1 0\n")
        code, _, err = run(capsys, ["validate", "--matrix", str(bad)])
        assert code == 2
        assert "error:" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run(capsys, ["validate", "--matrix", "/nonexistent/matrix"])
        assert code == 2
        assert "error:" in err


class TestEntropy:
    def test_golden_routes_agree(self, capsys, golden_file):
        code, out, err = run(
            capsys, ["entropy", "--matrix", golden_file, "--format", "json"]
        )
        assert code == 0
        payload = json.loads(out)
        log_phi = math.log((1 + math.sqrt(5)) / 2)
        for key in ("log_radius", "markov_entropy", "ratio"):
            assert abs(float(payload[key]) - log_phi) <= 1e-6
        assert payload["warnings"] == []
        assert err == ""

    def test_permutation_warns_not_errors(self, capsys, perm_file):
        code, out, err = run(capsys, ["entropy", "--matrix", perm_file, "--format", "json"])
        assert code == 0
        payload = json.loads(out)
        assert float(payload["log_radius"]) == 0.0
        assert float(payload["markov_entropy"]) == 0.0
        assert "permutation" in err

    def test_reducible_warns_and_reports_estimates(self, capsys, reducible_file):
        code, out, err = run(
            capsys, ["entropy", "--matrix", reducible_file, "--format", "json"]
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["log_radius"] is None
        assert payload["markov_entropy"] is None
        assert "not irreducible" in err

    def test_bits_base_divides_by_log2(self, capsys, full2_file):
        code, nat_out, _ = run(capsys, ["entropy", "--matrix", full2_file, "--format", "json"])
        assert code == 0
        code, bits_out, _ = run(
            capsys,
            ["entropy", "--matrix", full2_file, "--format", "json", "--base", "bits"],
        )
        assert code == 0
        nat = json.loads(nat_out)
        bits = json.loads(bits_out)
        # serialized values carry 15 significant digits
        assert abs(
            float(bits["markov_entropy"]) - float(nat["markov_entropy"]) / math.log(2)
        ) <= 1e-14
        assert abs(float(bits["markov_entropy"]) - 1.0) <= 1e-12


class TestWords:
    def test_text(self, capsys, golden_file):
        code, out, _ = run(capsys, ["words", "--matrix", golden_file, "--k-max", "2"])
        assert code == 0
        assert out.splitlines() == ["1 1", "1 2", "2 1"]

    def test_csv(self, capsys, golden_file):
        code, out, _ = run(
            capsys, ["words", "--matrix", golden_file, "--k-max", "2", "--format", "csv"]
        )
        assert code == 0
        assert out.splitlines() == ["1,1", "1,2", "2,1"]

    def test_json(self, capsys, golden_file):
        code, out, _ = run(
            capsys, ["words", "--matrix", golden_file, "--k-max", "3", "--format", "json"]
        )
        payload = json.loads(out)
        assert payload["count"] == 5
        assert payload["words"][0] == [1, 1, 1]

    def test_missing_length_is_usage_error(self, golden_file):
        with pytest.raises(SystemExit) as exc:
            main(["words", "--matrix", golden_file])
        assert exc.value.code == 2


class TestParry:
    def test_json(self, capsys, golden_file):
        code, out, _ = run(capsys, ["parry", "--matrix", golden_file, "--format", "json"])
        assert code == 0
        payload = json.loads(out)
        phi = (1 + math.sqrt(5)) / 2
        assert abs(float(payload["radius"]) - phi) <= 1e-10
        assert abs(float(payload["stationary"][0]) - phi**2 / (phi**2 + 1)) <= 1e-9

    def test_reducible_exits_2(self, capsys, reducible_file):
        code, _, err = run(capsys, ["parry", "--matrix", reducible_file])
        assert code == 2
        assert "error:" in err

    def test_csv_unsupported_exits_2(self, capsys, golden_file):
        code, _, err = run(capsys, ["parry", "--matrix", golden_file, "--format", "csv"])
        assert code == 2
        assert "no CSV form" in err


class TestDual:
    def test_json(self, capsys, int_file):
        code, out, _ = run(capsys, ["dual", "--matrix", int_file, "--format", "json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["edge_count"] == 3
        assert payload["edges"] == [[1, 2, 1], [1, 2, 2], [2, 1, 1]]
        assert payload["a_prime"] == [[0, 0, 1], [0, 0, 1], [1, 1, 0]]


class TestConvergence:
    def test_csv_columns(self, capsys, golden_file):
        code, out, _ = run(
            capsys,
            ["convergence", "--matrix", golden_file, "--k-max", "5", "--format", "csv"],
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "k,w_k,eq3,ratio,witness"
        assert len(lines) == 6
        assert lines[1].split(",")[:2] == ["1", "2"]

    def test_witness_column_value(self, capsys, golden_file):
        code, out, _ = run(
            capsys,
            [
                "convergence", "--matrix", golden_file,
                "--k-max", "3", "--n0", "2", "--format", "json",
            ],
        )
        payload = json.loads(out)
        # w(k + n0) for k = 1 is w(3) = 5
        assert abs(float(payload["rows"][0]["witness"]) - math.log(5)) <= 1e-12

    def test_byte_identical_reruns(self, capsys, golden_file):
        argv = ["convergence", "--matrix", golden_file, "--k-max", "8", "--format", "json"]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second

    def test_k_max_too_small_exits_2(self, capsys, golden_file):
        code, _, err = run(capsys, ["convergence", "--matrix", golden_file, "--k-max", "1"])
        assert code == 2
        assert "error:" in err


class TestVerifyCommands:
    def test_verify_ck_passes(self, capsys, golden_file):
        code, out, _ = run(capsys, ["verify-ck", "--matrix", golden_file])
        assert code == 0
        assert "passed" in out

    def test_verify_ck_json_report(self, capsys, golden_file):
        code, out, _ = run(capsys, ["verify-ck", "--matrix", golden_file, "--format", "json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["cases"] == payload["passed"]
        assert payload["failures"] == []

    def test_verify_witnesses_passes(self, capsys, golden_file):
        code, out, _ = run(
            capsys, ["verify-lemma2", "--matrix", golden_file, "--n0", "1", "--n", "1"]
        )
        assert code == 0

    def test_fault_injection_exits_1_with_report(self, capsys, golden_file):
        code, out, _ = run(
            capsys,
            [
                "verify-lemma2", "--matrix", golden_file,
                "--n0", "1", "--n", "1", "--inject-fault",
            ],
        )
        assert code == 1
        payload = json.loads(out)
        assert payload["failures"]

    def test_verify_ck_fault_exits_1(self, capsys, golden_file):
        code, out, _ = run(capsys, ["verify-ck", "--matrix", golden_file, "--inject-fault"])
        assert code == 1
        assert json.loads(out)["failures"]


class TestProcessLevel:
    def test_console_invocation(self, golden_file):
        proc = subprocess.run(
            [sys.executable, "-m", "ckshift", "entropy", "--matrix", golden_file],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "log spectral radius" in proc.stdout
