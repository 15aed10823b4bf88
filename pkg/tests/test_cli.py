import json

import numpy as np
import pytest

from shorent.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from shorent.statevector import (
    StateVector,
    make_random_product_state,
    write_state_json,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFactorCommand:
    def test_factors_fifteen(self, capsys):
        code, out, err = run_cli(capsys, "factor", "--n", "15", "--seed", "1")
        assert code == EXIT_OK
        assert out.strip() == "15 = 3 × 5"

    def test_prime_input_is_a_usage_error(self, capsys):
        code, out, err = run_cli(capsys, "factor", "--n", "13")
        assert code == EXIT_USAGE
        assert "13 is prime" in err
        assert out == ""

    def test_non_composite_small_input(self, capsys):
        code, _, err = run_cli(capsys, "factor", "--n", "1")
        assert code == EXIT_USAGE
        assert "not a composite" in err

    def test_shared_factor_base(self, capsys):
        code, out, _ = run_cli(capsys, "factor", "--n", "33", "--y", "22", "--seed", "1")
        assert code == EXIT_OK
        assert out.strip() == "33 = 3 × 11"

    def test_odd_order_base_fails_with_exit_one(self, capsys):
        code, out, err = run_cli(
            capsys, "factor", "--n", "33", "--y", "4", "--seed", "1", "--max-attempts", "3"
        )
        assert code == EXIT_FAILURE
        assert "no factors of 33" in err

    def test_out_of_range_base(self, capsys):
        code, _, err = run_cli(capsys, "factor", "--n", "33", "--y", "32")
        assert code == EXIT_USAGE
        assert "y must satisfy" in err

    def test_attempt_log_is_written(self, capsys, tmp_path):
        log = tmp_path / "attempts.json"
        code, _, _ = run_cli(
            capsys, "factor", "--n", "15", "--seed", "1", "--log", str(log)
        )
        assert code == EXIT_OK
        doc = json.loads(log.read_text())
        assert isinstance(doc, list) and doc
        assert set(doc[-1]) == {"y", "l", "c", "status", "factors"}
        assert doc[-1]["status"] == "factored"


class TestTraceCommand:
    def test_periodic_trace_to_stdout(self, capsys):
        code, out, _ = run_cli(capsys, "trace", "--periodic", "3", "2", "0")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0].startswith("# seed=7 ")
        assert lines[1] == (
            "experiment_id,gate_index,gate_kind,k,m,theta_radians,groverian_G,norm_error"
        )
        assert len(lines) == 2 + 7
        assert all(line.startswith("periodic-L3-r2-l0,") for line in lines[2:])
        assert max(float(line.split(",")[6]) for line in lines[2:]) <= 1e-6

    def test_shor_trace_stays_flat(self, capsys, tmp_path):
        out_path = tmp_path / "t.csv"
        code, out, _ = run_cli(
            capsys, "trace", "--shor", "33", "4", "--out", str(out_path)
        )
        assert code == EXIT_OK
        assert out == ""
        lines = out_path.read_text().splitlines()
        g = [float(line.split(",")[6]) for line in lines[2:]]
        assert len(g) == 67
        assert abs(g[-1] - g[0]) <= 0.01

    def test_product_trace_uses_requested_width(self, capsys):
        code, out, _ = run_cli(
            capsys, "trace", "--product", "--num-qubits", "4", "--seed", "9"
        )
        assert code == EXIT_OK
        lines = out.splitlines()
        assert len(lines) == 2 + 11
        assert float(lines[2].split(",")[6]) <= 1e-6

    def test_random_trace_runs(self, capsys):
        code, out, _ = run_cli(
            capsys, "trace", "--random", "--num-qubits", "3", "--restarts", "4"
        )
        assert code == EXIT_OK
        assert len(out.splitlines()) == 2 + 7

    def test_trace_from_state_file(self, capsys, tmp_path):
        state, _ = make_random_product_state(3, rng_seed=5)
        path = tmp_path / "st.json"
        write_state_json(state, path)
        code, out, _ = run_cli(capsys, "trace", "--file", str(path))
        assert code == EXIT_OK
        assert out.splitlines()[2].startswith("file-st,0,")

    def test_bad_state_file_is_a_usage_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"num_qubits": 2, "amplitudes": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]}')
        code, _, err = run_cli(capsys, "trace", "--file", str(path))
        assert code == EXIT_USAGE
        assert "error:" in err and "dimension mismatch" in err

    def test_source_flags_are_mutually_exclusive(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["trace", "--product", "--random"])
        assert exc.value.code == EXIT_USAGE

    def test_invalid_shift_is_a_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "trace", "--shor", "33", "23", "--shift", "2")
        assert code == EXIT_USAGE
        assert "error:" in err


class TestGroverianCommand:
    def test_bell_state_file(self, capsys, tmp_path):
        inv = 1 / np.sqrt(2)
        path = tmp_path / "bell.json"
        write_state_json(StateVector(2, np.array([inv, 0, 0, inv])), path)
        code, out, _ = run_cli(capsys, "groverian", str(path))
        assert code == EXIT_OK
        doc = json.loads(out)
        assert set(doc) == {"p_max", "g", "theta", "gamma", "restarts", "converged", "spread"}
        assert doc["p_max"] == pytest.approx(0.5, abs=1e-8)
        assert doc["g"] == pytest.approx(inv, abs=1e-8)
        assert doc["restarts"] == 20
        assert doc["converged"] is True

    def test_product_state_file_reports_zero_g(self, capsys, tmp_path):
        state, _ = make_random_product_state(4, rng_seed=6)
        path = tmp_path / "prod.json"
        write_state_json(state, path)
        code, out, _ = run_cli(capsys, "groverian", str(path), "--restarts", "6")
        doc = json.loads(out)
        assert code == EXIT_OK
        assert doc["g"] <= 1e-6
        assert len(doc["theta"]) == 4

    def test_unnormalized_file_is_a_usage_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"num_qubits": 1, "amplitudes": [[0.9, 0.0], [0.0, 0.0]]}')
        code, _, err = run_cli(capsys, "groverian", str(path))
        assert code == EXIT_USAGE
        assert "norm" in err


class TestSweepCommand:
    def test_small_sweep_summary_and_file(self, capsys, tmp_path):
        out_path = tmp_path / "sweep.csv"
        code, out, _ = run_cli(
            capsys, "sweep", "--n-max", "12", "--out", str(out_path)
        )
        assert code == EXIT_OK
        assert "wrote 31 records" in out
        assert "classification counts: gcd_shortcut=21, power_of_two_order=6, entangled=4" in out
        assert "bound violations = 0" in out
        lines = out_path.read_text().splitlines()
        assert lines[1] == "N,y,r,d,groverian_G,classification,bound"
        assert len(lines) == 2 + 31

    def test_sweep_reruns_byte_identically(self, capsys, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run_cli(capsys, "sweep", "--n-max", "10", "--out", str(a))
        run_cli(capsys, "sweep", "--n-max", "10", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_seed_changes_nothing_structural(self, capsys, tmp_path):
        out_path = tmp_path / "s.csv"
        code, out, _ = run_cli(
            capsys, "sweep", "--n-max", "10", "--seed", "3", "--out", str(out_path)
        )
        assert code == EXIT_OK
        assert out_path.read_text().splitlines()[0] == "# seed=3 version=0.1.0"


class TestPeriodicStudyCommand:
    def test_writes_records(self, capsys, tmp_path):
        out_path = tmp_path / "p.csv"
        code, out, _ = run_cli(
            capsys,
            "periodic-study",
            "--l-values", "5,6",
            "--r-values", "2,3",
            "--out", str(out_path),
        )
        assert code == EXIT_OK
        assert "wrote 4 records" in out
        lines = out_path.read_text().splitlines()
        assert lines[1] == "L,r,d,p_max,qft_drift"
        assert len(lines) == 6

    def test_oversized_period_is_a_usage_error(self, capsys):
        code, _, err = run_cli(
            capsys, "periodic-study", "--l-values", "3", "--r-values", "9"
        )
        assert code == EXIT_USAGE
        assert "error:" in err

    def test_malformed_list_is_a_usage_error(self, capsys):
        code, _, err = run_cli(
            capsys, "periodic-study", "--l-values", "a,b", "--r-values", "2"
        )
        assert code == EXIT_USAGE
        assert "comma-separated" in err


def test_unknown_subcommand_exits_with_usage_code():
    with pytest.raises(SystemExit) as exc:
        main(["transmogrify"])
    assert exc.value.code == EXIT_USAGE


def test_missing_subcommand_exits_with_usage_code():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_USAGE
