import json

import pytest

from cnotsat.cli import main
from conftest import PAPER_1SAT, PAPER_3SAT


@pytest.fixture
def paper_file(tmp_path):
    path = tmp_path / "paper.cnf"
    path.write_text(PAPER_3SAT)
    return str(path)


class TestSolve:
    def test_paper_formula(self, paper_file, capsys):
        assert main(["solve", paper_file]) == 0
        out = capsys.readouterr().out
        assert "5 solutions: 010 011 101 110 111" in out

    def test_unsatisfiable(self, capsys):
        assert main(["solve", "--dimacs", "p cnf 1 2\n1 0\n-1 0"]) == 0
        assert "0 solutions (unsatisfiable)" in capsys.readouterr().out

    def test_worked_1sat(self, capsys):
        assert main(["solve", "--dimacs", PAPER_1SAT]) == 0
        assert "1 solution: 110" in capsys.readouterr().out

    def test_via_spectrum_agreement(self, paper_file, capsys):
        assert main(["solve", paper_file, "--via-spectrum"]) == 0
        assert "agree" in capsys.readouterr().out

    def test_json_output(self, paper_file, capsys):
        assert main(["solve", paper_file, "--via-spectrum", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["count"] == 5
        assert data["paths_agree"] is True
        assert data["solutions"] == ["010", "011", "101", "110", "111"]

    def test_parse_error_exit_code(self, capsys):
        assert main(["solve", "--dimacs", "not dimacs"]) == 2
        assert "error" in capsys.readouterr().err

    def test_uncompute_flag(self, paper_file, capsys):
        assert main(["solve", paper_file, "--uncompute"]) == 0
        assert "5 solutions" in capsys.readouterr().out


class TestCompile:
    def test_paper_counts(self, paper_file, capsys):
        assert main(["compile", paper_file]) == 0
        out = capsys.readouterr().out
        assert "elementary C-NOT: 21" in out
        assert "elementary single-qubit: 32" in out

    def test_unit_formula_single_gate(self, capsys):
        assert main(["compile", "--dimacs", "p cnf 1 1\n1 0", "--no-peephole"]) == 0
        out = capsys.readouterr().out
        assert "qbc 2 1 0" in out
        assert "mcx 1 0" in out

    def test_peephole_reduces_nots(self, paper_file, capsys):
        assert main(["compile", paper_file, "--json"]) == 0
        counts = json.loads(capsys.readouterr().out)["counts"]
        assert counts["not_count_after_peephole"] < counts["not_count_before_peephole"]

    def test_writes_circuit_file(self, paper_file, tmp_path, capsys):
        out_path = tmp_path / "circuit.qbc"
        assert main(["compile", paper_file, "-o", str(out_path)]) == 0
        assert out_path.read_text().startswith("qbc 7 3 3")


class TestSpectrum:
    def test_worked_1sat_table(self, capsys):
        assert main(
            ["spectrum", "--dimacs", PAPER_1SAT, "--spin-system", "alanine-4q"]
        ) == 0
        rows = capsys.readouterr().out.strip().splitlines()
        assert len(rows) == 8
        assert sum("-0.125" in row for row in rows) == 1

    def test_tautology_all_negative(self, capsys):
        assert main(
            ["spectrum", "--dimacs", "p cnf 1 1\n1 -1 0", "--spin-system", "alanine-3q"]
        ) == 0
        rows = capsys.readouterr().out.strip().splitlines()
        assert len(rows) == 2
        assert all("-" in row.split()[1] for row in rows)

    def test_thermal_reference_all_positive(self, capsys):
        assert main(
            [
                "spectrum",
                "--dimacs",
                "p cnf 2 1\n1 2 0",
                "--thermal",
                "--spin-system",
                "alanine-3q",
            ]
        ) == 0
        rows = capsys.readouterr().out.strip().splitlines()
        assert len(rows) == 4
        assert all("+" in row for row in rows)

    def test_trace_written(self, tmp_path, capsys):
        trace = tmp_path / "trace.csv"
        assert main(
            [
                "spectrum",
                "--dimacs",
                PAPER_1SAT,
                "--spin-system",
                "alanine-4q",
                "--trace",
                str(trace),
                "--grid=-130,130,501",
            ]
        ) == 0
        rows = trace.read_text().strip().splitlines()
        assert len(rows) == 501
        assert all("," in row for row in rows)

    def test_unresolvable_system_rejected(self, tmp_path, capsys):
        system = tmp_path / "bad.json"
        system.write_text(
            json.dumps(
                {
                    "names": ["W", "A", "B"],
                    "shifts": [0.0, 0.0, 0.0],
                    "observed": 0,
                    "couplings": [[0, 20, 20], [20, 0, 0], [20, 0, 0]],
                    "variable_qubits": ["A", "B"],
                }
            )
        )
        code = main(
            ["spectrum", "--dimacs", "p cnf 2 1\n1 2 0", "--spin-system", str(system)]
        )
        assert code == 2
        assert "not resolvable" in capsys.readouterr().err


class TestVerify:
    def test_corpus_passes(self, capsys):
        assert main(["verify", "--corpus", "25", "--seed", "3"]) == 0
        assert "25/25 exact matches" in capsys.readouterr().out

    def test_single_file(self, paper_file, capsys):
        assert main(["verify", paper_file]) == 0
        assert "1/1 exact matches" in capsys.readouterr().out

    def test_fault_injection_detected(self, paper_file, capsys):
        assert main(["verify", paper_file, "--inject-fault"]) == 1
        assert "FAIL" in capsys.readouterr().out


class TestRandom:
    def test_deterministic_output(self, capsys):
        assert main(["random", "4", "5", "3", "--seed", "42"]) == 0
        first = capsys.readouterr().out
        assert main(["random", "4", "5", "3", "--seed", "42"]) == 0
        assert capsys.readouterr().out == first
        assert first.startswith("p cnf 4 5")

    def test_round_trips_through_solve(self, tmp_path, capsys):
        path = tmp_path / "random.cnf"
        assert main(["random", "3", "4", "2", "--seed", "1", "-o", str(path)]) == 0
        assert main(["solve", str(path)]) == 0
        assert "solution" in capsys.readouterr().out
