import json

import pytest

from rqcdesign.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


def strip_timing(doc):
    doc = json.loads(json.dumps(doc))
    doc["manifest"].pop("created_utc", None)
    doc.pop("execution", None)
    if "execution" in doc.get("manifest", {}).get("config", {}):
        doc["manifest"]["config"].pop("execution")
    return doc


class TestLatticeCommand:
    def test_grid_5x5(self, capsys):
        doc = run_json(
            capsys, "lattice", "--mode", "grid", "--width", "5", "--height", "5"
        )
        assert doc["lattice"]["n_qubits"] == 25
        assert doc["lattice"]["m"] == 5 and doc["lattice"]["n"] == 5
        assert doc["manifest"]["command"] == "lattice"
        assert doc["manifest"]["output_digest"].startswith("sha256:")

    def test_window_12x12(self, capsys):
        doc = run_json(
            capsys, "lattice", "--mode", "window", "--xsize", "12", "--ysize", "12"
        )
        assert doc["lattice"]["n_qubits"] == 72

    def test_defect_removes_qubit(self, capsys):
        doc = run_json(
            capsys,
            "lattice", "--width", "5", "--height", "5", "--defects", "(2,2)",
        )
        assert doc["lattice"]["n_qubits"] == 24

    def test_bad_defect_exits_2(self, capsys):
        code, _ = run_cli(
            capsys,
            "lattice", "--width", "3", "--height", "3", "--defects", "(9,9)",
        )
        assert code == 2

    def test_malformed_coordinates_exit_2(self, capsys):
        code, _ = run_cli(
            capsys, "lattice", "--width", "3", "--height", "3", "--defects", "bogus"
        )
        assert code == 2

    def test_table_format(self, capsys):
        code, out = run_cli(
            capsys, "lattice", "--width", "2", "--height", "2", "--format", "table"
        )
        assert code == 0
        assert "qubits:   4" in out


class TestEvaluateCommand:
    def test_baseline_5x5(self, capsys):
        doc = run_json(
            capsys,
            "evaluate", "--width", "5", "--height", "5",
            "--a", "11111", "--c", "00000", "--swap", "0", "--depth", "20",
        )
        bd = doc["breakdown"]
        assert bd["log2_cost"] == pytest.approx(60.0444, abs=1e-3)
        assert bd["n_c"] == doc["best_path"]["E_eff"] * 20 // 4
        assert doc["fidelity"] is None

    def test_zero_noise_appends_ns_3(self, capsys):
        doc = run_json(
            capsys,
            "evaluate", "--width", "5", "--height", "5",
            "--a", "11111", "--c", "00000", "--depth", "20",
            "--e1", "0", "--e2", "0", "--er", "0",
        )
        assert doc["fidelity"]["F"] == 1.0
        assert doc["fidelity"]["Ns"] == 3

    def test_depth_18_reports_tail(self, capsys):
        doc = run_json(
            capsys,
            "evaluate", "--width", "5", "--height", "5",
            "--a", "11111", "--c", "00000", "--depth", "18",
        )
        assert doc["tail"] is not None and len(doc["tail"]) == 2
        assert len(doc["tail_words"]) == 9
        assert doc["letters"].endswith(doc["tail"])

    def test_bit_length_mismatch_exits_2(self, capsys):
        code, _ = run_cli(
            capsys,
            "evaluate", "--width", "5", "--height", "5",
            "--a", "111", "--c", "00000", "--depth", "20",
        )
        assert code == 2

    def test_circuit_export(self, capsys):
        doc = run_json(
            capsys,
            "evaluate", "--width", "5", "--height", "5",
            "--a", "11111", "--c", "00000", "--depth", "8", "--circuit",
        )
        circuit = doc["circuit"]
        assert circuit["letters"] == "ABCDCDAB"
        assert circuit["pattern"]["text"] == "A=11111 C=00000 swap=0"
        assert len(circuit["cycles"]) == 8
        # the A and B cycles each hold half of the 20 F1 bonds
        assert len(circuit["cycles"][0]) == 10
        gate = circuit["cycles"][0][0]
        assert set(gate) == {"bond", "a", "b"}
        # endpoints are canonical coordinates at distance one
        (u1, v1), (u2, v2) = gate["a"], gate["b"]
        assert abs(u1 - u2) + abs(v1 - v2) == 1


class TestSearchCommand:
    def test_2048_candidates(self, capsys):
        doc = run_json(
            capsys,
            "search", "--width", "5", "--height", "5", "--depth", "20",
            "--baseline",
        )
        assert doc["total_candidates"] == 2048
        assert doc["baseline"]["rank"] >= 1
        assert len(doc["top"]) == 10

    def test_thread_invariance(self, capsys):
        a = run_json(
            capsys, "search", "--width", "4", "--height", "4", "--depth", "8",
            "--threads", "1",
        )
        b = run_json(
            capsys, "search", "--width", "4", "--height", "4", "--depth", "8",
            "--threads", "4",
        )
        sa, sb = strip_timing(a), strip_timing(b)
        sa["manifest"]["config"].pop("threads")
        sb["manifest"]["config"].pop("threads")
        assert json.dumps(sa, sort_keys=True) == json.dumps(sb, sort_keys=True)

    def test_enum_cap_exits_3(self, capsys):
        # a 21x21 grid needs 2^43 candidates, above the enumeration cap
        code, _ = run_cli(
            capsys, "search", "--width", "21", "--height", "21", "--depth", "8"
        )
        assert code == 3

    def test_infeasible_side_cap_exits_2(self, capsys):
        # 72 qubits cannot split with both sides <= 33; the side filters
        # reject every cut
        code, _ = run_cli(
            capsys,
            "search", "--mode", "window", "--xsize", "12", "--ysize", "12",
            "--depth", "8",
        )
        assert code == 2

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out = run_cli(
            capsys,
            "search", "--width", "3", "--height", "3", "--depth", "8",
            "--output", str(target),
        )
        assert code == 0
        assert out == ""
        doc = json.loads(target.read_text())
        assert doc["total_candidates"] == 2 ** 7


class TestEntropyCommand:
    def test_depth0_zero_and_bounds(self, capsys):
        doc = run_json(
            capsys,
            "entropy", "--width", "3", "--height", "3",
            "--a", "111", "--c", "000", "--depth", "8", "--seed", "7",
        )
        rows = doc["profiles"][0]["rows"]
        assert rows[0]["entropy_bits"] == pytest.approx(0.0, abs=1e-9)
        n1, n2 = doc["profiles"][0]["n1"], doc["profiles"][0]["n2"]
        assert all(r["entropy_bits"] <= min(n1, n2) + 1e-9 for r in rows)
        assert len(rows) == 9

    def test_comparison_mode(self, capsys):
        doc = run_json(
            capsys,
            "entropy", "--width", "3", "--height", "3",
            "--a", "111", "--c", "000", "--depth", "8",
            "--a2", "010", "--c2", "101", "--swap2", "1",
        )
        assert len(doc["profiles"]) == 2

    def test_cap_exits_3(self, capsys):
        code, _ = run_cli(
            capsys,
            "entropy", "--width", "5", "--height", "5",
            "--a", "11111", "--c", "00000", "--depth", "8", "--cap", "16",
        )
        assert code == 3

    def test_explicit_cut(self, capsys):
        doc = run_json(
            capsys,
            "entropy", "--width", "3", "--height", "3",
            "--a", "111", "--c", "000", "--depth", "8",
            "--cut", "(1,-1) (1,0) (1,1) (1,2)",
        )
        assert doc["profiles"][0]["n1"] == 6
        assert doc["profiles"][0]["n2"] == 3

    def test_reproducible_documents(self, capsys):
        args = (
            "entropy", "--width", "3", "--height", "3",
            "--a", "111", "--c", "000", "--depth", "8", "--seed", "3",
        )
        a = strip_timing(run_json(capsys, *args))
        b = strip_timing(run_json(capsys, *args))
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
