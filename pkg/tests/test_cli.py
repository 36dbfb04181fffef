import json

import pytest

from cayleyci.cli import main
from cayleyci.digraph import Digraph, to_text


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


class TestExitCodes:
    def test_verify_theorem_p2_confirms(self, capsys):
        code, payload = run_cli(capsys, "verify-theorem", "--p", "2", "--workers", "1")
        assert code == 0
        assert payload["confirmed"]
        assert payload["witness_pair_in_flagged_bucket"]
        assert payload["certificates_match_three_squares"]

    def test_dci_graph_refuted(self, capsys):
        code, payload = run_cli(
            capsys, "dci-graph", "--group", "dihedral:6", "--set", "b,a^3",
            "--method", "both",
        )
        assert code == 2
        assert payload["is_dci_graph"] is False
        assert payload["direct"]["witness"]
        assert len(payload["babai"]["regular_subgroup_classes"]) == 2

    def test_dci_graph_confirmed(self, capsys):
        code, payload = run_cli(
            capsys, "dci-graph", "--group", "dihedral:6", "--set", "a^1",
            "--method", "both",
        )
        assert code == 0 and payload["is_dci_graph"] is True

    def test_scan_infeasible(self, capsys):
        code = main(["scan", "--group", "dihedral:15", "--mode", "dci", "--workers", "1"])
        assert code == 3

    def test_usage_error(self, capsys):
        assert main(["scan", "--group", "dihedral:6"]) == 1
        assert main(["scan", "--group", "nosuch", "--mode", "dci"]) == 1

    def test_dichotomy(self, capsys):
        code, payload = run_cli(capsys, "dichotomy")
        assert code == 0
        assert payload["regular_subgroups"] == 20

    def test_case(self, capsys):
        code, payload = run_cli(capsys, "case", "--p", "5", "--classes", "2")
        assert code == 0
        assert payload["passed"]


class TestTwoClosureCommand:
    def test_cyclic5(self, capsys):
        code, payload = run_cli(
            capsys, "two-closure", "--degree", "5", "--gens", "(1,2,3,4,5)"
        )
        assert code == 0
        assert payload["closure_order"] == 5
        assert payload["two_closed"]

    def test_block_pair(self, capsys):
        code, payload = run_cli(
            capsys,
            "two-closure",
            "--degree",
            "6",
            "--gens",
            "(1,2,3)(4,5,6)",
            "--gens",
            "(1,4)(2,6)(3,5)",
        )
        assert code == 0
        assert payload["input_order"] == 6


class TestDeterminism:
    def test_same_seed_same_report(self, capsys):
        code1, p1 = run_cli(
            capsys, "scan", "--group", "alt4", "--mode", "dci", "--seed", "5",
            "--workers", "1",
        )
        code2, p2 = run_cli(
            capsys, "scan", "--group", "alt4", "--mode", "dci", "--seed", "5",
            "--workers", "1",
        )
        assert code1 == code2 == 0
        p1.pop("timings")
        p2.pop("timings")
        assert p1 == p2


class TestDigraphCommand:
    def test_inspect_and_complement(self, capsys, tmp_path):
        D = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        path = tmp_path / "cycle.dg"
        path.write_text(to_text(D))
        out_path = tmp_path / "co.dg"
        code, payload = run_cli(
            capsys, "digraph", "--in", str(path), "--complement-out", str(out_path)
        )
        assert code == 0
        assert payload["n"] == 4 and payload["arcs"] == 4
        assert payload["aut_order"] == 4
        assert payload["connected"]
        text = out_path.read_text()
        assert text.splitlines()[0] == "4 8"

    def test_report_file_output(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        code, payload = run_cli(
            capsys, "scan", "--group", "dihedral:3", "--mode", "dci",
            "--workers", "1", "--out", str(out),
        )
        assert code == 0
        assert json.loads(out.read_text()) == payload
