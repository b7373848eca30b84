"""CLI behavior: exit codes, report formats, golden files, determinism."""

import json
import subprocess
import sys

import pytest

from sqcgroups.cli import format_cayley_table, main
from sqcgroups.catalog import cyclic


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheck:
    def test_dihedral4_exit_zero(self, capsys):
        code, out, err = run_cli(capsys, "check", "dihedral:4")
        assert code == 0
        assert "square commutative: yes" in out
        assert out.count(": holds") == 3
        assert err == ""

    def test_dihedral3_exit_one_with_witness(self, capsys):
        code, out, _ = run_cli(capsys, "check", "dihedral:3")
        assert code == 1
        assert "square commutative: no" in out
        assert "witness: (" in out

    def test_order16_presentation_criteria(self, capsys):
        text = "< a, b | a^4 = b^2 = 1, b a = (a b)^3, b a^2 = a^2 b >"
        code, out, _ = run_cli(capsys, "check", text)
        assert code == 1
        assert "(ab)^2=(ba)^2: fails" in out
        assert "b^2a=ab^2: holds" in out
        assert "a^2b=ba^2: holds" in out

    def test_json_schema_keys(self, capsys):
        code, out, _ = run_cli(capsys, "check", "dihedral:4", "--json")
        assert code == 0
        doc = json.loads(out)
        assert list(doc.keys()) == [
            "schema_version",
            "subject",
            "order",
            "is_square_commutative",
            "witness",
            "center_size",
            "z2_size",
            "hat_order",
            "hat_abelian",
            "squares_central",
            "g_mod_z_abelian",
            "criteria",
            "coverage_ok",
            "consistent",
        ]
        assert doc["schema_version"] == "1"
        assert doc["order"] == 8
        assert doc["is_square_commutative"] is True
        assert doc["witness"] is None
        assert [c["name"] for c in doc["criteria"]] == [
            "b^2a=ab^2",
            "a^2b=ba^2",
            "(ab)^2=(ba)^2",
        ]

    def test_json_round_trips(self, capsys):
        code, out, _ = run_cli(capsys, "check", "dihedral:3", "--json")
        doc = json.loads(out)
        assert json.loads(json.dumps(doc)) == doc
        assert doc["witness"] is not None

    def test_byte_identical_runs(self, capsys):
        _, out1, _ = run_cli(capsys, "check", "metacyclic:8:2:3")
        _, out2, _ = run_cli(capsys, "check", "metacyclic:8:2:3")
        assert out1 == out2
        assert "timings" not in out1

    def test_timings_flag(self, capsys):
        code, out, _ = run_cli(capsys, "check", "dihedral:4", "--timings")
        assert code == 0
        assert "timings:" in out
        code, out, _ = run_cli(capsys, "check", "dihedral:4", "--json", "--timings")
        doc = json.loads(out)
        assert set(doc["timings"].keys()) == {"build_ms", "analyze_ms"}

    def test_gens_flag(self, capsys):
        code, out, _ = run_cli(capsys, "check", "q8", "--gens", "i,k")
        assert code == 0
        assert "criteria:" in out

    def test_gens_with_parenthesized_labels(self, capsys):
        code, out, _ = run_cli(
            capsys, "check", "heisenberg:3", "--gens", "(1,0,0),(0,0,1)"
        )
        assert code == 1
        assert "criteria:" in out

    def test_gens_not_generating_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "check", "dihedral:4", "--gens", "a")
        assert code == 2
        assert "error:" in err

    def test_unknown_gen_label_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "check", "dihedral:4", "--gens", "zz")
        assert code == 2
        assert "error:" in err

    def test_parse_failure_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "check", "< a, b | a^4 = ")
        assert code == 2
        assert "error:" in err

    def test_unknown_family_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "check", "frobnicate:7")
        assert code == 2
        assert "error:" in err

    def test_coset_limit_exit_two(self, capsys):
        code, _, err = run_cli(
            capsys, "check", "< a, b | a^2 b = b a^3 >", "--max-cosets", "500"
        )
        assert code == 2
        assert "error:" in err

    def test_bs_with_rel(self, capsys):
        code, out, _ = run_cli(
            capsys, "check", "bs:1:3", "--rel", "a^4=1, b^2=1"
        )
        assert code == 0
        assert "square commutative: yes" in out


class TestEnumerate:
    def test_cyclic_seven(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate", "< a | a^7 = 1 >")
        assert code == 0
        assert out.splitlines()[0] == "order 7"

    def test_order12(self, capsys):
        code, out, _ = run_cli(
            capsys, "enumerate", "< a, b | a^4 = b^3 = 1, b a = a b^2, b a^2 = a^2 b >"
        )
        assert code == 0
        assert out.splitlines()[0] == "order 12"

    def test_infinite_exit_three(self, capsys):
        code, _, err = run_cli(
            capsys, "enumerate", "< a, b | a^2 b = b a^3 >", "--max-cosets", "1000"
        )
        assert code == 3
        assert "error:" in err

    def test_parse_error_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "enumerate", "< a | a^^2 >")
        assert code == 2

    def test_dump_golden(self, capsys, tmp_path):
        path = tmp_path / "c3.cayley"
        code, out, _ = run_cli(
            capsys, "enumerate", "< a | a^3 = 1 >", "--dump", str(path)
        )
        assert code == 0
        assert out.splitlines()[0] == "order 3"
        assert path.read_text(encoding="utf-8") == (
            "cayley v1 3\n"
            "e a a^2\n"
            "0 1 2\n"
            "1 2 0\n"
            "2 0 1\n"
            "generators: a\n"
        )


class TestCayleyDumpFormat:
    def test_format_without_generators(self):
        G = cyclic(2)
        from sqcgroups.core import build_group

        bare = build_group([[0, 1], [1, 0]], ["e", "g"])
        text = format_cayley_table(bare)
        assert text == "cayley v1 2\ne g\n0 1\n1 0\n"

    def test_row_column_convention(self):
        # Entry at row x, column y must be x*y.
        from sqcgroups.catalog import dihedral

        G = dihedral(3).group
        lines = format_cayley_table(G).splitlines()
        body = [list(map(int, ln.split())) for ln in lines[2 : 2 + G.order]]
        for x in G.elements():
            for y in G.elements():
                assert body[x][y] == G.mul(x, y)


class TestCatalog:
    def test_under_12(self, capsys):
        code, out, _ = run_cli(capsys, "catalog", "--under", "12")
        assert code == 0
        rows = out.strip().splitlines()[1:]
        assert len(rows) == 19
        noes = [r.split()[0] for r in rows if r.rstrip().endswith(" no")]
        assert sorted(noes) == ["D10", "D6"]

    def test_under_filters(self, capsys):
        code, out, _ = run_cli(capsys, "catalog", "--under", "7")
        rows = out.strip().splitlines()[1:]
        assert [r.split()[0] for r in rows] == ["C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "D6"]

    def test_under_caps_at_12(self, capsys):
        code, _, err = run_cli(capsys, "catalog", "--under", "13")
        assert code == 2
        assert "error:" in err

    def test_dihedral_range(self, capsys):
        code, out, _ = run_cli(capsys, "catalog", "dihedral", "--n", "1..8")
        assert code == 0
        rows = out.strip().splitlines()[1:]
        assert len(rows) == 8
        verdicts = {r.split()[0]: r.split()[-1] for r in rows}
        assert {k for k, v in verdicts.items() if v == "yes"} == {"D2", "D4", "D8"}

    def test_q8_single_row(self, capsys):
        code, out, _ = run_cli(capsys, "catalog", "q8")
        rows = out.strip().splitlines()[1:]
        assert len(rows) == 1
        assert rows[0].split() == ["Q8", "8", "2", "2", "yes"]

    def test_param_spec_row(self, capsys):
        code, out, _ = run_cli(capsys, "catalog", "metacyclic:4:2:3")
        rows = out.strip().splitlines()[1:]
        assert rows[0].split() == ["M(4,2,3)", "8", "2", "2", "yes"]

    def test_missing_family_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "catalog")
        assert code == 2


class TestVerifyPaper:
    def test_all_suites_pass(self, capsys):
        code, out, _ = run_cli(capsys, "verify-paper")
        assert code == 0
        lines = out.strip().splitlines()
        assert all(ln.startswith("PASS") for ln in lines[:-1])
        assert "all " in lines[-1] and "suites passed" in lines[-1]
        assert not any(ln.startswith("FAIL") for ln in lines)


class TestEntryPoints:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "sqcgroups", "check", "dihedral:4"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "square commutative: yes" in proc.stdout

    def test_usage_error_exit_two(self, capsys):
        code = main(["no-such-command"])
        capsys.readouterr()
        assert code == 2
