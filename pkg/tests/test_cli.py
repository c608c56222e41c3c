"""Command line round trips over the shipped fixture files."""

import json
import pathlib
import subprocess
import sys

import pytest

from mvtk.cli import main

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def fx(name):
    return str(FIXTURES / name)


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


class TestCheckAxioms:
    def test_symbolic_block(self, capsys):
        code, doc = run(capsys, "check-axioms", fx("chang.json"))
        assert code == 0
        assert doc["algebra"] == "Komori(1,1)"
        assert doc["axioms"]["ok"] and doc["derived"]["ok"]

    def test_finite_table(self, capsys):
        code, doc = run(capsys, "check-axioms", fx("finite_c2.json"))
        assert code == 0
        assert doc["axioms"]["mode"] == "exhaustive"

    def test_exhaustive_flag(self, capsys):
        code, doc = run(capsys, "check-axioms", fx("chain4.json"),
                        "--mode", "exhaustive")
        assert code == 0
        assert doc["axioms"]["mode"] == "exhaustive"
        by_name = {r["name"]: r["checked"]
                   for r in doc["axioms"]["results"]}
        assert by_name["add_assoc"] == 125
        assert by_name["lukasiewicz"] == 25
        assert by_name["neg_involution"] == 5


class TestRadical:
    def test_finite_chain_is_semisimple(self, capsys):
        code, doc = run(capsys, "radical", fx("chain4.json"),
                        "--expect", "semisimple")
        assert code == 0
        assert doc["semisimple"] and doc["methods_agree"]

    def test_chang_is_perfect_not_semisimple(self, capsys):
        code, doc = run(capsys, "radical", fx("chang.json"),
                        "--expect", "perfect")
        assert code == 0
        assert doc["perfect"] and not doc["semisimple"]
        assert doc["radical"]["markers"] == [{"sub": [1]}]

    def test_failed_expectation_sets_exit_code(self, capsys):
        code, _ = run(capsys, "radical", fx("chang.json"),
                      "--expect", "semisimple")
        assert code == 1


class TestIdealsAndHoms:
    def test_ideal_count_of_the_mixed_product(self, capsys):
        code, doc = run(capsys, "ideals", fx("product.json"))
        assert code == 0
        assert doc["count"] == 6
        assert len(doc["ideals"]) == 6

    def test_hom_tables(self, capsys):
        code, doc = run(capsys, "homs", fx("homs_pair.json"))
        assert code == 0
        assert doc["count"] == 1
        assert doc["tables"] == [[0, 2]]


class TestClassify:
    def test_trivial_covering(self, capsys):
        code, doc = run(capsys, "classify", fx("quotient_map.json"))
        assert code == 0
        assert doc["trivial"] and doc["central"] and doc["surjective"]

    def test_radical_projection_is_not_central(self, capsys):
        code, doc = run(capsys, "classify", fx("eta_chang.json"))
        assert code == 0
        assert not doc["trivial"] and not doc["central"]
        assert doc["kernel"]["markers"] == [{"sub": [1]}]

    def test_expectation_mismatch(self, capsys):
        code, _ = run(capsys, "classify", fx("eta_chang.json"),
                      "--expect", "central")
        assert code == 1
        code2, _ = run(capsys, "classify", fx("eta_chang.json"),
                       "--expect", "not-central")
        assert code2 == 0


class TestFactorizeAndPretorsion:
    def test_split_of_the_drop_chain_quotient(self, capsys):
        code, doc = run(capsys, "factorize", fx("quotient_map.json"))
        assert code == 0
        assert doc["middle"] == "Komori(1,1) x Chain(2)"
        assert doc["theta"]["markers"] == [{"sub": []}, "zero"]

    def test_pretorsion_summary(self, capsys):
        code, doc = run(capsys, "pretorsion", fx("product.json"))
        assert code == 0
        assert doc["perfect_part"] == "Komori(1,1)"
        assert doc["semisimple_quotient"] == "Chain(2) x Chain(2)"
        assert doc["prekernel"]["ok"] and doc["precokernel"]["ok"]
        assert (doc["prekernel"]["checked"],
                doc["prekernel"]["skipped"]) == (3, 5)


class TestSquaresAndCommutators:
    def test_square_is_centrally_classified(self, capsys):
        code, doc = run(capsys, "square-classify", fx("square.json"))
        assert code == 0
        assert doc["regular_pushout"] and doc["central"]
        assert doc["kernel_meet"] == [["sub", []], "zero"]

    def test_square_expectation(self, capsys):
        code, _ = run(capsys, "square-classify", fx("square.json"),
                      "--expect", "not-central")
        assert code == 1

    def test_commutator_of_crossed_radicals(self, capsys):
        code, doc = run(capsys, "commutator", fx("commutator.json"))
        assert code == 0
        assert doc["in_center"] and doc["double_central"]
        assert doc["base"] == "Komori(1,2)"
        assert doc["style"] == "proper_join"


class TestTermsAndGamma:
    def test_term_identities_on_a_chain(self, capsys):
        code, doc = run(capsys, "terms", fx("chain4.json"))
        assert code == 0
        assert doc["protomodularity"]["ok"] and doc["pixley"]["ok"]
        assert doc["pixley"]["results"][0]["checked"] == 125

    def test_gamma_round_trip(self, capsys):
        code, doc = run(capsys, "gamma", fx("group.json"))
        assert code == 0
        assert doc["interval_describe"] == "Komori(1,1)"
        assert doc["laws"]["ok"] and doc["ops_agree"]["ok"]

    def test_bad_order_unit_fails(self, capsys):
        code, doc = run(capsys, "gamma", fx("bad_unit_group.json"))
        assert code == 1
        assert not doc["order_unit"]["ok"]
        assert doc["order_unit"]["witness"] == [[1, 0]]


class TestCatalogAndPlumbing:
    def test_catalog_size_bound(self, capsys):
        code, doc = run(capsys, "catalog", "--max-size", "6")
        assert code == 0
        assert doc["count"] == 8
        assert doc["algebras"][0]["size"] == 1

    def test_missing_file_is_a_usage_error(self, capsys):
        code = main(["check-axioms", fx("no_such_file.json")])
        err = capsys.readouterr().err
        assert code == 2
        assert err.startswith("error:")

    def test_malformed_json_is_a_usage_error(self, tmp_path, capsys):
        p = tmp_path / "broken.json"
        p.write_text("{not json")
        assert main(["check-axioms", str(p)]) == 2

    def test_output_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["radical", fx("chain4.json"), "-o", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["semisimple"]

    def test_seeded_runs_are_byte_identical(self, capsys):
        first = main(["check-axioms", fx("chang.json"), "--seed", "5"])
        out1 = capsys.readouterr().out
        second = main(["check-axioms", fx("chang.json"), "--seed", "5"])
        out2 = capsys.readouterr().out
        assert first == second == 0
        assert out1 == out2

    def test_console_script_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "mvtk.cli", "catalog", "--max-size", "3"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["count"] == 3
