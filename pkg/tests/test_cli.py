import json

import numpy as np
import pytest

from fusionrules import named_fixture, parse_rule, pointed, su2k
from fusionrules.cli import main
from fusionrules.groups import builtin_group
from fusionrules.io import dump_group, dump_rule, parse_group


@pytest.fixture()
def ising_path(tmp_path):
    path = tmp_path / "ising.rule"
    path.write_text(dump_rule(named_fixture("ising")), encoding="utf-8")
    return str(path)


class TestValidateCommand:
    def test_valid_exit_zero(self, ising_path, capsys):
        assert main(["validate", ising_path]) == 0
        assert "valid" in capsys.readouterr().out

    def test_axiom_violation_exit_one(self, tmp_path, capsys):
        doc = {"rank": 2, "dual": [0, 1],
               "fusion": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 2]]}
        path = tmp_path / "bad.rule"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["validate", str(path)]) == 1
        assert "vacuum_multiplicity" in capsys.readouterr().out

    def test_duplicate_record_exit_two(self, tmp_path, capsys):
        doc = {"rank": 1, "dual": [0], "fusion": [[0, 0, 0, 1], [0, 0, 0, 1]]}
        path = tmp_path / "dup.rule"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["validate", str(path)]) == 2
        assert "duplicate" in capsys.readouterr().err

    def test_parse_error_exit_two(self, tmp_path):
        path = tmp_path / "nj.rule"
        path.write_text("not json", encoding="utf-8")
        assert main(["validate", str(path)]) == 2

    def test_missing_file_exit_two(self, tmp_path):
        assert main(["validate", str(tmp_path / "nope.rule")]) == 2

    def test_json_output(self, ising_path, capsys):
        assert main(["validate", ising_path, "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert set(doc) == {"valid", "violations"}
        assert doc["valid"] is True


class TestAnalyzeCommand:
    def test_so8_2(self, tmp_path, capsys):
        path = tmp_path / "so8.rule"
        path.write_text(dump_rule(named_fixture("so8_2")), encoding="utf-8")
        assert main(["analyze", str(path)]) == 0
        out = capsys.readouterr().out
        assert "rank: 11" in out
        assert "acyclic: yes" in out
        assert "global dim: 32" in out
        assert "agree" in out

    def test_fibonacci_witness(self, tmp_path, capsys):
        path = tmp_path / "fib.rule"
        path.write_text(dump_rule(named_fixture("fibonacci")), encoding="utf-8")
        assert main(["analyze", str(path)]) == 0
        out = capsys.readouterr().out
        assert "acyclic: no" in out
        assert "tau -> tau" in out
        assert "nilpotent: no" in out

    def test_pointed_dims(self, tmp_path, capsys):
        path = tmp_path / "z2.rule"
        path.write_text(dump_rule(pointed(builtin_group("z2"))), encoding="utf-8")
        assert main(["analyze", str(path)]) == 0
        out = capsys.readouterr().out
        assert "class 1" in out
        assert "integral: yes" in out

    def test_invalid_rule_exit_one(self, tmp_path, capsys):
        doc = {"rank": 2, "dual": [0, 1],
               "fusion": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 2]]}
        path = tmp_path / "bad.rule"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["analyze", str(path)]) == 1

    def test_json_keys_stable(self, ising_path, capsys):
        assert main(["analyze", ising_path, "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert set(doc) == {
            "rank", "labels", "acyclic", "cycle_witness", "nilpotent",
            "nilpotency_class", "central_series", "fp_dims", "global_dim",
            "is_integral", "is_weakly_integral", "theorem_agree",
        }
        assert doc["theorem_agree"] is True


class TestGraphCommand:
    def test_ising_dot(self, ising_path, capsys):
        assert main(["graph", ising_path]) == 0
        out = capsys.readouterr().out
        assert out.startswith("digraph adjoint {")
        assert 'n1 [label="sigma"];' in out
        assert 'n1 -> n0 [label="1"];' in out
        assert 'n1 -> n2 [label="1"];' in out
        assert 'n2 -> n0 [label="1"];' in out

    def test_trivial_dot(self, tmp_path, capsys):
        path = tmp_path / "trivial.rule"
        path.write_text(dump_rule(named_fixture("trivial")), encoding="utf-8")
        assert main(["graph", str(path)]) == 0
        out = capsys.readouterr().out
        assert out.count("->") == 0
        assert out.count("label=") == 1

    def test_byte_identical_and_to_file(self, ising_path, tmp_path, capsys):
        assert main(["graph", ising_path]) == 0
        first = capsys.readouterr().out
        assert main(["graph", ising_path]) == 0
        second = capsys.readouterr().out
        assert first == second
        out_file = tmp_path / "g.dot"
        assert main(["graph", ising_path, "--dot", str(out_file)]) == 0
        assert out_file.read_text(encoding="utf-8") == first

    def test_unwritable_output_exit_two(self, ising_path, tmp_path):
        target = tmp_path / "missing-dir" / "g.dot"
        assert main(["graph", ising_path, "--dot", str(target)]) == 2


class TestGenCommand:
    def test_su2k_roundtrips_through_validate(self, tmp_path, capsys):
        out = tmp_path / "su24.rule"
        assert main(["gen", "su2k", "4", "--out", str(out)]) == 0
        assert main(["validate", str(out)]) == 0
        capsys.readouterr()
        parsed = parse_rule(out.read_text(encoding="utf-8"))
        assert parsed == su2k(4)

    def test_fixture(self, tmp_path):
        out = tmp_path / "f.rule"
        assert main(["gen", "fixture", "so8_2", "--out", str(out)]) == 0
        assert parse_rule(out.read_text(encoding="utf-8")).rank == 11

    def test_double_from_builtin_and_from_file(self, tmp_path):
        out1 = tmp_path / "dd1.rule"
        assert main(["gen", "double", "--group", "s3", "--out", str(out1)]) == 0
        group_file = tmp_path / "s3.group"
        group_file.write_text(dump_group(builtin_group("s3")), encoding="utf-8")
        out2 = tmp_path / "dd2.rule"
        assert main(["gen", "double", "--group", str(group_file), "--out", str(out2)]) == 0
        a = parse_rule(out1.read_text(encoding="utf-8"))
        b = parse_rule(out2.read_text(encoding="utf-8"))
        assert np.array_equal(a.tensor, b.tensor)

    def test_pointed(self, tmp_path):
        out = tmp_path / "z6.rule"
        assert main(["gen", "pointed", "--group", "z6", "--out", str(out)]) == 0
        assert parse_rule(out.read_text(encoding="utf-8")).is_pointed

    def test_product(self, tmp_path, ising_path):
        out = tmp_path / "p.rule"
        assert main(["gen", "product", ising_path, ising_path, "--out", str(out)]) == 0
        assert parse_rule(out.read_text(encoding="utf-8")).rank == 9

    def test_unknown_fixture_exit_two(self, capsys):
        assert main(["gen", "fixture", "nosuch"]) == 2
        assert "available" in capsys.readouterr().err

    def test_missing_group_exit_two(self):
        assert main(["gen", "double"]) == 2

    def test_bad_level_exit_two(self, capsys):
        assert main(["gen", "su2k", "abc"]) == 2
        assert main(["gen", "su2k", "0"]) == 2
        capsys.readouterr()

    def test_pointed_group_roundtrip(self, tmp_path):
        group_file = tmp_path / "q8.group"
        group_file.write_text(dump_group(builtin_group("q8")), encoding="utf-8")
        g = parse_group(group_file.read_text(encoding="utf-8"))
        assert g.order == 8
        assert np.array_equal(g.table, builtin_group("q8").table)


class TestRoundTrip:
    def test_corpus_round_trips(self, corpus):
        for name, rule in corpus.items():
            if rule.rank > 30:
                continue
            assert parse_rule(dump_rule(rule)) == rule, name

    def test_enumerated_rules_round_trip(self):
        from fusionrules import EnumSpec, enumerate_rules

        for rule in enumerate_rules(EnumSpec(rank=3, max_mult=2)):
            assert parse_rule(dump_rule(rule)) == rule

    def test_labels_optional_in_files(self):
        import json as _json

        doc = {"rank": 2, "dual": [0, 1],
               "fusion": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]]}
        rule = parse_rule(_json.dumps(doc))
        assert rule.labels == ("1", "x1")


class TestEnumerateCommand:
    def test_stream_rank_one(self, capsys):
        assert main(["enumerate", "--rank", "1"]) == 0
        out = capsys.readouterr().out
        assert parse_rule(out).rank == 1

    def test_stream_parses_back(self, capsys):
        assert main(["enumerate", "--rank", "2", "--max-mult", "2"]) == 0
        blocks = capsys.readouterr().out.strip().split("\n\n")
        assert len(blocks) == 3
        for block in blocks:
            parse_rule(block)

    def test_survey(self, capsys):
        assert main(["enumerate", "--rank", "2", "--max-mult", "2", "--survey"]) == 0
        out = capsys.readouterr().out
        assert "total: 3" in out
        assert "disagreements: 0" in out

    def test_survey_json(self, capsys):
        assert main(["enumerate", "--rank", "3", "--max-mult", "1", "--survey", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert set(doc) == {
            "total", "acyclic_count", "nilpotent_count", "disagreements",
            "weak_integrality_failures", "class_histogram",
        }
        assert doc["total"] == 7
        assert doc["disagreements"] == []

    def test_bare_axioms_reports_both_counts(self, capsys):
        assert main(["enumerate", "--rank", "3", "--max-mult", "1", "--survey",
                     "--bare-axioms"]) == 0
        out = capsys.readouterr().out
        assert "bare axioms): 9" in out
        assert "channel imposed): 7" in out

    def test_out_of_bounds_exit_two(self):
        assert main(["enumerate", "--rank", "9", "--survey"]) == 2
