"""End-to-end tests of the command-line front end."""

import json
from fractions import Fraction

import pytest

from lnz import (
    GradedChange2,
    SecondTypeParams,
    StructureTensor,
    apply_change,
    build_second_type,
    completed_second_type_change,
    parse,
    serialize,
    serialize_change,
)
from lnz.cli import main


@pytest.fixture
def chain_doc(tmp_path):
    algebra = build_second_type(9, SecondTypeParams(0, (0, 0, 0, 0), 0))
    path = tmp_path / "chain.json"
    path.write_text(serialize(algebra))
    return path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----------------------------------------------------------------------
# usage errors


def test_no_subcommand(capsys):
    code, _, err = run(capsys, )
    assert code == 64
    assert "subcommand is required" in err


def test_unknown_subcommand(capsys):
    code, _, err = run(capsys, "bogus")
    assert code == 64


def test_missing_input_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "absent.json"))
    assert code == 64
    assert "cannot read" in err


# ----------------------------------------------------------------------
# check


def test_check_passes_on_catalog_document(capsys, chain_doc):
    code, out, _ = run(capsys, "check", str(chain_doc))
    assert code == 0
    assert out.startswith("ok: identity holds on all 9^3")


def test_check_reports_violations(capsys, tmp_path):
    algebra = build_second_type(9, SecondTypeParams(0, (0, 0, 0, 0), 0))
    table = dict(algebra.table)
    table[(1, 4)] = ((2, Fraction(1)),)
    bad = tmp_path / "bad.json"
    bad.write_text(serialize(StructureTensor(9, table)))
    code, out, err = run(capsys, "check", str(bad))
    assert code == 1
    assert "violating triples" in err
    first = out.splitlines()[0]
    assert first.startswith("(") and "):" in first and "e_" in first


def test_check_rejects_malformed_document(capsys, tmp_path):
    doc = tmp_path / "broken.json"
    doc.write_text("{ not json")
    code, _, err = run(capsys, "check", str(doc))
    assert code == 65
    assert "malformed document" in err


# ----------------------------------------------------------------------
# analyze


def test_analyze_full_output(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "--type", "2", "--family", "0,2",
                       "--dim", "9", "--params", "1",
                       "-o", str(tmp_path / "a.json"))
    assert code == 0
    code, out, _ = run(capsys, "analyze", str(tmp_path / "a.json"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "name: l(0,2)[lambda=1] n=9"
    assert lines[1] == "dim: 9"
    assert lines[2] == "central series dims: 9 7 5 3 2 1 0"
    assert lines[3] == "nilindex: 7"
    assert lines[4] == "gradation dims: 2 2 2 1 1 1"
    assert lines[5] == "characteristic sequence (sampled): (6, 3)"
    assert lines[6] == "right annihilator dim: 3"
    assert set(lines[7:]) == {"  e_2", "  e_3", "  e_9"}


def test_analyze_non_nilpotent(capsys, tmp_path):
    doc = tmp_path / "x.json"
    doc.write_text(serialize(StructureTensor(3, {(1, 1): ((1, Fraction(1)),)})))
    code, out, _ = run(capsys, "analyze", str(doc))
    assert code == 0
    assert "nilindex: none" in out


def test_analyze_seed_env(capsys, chain_doc, monkeypatch):
    monkeypatch.setenv("LNZ_SEED", "5")
    code, _, _ = run(capsys, "analyze", str(chain_doc), "--budget", "5")
    assert code == 0
    monkeypatch.setenv("LNZ_SEED", "weird")
    code, _, err = run(capsys, "analyze", str(chain_doc), "--budget", "5")
    assert code == 64
    assert "LNZ_SEED" in err


# ----------------------------------------------------------------------
# catalog


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "--list")
    assert code == 0
    assert len(json.loads(out)["rows"]) == 52


def test_catalog_builds_document(capsys):
    code, out, _ = run(capsys, "catalog", "--type", "2", "--family", "0,3",
                       "--dim", "9", "--params", "2")
    assert code == 0
    algebra = parse(out)
    assert algebra.name == "l(0,3)[lambda=2] n=9"
    assert algebra.coefficient(2, 4, 3) == 0
    assert algebra.coefficient(5, 4, 3) == 2


def test_catalog_missing_flags(capsys):
    code, _, err = run(capsys, "catalog", "--type", "2")
    assert code == 64
    assert "catalog needs" in err and "--family" in err and "--dim" in err


def test_catalog_unknown_family(capsys):
    code, _, err = run(capsys, "catalog", "--type", "2", "--family", "8,8",
                       "--dim", "9")
    assert code == 2
    assert "no catalog family" in err


def test_catalog_ambiguous_label(capsys):
    code, _, err = run(capsys, "catalog", "--type", "2", "--family", "0,6",
                       "--dim", "9", "--params", "1")
    assert code == 64
    assert "0,6a" in err and "0,6b" in err


def test_catalog_bare_label_with_epsilon(capsys):
    code, out, _ = run(capsys, "catalog", "--type", "2", "--family", "2",
                       "--epsilon", "1", "--dim", "10", "--params", "1")
    assert code == 0
    assert parse(out).name == "l(1,2)[lambda=1] n=10"


def test_catalog_epsilon_crosscheck(capsys):
    code, _, err = run(capsys, "catalog", "--type", "2", "--family", "0,2",
                       "--epsilon", "1", "--dim", "9", "--params", "0")
    assert code == 2
    assert "has epsilon 0" in err


def test_catalog_beta_crosscheck(capsys):
    code, _, err = run(capsys, "catalog", "--type", "2", "--family", "0,1",
                       "--dim", "9", "--beta", "-1")
    assert code == 2
    assert "has beta 0" in err


def test_catalog_inadmissible_parameter(capsys):
    code, _, err = run(capsys, "catalog", "--type", "2", "--family", "0,2",
                       "--dim", "9", "--params", "7")
    assert code == 2
    assert "must lie in" in err


def test_catalog_parity_check(capsys):
    code, _, err = run(capsys, "catalog", "--type", "2", "--family", "1,2",
                       "--dim", "9", "--params", "0")
    assert code == 2
    assert "even dimension" in err


def test_catalog_first_type(capsys):
    code, out, _ = run(capsys, "catalog", "--type", "1", "--family", "34",
                       "--dim", "9", "--params", "2")
    assert code == 0
    algebra = parse(out)
    assert algebra.coefficient(1, 7, 8) == 2


# ----------------------------------------------------------------------
# transform


def test_transform_applies_change(capsys, tmp_path):
    algebra = build_second_type(9, SecondTypeParams(0, (1, 0, 0, 1), -1))
    doc = tmp_path / "alg.json"
    doc.write_text(serialize(algebra))
    g = GradedChange2(Fraction(1), Fraction(0), Fraction(2))
    change = completed_second_type_change(algebra, g)
    change_doc = tmp_path / "change.json"
    change_doc.write_text(serialize_change(change))
    out_doc = tmp_path / "moved.json"
    code, _, _ = run(capsys, "transform", str(doc), "--change",
                     str(change_doc), "-o", str(out_doc))
    assert code == 0
    moved = parse(out_doc.read_text())
    assert moved.table == apply_change(algebra, change).table


def test_transform_singular_change(capsys, tmp_path, chain_doc):
    change_doc = tmp_path / "sing.json"
    change_doc.write_text(
        '{"dim": 9, "matrix": ' +
        json.dumps([["0"] * 9 for _ in range(9)]) + "}")
    code, _, err = run(capsys, "transform", str(chain_doc), "--change",
                       str(change_doc))
    assert code == 2
    assert "singular" in err


def test_transform_malformed_change(capsys, tmp_path, chain_doc):
    change_doc = tmp_path / "bad.json"
    change_doc.write_text("nope")
    code, _, err = run(capsys, "transform", str(chain_doc), "--change",
                       str(change_doc))
    assert code == 65


# ----------------------------------------------------------------------
# equiv


def test_equiv_equivalent_pair(capsys):
    code, out, _ = run(capsys, "equiv", "--epsilon", "0", "--dim", "9",
                       "--p", "1,0,0,1", "--q", "2,0,0,4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "Equivalent"
    assert lines[1] == "witness: A1 = 1, A4 = 0, B4 = 2"


def test_equiv_distinct_pair(capsys):
    code, out, _ = run(capsys, "equiv", "--epsilon", "0", "--dim", "9",
                       "--p", "1,0,0,0", "--q", "1,0,0,1")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "Distinct"
    assert lines[1] == "invariant: alpha1*alpha2-2*alpha4"


def test_equiv_unknown_pair(capsys):
    code, out, _ = run(capsys, "equiv", "--epsilon", "0", "--dim", "9",
                       "--p", "0,0,-1,0", "--q", "0,0,-2,0")
    assert code == 3
    assert out.splitlines()[0] == "Unknown"
    assert "no rational witness" in out


def test_equiv_epsilon_one_pins_b4(capsys):
    code, out, _ = run(capsys, "equiv", "--epsilon", "1", "--dim", "10",
                       "--p", "0,0,0,1", "--q", "0,0,0,1/4")
    assert code == 0
    assert "(B4 pinned to A1-A4 = " in out


def test_equiv_dimension_and_parity_guards(capsys):
    code, _, err = run(capsys, "equiv", "--epsilon", "0", "--dim", "8",
                       "--p", "0,0,0,0", "--q", "0,0,0,0")
    assert code == 2
    assert "n >= 9" in err
    code, _, err = run(capsys, "equiv", "--epsilon", "1", "--dim", "9",
                       "--p", "0,0,0,0", "--q", "0,0,0,0")
    assert code == 2
    assert "even dimension" in err


def test_equiv_rejects_bad_tuples(capsys):
    code, _, err = run(capsys, "equiv", "--epsilon", "0", "--dim", "9",
                       "--p", "1,2,3", "--q", "0,0,0,0")
    assert code == 64
    code, _, err = run(capsys, "equiv", "--epsilon", "0", "--dim", "9",
                       "--p", "1,0.5,0,0", "--q", "0,0,0,0")
    assert code == 64
    assert "--p" in err


def test_equiv_explicit_beta(capsys):
    code, out, _ = run(capsys, "equiv", "--epsilon", "0", "--dim", "9",
                       "--p", "0,0,0,0,0", "--q", "0,0,0,0,0")
    assert code == 0
    assert out.splitlines()[0] == "Equivalent"


# ----------------------------------------------------------------------
# verify-all argument handling (the full run lives in the acceptance tests)


def test_verify_all_rejects_small_dims(capsys):
    code, _, err = run(capsys, "verify-all", "--dims", "8")
    assert code == 2
    assert "n >= 9" in err


def test_verify_all_rejects_bad_dims_list(capsys):
    code, _, err = run(capsys, "verify-all", "--dims", "nine")
    assert code == 64
