"""Catalog rows, normal-form builders, and enumeration."""

import json
from fractions import Fraction

import pytest

from lnz import (
    CATALOG_ROWS,
    DEFAULT_FREE_SAMPLES,
    DimensionTooSmall,
    FirstTypeParams,
    InadmissibleParams,
    ParityViolation,
    SecondTypeParams,
    UnknownFamily,
    binomial_product_check,
    build_construction_stage,
    build_first_type,
    build_second_type,
    build_type1_branch_a,
    build_type1_branch_b,
    catalog_index_document,
    enumerate_catalog,
    find_second_type_row,
    leibniz_residual,
    row_by_id,
    rows_by_label,
    validate_params,
)


def cell(algebra, i, j):
    return dict(algebra.table.get((i, j), ()))


# ----------------------------------------------------------------------
# second-type normal form


def test_second_type_products():
    algebra = build_second_type(10, SecondTypeParams(1, (0, 0, 0, 1), -1))
    # chain against e_1, with the single gap at i = 3
    assert cell(algebra, 8, 1) == {9: 1}
    assert cell(algebra, 3, 1) == {}
    # alpha and beta columns
    assert cell(algebra, 5, 4) == {3: 1}
    assert cell(algebra, 1, 4) == {5: -1}
    assert cell(algebra, 1, 7) == {8: -1}
    # alternating tail: [e_i, e_{n+3-i}] lands on e_n with sign (-1)^i
    assert cell(algebra, 4, 9) == {10: 1}
    assert cell(algebra, 5, 8) == {10: -1}
    assert cell(algebra, 9, 4) == {10: -1}


def test_second_type_rejects_odd_dim_with_tail():
    with pytest.raises(ParityViolation):
        build_second_type(9, SecondTypeParams(1, (0, 0, 0, 0), -1))


def test_second_type_rejects_small_dim():
    with pytest.raises(DimensionTooSmall):
        build_second_type(8, SecondTypeParams(0, (0, 0, 0, 0), 0))


def test_beta_zero_forces_zero_alphas():
    with pytest.raises(InadmissibleParams):
        build_second_type(9, SecondTypeParams(0, (1, 0, 0, 0), 0))


def test_strict_mode_requires_a_row():
    params = SecondTypeParams(0, (1, 1, 1, 1), -1)
    assert find_second_type_row(params) is None
    with pytest.raises(InadmissibleParams):
        build_second_type(9, params, strict=True)
    # without strict the same table is built and is still Leibniz-closed
    loose = build_second_type(9, params)
    assert leibniz_residual(loose).violations == ()


def test_find_row_round_trips_all_samples():
    for row in CATALOG_ROWS:
        if row.kind != "second":
            continue
        for values in row.sample_grid(DEFAULT_FREE_SAMPLES):
            params = row.make_params(values)
            hit = find_second_type_row(params)
            assert hit is not None, (row.row_id, values)
            found_row, found_values = hit
            assert found_row.slot_values(found_values) == params.alphas
            assert found_row.epsilon == row.epsilon
            assert found_row.beta == row.beta


def test_find_row_specific_ids():
    assert find_second_type_row(
        SecondTypeParams(0, (0, 0, 0, 0), 0))[0].row_id == "0,1"
    assert find_second_type_row(
        SecondTypeParams(0, (2, 1, 1, 1), -1))[0].row_id == "0,10c"
    assert find_second_type_row(
        SecondTypeParams(1, (3, 1, Fraction(9, 4), 5), -1))[0].row_id == "1,11"


# ----------------------------------------------------------------------
# first-type branches


def test_branch_a_products():
    algebra = build_first_type(9, FirstTypeParams(34, (0, 2, 0)))
    assert cell(algebra, 6, 1) == {}          # chain gap sits at n-3
    assert cell(algebra, 5, 1) == {6: 1}
    assert cell(algebra, 1, 7) == {8: 2}
    assert cell(algebra, 2, 7) == {9: 2}
    assert cell(algebra, 7, 7) == {}          # beta2 = 0 here
    moved = build_type1_branch_a(9, 0, 2, 0)
    assert moved.table == algebra.table


def test_branch_b_products():
    algebra = build_first_type(9, FirstTypeParams(39, (0, 1, -1)))
    # printed subscript order is (alpha1, b2, a2)
    assert cell(algebra, 1, 7) == {8: -1}
    assert cell(algebra, 2, 7) == {9: -(1 + Fraction(-1))} or \
        cell(algebra, 2, 7) == {}
    assert cell(algebra, 1, 8) == {9: -1}
    assert cell(algebra, 7, 8) == {9: 1}
    assert cell(algebra, 8, 7) == {9: -1}
    moved = build_type1_branch_b(9, 0, -1, 1)
    assert moved.table == algebra.table


def test_first_type_rejects_bad_subscripts():
    with pytest.raises(InadmissibleParams, match="family 36"):
        build_first_type(9, FirstTypeParams(36, (1, 5, 0)))
    with pytest.raises(InadmissibleParams, match="does not match"):
        build_first_type(9, FirstTypeParams(36, (2, 0, 0)))
    with pytest.raises(UnknownFamily):
        FirstTypeParams(42, (0, 0, 0))
    with pytest.raises(InadmissibleParams):
        FirstTypeParams(34, (1, 2))
    with pytest.raises(DimensionTooSmall):
        build_first_type(8, FirstTypeParams(34, (0, 0, 0)))


def test_first_type_is_leibniz_at_all_samples():
    for fam in (34, 35, 36, 37, 38, 39, 40, 41):
        row = row_by_id(str(fam))
        for values in row.sample_grid((Fraction(1, 2),)):
            params = row.make_params(values)
            algebra = build_first_type(9, params)
            assert leibniz_residual(algebra).violations == (), (fam, values)


# ----------------------------------------------------------------------
# row lookup and validation


def test_row_lookup():
    assert row_by_id("0,6a").family_label == "0,6"
    assert {r.row_id for r in rows_by_label("0,6")} == {"0,6a", "0,6b"}
    assert len(rows_by_label("0,10")) == 4
    with pytest.raises(UnknownFamily):
        row_by_id("nope")
    with pytest.raises(UnknownFamily):
        rows_by_label("nope")


def test_validate_params_reports():
    bad = validate_params("0,8", [7])
    assert not bad
    assert "{-2, -4/3}" in bad.problems[0]
    assert validate_params("0,2", [1])
    parity = validate_params("1,2", [0], n=9)
    assert not parity and "even dimension" in parity.problems[0]
    unknown = validate_params("zz", [])
    assert not unknown and "zz" in unknown.problems[0]
    wrong_count = validate_params("0,1", [3])
    assert not wrong_count


# ----------------------------------------------------------------------
# enumeration and index


def test_enumeration_counts_and_parity():
    instances = list(enumerate_catalog((9, 10)))
    assert len(instances) == 439
    assert len(instances) >= 150
    labels = [inst.label() for inst in instances]
    assert len(set(labels)) == len(labels)
    for inst in instances:
        if inst.n % 2:
            assert inst.row.parity == "any"
            if inst.row.kind == "second":
                assert inst.row.epsilon == 0


def test_enumeration_respects_sample_choice():
    small = list(enumerate_catalog((9,), free_param_samples=(1,)))
    # finite rows keep their full sets, free rows collapse to one sample
    by_row = {}
    for inst in small:
        by_row.setdefault(inst.row.row_id, []).append(inst.values)
    assert by_row["0,2"] == [(0,), (1,)]
    assert by_row["0,3"] == [(1,)]
    assert "1,2" not in by_row
    with pytest.raises(InadmissibleParams):
        list(enumerate_catalog((9,), free_param_samples=()))


def test_instance_labels():
    inst = next(iter(enumerate_catalog((9,))))
    assert inst.label() == "l(0,1) n=9"
    assert inst.tensor.name == "l(0,1) n=9"


def test_index_document():
    doc = json.loads(catalog_index_document())
    assert len(doc["rows"]) == 52
    by_id = {r["row_id"]: r for r in doc["rows"]}
    row = by_id["0,2"]
    assert row["kind"] == "second"
    assert row["epsilon"] == 0
    assert row["beta"] == "-1"
    assert row["params"] == [{"name": "lambda", "finite": ["0", "1"]}]
    first = by_id["34"]
    assert first["kind"] == "first"
    assert first["family_id"] == 34
    assert by_id["1,2"]["parity"] == "even"


# ----------------------------------------------------------------------
# mid-construction shape


def test_stage_with_trivial_tail_matches_normal_form():
    alphas = (1, 0, 0, 1)
    beta = Fraction(-1)
    betas = [0] * 9
    betas[1] = beta
    stage = build_construction_stage(9, alphas, betas)
    normal = build_second_type(9, SecondTypeParams(0, alphas, beta))
    assert stage.table == normal.table


def test_stage_satisfies_binomial_closed_form():
    betas = [Fraction(0)] + [Fraction(2) ** m for m in range(1, 10)]
    stage = build_construction_stage(10, (0, 0, 0, 0), betas)
    assert binomial_product_check(stage, betas)


def test_stage_rejects_bad_input():
    with pytest.raises(DimensionTooSmall):
        build_construction_stage(8, (0, 0, 0, 0), [0] * 8)
    with pytest.raises(InadmissibleParams):
        build_construction_stage(9, (0, 0, 0), [0] * 9)
    with pytest.raises(InadmissibleParams):
        build_construction_stage(9, (0, 0, 0, 0), [0] * 4)
