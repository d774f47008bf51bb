"""Basis changes, parameter maps, signatures, and the equivalence decision."""

from fractions import Fraction

import pytest

from lnz import (
    BasisChange,
    Distinct,
    DocumentError,
    EpsilonMismatch,
    Equivalent,
    GradedChange2,
    MatrixQ,
    NotNormalForm,
    RestrictionViolated,
    SecondTypeParams,
    SingularChange,
    StructureTensor,
    Unknown,
    Vec,
    apply_change,
    build_second_type,
    build_type1_branch_a,
    build_type1_branch_b,
    completed_first_type_change,
    completed_second_type_change,
    decide_equivalence,
    extract_second_type,
    extract_type1_a,
    extract_type1_b,
    nullity_signature,
    param_map_case1,
    param_map_case2,
    param_map_type1_a,
    param_map_type1_b,
    parse_change,
    scale_identities_hold,
    serialize_change,
    verify_homogeneity,
)

Q = Fraction


def violated_factor(fn, *args):
    with pytest.raises(RestrictionViolated) as info:
        fn(*args)
    return info.value.factor


# ----------------------------------------------------------------------
# basis changes


def test_identity_change_is_neutral():
    algebra = build_second_type(9, SecondTypeParams(0, (1, 0, 0, 1), -1))
    ident = BasisChange(MatrixQ.identity(9))
    assert apply_change(algebra, ident).table == algebra.table


def test_permutation_change():
    # swap e_1 and e_2 in an abelian-plus-one-product algebra
    algebra = StructureTensor(3, {(1, 1): ((3, Q(1)),)})
    rows = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    change = BasisChange(MatrixQ.from_rows([[Q(x) for x in r] for r in rows]))
    moved = apply_change(algebra, change)
    assert moved.table == {(2, 2): ((3, Q(1)),)}


def test_inverse_round_trip():
    algebra = build_second_type(10, SecondTypeParams(1, (0, 0, 0, 1), -1))
    g = GradedChange2(Q(1), Q(1, 2))
    change = completed_second_type_change(algebra, g)
    moved = apply_change(algebra, change)
    back = apply_change(moved, change.inverted())
    assert back.table == algebra.table


def test_singular_change_rejected():
    rows = [[Q(1), Q(2)], [Q(2), Q(4)]]
    with pytest.raises(SingularChange):
        BasisChange(MatrixQ.from_rows(rows))


# ----------------------------------------------------------------------
# the four closed-form parameter maps


def test_case1_frozen_example():
    p = SecondTypeParams(0, (1, 0, 0, 1), -1)
    q = param_map_case1(p, GradedChange2(Q(1), Q(0), Q(2)))
    assert q.alphas == (2, 0, 0, 4)
    assert q.beta == -1 and q.epsilon == 0


def test_case2_frozen_example():
    p = SecondTypeParams(1, (0, 0, 0, 1), -1)
    q = param_map_case2(p, GradedChange2(Q(2), Q(1)))
    assert q.alphas == (0, 0, 0, Q(1, 4))


def test_type1_frozen_examples():
    assert param_map_type1_a((1, 0, 2), GradedChange2(Q(1), Q(1), Q(2))) \
        == (1, Q(1, 6), Q(4, 3))
    assert param_map_type1_b((0, -1, 1), GradedChange2(Q(2), Q(1), Q(1))) \
        == (0, -1, 1)


def test_epsilon_mismatch():
    g = GradedChange2(Q(1), Q(0))
    with pytest.raises(EpsilonMismatch):
        param_map_case1(SecondTypeParams(1, (0, 0, 0, 0), -1), g)
    with pytest.raises(EpsilonMismatch):
        param_map_case2(SecondTypeParams(0, (0, 0, 0, 0), -1), g)
    with pytest.raises(EpsilonMismatch):
        decide_equivalence(SecondTypeParams(0, (0, 0, 0, 0), -1),
                           SecondTypeParams(1, (0, 0, 0, 0), -1))


def test_restriction_factor_names():
    p0 = SecondTypeParams(0, (1, 1, -1, 0), -1)
    assert violated_factor(param_map_case1, p0,
                           GradedChange2(Q(0), Q(1))) == "A1"
    assert violated_factor(param_map_case1, p0,
                           GradedChange2(Q(1), Q(-1))) == "A1+alpha2*A4"
    assert violated_factor(
        param_map_case1, SecondTypeParams(0, (0, 0, -1, 0), -1),
        GradedChange2(Q(1), Q(1))) == "A1^2+alpha1*A1*A4+alpha3*A4^2"
    assert violated_factor(param_map_case1, p0,
                           GradedChange2(Q(1), Q(0), Q(0))) == "B4"
    assert violated_factor(
        param_map_case2, SecondTypeParams(1, (0, 0, 0, 0), -1),
        GradedChange2(Q(1), Q(1))) == "A1-A4"
    assert violated_factor(param_map_type1_a, (1, 0, 2),
                           GradedChange2(Q(1), Q(-1))) == "A1+alpha1*A(n-2)"
    assert violated_factor(param_map_type1_a, (1, 0, 2),
                           GradedChange2(Q(1), Q(0), Q(0))) == "B(n-2)"
    assert violated_factor(param_map_type1_a, (0, 0, -1),
                           GradedChange2(Q(1), Q(1))) == "A1+beta2*A(n-2)"
    assert violated_factor(param_map_type1_b, (0, 0, 1),
                           GradedChange2(Q(1), Q(1))) == "A1-b2*A(n-2)"


def test_maps_agree_with_full_basis_change_second_type():
    cases = [(SecondTypeParams(0, (1, 0, 0, 2), -1), 9,
              GradedChange2(Q(1), Q(1, 2), Q(3))),
             (SecondTypeParams(0, (0, 1, 0, 1), -1), 9,
              GradedChange2(Q(2), Q(1), Q(1))),
             (SecondTypeParams(1, (0, 0, 0, 1), -1), 10,
              GradedChange2(Q(1), Q(1, 2))),
             (SecondTypeParams(1, (-2, -1, 0, 1), -1), 10,
              GradedChange2(Q(3), Q(1)))]
    for p, n, g in cases:
        algebra = build_second_type(n, p)
        mapped = param_map_case1(p, g) if p.epsilon == 0 else param_map_case2(p, g)
        moved = apply_change(algebra, completed_second_type_change(algebra, g))
        assert extract_second_type(moved) == mapped


def test_maps_agree_with_full_basis_change_first_type():
    g = GradedChange2(Q(1), Q(1, 3), Q(2))
    a = build_type1_branch_a(9, 1, 0, 2)
    mapped_a = param_map_type1_a((1, 0, 2), g)
    moved_a = apply_change(a, completed_first_type_change(a, g))
    assert extract_type1_a(moved_a) == mapped_a

    b = build_type1_branch_b(9, 1, 2, -1)
    mapped_b = param_map_type1_b((1, 2, -1), g)
    moved_b = apply_change(b, completed_first_type_change(b, g))
    assert extract_type1_b(moved_b) == mapped_b


def test_epsilon_one_change_ignores_b4():
    algebra = build_second_type(10, SecondTypeParams(1, (0, 2, 0, 1), -1))
    g_any = GradedChange2(Q(1), Q(1, 2), Q(7))
    g_pin = GradedChange2(Q(1), Q(1, 2), Q(1, 2))
    left = completed_second_type_change(algebra, g_any)
    right = completed_second_type_change(algebra, g_pin)
    assert left.matrix == right.matrix


def test_scale_identities_hold():
    probes = [(SecondTypeParams(0, (1, 1, -1, 2), -1),
               GradedChange2(Q(1), Q(2), Q(3))),
              (SecondTypeParams(0, (2, 1, 1, 1), -1),
               GradedChange2(Q(2), Q(-1), Q(1, 2))),
              (SecondTypeParams(1, (0, 2, 0, 1), -1),
               GradedChange2(Q(1), Q(1, 2))),
              (SecondTypeParams(1, (-2, -1, 1, 0), -1),
               GradedChange2(Q(3), Q(1)))]
    for p, g in probes:
        assert scale_identities_hold(p, g)


def test_homogeneity():
    assert verify_homogeneity(trials=40, seed=2)


# ----------------------------------------------------------------------
# extraction


def test_extract_second_type_round_trip():
    p = SecondTypeParams(0, (1, 2, 3, 4), -1)
    assert extract_second_type(build_second_type(9, p)) == p


def test_extract_rejects_non_normal_tensors():
    with pytest.raises(NotNormalForm):
        extract_second_type(build_type1_branch_a(9, 1, 0, 2))
    algebra = build_second_type(10, SecondTypeParams(1, (0, 0, 0, 0), -1))
    table = dict(algebra.table)
    table[(4, 9)] = ((10, Q(2)),)
    with pytest.raises(NotNormalForm, match="not 0 or 1"):
        extract_second_type(StructureTensor(10, table))
    table = dict(algebra.table)
    table[(7, 2)] = ((9, Q(1)),)
    with pytest.raises(NotNormalForm):
        extract_second_type(StructureTensor(10, table))
    with pytest.raises(NotNormalForm):
        extract_type1_a(build_type1_branch_b(9, 1, 2, -1))
    with pytest.raises(NotNormalForm):
        extract_type1_b(build_type1_branch_a(9, 1, 0, 2))


# ----------------------------------------------------------------------
# nullity signatures


def test_signature_bits_second_type():
    sig = nullity_signature(SecondTypeParams(0, (0, 0, 0, 0), 0))
    assert sig.kind == "second-eps0"
    assert sig.bits == (("beta", True), ("alpha1^2-4*alpha3", True),
                        ("alpha1*alpha2-2*alpha3", True),
                        ("alpha1*alpha2-2*alpha4", True))
    sig1 = nullity_signature(SecondTypeParams(1, (-2, 0, 1, 0), -1))
    assert sig1.kind == "second-eps1"
    assert dict(sig1.bits)["alpha1+2*alpha3"] is True
    assert dict(sig1.bits)["alpha1^2-4*alpha3"] is True


def test_signature_bits_first_type():
    sig = nullity_signature(("a", (0, 2, 0)))
    assert sig.kind == "first-a"
    assert dict(sig.bits) == {"alpha1": True, "beta2": True,
                              "alpha1-beta2": True, "1-alpha2": False,
                              "1+alpha2": False}
    sig_b = nullity_signature(("b", (1, -1, -1)))
    assert sig_b.bits == (("alpha1", False), ("b2", False),
                          ("1+a2", True), ("alpha1+b2", True))
    with pytest.raises(ValueError):
        nullity_signature(("c", (0, 0, 0)))


def test_first_difference():
    a = nullity_signature(SecondTypeParams(0, (1, 0, 0, 1), -1))
    b = nullity_signature(SecondTypeParams(0, (2, 0, 0, 4), -1))
    assert a.first_difference(b) is None
    c = nullity_signature(SecondTypeParams(0, (0, 0, 0, 0), -1))
    assert a.first_difference(c) == "alpha1^2-4*alpha3"
    d = nullity_signature(SecondTypeParams(1, (1, 0, 0, 1), -1))
    assert a.first_difference(d) == "kind"


# ----------------------------------------------------------------------
# equivalence decision


def test_decide_equivalent_with_witness():
    p = SecondTypeParams(0, (1, 0, 0, 1), -1)
    q = SecondTypeParams(0, (2, 0, 0, 4), -1)
    out = decide_equivalence(p, q)
    assert isinstance(out, Equivalent)
    g = out.witness
    assert param_map_case1(p, g).alphas == q.alphas


def test_decide_equal_params_is_identity():
    p = SecondTypeParams(0, (1, 2, 3, 4), -1)
    out = decide_equivalence(p, p)
    assert isinstance(out, Equivalent)
    assert (out.witness.A1, out.witness.A4, out.witness.B4) == (1, 0, 1)


def test_decide_distinct_cites_an_invariant():
    out = decide_equivalence(SecondTypeParams(0, (1, 0, 0, 0), -1),
                             SecondTypeParams(0, (1, 0, 0, 1), -1))
    assert isinstance(out, Distinct)
    assert out.invariant == "alpha1*alpha2-2*alpha4"
    out2 = decide_equivalence(SecondTypeParams(0, (0, 0, 0, 0), 0),
                              SecondTypeParams(0, (1, 0, 0, 1), -1))
    assert isinstance(out2, Distinct)
    assert out2.invariant == "beta"


def test_decide_epsilon_one_pair():
    p = SecondTypeParams(1, (0, 0, 0, 1), -1)
    q = SecondTypeParams(1, (0, 0, 0, Q(1, 4)), -1)
    out = decide_equivalence(p, q)
    assert isinstance(out, Equivalent)
    assert param_map_case2(p, out.witness).alphas == q.alphas


def test_decide_unknown_when_witness_is_irrational():
    # moving (0,0,-1,0) to (0,0,-2,0) forces A4 = 0 and B4^2 = 2
    out = decide_equivalence(SecondTypeParams(0, (0, 0, -1, 0), -1),
                             SecondTypeParams(0, (0, 0, -2, 0), -1))
    assert isinstance(out, Unknown)
    assert "no rational witness" in out.detail


def test_decide_beta_zero_branch():
    p = SecondTypeParams(0, (0, 0, 0, 0), 0)
    out = decide_equivalence(p, SecondTypeParams(0, (0, 0, 0, 0), 0))
    assert isinstance(out, Equivalent)


# ----------------------------------------------------------------------
# change documents


def test_change_document_round_trip():
    algebra = build_second_type(9, SecondTypeParams(0, (1, 0, 0, 1), -1))
    change = completed_second_type_change(
        algebra, GradedChange2(Q(1), Q(1, 2), Q(3)))
    text = serialize_change(change)
    again = parse_change(text)
    assert again.matrix == change.matrix
    assert serialize_change(again) == text


def test_change_document_errors():
    with pytest.raises(DocumentError) as info:
        parse_change("{\n  \"dim\": 2,\n")
    assert info.value.line is not None
    with pytest.raises(DocumentError, match="JSON object"):
        parse_change("[1, 2]")
    with pytest.raises(DocumentError, match="unknown change fields"):
        parse_change('{"dim": 1, "matrix": [["1"]], "extra": 0}')
    with pytest.raises(DocumentError, match="positive integer"):
        parse_change('{"dim": 0, "matrix": []}')
    with pytest.raises(DocumentError, match="list of 2 rows"):
        parse_change('{"dim": 2, "matrix": [["1", "0"]]}')
    with pytest.raises(DocumentError, match="row 0"):
        parse_change('{"dim": 2, "matrix": [["1"], ["0", "1"]]}')
    with pytest.raises(DocumentError, match="matrix"):
        parse_change('{"dim": 1, "matrix": [[0.5]]}')
    with pytest.raises(SingularChange):
        parse_change('{"dim": 2, "matrix": [["1", "1"], ["1", "1"]]}')
