import json

import pytest

from pcells.hecke import KL, STD, HeckeElt, change_basis, kl_multiply_by_generator
from pcells.laurent import GAUSS, ONE, V, LaurentPoly
from pcells.pcanonical import (
    PCanTable,
    PCanValidationError,
    apply_automorphism_to_table,
    identity_table,
    load_table,
    p_h,
    pcan_general_product,
    restrict_to_parabolic,
    structure_coefficients,
    validate_table,
    verify_parabolic_factorization,
)


def test_identity_table(a2, kl_a2):
    tab = identity_table(a2)
    assert tab.is_identity
    assert tab.m(0, 0) == ONE
    assert tab.m(0, a2.digits_to_id("1")).is_zero()
    assert validate_table(tab, kl_a2) == []
    # B_x in the standard basis equals C_x
    for x in a2.elements():
        elt = HeckeElt(a2, "pcan", {x: ONE})
        assert change_basis(elt, STD, kl=kl_a2, pcan=tab) == kl_a2.kl_element(x)


def test_c3_fixture_rows(c3, c3_p2):
    m232 = c3.digits_to_id("232")
    assert c3_p2.prime == 2
    assert c3_p2.m(m232, c3.digits_to_id("23212")) == ONE
    assert c3_p2.m(m232, c3.digits_to_id("232123")) == GAUSS
    assert c3_p2.m(c3.digits_to_id("232123"), c3.digits_to_id("23212132")) == ONE


def test_c3_fixture_in_kl_basis(c3, kl_c3, c3_p2):
    # B[23212] expanded in the KL basis is C[23212] + C[232]
    x = c3.digits_to_id("23212")
    elt = HeckeElt(c3, "pcan", {x: ONE})
    got = change_basis(elt, KL, kl=kl_c3, pcan=c3_p2)
    assert got.coeffs == {x: ONE, c3.digits_to_id("232"): ONE}


def test_load_rejects_non_self_dual(c3, kl_c3):
    obj = {"p": 2, "entries": [{
        "x": [2, 1, 2],
        "terms": [{"y": [2, 1, 2], "coeff": [[0, 1]]},
                  {"y": [2], "coeff": [[1, 1]]}]}]}
    with pytest.raises(PCanValidationError) as err:
        load_table(obj, c3, kl_c3)
    assert "self-dual" in str(err.value)


def test_load_rejects_descent_violation(c3, kl_c3):
    obj = {"p": 2, "entries": [{
        "x": [2, 3, 2],
        "terms": [{"y": [2, 3, 2], "coeff": [[0, 1]]},
                  {"y": [2], "coeff": [[0, 1]]}]}]}
    with pytest.raises(PCanValidationError) as err:
        load_table(obj, c3, kl_c3)
    assert "descent" in str(err.value)


def test_load_rejects_inverse_asymmetry(c3, kl_c3):
    # the row at 212 is legal on its own; its inverse row is missing
    obj = {"p": 2, "entries": [{
        "x": [3, 2, 1, 2],
        "terms": [{"y": [3, 2, 1, 2], "coeff": [[0, 1]]},
                  {"y": [3, 2], "coeff": [[0, 1]]}]}]}
    with pytest.raises(PCanValidationError) as err:
        load_table(obj, c3, kl_c3)
    assert "inverse" in str(err.value)


def test_load_rejects_bad_diagonal(c3, kl_c3):
    obj = {"p": 2, "entries": [{
        "x": [2, 1, 2],
        "terms": [{"y": [2, 1, 2], "coeff": [[0, 2]]}]}]}
    with pytest.raises(PCanValidationError):
        load_table(obj, c3, kl_c3)


def test_strict_override(c3, kl_c3):
    obj = {"p": 2, "entries": [{
        "x": [2, 1, 2],
        "terms": [{"y": [2, 1, 2], "coeff": [[0, 1]]},
                  {"y": [2], "coeff": [[1, 1]]}]}]}
    tab = load_table(obj, c3, kl_c3, strict=False)
    assert len(validate_table(tab, kl_c3)) > 0


def test_p_h(c3, kl_c3, c3_p2):
    tab0 = identity_table(c3)
    x = c3.digits_to_id("23212")
    y = c3.digits_to_id("232")
    for w in (0, y, x):
        assert p_h(tab0, kl_c3, w, x) == kl_c3.h_poly(w, x)
    assert p_h(c3_p2, kl_c3, x, x) == ONE
    assert p_h(c3_p2, kl_c3, y, x) == kl_c3.h_poly(y, x) + ONE


def test_structure_coefficients_descent_case(c3, kl_c3, c3_p2):
    x = c3.digits_to_id("23212")
    assert structure_coefficients(c3_p2, kl_c3, x, 1, "right") == {x: GAUSS}


def test_structure_coefficients_a2(a2, kl_a2):
    tab = identity_table(a2)
    s = a2.digits_to_id("1")
    got = structure_coefficients(tab, kl_a2, s, 1, "right")
    assert got == {a2.digits_to_id("12"): ONE}


def test_structure_coefficients_match_printed_graph(c3, kl_c3, c3_p2):
    # right multiplications of B[23212] per the reference cell-module graph
    x = c3.digits_to_id("23212")
    got1 = structure_coefficients(c3_p2, kl_c3, x, 0, "right")
    assert got1 == {c3.digits_to_id("232121"): ONE,
                    c3.digits_to_id("2321"): LaurentPoly(2)}
    got3 = structure_coefficients(c3_p2, kl_c3, x, 2, "right")
    assert got3 == {c3.digits_to_id("232123"): ONE,
                    c3.digits_to_id("2321"): ONE}


def test_structure_coefficients_positive_and_self_dual(c3, kl_c3, c3_p2):
    for x in c3.elements():
        for s in range(3):
            for side in ("left", "right"):
                for c in structure_coefficients(c3_p2, kl_c3, x, s, side).values():
                    assert c.is_nonnegative() and c.is_self_dual()


def test_standard_basis_coefficients_nonnegative(c3, kl_c3, c3_p2, b2, kl_b2, b2_p2):
    # the expansion of every B_x over the standard basis stays nonnegative
    for system, kl, tab in ((c3, kl_c3, c3_p2), (b2, kl_b2, b2_p2)):
        for x in system.elements():
            for y in system.elements():
                assert p_h(tab, kl, y, x).is_nonnegative()


def test_p0_structure_equals_kl_multiplication(b2, kl_b2):
    tab = identity_table(b2)
    for x in b2.elements():
        for s in range(2):
            for side in ("left", "right"):
                assert structure_coefficients(tab, kl_b2, x, s, side) == \
                    kl_multiply_by_generator(kl_b2, x, s, side)


def test_general_product_agrees_with_generator_path(b2, kl_b2, b2_p2):
    for x in b2.elements():
        for s in range(2):
            w = b2.right[0][s]
            assert pcan_general_product(b2_p2, kl_b2, x, w) == \
                structure_coefficients(b2_p2, kl_b2, x, s, "right")


def test_parabolic_factorization(b3, kl_b3, c3, kl_c3, c3_p2):
    assert verify_parabolic_factorization(identity_table(b3), kl_b3, [0, 1]).ok
    assert verify_parabolic_factorization(c3_p2, kl_c3, [1, 2]).ok
    assert verify_parabolic_factorization(c3_p2, kl_c3, [0, 1]).ok
    # corrupt one row and the check reports violations
    bad_rows = {x: dict(r) for x, r in c3_p2.rows.items()}
    bad_rows[c3.digits_to_id("23212")] = {c3.digits_to_id("232"): LaurentPoly(2)}
    bad = PCanTable(c3, 2, bad_rows)
    assert not verify_parabolic_factorization(bad, kl_c3, [0, 1]).ok


def test_restrict_to_parabolic(c3, c3_p2, kl_c3):
    emb = c3.parabolic_subsystem([0, 1])
    sub = restrict_to_parabolic(c3_p2, emb)
    # the restriction is the rank-two table with the single row at 212
    x = emb.sub.digits_to_id("212")
    assert sub.rows == {x: {emb.sub.digits_to_id("2"): ONE}}
    emb23 = c3.parabolic_subsystem([1, 2])
    assert restrict_to_parabolic(c3_p2, emb23).is_identity


def test_apply_automorphism(a3, kl_a3, c3, c3_p2):
    tab = identity_table(a3)
    assert apply_automorphism_to_table(tab, (0, 1, 2)).rows == {}
    flipped = apply_automorphism_to_table(tab, (2, 1, 0))
    assert flipped.rows == {}
    with pytest.raises(ValueError):
        apply_automorphism_to_table(c3_p2, (2, 1, 0))
    same = apply_automorphism_to_table(c3_p2, (0, 1, 2))
    assert same.rows == c3_p2.rows


def test_json_round_trip(c3, kl_c3, c3_p2):
    obj = c3_p2.to_json_obj()
    again = load_table(json.loads(json.dumps(obj)), c3, kl_c3)
    assert again.rows == c3_p2.rows and again.prime == 2
