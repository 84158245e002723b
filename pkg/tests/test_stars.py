import pytest

from pcells.cells import compute_cells
from pcells.laurent import ONE
from pcells.pcanonical import PCanTable, identity_table
from pcells.stars import (
    PBoundError,
    all_strings,
    check_base_change_relations,
    check_coefficient_sliding,
    check_string_vanishing,
    check_structure_coefficient_relations,
    classify_string_relation,
    d_r_set,
    star_closure_check,
    star_left,
    star_right,
    string_of,
    t_neighbors,
    tau_partition,
    tau_tilde_partition,
)
from pcells import verify


def test_string_of_a2(a2):
    s, st = a2.digits_to_id("1"), a2.digits_to_id("12")
    sd, pos = string_of(a2, s, 0, 1)
    assert sd.elements == (s, st) and pos == 1
    sd2, pos2 = string_of(a2, st, 0, 1)
    assert sd2.elements == (s, st) and pos2 == 2
    with pytest.raises(ValueError):
        string_of(a2, 0, 0, 1)
    w0 = a2.longest_element()
    with pytest.raises(ValueError):
        string_of(a2, w0, 0, 1)


def test_string_of_b2(b2):
    sts = b2.digits_to_id("121")
    sd, pos = string_of(b2, sts, 0, 1)
    assert pos == 3
    assert sd.elements == tuple(b2.digits_to_id(w) for w in ("1", "12", "121"))


def test_star_right(a2, b2):
    s, st = a2.digits_to_id("1"), a2.digits_to_id("12")
    assert star_right(a2, s, 0, 1) == st
    assert star_right(a2, st, 0, 1) == s
    # the middle of an m = 4 string is fixed
    st_b = b2.digits_to_id("12")
    assert star_right(b2, st_b, 0, 1) == st_b
    for x in d_r_set(b2, 0, 1):
        assert star_right(b2, star_right(b2, x, 0, 1), 0, 1) == x


def test_star_left(a2, b2):
    s, ts = a2.digits_to_id("1"), a2.digits_to_id("21")
    assert star_left(a2, s, 0, 1) == ts
    assert star_left(a2, ts, 0, 1) == s
    sts = b2.digits_to_id("121")
    assert star_left(b2, sts, 0, 1) == b2.digits_to_id("1")
    with pytest.raises(ValueError):
        star_left(a2, 0, 0, 1)


def test_t_neighbors(a2, b2):
    st = b2.digits_to_id("12")
    assert t_neighbors(b2, st, 0, 1) == sorted(
        (b2.digits_to_id("1"), b2.digits_to_id("121")))
    s = b2.digits_to_id("1")
    assert t_neighbors(b2, s, 0, 1) == [st, st]
    sa = a2.digits_to_id("1")
    sta = a2.digits_to_id("12")
    assert t_neighbors(a2, sa, 0, 1) == [sta, sta]


@pytest.mark.parametrize("label,pairs", [("A3", [(0, 1), (1, 2)]),
                                         ("B3", [(0, 1), (1, 2)])])
def test_relation_checkers_p0(label, pairs):
    system = verify.get_system(label)
    kl = verify.get_kl(label)
    tab = identity_table(system)
    for (r, t) in pairs:
        assert check_base_change_relations(tab, kl, r, t).ok
        assert check_structure_coefficient_relations(tab, kl, r, t).ok
        assert check_string_vanishing(tab, kl, r, t).ok
        assert check_coefficient_sliding(tab, kl, r, t).ok


def test_checkers_refuse_below_bound(c3, kl_c3, c3_p2, b2, kl_b2, b2_p2):
    # bond order 4 needs p > 2
    with pytest.raises(PBoundError):
        check_base_change_relations(c3_p2, kl_c3, 0, 1)
    with pytest.raises(PBoundError):
        check_string_vanishing(b2_p2, kl_b2, 0, 1)
    # the m = 3 pair of C3 is fine at p = 2
    assert check_base_change_relations(c3_p2, kl_c3, 1, 2).ok
    assert check_string_vanishing(c3_p2, kl_c3, 1, 2).ok
    assert check_structure_coefficient_relations(c3_p2, kl_c3, 1, 2).ok
    assert check_coefficient_sliding(c3_p2, kl_c3, 1, 2).ok


def test_fabricated_table_fails_string_vanishing(b3, kl_b3):
    # plant a legal-looking row and find a string check that rejects it:
    # the table passes the elementary invariants but not the relations
    s121 = b3.digits_to_id("121")
    s1 = b3.digits_to_id("1")
    rows = {s121: {s1: ONE}}
    fake = PCanTable(b3, 97, rows)
    from pcells.pcanonical import validate_table
    assert validate_table(fake, kl_b3) == []
    bad = []
    for (r, t) in ((0, 1), (1, 2)):
        for check in (check_base_change_relations, check_string_vanishing,
                      check_structure_coefficient_relations):
            rep = check(fake, kl_b3, r, t)
            bad.extend(rep.violations)
    assert bad


def test_classification_cases(a3, kl_a3):
    tab = identity_table(a3)
    left = compute_cells(tab, kl_a3, "left")
    for (r, t) in ((0, 1), (1, 2)):
        strings = all_strings(a3, r, t)
        labels = set()
        for sx in strings:
            assert classify_string_relation(left, sx, sx) != "empty"
            for sz in strings:
                labels.add(classify_string_relation(left, sx, sz))
        assert "nonstandard" not in labels
        assert "empty" in labels  # some strings are unrelated


def test_classification_b3(b3, kl_b3):
    tab = identity_table(b3)
    left = compute_cells(tab, kl_b3, "left")
    for (r, t) in ((0, 1), (1, 2)):
        for sx in all_strings(b3, r, t):
            for sz in all_strings(b3, r, t):
                assert classify_string_relation(left, sx, sz) != "nonstandard"


@pytest.mark.parametrize("label", ["A3", "B3"])
def test_star_closure(label):
    system = verify.get_system(label)
    kl = verify.get_kl(label)
    tab = identity_table(system)
    left = compute_cells(tab, kl, "left")
    right = compute_cells(tab, kl, "right")
    for r in range(system.rank):
        for t in range(r + 1, system.rank):
            if system.coxeter_matrix[r][t] >= 3:
                assert star_closure_check(left, right, system, r, t, 0).ok


def test_tau_s3(a2, kl_a2):
    part = tau_partition(a2)
    left = compute_cells(identity_table(a2), kl_a2, "left")
    assert part.as_sets() == left.as_sets()
    assert tau_tilde_partition(a2).as_sets() == part.as_sets()


def test_tau_a1():
    a1 = verify.get_system("A1")
    part = tau_partition(a1)
    assert part.as_sets() == {frozenset({0}), frozenset({1})}


def test_tau_s4(a3, kl_a3):
    part = tau_partition(a3)
    left = compute_cells(identity_table(a3), kl_a3, "left")
    assert part.as_sets() == left.as_sets()


def test_tau_tilde_b3(b3, kl_b3):
    part = tau_tilde_partition(b3)
    left = compute_cells(identity_table(b3), kl_b3, "left")
    for cell in left.cells:
        assert len({part.class_of[w] for w in cell}) == 1


def test_tau_restricted_to_valid_pairs_at_p2(c3, kl_c3, c3_p2):
    # at p = 2 only the order-3 pair of C3 is above the bound; the left
    # p-cells refine the tau classes built from that pair alone
    part = tau_partition(c3, orders=(3,))
    left = compute_cells(c3_p2, kl_c3, "left")
    for cell in left.cells:
        assert len({part.class_of[w] for w in cell}) == 1
