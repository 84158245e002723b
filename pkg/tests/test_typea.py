import pytest

from pcells.stars import star_right, in_d_r
from pcells.typea import (
    all_permutations,
    column_superstandard,
    element_of_perm,
    enumerate_standard_tableaux,
    hook_length_count,
    inverse_rs,
    involutions,
    is_standard,
    knuth_equivalent,
    knuth_moves,
    parse_one_line,
    perm_from_word,
    perm_inverse,
    perm_of_element,
    perm_to_word,
    rs_correspondence,
)
from pcells import verify


def test_rs_identity_and_w0():
    assert rs_correspondence((1, 2, 3, 4)) == (((1, 2, 3, 4),), ((1, 2, 3, 4),))
    p, q = rs_correspondence((4, 3, 2, 1))
    assert p == ((1,), (2,), (3,), (4,)) and q == p


def test_rs_312():
    p, q = rs_correspondence((3, 1, 2))
    assert p == ((1, 2), (3,))
    assert q == ((1, 3), (2,))


def test_inverse_rs():
    assert inverse_rs(((1, 2, 3),), ((1, 2, 3),)) == (1, 2, 3)
    for perm in all_permutations(5):
        p, q = rs_correspondence(perm)
        assert is_standard(p) and is_standard(q)
        assert inverse_rs(p, q) == perm
    with pytest.raises(ValueError):
        inverse_rs(((1, 2),), ((1,), (2,)))


def test_symmetry_theorem():
    for n in range(1, 6):
        for perm in all_permutations(n):
            p, q = rs_correspondence(perm)
            assert rs_correspondence(perm_inverse(perm)) == (q, p)


def test_rs_is_a_bijection():
    for n in range(1, 7):
        images = {rs_correspondence(w) for w in all_permutations(n)}
        assert len(images) == len(all_permutations(n))


def test_knuth_moves_examples():
    moves = knuth_moves((3, 1, 2))
    assert (2, (1, 3, 2)) in moves
    assert knuth_moves((1, 2, 3, 4)) == []
    for perm in all_permutations(4):
        for i, out in knuth_moves(perm):
            assert (i, perm) in knuth_moves(out)


def test_knuth_equivalence():
    assert knuth_equivalent((3, 1, 2), (3, 1, 2))
    assert knuth_equivalent((3, 1, 2), (1, 3, 2))
    classes = {}
    for perm in all_permutations(4):
        classes.setdefault(rs_correspondence(perm)[0], set()).add(perm)
    for cls in classes.values():
        rep = next(iter(cls))
        for other in all_permutations(4):
            assert knuth_equivalent(rep, other) == (other in cls)


def test_knuth_moves_are_star_operations():
    # K_i applies exactly on D_R(s_{i-1}, s_i) and equals the right star
    for n in range(2, 6):
        system = verify.get_system(f"A{n - 1}")
        for w in system.elements():
            perm = perm_of_element(system, w)
            applicable = {i for i, _ in knuth_moves(perm)}
            for i in range(2, n):
                r, t = i - 2, i - 1
                assert (i in applicable) == in_d_r(system, w, r, t)
                if i in applicable:
                    moved = dict(knuth_moves(perm))[i]
                    assert element_of_perm(system, moved) == \
                        star_right(system, w, r, t)


def test_hook_lengths():
    assert hook_length_count((5,)) == 1
    assert hook_length_count((1, 1, 1)) == 1
    assert hook_length_count((2, 1)) == 2
    for n in range(1, 9):
        for shape in _partitions(n):
            assert hook_length_count(shape) == len(enumerate_standard_tableaux(shape))


def _partitions(n, cap=None):
    if n == 0:
        yield ()
        return
    cap = n if cap is None else min(cap, n)
    for first in range(cap, 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def test_column_superstandard():
    assert column_superstandard((2, 1)) == ((1, 3), (2,))
    assert column_superstandard((4,)) == ((1, 2, 3, 4),)
    assert column_superstandard((1, 1, 1)) == ((1,), (2,), (3,))
    assert is_standard(column_superstandard((3, 3, 1)))


def test_involution_counts():
    assert [len(involutions(n)) for n in range(1, 7)] == [1, 2, 4, 10, 26, 76]


def test_word_round_trip():
    for n in range(2, 6):
        system = verify.get_system(f"A{n - 1}")
        for w in system.elements():
            perm = perm_of_element(system, w)
            assert element_of_perm(system, perm) == w
            assert len(perm_to_word(perm)) == system.length[w]


def test_parse_one_line():
    assert parse_one_line("312") == (3, 1, 2)
    assert parse_one_line("10 2 3 4 5 6 7 8 9 1") == (10, 2, 3, 4, 5, 6, 7, 8, 9, 1)
    with pytest.raises(ValueError):
        parse_one_line("322")


def test_cell_theorem_small():
    for n in (3, 4):
        label = f"A{n - 1}"
        rep = verify.verify_typea(n)[0]
        assert rep.ok, rep
