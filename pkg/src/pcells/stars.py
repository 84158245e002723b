"""Strings, star operations, their coefficient relations, and tau invariants.

Fix two generators r, t with 3 <= m = m(r,t) < infinity.  Every coset of
the dihedral parabolic <r, t> consists of its minimal element, its maximal
element, and two "strings" of m - 1 elements (one per starting letter);
the union of the strings of all cosets is D_R(r, t), the set of elements
with exactly one of r, t as a right descent.  The right star operation
flips position k of a string to position m - k; the left operation is
conjugate under inversion.

The checkers in this module verify the numerical consequences of the star
operations for base-change and structure coefficients (the m = 3, 4, 6
relation systems, the star symmetries, and string vanishing).  They apply
only above a prime bound (p > 1, 2, 3 for m = 3, 4, 6): below the bound
the relations are not asserted and the checkers refuse to run.

The generalized tau invariant refines equality of right descent sets
through neighbour multisets of strings for m in {3, 4}; the tau-tilde
variant refines through star images for every finite m >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .cells import CellPartition
from .coxeter import CoxeterSystem
from .hecke import KLTable
from .laurent import LaurentPoly
from .pcanonical import PCanTable, Report, structure_coefficients

_P_BOUND = {3: 1, 4: 2, 6: 3}


class PBoundError(ValueError):
    """The table's prime is below the validity bound for this bond order."""


def p_bound_ok(prime: int, m: int) -> bool:
    """Star-operation statements hold at p = 0 and above the bound."""
    return prime == 0 or prime > _P_BOUND.get(m, 0)


def _require_bound(table: PCanTable, m: int) -> None:
    if not p_bound_ok(table.prime, m):
        raise PBoundError(
            f"p = {table.prime} is below the bound for bond order {m}; "
            "the relations are not asserted there")


# ---------------------------------------------------------------------------
# strings and stars

@dataclass(frozen=True)
class StringDecomposition:
    """One right <r, t>-string: the m - 1 elements obtained from the coset
    minimum by the alternating words in a fixed starting letter, listed by
    increasing length."""

    r: int
    t: int
    m: int
    coset_min: int
    start: int  # the generator the alternating word starts with
    elements: tuple[int, ...]

    def position(self, x: int) -> int:
        """1-based position of x in the string."""
        return self.elements.index(x) + 1

    def neighbours(self, x: int) -> list[int]:
        k = self.position(x)
        out = []
        if k > 1:
            out.append(self.elements[k - 2])
        if k < len(self.elements):
            out.append(self.elements[k])
        return out


def in_d_r(system: CoxeterSystem, x: int, r: int, t: int) -> bool:
    return len(system.right_descents[x] & {r, t}) == 1


def in_d_l(system: CoxeterSystem, x: int, r: int, t: int) -> bool:
    return len(system.left_descents[x] & {r, t}) == 1


def d_r_set(system: CoxeterSystem, r: int, t: int) -> frozenset[int]:
    return frozenset(x for x in system.elements() if in_d_r(system, x, r, t))


def _coset_min(system: CoxeterSystem, x: int, r: int, t: int) -> int:
    pair = {r, t}
    while True:
        ds = system.right_descents[x] & pair
        if not ds:
            return x
        x = system.right[x][min(ds)]


def _string_from(system: CoxeterSystem, w_min: int, start: int, other: int,
                 m: int, r: int, t: int) -> StringDecomposition:
    elements = []
    x = w_min
    letter = start
    for _ in range(m - 1):
        x = system.right[x][letter]
        elements.append(x)
        letter = other if letter == start else start
    return StringDecomposition(r=r, t=t, m=m, coset_min=w_min, start=start,
                               elements=tuple(elements))


def string_of(system: CoxeterSystem, x: int, r: int, t: int
              ) -> tuple[StringDecomposition, int]:
    """The right <r, t>-string through x and the 1-based position of x."""
    m = system.coxeter_matrix[r][t]
    if m == 0:
        raise ValueError("infinite bond order: strings are unbounded")
    if not in_d_r(system, x, r, t):
        raise ValueError(
            f"element {system.id_to_digits(x) or 'e'} is not in D_R(r, t)")
    w_min = _coset_min(system, x, r, t)
    for start, other in ((r, t), (t, r)):
        s = _string_from(system, w_min, start, other, m, r, t)
        if x in s.elements:
            return s, s.position(x)
    raise AssertionError("element escaped both strings of its coset")


def all_strings(system: CoxeterSystem, r: int, t: int) -> list[StringDecomposition]:
    """Both strings of every <r, t>-coset, minimal representative order."""
    m = system.coxeter_matrix[r][t]
    if m == 0:
        raise ValueError("infinite bond order")
    out = []
    for w_min in sorted(system.minimal_coset_representatives({r, t}, "right")):
        out.append(_string_from(system, w_min, r, t, m, r, t))
        out.append(_string_from(system, w_min, t, r, m, r, t))
    return out


def star_right(system: CoxeterSystem, x: int, r: int, t: int) -> int:
    """The right star operation: position k goes to position m - k."""
    m = system.coxeter_matrix[r][t]
    if m == 0:
        raise ValueError("star operations need a finite bond order")
    if m < 3:
        raise ValueError("star operations need bond order >= 3")
    s, k = string_of(system, x, r, t)
    return s.elements[m - k - 1]


def star_left(system: CoxeterSystem, x: int, r: int, t: int) -> int:
    """The left star operation, via *w = ((w^-1)*)^-1."""
    if not in_d_l(system, x, r, t):
        raise ValueError(
            f"element {system.id_to_digits(x) or 'e'} is not in D_L(r, t)")
    return system.inverse[star_right(system, system.inverse[x], r, t)]


def t_neighbors(system: CoxeterSystem, x: int, r: int, t: int) -> list[int]:
    """The string neighbours {xr, xt} intersected with D_R(r, t), duplicated
    to a two-element multiset when only one exists."""
    out = [y for y in (system.right[x][r], system.right[x][t])
           if in_d_r(system, y, r, t)]
    if len(out) == 1:
        out = out * 2
    if len(out) != 2:
        raise ValueError("element is not inside a string")
    return sorted(out)


# ---------------------------------------------------------------------------
# the m = 3, 4, 6 relation systems

# Each relation is (lhs, rhs): two lists of (j, i) pairs, asserting that the
# sums of the coefficients a[j, i] agree, where a[j, i] couples the j-th
# element of the z-string with the i-th element of the x-string.
_RELATIONS: dict[int, list[tuple[list[tuple[int, int]], list[tuple[int, int]]]]] = {
    3: [
        ([(1, 1)], [(2, 2)]),
        ([(2, 1)], [(1, 2)]),
    ],
    4: [
        ([(1, 1)], [(3, 3)]),
        ([(2, 1)], [(1, 2)]),
        ([(1, 2)], [(3, 2)]),
        ([(3, 2)], [(2, 3)]),
        ([(3, 1)], [(1, 3)]),
        ([(2, 2)], [(1, 1), (3, 1)]),
    ],
    6: [
        ([(1, 1)], [(5, 5)]),
        ([(2, 1)], [(1, 2)]),
        ([(1, 2)], [(5, 4)]),
        ([(5, 4)], [(4, 5)]),
        ([(3, 1)], [(1, 3)]),
        ([(1, 3)], [(5, 3)]),
        ([(5, 3)], [(3, 5)]),
        ([(4, 1)], [(1, 4)]),
        ([(1, 4)], [(5, 2)]),
        ([(5, 2)], [(2, 5)]),
        ([(5, 1)], [(1, 5)]),
        ([(2, 2)], [(4, 4)]),
        ([(2, 2)], [(1, 1), (3, 1)]),
        ([(3, 2)], [(2, 3)]),
        ([(2, 3)], [(4, 3)]),
        ([(4, 3)], [(3, 4)]),
        ([(3, 2)], [(2, 1), (4, 1)]),
        ([(4, 2)], [(2, 4)]),
        ([(4, 2)], [(3, 1), (5, 1)]),
        ([(3, 3)], [(1, 1), (3, 1), (5, 1)]),
    ],
}


def _check_relation_system(m: int, get: Callable[[int, int], LaurentPoly],
                           label: str, bad: list[str]) -> int:
    checked = 0
    for lhs, rhs in _RELATIONS[m]:
        left = LaurentPoly()
        for (j, i) in lhs:
            left = left + get(j, i)
        right = LaurentPoly()
        for (j, i) in rhs:
            right = right + get(j, i)
        checked += 1
        if left != right:
            bad.append(f"{label}: {lhs} = {left} but {rhs} = {right}")
    return checked


def check_base_change_relations(table: PCanTable, kl: KLTable, r: int, t: int
                                ) -> Report:
    """The relation systems on base-change coefficients m(z_j, x_i) between
    all pairs of full strings, plus the star symmetry m(z, x) = m(z*, x*)."""
    sys_ = table.system
    m = sys_.coxeter_matrix[r][t]
    _require_bound(table, m)
    strings = all_strings(sys_, r, t)
    bad: list[str] = []
    checked = 0
    for sx in strings:
        for sz in strings:
            def get(j: int, i: int) -> LaurentPoly:
                return table.m(sz.elements[j - 1], sx.elements[i - 1])

            label = (f"m-relations x-string {sys_.id_to_digits(sx.elements[0])}"
                     f" z-string {sys_.id_to_digits(sz.elements[0])}")
            checked += _check_relation_system(m, get, label, bad)

    dr = sorted(d_r_set(sys_, r, t))
    star = {x: star_right(sys_, x, r, t) for x in dr}
    for x in dr:
        for z in dr:
            if sys_.length[z] > sys_.length[x]:
                continue
            checked += 1
            if table.m(z, x) != table.m(star[z], star[x]):
                bad.append(
                    f"m({sys_.id_to_digits(z)}, {sys_.id_to_digits(x)}) != "
                    "m of the starred pair")
    return Report(f"base-change-relations (r={r + 1}, t={t + 1})", bad, checked)


def check_structure_coefficient_relations(table: PCanTable, kl: KLTable,
                                          r: int, t: int) -> Report:
    """The same relation systems on left structure coefficients
    mu^{z_j}(s, x_i) for every generator s raising the x-string on the left,
    plus the star symmetry of structure coefficients."""
    sys_ = table.system
    m = sys_.coxeter_matrix[r][t]
    _require_bound(table, m)
    strings = all_strings(sys_, r, t)
    bad: list[str] = []
    checked = 0
    cache: dict[tuple[int, int], dict[int, LaurentPoly]] = {}

    def left_mu(s: int, x: int) -> dict[int, LaurentPoly]:
        key = (s, x)
        if key not in cache:
            cache[key] = structure_coefficients(table, kl, x, s, "left")
        return cache[key]

    for sx in strings:
        x1 = sx.elements[0]
        for s in range(sys_.rank):
            if s in sys_.left_descents[x1]:
                continue
            for sz in strings:
                def get(j: int, i: int) -> LaurentPoly:
                    return left_mu(s, sx.elements[i - 1]).get(
                        sz.elements[j - 1], LaurentPoly())

                label = (f"mu-relations s={s + 1} x-string "
                         f"{sys_.id_to_digits(sx.elements[0])} z-string "
                         f"{sys_.id_to_digits(sz.elements[0])}")
                checked += _check_relation_system(m, get, label, bad)

    dr = sorted(d_r_set(sys_, r, t))
    star = {x: star_right(sys_, x, r, t) for x in dr}
    for x in dr:
        for s in range(sys_.rank):
            if s in sys_.left_descents[x]:
                continue
            mus = left_mu(s, x)
            mus_star = left_mu(s, star[x])
            for y in dr:
                checked += 1
                if mus.get(y, LaurentPoly()) != mus_star.get(star[y], LaurentPoly()):
                    bad.append(
                        f"mu^({sys_.id_to_digits(y)})(s{s + 1}, "
                        f"{sys_.id_to_digits(x)}) differs from starred value")
    return Report(f"structure-coefficient-relations (r={r + 1}, t={t + 1})",
                  bad, checked)


def check_string_vanishing(table: PCanTable, kl: KLTable, r: int, t: int
                           ) -> Report:
    """Within D_R(r, t), right multiplication by the raising generator only
    reaches string neighbours: mu^z(x, u) = 0 for z in D_R(r, t) unless z
    neighbours x in its string."""
    sys_ = table.system
    m = sys_.coxeter_matrix[r][t]
    _require_bound(table, m)
    dr = d_r_set(sys_, r, t)
    bad: list[str] = []
    checked = 0
    for x in sorted(dr):
        sx, _ = string_of(sys_, x, r, t)
        allowed = set(sx.neighbours(x))
        u = t if t not in sys_.right_descents[x] else r
        for z, c in structure_coefficients(table, kl, x, u, "right").items():
            if z == x or z not in dr:
                continue
            checked += 1
            if c and z not in allowed:
                bad.append(
                    f"mu^({sys_.id_to_digits(z)})({sys_.id_to_digits(x)}, "
                    f"s{u + 1}) = {c} outside the string neighbourhood")
    return Report(f"string-vanishing (r={r + 1}, t={t + 1})", bad, checked)


def check_coefficient_sliding(table: PCanTable, kl: KLTable, r: int, t: int
                              ) -> Report:
    """The sliding description of products inside D_R(r, t): for x with
    descent a in {r, t} and raising letter b, the KL coefficient of C_z in
    B_x C_b equals m(za, x) [za in D_R] + m(zb, x) [zb in D_R] for every
    z in D_R(r, t)."""
    sys_ = table.system
    m = sys_.coxeter_matrix[r][t]
    if m == 0:
        raise ValueError("infinite bond order")
    dr = sorted(d_r_set(sys_, r, t))
    bad: list[str] = []
    checked = 0
    for x in dr:
        a = r if r in sys_.right_descents[x] else t
        b = t if a == r else r
        acc: dict[int, LaurentPoly] = {}
        for z0, c in [(x, None)] + list(table.rows.get(x, {}).items()):
            from .hecke import kl_multiply_by_generator
            for w, d in kl_multiply_by_generator(kl, z0, b, "right").items():
                term = d if c is None else c * d
                prev = acc.get(w)
                acc[w] = term if prev is None else prev + term
        for z in dr:
            got = acc.get(z, LaurentPoly())
            want = LaurentPoly()
            za, zb = sys_.right[z][a], sys_.right[z][b]
            if in_d_r(sys_, za, r, t):
                want = want + table.m(za, x)
            if in_d_r(sys_, zb, r, t):
                want = want + table.m(zb, x)
            checked += 1
            if got != want:
                bad.append(
                    f"coefficient of C[{sys_.id_to_digits(z)}] in "
                    f"B[{sys_.id_to_digits(x)}] C_s{b + 1} is {got}, "
                    f"sliding gives {want}")
    return Report(f"coefficient-sliding (r={r + 1}, t={t + 1})", bad, checked)


# ---------------------------------------------------------------------------
# classification of left relations between two strings

def _neighbour_positions(i: int, k: int, m: int) -> set[int]:
    """The k-step string-neighbour set of position i inside 1..m-1."""
    return {j for j in range(1, m) if abs(j - i) <= k and (j - i - k) % 2 == 0}


def _case_patterns(m: int) -> list[tuple[str, frozenset[tuple[int, int]]]]:
    rng = range(1, m)
    out: list[tuple[str, frozenset[tuple[int, int]]]] = [
        ("empty", frozenset()),
        ("T", frozenset((i, i) for i in rng)),
        ("P", frozenset((i, m - i) for i in rng)),
    ]
    for k in range(1, m - 1):
        out.append((f"N_{k}", frozenset(
            (i, j) for i in rng for j in _neighbour_positions(i, k, m))))
    for l in range(1, max(m - 3, 1)):
        if l <= m - 4:
            out.append((f"PN_{l}", frozenset(
                (i, m - j) for i in rng for j in _neighbour_positions(i, l, m))))
    zig = set()
    for i in range(2, m - 1):
        zig.update({(i - 1, i + 1), (i, i), (i + 1, i - 1)})
    out.append(("Z", frozenset(zig)))
    return out


def classify_string_relation(left: CellPartition, sx: StringDecomposition,
                             sz: StringDecomposition) -> str:
    """Match the set of left-preorder relations {x_i <= z_j} between two full
    strings against the standard case list (up to swapping the strings)."""
    m = sx.m
    rel = frozenset(
        (i + 1, j + 1)
        for i, x in enumerate(sx.elements)
        for j, z in enumerate(sz.elements)
        if left.leq(x, z)
    )
    swapped = frozenset((j, i) for (i, j) in rel)
    for name, pattern in _case_patterns(m):
        if rel == pattern or swapped == pattern:
            return name
    return "nonstandard"


# ---------------------------------------------------------------------------
# cells versus stars

def star_closure_check(left: CellPartition, right: CellPartition,
                       system: CoxeterSystem, r: int, t: int,
                       prime: int = 0) -> Report:
    """Star compatibility of cells for one pair (r, t):

    (a) every right string lies inside one right cell;
    (b) the star image of a left cell contained in D_R(r, t) is a left cell;
    (c) x <= y iff x* <= y* in the left preorder, on D_R(r, t);
    (d) the string-completion of a left cell minus the cell is a union of
        at most m - 2 left cells.
    """
    m = system.coxeter_matrix[r][t]
    if not p_bound_ok(prime, m):
        raise PBoundError(
            f"p = {prime} is below the bound for bond order {m}")
    dr = d_r_set(system, r, t)
    star = {x: star_right(system, x, r, t) for x in dr}
    bad: list[str] = []
    checked = 0

    for s in all_strings(system, r, t):
        checked += 1
        if len({right.cell_of[x] for x in s.elements}) != 1:
            bad.append(f"string at {system.id_to_digits(s.elements[0])} "
                       "crosses right cells")

    string_of_elt = {}
    for s in all_strings(system, r, t):
        for x in s.elements:
            string_of_elt[x] = s

    for i, cell in enumerate(left.cells):
        if not cell <= dr:
            continue
        image = frozenset(star[x] for x in cell)
        checked += 1
        if image not in left.as_sets():
            bad.append(f"star image of left cell {i} is not a left cell")
        completion = frozenset(
            y for x in cell for y in string_of_elt[x].elements) - cell
        touched = {left.cell_of[y] for y in completion}
        union = frozenset().union(*(left.cells[j] for j in touched)) if touched else frozenset()
        checked += 2
        if union != completion:
            bad.append(f"string completion of left cell {i} is not a union "
                       "of left cells")
        if len(touched) > m - 2:
            bad.append(f"string completion of left cell {i} uses "
                       f"{len(touched)} > m - 2 left cells")

    for x in sorted(dr):
        for y in sorted(dr):
            checked += 1
            if left.leq(x, y) != left.leq(star[x], star[y]):
                bad.append(
                    f"left relation {system.id_to_digits(x)} <= "
                    f"{system.id_to_digits(y)} not star-invariant")
    return Report(f"star-closure (r={r + 1}, t={t + 1})", bad, checked)


# ---------------------------------------------------------------------------
# generalized tau invariants

@dataclass(frozen=True)
class TauPartition:
    """The limit of the refinement sequence, with the iteration count at
    which it stabilized."""

    classes: tuple[frozenset[int], ...]
    class_of: dict[int, int]
    stabilized_at: int

    def as_sets(self) -> set[frozenset[int]]:
        return set(self.classes)


def _refine(system: CoxeterSystem, class_of: dict[int, int],
            signature: Callable[[int], tuple]) -> dict[int, int]:
    buckets: dict[tuple, list[int]] = {}
    for x in system.elements():
        buckets.setdefault((class_of[x],) + signature(x), []).append(x)
    out: dict[int, int] = {}
    for i, key in enumerate(sorted(buckets, key=lambda k: min(buckets[k]))):
        for x in buckets[key]:
            out[x] = i
    return out


def _fixpoint(system: CoxeterSystem, signature_factory) -> TauPartition:
    class_of = {x: 0 for x in system.elements()}
    class_of = _refine(system, class_of, lambda x: (tuple(sorted(system.right_descents[x])),))
    iterations = 0
    while True:
        signature = signature_factory(class_of)
        nxt = _refine(system, class_of, signature)
        iterations += 1
        if nxt == class_of:
            break
        class_of = nxt
    n = max(class_of.values()) + 1
    classes = [set() for _ in range(n)]
    for x, i in class_of.items():
        classes[i].add(x)
    classes.sort(key=lambda c: (min(system.length[x] for x in c), min(c)))
    class_of = {x: i for i, c in enumerate(classes) for x in c}
    return TauPartition(classes=tuple(frozenset(c) for c in classes),
                        class_of=class_of, stabilized_at=iterations)


def tau_partition(system: CoxeterSystem,
                  orders: tuple[int, ...] = (3, 4)) -> TauPartition:
    """Iterated refinement of right-descent-set equality through neighbour
    multisets of strings, over pairs with bond order 3 or 4 (restrict with
    orders=(3,) when only those pairs are valid at the working prime)."""
    pairs = [(r, t) for r in range(system.rank) for t in range(r + 1, system.rank)
             if system.coxeter_matrix[r][t] in orders]

    def factory(class_of: dict[int, int]):
        def signature(x: int) -> tuple:
            sig = []
            for (r, t) in pairs:
                if in_d_r(system, x, r, t):
                    a, b = t_neighbors(system, x, r, t)
                    sig.append(tuple(sorted((class_of[a], class_of[b]))))
                else:
                    sig.append(None)
            return tuple(sig)
        return signature

    return _fixpoint(system, factory)


def tau_tilde_partition(system: CoxeterSystem) -> TauPartition:
    """Same fixpoint scheme, refining by star images over every pair with
    finite bond order at least 3."""
    pairs = [(r, t) for r in range(system.rank) for t in range(r + 1, system.rank)
             if system.coxeter_matrix[r][t] >= 3]

    def factory(class_of: dict[int, int]):
        def signature(x: int) -> tuple:
            sig = []
            for (r, t) in pairs:
                if in_d_r(system, x, r, t):
                    sig.append(class_of[star_right(system, x, r, t)])
                else:
                    sig.append(None)
            return tuple(sig)
        return signature

    return _fixpoint(system, factory)
