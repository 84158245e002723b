"""Symmetric-group combinatorics: Robinson-Schensted, Knuth moves, hooks.

Permutations are one-line tuples w(1)..w(n) acting on {1..n} on the left;
the generator s_i of the type A Coxeter system is the adjacent
transposition (i, i+1), and right multiplication by s_i swaps positions
i, i+1 of the one-line word.  Tableaux are tuples of row tuples, standard
(entries 1..n, increasing along rows and down columns).

The cell theorem checker cross-matches computed cell partitions against
the fibers of the Robinson-Schensted symbols: right cells are P-fibers,
left cells are Q-fibers, two-sided cells are shape fibers, with the
counting corollaries (one involution per left cell, the 0/1 intersection
rule, hook-length counts).
"""

from __future__ import annotations

import itertools
from math import factorial
from typing import Iterable, Sequence

from .cells import CellPartition, compute_cells
from .coxeter import CoxeterSystem
from .hecke import KLTable
from .pcanonical import PCanTable, Report

Tableau = tuple[tuple[int, ...], ...]
Shape = tuple[int, ...]


# ---------------------------------------------------------------------------
# permutations in one-line notation

def perm_from_word(n: int, word: Iterable[int]) -> tuple[int, ...]:
    """The permutation of the word's product: right multiplication by s_i
    swaps positions i, i+1 (0-based index i)."""
    line = list(range(1, n + 1))
    for s in word:
        line[s], line[s + 1] = line[s + 1], line[s]
    return tuple(line)


def perm_to_word(perm: Sequence[int]) -> tuple[int, ...]:
    """A reduced word for the permutation (peeling right descents)."""
    line = list(perm)
    word: list[int] = []
    while True:
        for i in range(len(line) - 1):
            if line[i] > line[i + 1]:
                line[i], line[i + 1] = line[i + 1], line[i]
                word.append(i)
                break
        else:
            return tuple(reversed(word))


def perm_inverse(perm: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v - 1] = i + 1
    return tuple(out)


def parse_one_line(text: str) -> tuple[int, ...]:
    """Parse "312" (or "3 1 2" / "10 2 1 ..." with spaces) as a permutation."""
    parts = text.split() if " " in text.strip() else list(text.strip())
    perm = tuple(int(p) for p in parts)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError(f"{text!r} is not a permutation in one-line notation")
    return perm


def all_permutations(n: int) -> list[tuple[int, ...]]:
    return [tuple(p) for p in itertools.permutations(range(1, n + 1))]


def involutions(n: int) -> list[tuple[int, ...]]:
    return [p for p in all_permutations(n) if perm_inverse(p) == p]


# ---------------------------------------------------------------------------
# Robinson-Schensted row bumping

def rs_correspondence(perm: Sequence[int]) -> tuple[Tableau, Tableau]:
    """Row insertion of w(1), w(2), ...; Q records the box-addition order."""
    p_rows: list[list[int]] = []
    q_rows: list[list[int]] = []
    for step, value in enumerate(perm, start=1):
        x = value
        row = 0
        while True:
            if row == len(p_rows):
                p_rows.append([x])
                q_rows.append([step])
                break
            current = p_rows[row]
            # bump the leftmost entry strictly greater than x
            bump_at = None
            for i, entry in enumerate(current):
                if entry > x:
                    bump_at = i
                    break
            if bump_at is None:
                current.append(x)
                q_rows[row].append(step)
                break
            current[bump_at], x = x, current[bump_at]
            row += 1
    return (tuple(tuple(r) for r in p_rows), tuple(tuple(r) for r in q_rows))


def inverse_rs(p: Tableau, q: Tableau) -> tuple[int, ...]:
    """The unique permutation with the given P and Q symbols."""
    if shape_of(p) != shape_of(q):
        raise ValueError("P and Q must have the same shape")
    rows = [list(r) for r in p]
    n = sum(len(r) for r in rows)
    order = {}
    for r, row in enumerate(q):
        for c, entry in enumerate(row):
            order[entry] = (r, c)
    out: list[int] = []
    for step in range(n, 0, -1):
        r, c = order[step]
        x = rows[r].pop(c)
        for row in range(r - 1, -1, -1):
            target = rows[row]
            # reverse bumping: displace the rightmost entry smaller than x
            for i in range(len(target) - 1, -1, -1):
                if target[i] < x:
                    target[i], x = x, target[i]
                    break
        out.append(x)
    return tuple(reversed(out))


def shape_of(tableau: Tableau) -> Shape:
    return tuple(len(r) for r in tableau)


def is_standard(tableau: Tableau) -> bool:
    entries = sorted(x for row in tableau for x in row)
    n = len(entries)
    if entries != list(range(1, n + 1)):
        return False
    for row in tableau:
        if any(row[i] >= row[i + 1] for i in range(len(row) - 1)):
            return False
    for r in range(1, len(tableau)):
        if len(tableau[r]) > len(tableau[r - 1]):
            return False
        if any(tableau[r][c] <= tableau[r - 1][c] for c in range(len(tableau[r]))):
            return False
    return True


# ---------------------------------------------------------------------------
# Knuth moves

def knuth_moves(perm: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """All applicable elementary Knuth moves (K_i, result), K_i touching
    positions i-1, i, i+1 for 1 < i < n (1-based)."""
    n = len(perm)
    out = []
    for i in range(2, n):
        p, q, r = perm[i - 2], perm[i - 1], perm[i]
        line = list(perm)
        if min(q, r) < p < max(q, r):
            line[i - 1], line[i] = line[i], line[i - 1]
            out.append((i, tuple(line)))
        elif min(p, q) < r < max(p, q):
            line[i - 2], line[i - 1] = line[i - 1], line[i - 2]
            out.append((i, tuple(line)))
    return out


def knuth_equivalent(x: Sequence[int], y: Sequence[int]) -> bool:
    """Breadth-first search over Knuth moves, cross-asserted against the
    P-symbol criterion."""
    x, y = tuple(x), tuple(y)
    seen = {x}
    frontier = [x]
    found = x == y
    while frontier and not found:
        nxt = []
        for w in frontier:
            for _, u in knuth_moves(w):
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
                    if u == y:
                        found = True
        frontier = nxt
    same_p = rs_correspondence(x)[0] == rs_correspondence(y)[0]
    if found != same_p:
        raise AssertionError("Knuth reachability disagrees with P-symbols")
    return found


# ---------------------------------------------------------------------------
# shapes, hooks, special tableaux

def hook_length_count(shape: Sequence[int]) -> int:
    """Number of standard tableaux of the shape, by the hook length formula."""
    shape = tuple(shape)
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)):
        raise ValueError("shape must be weakly decreasing")
    n = sum(shape)
    cols = [sum(1 for r in shape if r > c) for c in range(shape[0])] if shape else []
    prod = 1
    for i, row_len in enumerate(shape):
        for j in range(row_len):
            prod *= (row_len - j) + (cols[j] - i) - 1
    return factorial(n) // prod


def enumerate_standard_tableaux(shape: Sequence[int]) -> list[Tableau]:
    """All standard tableaux of a shape, by backtracking (count oracle for
    the hook length formula)."""
    shape = tuple(shape)
    n = sum(shape)
    rows: list[list[int]] = [[] for _ in shape]
    out: list[Tableau] = []

    def place(step: int) -> None:
        if step > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for r, row in enumerate(rows):
            c = len(row)
            if c >= shape[r]:
                continue
            if r > 0 and len(rows[r - 1]) <= c:
                continue
            row.append(step)
            place(step + 1)
            row.pop()

    place(1)
    return out


def column_superstandard(shape: Sequence[int]) -> Tableau:
    """Fill columns left to right, each top to bottom, with 1, 2, 3, ..."""
    shape = tuple(shape)
    if not shape:
        return ()
    cols = [sum(1 for r in shape if r > c) for c in range(shape[0])]
    rows = [[0] * r for r in shape]
    value = 1
    for c, height in enumerate(cols):
        for r in range(height):
            rows[r][c] = value
            value += 1
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# the cell theorem in type A

def perm_of_element(system: CoxeterSystem, w: int) -> tuple[int, ...]:
    return perm_from_word(system.rank + 1, system.words[w])


def element_of_perm(system: CoxeterSystem, perm: Sequence[int]) -> int:
    return system.word_to_id(perm_to_word(perm))


def verify_typea_cell_theorem(system: CoxeterSystem, table: PCanTable,
                              kl: KLTable,
                              partitions: dict[str, CellPartition] | None = None
                              ) -> Report:
    """Cells of S_n against Robinson-Schensted fibers and the counting
    corollaries."""
    n = system.rank + 1
    if partitions is None:
        partitions = {side: compute_cells(table, kl, side)
                      for side in ("left", "right", "two-sided")}
    perms = {w: perm_of_element(system, w) for w in system.elements()}
    rs = {w: rs_correspondence(p) for w, p in perms.items()}

    bad: list[str] = []
    checked = 0

    def fibers(key) -> set[frozenset[int]]:
        groups: dict[object, set[int]] = {}
        for w in system.elements():
            groups.setdefault(key(w), set()).add(w)
        return {frozenset(g) for g in groups.values()}

    expected = {
        "left": fibers(lambda w: rs[w][1]),
        "right": fibers(lambda w: rs[w][0]),
        "two-sided": fibers(lambda w: shape_of(rs[w][0])),
    }
    for side, part in partitions.items():
        checked += 1
        if part.as_sets() != expected[side]:
            bad.append(f"{side} cells do not match the RS fibers")

    invs = {element_of_perm(system, p) for p in involutions(n)}
    checked += 1
    if len(partitions["left"].cells) != len(invs):
        bad.append("left cell count differs from the involution count")
    for i, cell in enumerate(partitions["left"].cells):
        checked += 1
        if len(cell & invs) != 1:
            bad.append(f"left cell {i} contains {len(cell & invs)} involutions")

    two_of = partitions["two-sided"].cell_of
    for cl in partitions["left"].cells:
        for cr in partitions["right"].cells:
            same_two = two_of[next(iter(cl))] == two_of[next(iter(cr))]
            checked += 1
            if len(cl & cr) != (1 if same_two else 0):
                bad.append("left/right intersection rule fails")

    for i, two_cell in enumerate(partitions["two-sided"].cells):
        shape = shape_of(rs[next(iter(two_cell))][0])
        f_pi = hook_length_count(shape)
        lefts = {partitions["left"].cell_of[w] for w in two_cell}
        checked += 2
        if len(lefts) != f_pi:
            bad.append(f"two-sided cell {i} has {len(lefts)} left cells, "
                       f"hook count {f_pi}")
        if any(len(partitions["left"].cells[j]) != f_pi for j in lefts):
            bad.append(f"left cell size in two-sided cell {i} differs from "
                       f"hook count {f_pi}")
    return Report(f"type-A cell theorem n={n}", bad, checked)
