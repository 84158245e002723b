"""Verification suites against the shipped reference tables.

Each suite returns a list of Reports; a suite passes when every report
does.  The suites cover the reference cell tables (B2, G2, C3 at p = 0 and
p = 2), the type A cell theorem, the structural invariants of cells and
canonical tables, the star/string relation checkers, and the tau
invariants.  The command line drives these suites; the acceptance tests
call them directly.
"""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

from .cells import (
    CellPartition,
    check_descent_invariant,
    check_parabolic_compatibility,
    compute_cells,
    decomposition_criterion,
    extract_wgraph,
    inverse_duality_check,
    propagate_nondecomposition,
    subquotient_wgraph,
    verify_wgraph_relations,
)
from .coxeter import CoxeterSystem
from .hecke import KLTable, compute_kl_table
from .pcanonical import (
    PCanTable,
    Report,
    identity_table,
    load_fixture,
    validate_table,
    verify_parabolic_factorization,
)
from .stars import (
    check_base_change_relations,
    check_coefficient_sliding,
    check_string_vanishing,
    check_structure_coefficient_relations,
    d_r_set,
    p_bound_ok,
    star_closure_check,
    star_right,
    tau_partition,
    tau_tilde_partition,
)
from .typea import verify_typea_cell_theorem

GOLDEN_DIR = Path(__file__).parent / "data" / "golden"


def load_golden(name: str) -> dict:
    with open(GOLDEN_DIR / f"{name}.json") as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def get_system(label: str) -> CoxeterSystem:
    return CoxeterSystem.from_type(label)


@lru_cache(maxsize=None)
def get_kl(label: str) -> KLTable:
    return compute_kl_table(get_system(label))


@lru_cache(maxsize=None)
def get_table(label: str, prime: int) -> PCanTable:
    system, kl = get_system(label), get_kl(label)
    if prime == 0:
        return identity_table(system)
    fixtures = {("C3", 2): "c3_p2", ("B2", 2): "b2_p2"}
    name = fixtures.get((label.upper(), prime))
    if name is None:
        raise ValueError(f"no shipped table for type {label} at p = {prime}")
    return load_fixture(name, system, kl)


@lru_cache(maxsize=None)
def get_cells(label: str, prime: int, side: str) -> CellPartition:
    return compute_cells(get_table(label, prime), get_kl(label), side)


def _elements(system: CoxeterSystem, words: list[str]) -> frozenset[int]:
    return frozenset(
        0 if w == "e" else system.digits_to_id(w) for w in words)


def _compare_partition(system: CoxeterSystem, partition: CellPartition,
                       named: dict[str, list[str]], hasse: list[list[str]],
                       what: str) -> Report:
    bad: list[str] = []
    expected = {name: _elements(system, ws) for name, ws in named.items()}
    if partition.as_sets() != set(expected.values()):
        for name, cell in expected.items():
            if cell not in partition.as_sets():
                bad.append(f"missing cell {name}")
        for cell in partition.as_sets():
            if cell not in expected.values():
                bad.append(
                    "unexpected cell {"
                    + ", ".join(sorted(system.id_to_digits(w) or "e" for w in cell))
                    + "}")
        return Report(what, bad, 1)
    name_of = {partition.cell_index_of(cell): name
               for name, cell in expected.items()}
    got = {(name_of[i], name_of[j]) for (i, j) in partition.hasse_edges}
    want = {(a, b) for a, b in hasse}
    for e in sorted(got - want):
        bad.append(f"unexpected Hasse edge {e[0]} -> {e[1]}")
    for e in sorted(want - got):
        bad.append(f"missing Hasse edge {e[0]} -> {e[1]}")
    return Report(what, bad, 1 + len(want))


def _compare_two_sided_groups(system: CoxeterSystem, right: CellPartition,
                              two: CellPartition, named: dict[str, list[str]],
                              groups: list[list[str]], what: str) -> Report:
    bad: list[str] = []
    expected_groups = {
        frozenset().union(*(_elements(system, named[n]) for n in group))
        for group in groups
    }
    if two.as_sets() != expected_groups:
        bad.append("two-sided cells do not match the reference grouping")
    for cell in right.cells:
        owners = {two.cell_of[w] for w in cell}
        if len(owners) != 1:
            bad.append("a right cell crosses two-sided cells")
    return Report(what, bad, len(groups) + len(right.cells))


# ---------------------------------------------------------------------------
# golden suites

def verify_b2() -> list[Report]:
    system = get_system("B2")
    g = load_golden("b2_kl")
    right = get_cells("B2", 0, "right")
    two = get_cells("B2", 0, "two-sided")
    return [
        _compare_partition(system, right, g["right_cells"], g["right_hasse"],
                           "B2 KL right cells + Hasse"),
        _compare_partition(system, two, g["two_sided_cells"], g["two_sided_hasse"],
                           "B2 KL two-sided cells + Hasse"),
    ]


def verify_g2() -> list[Report]:
    system = get_system("G2")
    g = load_golden("g2_kl")
    right = get_cells("G2", 0, "right")
    two = get_cells("G2", 0, "two-sided")
    out = [
        _compare_partition(system, right, g["right_cells"], g["right_hasse"],
                           "G2 KL right cells + Hasse"),
        _compare_partition(system, two, g["two_sided_cells"], g["two_sided_hasse"],
                           "G2 KL two-sided cells + Hasse"),
    ]
    # the middle two-sided cell is the set of nontrivial elements with a
    # unique reduced expression, split by left descent into the right cells
    unique_rex = frozenset(w for w in system.elements()
                           if w != 0 and len(system.reduced_words(w)) == 1)
    bad: list[str] = []
    mid = _elements(system, g["two_sided_cells"]["T_C"])
    if unique_rex != mid:
        bad.append("unique-reduced-expression set differs from the middle cell")
    for name in ("C_s", "C_t"):
        cell = _elements(system, g["right_cells"][name])
        descents = {system.left_descents[w] for w in cell}
        if len(descents) != 1 or not cell <= unique_rex:
            bad.append(f"{name} is not a fixed-descent slice of the set")
    out.append(Report("G2 unique-reduced-expression characterization", bad, 3))
    return out


def verify_c3_p0() -> list[Report]:
    system = get_system("C3")
    g = load_golden("c3_kl")
    right = get_cells("C3", 0, "right")
    two = get_cells("C3", 0, "two-sided")
    return [
        _compare_partition(system, right, g["right_cells"], g["right_hasse"],
                           "C3 KL right cells + Hasse"),
        _compare_two_sided_groups(system, right, two, g["right_cells"],
                                  g["two_sided_groups"],
                                  "C3 KL two-sided grouping"),
    ]


def verify_c3_p2() -> list[Report]:
    system, kl = get_system("C3"), get_kl("C3")
    table = get_table("C3", 2)
    g = load_golden("c3_p2_cells")
    right = get_cells("C3", 2, "right")
    two = get_cells("C3", 2, "two-sided")
    out = [
        _compare_partition(system, right, g["right_cells"], g["right_hasse"],
                           "C3 p=2 right cells + Hasse"),
        _compare_two_sided_groups(system, right, two, g["right_cells"],
                                  g["two_sided_groups"],
                                  "C3 p=2 two-sided grouping"),
    ]
    spec = g["subquotient_c6_c12"]
    graph = subquotient_wgraph(
        table, kl, [system.digits_to_id(w) for w in spec["elements"]],
        side="right")
    got = {
        (system.id_to_digits(a), s + 1, system.id_to_digits(b)):
            labels[s].to_pairs()
        for (a, b), labels in graph.edges.items() for s in labels
    }
    # compare at the element level: reference words may differ from the
    # canonical ones, so normalize through the group
    def norm(word: str) -> str:
        return system.id_to_digits(system.digits_to_id(word))

    want = {(norm(e["from"]), e["s"], norm(e["to"])): e["label"]
            for e in spec["edges"]}
    bad = []
    for key in sorted(set(got) | set(want)):
        if got.get(key) != want.get(key):
            bad.append(f"edge {key}: computed {got.get(key)}, reference {want.get(key)}")
    out.append(Report("C3 p=2 cell-module graph on C6 u C12", bad, len(want)))
    return out


def verify_typea(n: int) -> list[Report]:
    label = f"A{n - 1}"
    system, kl = get_system(label), get_kl(label)
    table = get_table(label, 0)
    parts = {side: get_cells(label, 0, side)
             for side in ("left", "right", "two-sided")}
    out = [verify_typea_cell_theorem(system, table, kl, parts)]

    from .typea import involutions
    bad = []
    counts = {1: 1, 2: 2, 3: 4, 4: 10, 5: 26, 6: 76}
    for k in range(1, n + 1):
        if k in counts and len(involutions(k)) != counts[k]:
            bad.append(f"involution count of S_{k} is not {counts[k]}")
    out.append(Report(f"involution counts up to S_{n}", bad, min(n, 6)))
    return out


def verify_hooks(max_n: int = 8) -> list[Report]:
    from .typea import enumerate_standard_tableaux, hook_length_count

    def partitions(n: int, cap: int | None = None):
        if n == 0:
            yield ()
            return
        cap = n if cap is None else min(cap, n)
        for first in range(cap, 0, -1):
            for rest in partitions(n - first, first):
                yield (first,) + rest

    bad = []
    checked = 0
    for n in range(1, max_n + 1):
        for shape in partitions(n):
            checked += 1
            if hook_length_count(shape) != len(enumerate_standard_tableaux(shape)):
                bad.append(f"hook count mismatch at shape {shape}")
    return [Report(f"hook lengths vs enumeration (n <= {max_n})", bad, checked)]


# ---------------------------------------------------------------------------
# invariant suite

def _invariant_reports(label: str, prime: int) -> list[Report]:
    system, kl = get_system(label), get_kl(label)
    table = get_table(label, prime)
    left = get_cells(label, prime, "left")
    right = get_cells(label, prime, "right")
    two = get_cells(label, prime, "two-sided")
    tag = f"{label} p={prime}"
    out = [
        Report(f"{tag} table invariants", validate_table(table, kl), 1),
        check_descent_invariant(right, system),
        check_descent_invariant(left, system),
        inverse_duality_check(left, right, system),
    ]
    bad = []
    if frozenset({0}) not in right.as_sets() or frozenset({0}) not in left.as_sets() \
            or frozenset({0}) not in two.as_sets():
        bad.append("the identity is not a singleton cell")
    for part in (left, right):
        for cell in part.cells:
            owners = {two.cell_of[w] for w in cell}
            if len(owners) != 1:
                bad.append(f"a {part.side} cell crosses two-sided cells")
    out.append(Report(f"{tag} identity cell + two-sided coarsening", bad,
                      2 + len(left.cells) + len(right.cells)))
    for r in out:
        r.name = f"{tag}: {r.name}" if not r.name.startswith(tag) else r.name
    return out


def verify_invariants() -> list[Report]:
    out: list[Report] = []
    for label, prime in (("A2", 0), ("A3", 0), ("B2", 0), ("B2", 2),
                         ("B3", 0), ("G2", 0), ("C3", 0), ("C3", 2)):
        out.extend(_invariant_reports(label, prime))
    return out


def verify_parabolic() -> list[Report]:
    out: list[Report] = []
    for label, prime in (("B3", 0), ("C3", 0), ("C3", 2)):
        system, kl = get_system(label), get_kl(label)
        table = get_table(label, prime)
        subsets = [[0], [1], [2], [0, 1], [0, 2], [1, 2]]
        for gens in subsets:
            rep = check_parabolic_compatibility(table, kl, gens)
            rep.name = f"{label} p={prime} {rep.name}"
            out.append(rep)
            rep = verify_parabolic_factorization(table, kl, gens)
            rep.name = f"{label} p={prime} {rep.name}"
            out.append(rep)
    rep = propagate_nondecomposition(get_system("C3"), get_table("C3", 2),
                                     get_kl("C3"), [0, 1])
    rep.name = f"C3 p=2 {rep.name}"
    out.append(rep)
    return out


# ---------------------------------------------------------------------------
# star/string suite

def _star_reports(label: str, prime: int) -> list[Report]:
    system, kl = get_system(label), get_kl(label)
    table = get_table(label, prime)
    left = get_cells(label, prime, "left")
    right = get_cells(label, prime, "right")
    pairs = [(r, t) for r in range(system.rank) for t in range(r + 1, system.rank)
             if system.coxeter_matrix[r][t] >= 3
             and p_bound_ok(prime, system.coxeter_matrix[r][t])]
    out: list[Report] = []
    for (r, t) in pairs:
        out.append(check_coefficient_sliding(table, kl, r, t))
        out.append(check_base_change_relations(table, kl, r, t))
        out.append(check_structure_coefficient_relations(table, kl, r, t))
        out.append(check_string_vanishing(table, kl, r, t))
        out.append(star_closure_check(left, right, system, r, t, prime))
        out.append(_wgraph_star_isomorphism(system, table, kl, left, r, t))
    out.append(_all_cell_wgraphs_satisfy_relations(system, table, kl, left))
    for rep in out:
        rep.name = f"{label} p={prime}: {rep.name}"
    return out


def _wgraph_star_isomorphism(system, table, kl, left: CellPartition,
                             r: int, t: int) -> Report:
    dr = d_r_set(system, r, t)
    bad: list[str] = []
    checked = 0
    for i, cell in enumerate(left.cells):
        if not cell <= dr:
            continue
        star = {x: star_right(system, x, r, t) for x in cell}
        image = frozenset(star.values())
        g = extract_wgraph(left, i, table, kl)
        try:
            j = left.cell_index_of(image)
        except KeyError:
            bad.append(f"star image of left cell {i} is not a cell")
            continue
        h = extract_wgraph(left, j, table, kl)
        checked += 1
        if any(g.descent_sets[x] != h.descent_sets[star[x]] for x in cell):
            bad.append(f"descent decoration not preserved on cell {i}")
        mapped = {(star[a], star[b]): labels for (a, b), labels in g.edges.items()}
        if mapped != h.edges:
            bad.append(f"edge labels not preserved on cell {i}")
    return Report(f"wgraph-star-isomorphism (r={r + 1}, t={t + 1})", bad, checked)


def _all_cell_wgraphs_satisfy_relations(system, table, kl,
                                        left: CellPartition) -> Report:
    bad: list[str] = []
    checked = 0
    for i in range(len(left.cells)):
        g = extract_wgraph(left, i, table, kl)
        rep = verify_wgraph_relations(g, system)
        checked += rep.checked
        if not rep.ok:
            bad.extend(f"cell {i}: {v}" for v in rep.violations)
    return Report("cell-wgraph Hecke relations", bad, checked)


def verify_stars() -> list[Report]:
    out: list[Report] = []
    for label in ("A3", "B3"):
        out.extend(_star_reports(label, 0))
    return out


# ---------------------------------------------------------------------------
# tau suite

def verify_tau() -> list[Report]:
    out: list[Report] = []
    for label in ("A2", "A3", "A4"):
        system = get_system(label)
        tau = tau_partition(system)
        left = get_cells(label, 0, "left")
        bad = []
        if tau.as_sets() != left.as_sets():
            bad.append("tau classes differ from the p=0 left cells")
        out.append(Report(f"{label}: tau classes = left cells", bad, 1))

    system = get_system("B3")
    left = get_cells("B3", 0, "left")
    for fn, name in ((tau_partition, "tau"), (tau_tilde_partition, "tau-tilde")):
        part = fn(system)
        bad = []
        for cell in left.cells:
            if len({part.class_of[w] for w in cell}) != 1:
                bad.append(f"a left cell crosses {name} classes")
        out.append(Report(f"B3: left cells refine {name} classes", bad,
                          len(left.cells)))

    # decomposition criterion: C12 of C3 at p = 2 fails the hypothesis,
    # every symmetric-group cell passes at p = 0
    # the right-minimal hypothesis fails exactly for C12 (its
    # minimal element 232123 has the term at 232, which sits strictly above)
    # and for C11, whose minimal element 21232 = 23212^-1 carries the
    # inverse-symmetric row; every other cell passes, C6 vacuously
    system, kl = get_system("C3"), get_kl("C3")
    table = get_table("C3", 2)
    kl_right = get_cells("C3", 0, "right")
    reports = decomposition_criterion(table, kl, kl_right)
    g = load_golden("c3_kl")
    failing = {kl_right.cell_index_of(_elements(system, g["right_cells"][n]))
               for n in ("C11", "C12")}
    c6_index = kl_right.cell_index_of(_elements(system, g["right_cells"]["C6"]))
    bad = []
    got_failing = {i for i, rep in reports.items() if not rep.ok}
    if got_failing != failing:
        bad.append(f"failing cells are {sorted(got_failing)}, "
                   f"expected {sorted(failing)}")
    if not reports[c6_index].ok:
        bad.append("C6 unexpectedly fails the hypothesis")
    out.append(Report("C3 p=2 decomposition criterion flags C12 (and C11)",
                      bad, len(reports)))

    for n in (3, 4):
        label = f"A{n - 1}"
        reports = decomposition_criterion(get_table(label, 0), get_kl(label),
                                          get_cells(label, 0, "right"))
        bad = [f"cell {i} fails" for i, rep in reports.items() if not rep.ok]
        out.append(Report(f"S_{n} p=0 decomposition criterion all pass", bad,
                          len(reports)))
    return out


# ---------------------------------------------------------------------------
# suite registry

def run_suite(name: str, typea_n: int = 5) -> list[Report]:
    if name == "b2":
        return verify_b2()
    if name == "g2":
        return verify_g2()
    if name == "c3":
        return verify_c3_p0() + verify_c3_p2()
    if name == "typea":
        out = []
        for n in range(3, typea_n + 1):
            out.extend(verify_typea(n))
        out.extend(verify_hooks(min(typea_n + 2, 8)))
        return out
    if name == "stars":
        return verify_stars() + verify_tau()
    if name == "parabolic":
        return verify_invariants() + verify_parabolic()
    if name == "all":
        out = []
        for suite in ("b2", "g2", "c3", "typea", "stars", "parabolic"):
            out.extend(run_suite(suite, typea_n=typea_n))
        return out
    raise ValueError(f"unknown suite {name!r}")
