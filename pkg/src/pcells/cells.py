"""Cells of the canonical basis: preorders, partitions, graphs.

The left/right cell preorder is generated by one-generator multiplications:
there is an elementary relation y -> x (meaning x lies below y) whenever
B_x appears with nonzero coefficient in B_y C_s for some generator s (right
side; the mirror for left).  Cells are the strongly connected components of
the elementary-relation graph, the two-sided preorder uses the union of
both graphs, and the condensation DAG (kept transitively reduced for
display, with full reachability for queries) is the Hasse diagram of the
induced order on cells.

Also here: the descent and inverse-duality consistency checks, weakly
right-connected components and right-minimal elements, the decomposition
criterion comparing a positive-characteristic table against the p = 0
cells, and coloured W-graphs of cell modules with their defining-relation
verification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .coxeter import CoxeterSystem
from .hecke import KLTable
from .laurent import GAUSS, ONE, LaurentPoly
from .pcanonical import PCanTable, Report, restrict_to_parabolic, structure_coefficients

Graph = dict[int, dict[int, LaurentPoly]]


# ---------------------------------------------------------------------------
# graph utilities

def strongly_connected_components(vertices: Sequence[int],
                                  succ: Mapping[int, Iterable[int]]
                                  ) -> list[list[int]]:
    """Tarjan's algorithm, iterative.  Components in reverse topological
    order (sources last)."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0

    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def transitive_reduction(n: int, edges: set[tuple[int, int]],
                         reach: list[set[int]]) -> set[tuple[int, int]]:
    """Remove DAG edges implied by longer paths."""
    reduced = set()
    for (u, v) in edges:
        if not any(w != u and w != v and v in reach[w]
                   for w in range(n) if (u, w) in edges):
            reduced.add((u, v))
    return reduced


# ---------------------------------------------------------------------------
# cell partitions

@dataclass
class CellPartition:
    """A partition of the group into cells plus the condensation of the
    preorder.  Cells are ordered by (minimum element length, minimum id);
    downsets give full reachability, hasse_edges the reduced diagram."""

    side: str
    prime: int
    cells: tuple[frozenset[int], ...]
    cell_of: dict[int, int]
    hasse_edges: frozenset[tuple[int, int]]
    downsets: tuple[frozenset[int], ...]  # cell indices <= each cell

    def cell_leq(self, i: int, j: int) -> bool:
        """Is cell i below-or-equal cell j in the preorder?"""
        return i in self.downsets[j]

    def leq(self, x: int, y: int) -> bool:
        """x <= y in the element preorder."""
        return self.cell_of[x] in self.downsets[self.cell_of[y]]

    def cell_index_of(self, elements: Iterable[int]) -> int:
        """Index of the cell equal to the given element set (KeyError if none)."""
        target = frozenset(elements)
        for i, c in enumerate(self.cells):
            if c == target:
                return i
        raise KeyError(f"no cell equals {sorted(target)}")

    def as_sets(self) -> set[frozenset[int]]:
        return set(self.cells)

    def to_json_obj(self, system: CoxeterSystem) -> dict:
        return {
            "side": self.side,
            "p": self.prime,
            "cells": [sorted(system.id_to_digits(w) for w in c) for c in self.cells],
            "edges": sorted([i, j] for (i, j) in self.hasse_edges),
        }

    def to_dot(self, system: CoxeterSystem, name: str = "cells") -> str:
        lines = [f"digraph {name} {{"]
        for i, c in enumerate(self.cells):
            label = "{" + ", ".join(
                sorted((system.id_to_digits(w) or "e") for w in c)) + "}"
            lines.append(f'  c{i} [label="{label}"];')
        for (i, j) in sorted(self.hasse_edges):
            lines.append(f"  c{i} -> c{j};")
        lines.append("}")
        return "\n".join(lines)


def elementary_relations(table: PCanTable, kl: KLTable, side: str = "right"
                         ) -> Graph:
    """Labelled elementary-relation graph: edge y -> x with label mu^x(y, s)
    summed over generators (the descent self-loops are included)."""
    sys_ = table.system
    graph: Graph = {y: {} for y in sys_.elements()}
    for y in sys_.elements():
        row = graph[y]
        for s in range(sys_.rank):
            for x, c in structure_coefficients(table, kl, y, s, side).items():
                prev = row.get(x)
                row[x] = c if prev is None else prev + c
    return graph


def _partition_from_graph(system: CoxeterSystem, graph: Graph, side: str,
                          prime: int) -> CellPartition:
    succ = {y: [x for x in row if x != y] for y, row in graph.items()}
    comps = strongly_connected_components(list(system.elements()), succ)
    comps.sort(key=lambda c: (min(system.length[w] for w in c), min(c)))
    cells = tuple(frozenset(c) for c in comps)
    cell_of = {w: i for i, c in enumerate(cells) for w in c}

    n = len(cells)
    edges = set()
    for y, row in graph.items():
        for x in row:
            i, j = cell_of[y], cell_of[x]
            if i != j:
                edges.add((i, j))
    children: list[list[int]] = [[] for _ in range(n)]
    for (i, j) in edges:
        children[i].append(j)
    reach: list[set[int]] = [set() for _ in range(n)]

    def fill(i: int) -> set[int]:
        if reach[i]:
            return reach[i]
        acc = {i}
        for j in children[i]:
            acc |= fill(j)
        reach[i] = acc
        return acc

    for i in range(n):
        fill(i)
    hasse = transitive_reduction(n, edges, reach)
    return CellPartition(side=side, prime=prime, cells=cells, cell_of=cell_of,
                         hasse_edges=frozenset(hasse),
                         downsets=tuple(frozenset(r) for r in reach))


def compute_cells(table: PCanTable, kl: KLTable, side: str = "right"
                  ) -> CellPartition:
    """Cells of the given side; "two-sided" unions the left and right
    elementary graphs before condensing."""
    if side in ("left", "right"):
        return _partition_from_graph(table.system,
                                     elementary_relations(table, kl, side),
                                     side, table.prime)
    if side in ("two-sided", "lr", "2"):
        left = elementary_relations(table, kl, "left")
        right = elementary_relations(table, kl, "right")
        merged: Graph = {y: dict(row) for y, row in right.items()}
        for y, row in left.items():
            tgt = merged[y]
            for x, c in row.items():
                prev = tgt.get(x)
                tgt[x] = c if prev is None else prev + c
        return _partition_from_graph(table.system, merged, "two-sided",
                                     table.prime)
    raise ValueError("side must be 'left', 'right' or 'two-sided'")


# ---------------------------------------------------------------------------
# structural checks on partitions

def check_descent_invariant(partition: CellPartition, system: CoxeterSystem
                            ) -> Report:
    """Right-preorder relations shrink left descent sets: y <= x implies
    the left descents of x are contained in those of y (mirror for left);
    consequently each fixed-descent-set stratum is a union of cells."""
    if partition.side == "right":
        desc = system.left_descents
    elif partition.side == "left":
        desc = system.right_descents
    else:
        raise ValueError("descent check applies to one-sided partitions")
    bad: list[str] = []
    checked = 0
    cell_desc: list[frozenset[int] | None] = []
    for i, cell in enumerate(partition.cells):
        ds = {desc[w] for w in cell}
        if len(ds) != 1:
            bad.append(f"cell {i} mixes descent sets {sorted(map(sorted, ds))}")
            cell_desc.append(None)
        else:
            cell_desc.append(next(iter(ds)))
        checked += len(cell)
    for j in range(len(partition.cells)):
        for i in partition.downsets[j]:
            checked += 1
            if i == j or cell_desc[i] is None or cell_desc[j] is None:
                continue
            if not (cell_desc[j] <= cell_desc[i]):
                bad.append(f"cells {i} <= {j} violate descent inclusion")
    return Report(f"descent-invariant[{partition.side}]", bad, checked)


def inverse_duality_check(left: CellPartition, right: CellPartition,
                          system: CoxeterSystem) -> Report:
    """x <= y on one side iff x^-1 <= y^-1 on the other, on full preorders."""
    bad: list[str] = []
    checked = 0
    inv = system.inverse
    for x in system.elements():
        for y in system.elements():
            checked += 1
            if left.leq(x, y) != right.leq(inv[x], inv[y]):
                bad.append(
                    f"{system.id_to_digits(x)} <=L {system.id_to_digits(y)} "
                    f"is {left.leq(x, y)} but inverses give "
                    f"{right.leq(inv[x], inv[y])}")
    return Report("inverse-duality", bad, checked)


# ---------------------------------------------------------------------------
# weak-order combinatorics

def right_connected_components(system: CoxeterSystem, subset: Iterable[int]
                               ) -> list[frozenset[int]]:
    """Components of the subset under 'differ by one simple reflection on
    the right, both endpoints inside'."""
    subset = set(subset)
    comps = []
    todo = set(subset)
    while todo:
        seed = todo.pop()
        comp = {seed}
        stack = [seed]
        while stack:
            w = stack.pop()
            for s in range(system.rank):
                u = system.right[w][s]
                if u in subset and u not in comp:
                    comp.add(u)
                    todo.discard(u)
                    stack.append(u)
        comps.append(frozenset(comp))
    return comps


def right_minimal_elements(system: CoxeterSystem, subset: Iterable[int]
                           ) -> frozenset[int]:
    """Elements not reachable from a shorter subset element along an
    increasing right-multiplication chain inside the subset; equivalently,
    with no weak-order predecessor in the subset."""
    subset = set(subset)
    return frozenset(
        w for w in subset
        if not any(system.right[w][s] in subset for s in system.right_descents[w])
    )


def decomposition_criterion(table: PCanTable, kl: KLTable,
                            kl_right: CellPartition) -> dict[int, Report]:
    """For each KL right cell C, check the right-minimal hypothesis: every
    nonzero m(y, x) with x right-minimal in C has y below x in the p = 0
    right preorder.  When the hypothesis holds on C and on every cell below
    it, C must decompose into cells of the table's prime; that conclusion
    is verified too and reported as part of each cell's checks."""
    sys_ = table.system
    hypothesis: dict[int, bool] = {}
    out: dict[int, Report] = {}
    for i, cell in enumerate(kl_right.cells):
        bad: list[str] = []
        checked = 0
        for x in right_minimal_elements(sys_, cell):
            for y in table.rows.get(x, {}):
                checked += 1
                if not kl_right.leq(y, x):
                    bad.append(
                        f"m({sys_.id_to_digits(y)}, {sys_.id_to_digits(x)}) != 0 "
                        f"but {sys_.id_to_digits(y)} is not below in the "
                        f"p=0 right preorder")
        hypothesis[i] = not bad
        out[i] = Report(f"decomposition-criterion cell {i}", bad, checked)

    p_right = compute_cells(table, kl, "right")
    for i, cell in enumerate(kl_right.cells):
        if not all(hypothesis[j] for j in kl_right.downsets[i]):
            continue
        pieces = {p_right.cell_of[w] for w in cell}
        union = frozenset().union(*(p_right.cells[j] for j in pieces))
        out[i].checked += 1
        if union != cell:
            out[i].violations.append(
                "criterion applies below this cell but the cell is not a "
                "union of p-cells")
    return out


# ---------------------------------------------------------------------------
# coloured W-graphs

@dataclass
class ColouredWGraph:
    """A based module over the Hecke algebra presented as a decorated graph.

    Vertices carry descent subsets I_x; a directed edge (x, y) carries one
    Laurent label per generator moving x to y.  The generator action is
    tau_s(x) = (v + v^-1) x when s is in I_x, else the labelled sum over
    out-edges whose target has s in its descent set.
    """

    side: str
    vertices: tuple[int, ...]
    descent_sets: dict[int, frozenset[int]]
    edges: dict[tuple[int, int], dict[int, LaurentPoly]]

    def tau_matrix(self, s: int) -> list[list[LaurentPoly]]:
        """Column-convention matrix of tau_s on the free module over the
        vertices."""
        n = len(self.vertices)
        pos = {v: i for i, v in enumerate(self.vertices)}
        zero = LaurentPoly()
        mat = [[zero] * n for _ in range(n)]
        for j, x in enumerate(self.vertices):
            if s in self.descent_sets[x]:
                mat[j][j] = GAUSS
                continue
            for (a, b), labels in self.edges.items():
                if a == x and s in labels and s in self.descent_sets[b]:
                    mat[pos[b]][j] = mat[pos[b]][j] + labels[s]
        return mat

    def to_dot(self, system: CoxeterSystem, name: str = "wgraph") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            tag = system.id_to_digits(v) or "e"
            ds = "".join(str(s + 1) for s in sorted(self.descent_sets[v]))
            lines.append(f'  n{v} [label="{tag} ({ds})"];')
        for (a, b) in sorted(self.edges):
            labels = self.edges[(a, b)]
            text = ", ".join(f"s{s + 1}: {labels[s]}" for s in sorted(labels))
            lines.append(f'  n{a} -> n{b} [label="{text}"];')
        lines.append("}")
        return "\n".join(lines)


def subquotient_wgraph(table: PCanTable, kl: KLTable, elements: Iterable[int],
                       side: str = "left") -> ColouredWGraph:
    """The coloured W-graph of the generator action on a subquotient
    spanned by canonical basis elements indexed by the given set."""
    sys_ = table.system
    vertex_set = frozenset(elements)
    vertices = tuple(sorted(vertex_set, key=lambda w: (sys_.length[w], w)))
    desc = sys_.left_descents if side == "left" else sys_.right_descents
    descent_sets = {v: desc[v] for v in vertices}
    edges: dict[tuple[int, int], dict[int, LaurentPoly]] = {}
    for x in vertices:
        for s in range(sys_.rank):
            if s in desc[x]:
                continue
            for y, c in structure_coefficients(table, kl, x, s, side).items():
                if y == x or y not in vertex_set:
                    continue
                edges.setdefault((x, y), {})[s] = c
    return ColouredWGraph(side=side, vertices=vertices,
                          descent_sets=descent_sets, edges=edges)


def extract_wgraph(partition: CellPartition, cell_index: int, table: PCanTable,
                   kl: KLTable) -> ColouredWGraph:
    """The coloured W-graph of one cell (side taken from the partition)."""
    if partition.side not in ("left", "right"):
        raise ValueError("W-graphs come from one-sided cells")
    return subquotient_wgraph(table, kl, partition.cells[cell_index],
                              partition.side)


def _mat_mul(a, b):
    n = len(a)
    zero = LaurentPoly()
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            c = a[i][k]
            if not c:
                continue
            row = b[k]
            for j in range(n):
                if row[j]:
                    out[i][j] = out[i][j] + c * row[j]
    return out


def verify_wgraph_relations(graph: ColouredWGraph, system: CoxeterSystem
                            ) -> Report:
    """Check that the tau matrices define a Hecke-algebra module: each
    tau_s satisfies tau^2 = (v + v^-1) tau, and the shifted operators
    T_s = tau_s - v satisfy the braid relations."""
    n = len(graph.vertices)
    zero, one = LaurentPoly(), ONE
    bad: list[str] = []
    checked = 0
    taus = [graph.tau_matrix(s) for s in range(system.rank)]
    shifted = []
    for s, tau in enumerate(taus):
        sq = _mat_mul(tau, tau)
        expect = [[GAUSS * c for c in row] for row in tau]
        checked += 1
        if sq != expect:
            bad.append(f"tau_{s + 1}^2 != (v + v^-1) tau_{s + 1}")
        shifted.append([
            [tau[i][j] - (LaurentPoly.v(1) if i == j else zero) for j in range(n)]
            for i in range(n)
        ])
    for s in range(system.rank):
        for t in range(s + 1, system.rank):
            m = system.coxeter_matrix[s][t]
            if m == 0:
                continue
            a = [[one if i == j else zero for j in range(n)] for i in range(n)]
            b = [[one if i == j else zero for j in range(n)] for i in range(n)]
            x, y = s, t
            for _ in range(m):
                a = _mat_mul(a, shifted[x])
                b = _mat_mul(b, shifted[y])
                x, y = y, x
            checked += 1
            if a != b:
                bad.append(f"braid relation fails for pair ({s + 1}, {t + 1})")
    return Report("wgraph-relations", bad, checked)


def check_parabolic_compatibility(table: PCanTable, kl: KLTable,
                                  gens: Sequence[int]) -> Report:
    """The transport of the right preorder along a finitary subset I:
    for y, z in W_I, z <= y in W_I iff xz <= xy in W for every x in W^I
    (the subgroup preorder computed with the restricted table)."""
    from .hecke import compute_kl_table

    sys_ = table.system
    emb = sys_.parabolic_subsystem(gens)
    sub_kl = compute_kl_table(emb.sub)
    sub_table = restrict_to_parabolic(table, emb)
    sub_right = compute_cells(sub_table, sub_kl, "right")
    w_right = compute_cells(table, kl, "right")
    reps = sorted(sys_.minimal_coset_representatives(gens, "right"))

    bad: list[str] = []
    checked = 0
    for zs in emb.sub.elements():
        for ys in emb.sub.elements():
            inner = sub_right.leq(zs, ys)
            z, y = emb.to_parent[zs], emb.to_parent[ys]
            outer = all(w_right.leq(sys_.mult(x, z), sys_.mult(x, y))
                        for x in reps)
            checked += 1
            if inner != outer:
                bad.append(
                    f"z={sys_.id_to_digits(z) or 'e'} y={sys_.id_to_digits(y) or 'e'}: "
                    f"subgroup says {inner}, translated cosets say {outer}")
    return Report(f"parabolic-compatibility I={sorted(gens)}", bad, checked)


# ---------------------------------------------------------------------------
# parabolic propagation of (non-)decomposition

def propagate_nondecomposition(system: CoxeterSystem, table: PCanTable,
                               kl: KLTable, gens: Sequence[int]) -> Report:
    """Containment checks behind the lifting of cell structure from a
    standard parabolic subgroup H to W.

    Verifies: (a) each KL right cell C of H induces C.X (X the minimal
    representatives of H\\W) as a union of KL right cells of W; (b) each
    right cell of H at the table's prime is contained in a single right
    cell of W; and (c) if some cell of H meets two KL cells of H, the
    containing W-cell meets the two disjoint induced unions, so the KL
    cells of W do not decompose either.
    """
    from .hecke import compute_kl_table

    emb = system.parabolic_subsystem(gens)
    sub = emb.sub
    sub_kl = compute_kl_table(sub)
    sub_table = restrict_to_parabolic(table, emb)
    from .pcanonical import identity_table

    sub_kl_cells = compute_cells(identity_table(sub), sub_kl, "right")
    sub_p_cells = compute_cells(sub_table, sub_kl, "right")
    w_kl_cells = compute_cells(identity_table(system), kl, "right")
    w_p_cells = compute_cells(table, kl, "right")

    x_reps = sorted(system.minimal_coset_representatives(gens, "left"))
    bad: list[str] = []
    checked = 0

    induced: list[frozenset[int]] = []
    for c in sub_kl_cells.cells:
        cx = frozenset(system.mult(emb.to_parent[y], x)
                       for y in c for x in x_reps)
        induced.append(cx)
        touched = {w_kl_cells.cell_of[w] for w in cx}
        union = frozenset().union(*(w_kl_cells.cells[i] for i in touched))
        checked += 1
        if union != cx:
            bad.append(f"C.X for H-cell {sorted(c)} is not a union of W-cells")

    lifted_cell: dict[int, int] = {}
    for i, c in enumerate(sub_p_cells.cells):
        parents = {w_p_cells.cell_of[emb.to_parent[y]] for y in c}
        checked += 1
        if len(parents) != 1:
            bad.append(f"H p-cell {i} spreads over {len(parents)} W p-cells")
        else:
            lifted_cell[i] = next(iter(parents))

    for i, c in enumerate(sub_p_cells.cells):
        kl_indices = {sub_kl_cells.cell_of[y] for y in c}
        if len(kl_indices) < 2 or i not in lifted_cell:
            continue
        big = w_p_cells.cells[lifted_cell[i]]
        for j in kl_indices:
            checked += 1
            if not (big & induced[j]):
                bad.append(
                    f"witness cell {i} misses the induced union of H-cell {j}")
    return Report(f"nondecomposition-propagation I={sorted(gens)}", bad, checked)
