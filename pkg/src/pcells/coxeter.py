"""Finite crystallographic Coxeter groups.

A group is built either from a generalized Cartan matrix (integer matrix
with 2 on the diagonal and non-positive entries off it) or from a Coxeter
matrix with bond orders in {2, 3, 4, 6, inf}.  The Cartan matrix determines
bond orders by the product rule: m(s,t) = 2, 3, 4, 6 or inf according to
whether a(s,t) * a(t,s) is 0, 1, 2, 3 or >= 4.

Elements are identified through the exact integer geometric representation:
generator s acts on the root lattice by s(alpha_t) = alpha_t - a(s,t) alpha_s,
two words are equal iff their matrices agree, and s is a right descent of w
iff the column w(alpha_s) is a negative root.  Enumeration is breadth-first
by length, so element ids are stable: id 0 is the identity and ids increase
with length.  All downstream tables (Kazhdan-Lusztig polynomials, canonical
basis tables, cell graphs) are keyed by these dense ids.

Words at the API boundary are either tuples of 0-based generator indices or
"digit strings" such as "23212" meaning s2 s3 s2 s1 s2 under 1-based labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]

CRYSTALLOGRAPHIC_ORDERS = {2, 3, 4, 6}

# Bond order in {2,3,4,6} -> off-diagonal Cartan pair used when only a
# Coxeter matrix is supplied.  Any realization of the right bond order
# yields a faithful reflection representation, so the choice is free.
_CARTAN_FOR_ORDER = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3)}


class GroupTooLargeError(RuntimeError):
    """Raised when closure exceeds the configured element cap."""


def cartan_to_coxeter(cartan: Sequence[Sequence[int]]) -> list[list[int]]:
    """Bond orders from a generalized Cartan matrix (0 encodes infinity)."""
    n = len(cartan)
    if any(len(row) != n for row in cartan):
        raise ValueError("Cartan matrix must be square")
    m = [[1] * n for _ in range(n)]
    for i in range(n):
        if cartan[i][i] != 2:
            raise ValueError("Cartan matrix must have 2 on the diagonal")
        for j in range(n):
            if i == j:
                continue
            if cartan[i][j] > 0:
                raise ValueError("off-diagonal Cartan entries must be <= 0")
            prod = cartan[i][j] * cartan[j][i]
            if prod == 0:
                m[i][j] = 2
            elif prod == 1:
                m[i][j] = 3
            elif prod == 2:
                m[i][j] = 4
            elif prod == 3:
                m[i][j] = 6
            else:
                m[i][j] = 0
    return m


def coxeter_to_cartan(coxeter: Sequence[Sequence[int]]) -> list[list[int]]:
    """Synthesize a crystallographic Cartan matrix realizing bond orders."""
    n = len(coxeter)
    cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m = coxeter[i][j]
            if m != coxeter[j][i]:
                raise ValueError("Coxeter matrix must be symmetric")
            if m == 0:
                cartan[i][j] = cartan[j][i] = -2
                continue
            if m not in CRYSTALLOGRAPHIC_ORDERS:
                raise ValueError(f"bond order {m} is not crystallographic")
            a, b = _CARTAN_FOR_ORDER[m]
            cartan[i][j], cartan[j][i] = a, b
    return cartan


def cartan_matrix_of_type(label: str) -> list[list[int]]:
    """Cartan matrix for a type label like "A3", "B2", "C3" or "G2".

    The fixed small-rank matrices follow the conventions used throughout
    the shipped reference tables; in particular C3 has a(2,1) = -2 under
    1-based row/column labels, i.e. generator 1 is attached to the double
    bond and is the long root.
    """
    label = label.strip().upper()
    family, rank = label[0], label[1:]
    if not rank.isdigit():
        raise ValueError(f"bad type label {label!r}")
    n = int(rank)
    if family == "A" and n >= 1:
        c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n - 1):
            c[i][i + 1] = c[i + 1][i] = -1
        return c
    fixed = {
        "B2": [[2, -2], [-1, 2]],
        "G2": [[2, -1], [-3, 2]],
        "B3": [[2, -2, 0], [-1, 2, -1], [0, -1, 2]],
        "C3": [[2, -1, 0], [-2, 2, -1], [0, -1, 2]],
    }
    if label in fixed:
        return fixed[label]
    raise ValueError(f"unsupported type label {label!r}")


def parse_digits(digits: str) -> Word:
    """Parse a 1-based digit string like "23212" into a 0-based word."""
    if not all(ch.isdigit() and ch != "0" for ch in digits):
        raise ValueError(f"bad digit string {digits!r}")
    return tuple(int(ch) - 1 for ch in digits)


def word_digits(word: Iterable[int]) -> str:
    return "".join(str(s + 1) for s in word)


@dataclass(frozen=True)
class DecoratedSubexpression:
    """A 01-sequence through an expression, with its Bruhat-stroll decorations.

    Each position carries U/D (whether the stroll element would go up or down
    when multiplied by the current letter) paired with the chosen bit; the
    defect counts U0 minus D0 positions.
    """

    word: Word
    bits: tuple[int, ...]
    decorations: tuple[str, ...]
    terminal: int  # element id the subexpression multiplies to
    defect: int


class CoxeterSystem:
    """A fully enumerated finite crystallographic Coxeter group."""

    def __init__(self, cartan: Sequence[Sequence[int]], cap: int = 10**6,
                 label: str | None = None):
        self.cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        self.coxeter_matrix = tuple(tuple(row) for row in cartan_to_coxeter(self.cartan))
        self.rank = len(self.cartan)
        self.label = label
        self._enumerate(cap)
        self._bruhat_cache: dict[tuple[int, int], bool] = {}

    @classmethod
    def from_cartan(cls, cartan, cap: int = 10**6) -> "CoxeterSystem":
        return cls(cartan, cap=cap)

    @classmethod
    def from_coxeter_matrix(cls, coxeter, cap: int = 10**6) -> "CoxeterSystem":
        return cls(coxeter_to_cartan(coxeter), cap=cap)

    @classmethod
    def from_type(cls, label: str, cap: int = 10**6) -> "CoxeterSystem":
        return cls(cartan_matrix_of_type(label), cap=cap, label=label.upper())

    @classmethod
    def from_spec(cls, spec: dict, cap: int = 10**6) -> "CoxeterSystem":
        """Build from a JSON-style spec: {"type": "C3"} or {"cartan": [[..]]}."""
        if "type" in spec:
            return cls.from_type(spec["type"], cap=cap)
        if "cartan" in spec:
            return cls.from_cartan(spec["cartan"], cap=cap)
        raise ValueError("group spec needs a 'type' or 'cartan' key")

    # -- enumeration -------------------------------------------------------

    def _gen_matrix(self, s: int) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(
            tuple((1 if k == j else 0) - (self.cartan[s][j] if k == s else 0)
                  for j in range(n))
            for k in range(n)
        )

    @staticmethod
    def _mat_mul(a, b):
        n = len(a)
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )

    def _enumerate(self, cap: int) -> None:
        n = self.rank
        identity = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        gens = [self._gen_matrix(s) for s in range(n)]

        index = {identity: 0}
        matrices = [identity]
        self.words: list[Word] = [()]
        self.length: list[int] = [0]
        self.right: list[list[int]] = []

        frontier = 0
        while frontier < len(matrices):
            w = frontier
            frontier += 1
            row = [-1] * n
            for s in range(n):
                m = self._mat_mul(matrices[w], gens[s])
                ws = index.get(m)
                if ws is None:
                    ws = len(matrices)
                    if ws > cap:
                        raise GroupTooLargeError(
                            f"group exceeds cap of {cap} elements; "
                            "raise the cap or check the input matrix")
                    index[m] = ws
                    matrices.append(m)
                    self.words.append(self.words[w] + (s,))
                    self.length.append(self.length[w] + 1)
                row[s] = ws
            self.right.append(row)

        self.size = len(matrices)
        # s is a right descent of w iff w(alpha_s) is a negative root.
        self.right_descents: list[frozenset[int]] = [
            frozenset(s for s in range(n)
                      if all(c <= 0 for c in (col[s] for col in matrices[w])))
            for w in range(self.size)
        ]
        self.inverse: list[int] = [
            self.word_to_id(tuple(reversed(self.words[w]))) for w in range(self.size)
        ]
        self.left_descents: list[frozenset[int]] = [
            self.right_descents[self.inverse[w]] for w in range(self.size)
        ]

    # -- element access ------------------------------------------------------

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.size)

    def word_to_id(self, word: Iterable[int]) -> int:
        w = 0
        for s in word:
            if not 0 <= s < self.rank:
                raise ValueError(f"generator index {s} out of range for rank "
                                 f"{self.rank}")
            w = self.right[w][s]
        return w

    def id_to_word(self, w: int) -> Word:
        return self.words[w]

    def digits_to_id(self, digits: str) -> int:
        return self.word_to_id(parse_digits(digits))

    def id_to_digits(self, w: int) -> str:
        return word_digits(self.words[w])

    def right_mult(self, w: int, s: int) -> int:
        return self.right[w][s]

    def left_mult(self, s: int, w: int) -> int:
        return self.inverse[self.right[self.inverse[w]][s]]

    def mult(self, a: int, b: int) -> int:
        w = a
        for s in self.words[b]:
            w = self.right[w][s]
        return w

    def longest_element(self) -> int:
        return max(self.elements(), key=lambda w: self.length[w])

    def reduced_words(self, w: int) -> list[Word]:
        """All reduced expressions of w (by peeling right descents)."""
        if w == 0:
            return [()]
        out = []
        for s in self.right_descents[w]:
            for u in self.reduced_words(self.right[w][s]):
                out.append(u + (s,))
        return out

    # -- Bruhat order ---------------------------------------------------------

    def bruhat_leq(self, x: int, y: int) -> bool:
        """x <= y in Bruhat order, by the right-descent recursion."""
        if x == 0:
            return True
        if self.length[x] > self.length[y]:
            return False
        if x == y:
            return True
        key = (x, y)
        cached = self._bruhat_cache.get(key)
        if cached is not None:
            return cached
        s = next(iter(self.right_descents[y]))
        ys = self.right[y][s]
        if s in self.right_descents[x]:
            res = self.bruhat_leq(self.right[x][s], ys)
        else:
            res = self.bruhat_leq(x, ys)
        self._bruhat_cache[key] = res
        return res

    def bruhat_leq_by_subword(self, x: int, y: int) -> bool:
        """Subword characterization of Bruhat order (cross-check oracle)."""
        word_y = self.words[y]
        lx = self.length[x]

        def walk(pos: int, current: int, taken: int) -> bool:
            if taken == lx:
                return current == x
            if lx - taken > len(word_y) - pos:
                return False
            if walk(pos + 1, current, taken):
                return True
            nxt = self.right[current][word_y[pos]]
            if self.length[nxt] > self.length[current]:
                return walk(pos + 1, nxt, taken + 1)
            return False

        return walk(0, 0, 0)

    # -- parabolic subgroups ----------------------------------------------------

    def parabolic_elements(self, gens: Iterable[int]) -> frozenset[int]:
        """All elements of the standard parabolic subgroup generated by gens."""
        gens = sorted(set(gens))
        seen = {0}
        stack = [0]
        while stack:
            w = stack.pop()
            for s in gens:
                ws = self.right[w][s]
                if ws not in seen:
                    seen.add(ws)
                    stack.append(ws)
        return frozenset(seen)

    def minimal_coset_representatives(self, gens: Iterable[int],
                                      side: str = "right") -> frozenset[int]:
        """Minimal-length coset representatives.

        side="right" gives W^I for W / W_I (no right descents in I);
        side="left" the mirror for W_I \\ W.
        """
        gens = frozenset(gens)
        if side == "right":
            return frozenset(w for w in self.elements()
                             if not (self.right_descents[w] & gens))
        if side == "left":
            return frozenset(w for w in self.elements()
                             if not (self.left_descents[w] & gens))
        raise ValueError("side must be 'left' or 'right'")

    def coset_factorize(self, w: int, gens: Iterable[int]) -> tuple[int, int]:
        """Write w = x * y with x in W^I, y in W_I and lengths adding."""
        gens = frozenset(gens)
        suffix: list[int] = []
        x = w
        while True:
            ds = self.right_descents[x] & gens
            if not ds:
                break
            s = min(ds)
            suffix.append(s)
            x = self.right[x][s]
        y = self.word_to_id(reversed(suffix))
        return x, y

    def parabolic_subsystem(self, gens: Sequence[int]) -> "ParabolicEmbedding":
        """The standard parabolic as its own system, with the id embedding."""
        gens = sorted(set(gens))
        sub_cartan = [[self.cartan[i][j] for j in gens] for i in gens]
        sub = CoxeterSystem(sub_cartan, cap=self.size + 1)
        to_parent = [
            self.word_to_id(tuple(gens[s] for s in sub.words[w]))
            for w in sub.elements()
        ]
        return ParabolicEmbedding(sub=sub, gens=tuple(gens), to_parent=to_parent)

    # -- expressions and decorations ------------------------------------------

    def subexpressions(self, word: Sequence[int], target: int | None = None
                       ) -> list[DecoratedSubexpression]:
        """All decorated 01-sequences through word, optionally filtered
        by the element they multiply to."""
        word = tuple(word)
        out = []
        for bits in itertools.product((0, 1), repeat=len(word)):
            current = 0
            decorations = []
            defect = 0
            for s, bit in zip(word, bits):
                up = self.length[self.right[current][s]] > self.length[current]
                d = "U" if up else "D"
                decorations.append(f"{d}{bit}")
                if bit:
                    current = self.right[current][s]
                elif up:
                    defect += 1
                else:
                    defect -= 1
            if target is None or current == target:
                out.append(DecoratedSubexpression(
                    word=word, bits=bits, decorations=tuple(decorations),
                    terminal=current, defect=defect))
        return out

    # -- diagram automorphisms ---------------------------------------------------

    def is_cartan_automorphism(self, phi: Sequence[int]) -> bool:
        """Does the generator permutation phi preserve the Cartan matrix?"""
        if sorted(phi) != list(range(self.rank)):
            return False
        return all(self.cartan[phi[s]][phi[t]] == self.cartan[s][t]
                   for s in range(self.rank) for t in range(self.rank))

    def apply_diagram_automorphism(self, phi: Sequence[int], w: int) -> int:
        """Image of w under the automorphism induced by phi."""
        if not self.is_cartan_automorphism(phi):
            raise ValueError("permutation does not preserve the Cartan matrix")
        return self.word_to_id(tuple(phi[s] for s in self.words[w]))


@dataclass(frozen=True)
class ParabolicEmbedding:
    """A standard parabolic subgroup together with its inclusion into W."""

    sub: CoxeterSystem
    gens: tuple[int, ...]
    to_parent: list[int]

    def parent_to_sub(self) -> dict[int, int]:
        return {p: w for w, p in enumerate(self.to_parent)}
