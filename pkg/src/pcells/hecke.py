"""The Hecke algebra of a finite Coxeter system over Z[v, v^-1].

The standard basis {H_w} multiplies by

    H_s^2 = (v^-1 - v) H_s + 1,        H_x H_y = H_{xy} when lengths add,

and carries the bar involution (v -> v^-1, H_x -> inverse of H at x^-1) and
the anti-involution iota (H_x -> H at x^-1).  The Kazhdan-Lusztig basis
element C_x is the unique bar-invariant element of H_x + sum of v Z[v] H_y
over y < x; its coefficients h(y, x) and the mu-coefficients (coefficient
of v in h) are computed once per group and cached in a KLTable.

HeckeElt values are tagged with the basis they are expressed in ("std",
"kl", or "pcan"); arithmetic across different bases is a hard error, and
change_basis performs the exact unitriangular conversions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .coxeter import CoxeterSystem
from .laurent import GAUSS, ONE, LaurentPoly

STD, KL, PCAN = "std", "kl", "pcan"

_VINV_MINUS_V = LaurentPoly({-1: 1, 1: -1})
_V_MINUS_VINV = LaurentPoly({1: 1, -1: -1})


class BasisMismatchError(TypeError):
    """Arithmetic between elements expressed in different bases."""


@dataclass
class HeckeElt:
    """A finitely supported Z[v,v^-1]-combination of basis elements."""

    system: CoxeterSystem
    basis: str
    coeffs: dict[int, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {w: c for w, c in self.coeffs.items() if c}

    def _check(self, other: "HeckeElt") -> None:
        if self.system is not other.system:
            raise ValueError("elements live over different groups")
        if self.basis != other.basis:
            raise BasisMismatchError(
                f"cannot combine {self.basis!r} with {other.basis!r}; "
                "convert with change_basis first")

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        self._check(other)
        return HeckeElt(self.system, self.basis,
                        _add_dicts(self.coeffs, other.coeffs))

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        self._check(other)
        return self + other.scale(LaurentPoly(-1))

    def scale(self, c: LaurentPoly) -> "HeckeElt":
        return HeckeElt(self.system, self.basis,
                        {w: c * x for w, x in self.coeffs.items()})

    def coefficient(self, w: int) -> LaurentPoly:
        return self.coeffs.get(w, LaurentPoly())

    def __eq__(self, other) -> bool:
        return (isinstance(other, HeckeElt) and self.basis == other.basis
                and self.coeffs == other.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        sym = {STD: "H", KL: "C", PCAN: "B"}[self.basis]
        parts = []
        order = sorted(self.coeffs, key=lambda w: (self.system.length[w], w))
        for w in order:
            digits = self.system.id_to_digits(w) or "e"
            parts.append(f"({self.coeffs[w]})*{sym}[{digits}]")
        return " + ".join(parts)


def _add_dicts(a: Mapping[int, LaurentPoly], b: Mapping[int, LaurentPoly]
               ) -> dict[int, LaurentPoly]:
    out = dict(a)
    for w, c in b.items():
        s = out.get(w)
        t = c if s is None else s + c
        if t:
            out[w] = t
        elif w in out:
            del out[w]
    return out


def _acc(acc: dict[int, LaurentPoly], w: int, c: LaurentPoly) -> None:
    s = acc.get(w)
    t = c if s is None else s + c
    if t:
        acc[w] = t
    elif w in acc:
        del acc[w]


def unit(system: CoxeterSystem, basis: str = STD) -> HeckeElt:
    return HeckeElt(system, basis, {0: ONE})


def std_basis_element(system: CoxeterSystem, w: int) -> HeckeElt:
    return HeckeElt(system, STD, {w: ONE})


# ---------------------------------------------------------------------------
# standard-basis multiplication

def _std_mult_gen_right(system: CoxeterSystem, coeffs: Mapping[int, LaurentPoly],
                        s: int) -> dict[int, LaurentPoly]:
    out: dict[int, LaurentPoly] = {}
    for w, c in coeffs.items():
        ws = system.right[w][s]
        _acc(out, ws, c)
        if system.length[ws] < system.length[w]:
            _acc(out, w, _VINV_MINUS_V * c)
    return out


def std_multiply(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """Product of two standard-basis elements."""
    if a.basis != STD or b.basis != STD:
        raise BasisMismatchError("std_multiply requires standard-basis elements")
    system = a.system
    out: dict[int, LaurentPoly] = {}
    for w, c in b.coeffs.items():
        part = {x: cx * c for x, cx in a.coeffs.items()}
        for s in system.words[w]:
            part = _std_mult_gen_right(system, part, s)
        out = _add_dicts(out, part)
    return HeckeElt(system, STD, out)


# ---------------------------------------------------------------------------
# bar involution and iota

_bar_std_cache: "weakref.WeakKeyDictionary[CoxeterSystem, dict]" = None


def _bar_of_std(system: CoxeterSystem, x: int) -> dict[int, LaurentPoly]:
    """Expansion of bar(H_x) = (H at x^-1)^(-1) in the standard basis."""
    global _bar_std_cache
    if _bar_std_cache is None:
        import weakref
        _bar_std_cache = weakref.WeakKeyDictionary()
    per_system = _bar_std_cache.setdefault(system, {})
    cached = per_system.get(x)
    if cached is not None:
        return cached
    # (H_{s_1} ... H_{s_k})^(-1) with (s_1 .. s_k) a word for x^-1 equals
    # the product of the H_s^(-1) = H_s + (v - v^-1) in reverse order,
    # which is a word for x itself.
    out: dict[int, LaurentPoly] = {0: ONE}
    for s in system.words[x]:
        shifted = _std_mult_gen_right(system, out, s)
        out = _add_dicts(shifted, {w: _V_MINUS_VINV * c for w, c in out.items()})
    per_system[x] = out
    return out


def bar_involution(a: HeckeElt) -> HeckeElt:
    """The bar involution in the standard basis."""
    if a.basis != STD:
        raise BasisMismatchError("bar_involution acts on the standard basis")
    out: dict[int, LaurentPoly] = {}
    for x, c in a.coeffs.items():
        cbar = c.bar()
        for w, d in _bar_of_std(a.system, x).items():
            _acc(out, w, cbar * d)
    return HeckeElt(a.system, STD, out)


def iota(a: HeckeElt) -> HeckeElt:
    """The linear anti-involution H_x -> H at x^-1 (same formula in the
    Kazhdan-Lusztig and canonical bases)."""
    inv = a.system.inverse
    return HeckeElt(a.system, a.basis, {inv[w]: c for w, c in a.coeffs.items()})


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig table

class KLTable:
    """Triangular data of the Kazhdan-Lusztig basis.

    h[x] maps y -> h(y, x), the coefficient of H_y in C_x (with h(x,x) = 1
    and h(y,x) in v Z[v] for y < x).  mu[x] maps y -> mu(y, x), the
    coefficient of v in h(y, x), storing nonzero values only.
    """

    def __init__(self, system: CoxeterSystem, h: list[dict[int, LaurentPoly]]):
        self.system = system
        self.h = h
        self.mu: list[dict[int, int]] = [
            {y: m for y, c in col.items() if y != x and (m := c.coefficient_of(1))}
            for x, col in enumerate(h)
        ]

    def h_poly(self, y: int, x: int) -> LaurentPoly:
        return self.h[x].get(y, LaurentPoly())

    def mu_coeff(self, y: int, x: int) -> int:
        return self.mu[x].get(y, 0)

    def kl_element(self, x: int) -> HeckeElt:
        """C_x expanded in the standard basis."""
        return HeckeElt(self.system, STD, dict(self.h[x]))

    def export_json(self) -> list[dict]:
        """Triangular list of {y, x, h} rows with digit-string labels."""
        sys_ = self.system
        rows = []
        for x in sys_.elements():
            for y in sorted(self.h[x], key=lambda w: (sys_.length[w], w)):
                rows.append({
                    "y": sys_.id_to_digits(y),
                    "x": sys_.id_to_digits(x),
                    "h": self.h[x][y].to_pairs(),
                })
        return rows


def compute_kl_table(system: CoxeterSystem) -> KLTable:
    """Compute all Kazhdan-Lusztig basis elements by the length recursion.

    For x = x's with s a right descent, C_{x'} C_s = C_x plus mu-correction
    terms C_z over z < x' with s a right descent; elements are processed in
    id order, which is length order.
    """
    h: list[dict[int, LaurentPoly]] = [{} for _ in system.elements()]
    mu: list[dict[int, int]] = [{} for _ in system.elements()]
    h[0] = {0: ONE}
    for x in system.elements():
        if x == 0:
            continue
        s = min(system.right_descents[x])
        xp = system.right[x][s]  # x' with x = x's, shorter
        # expand C_{x'} (H_s + v) in the standard basis
        col: dict[int, LaurentPoly] = {}
        for w, c in h[xp].items():
            ws = system.right[w][s]
            _acc(col, ws, c)
            _acc(col, w, c.shift(1))
            if system.length[ws] < system.length[w]:
                _acc(col, w, _VINV_MINUS_V * c)
        for z, m in mu[xp].items():
            if s in system.right_descents[z]:
                for w, c in h[z].items():
                    _acc(col, w, c.scale(-m))
        h[x] = col
        mu[x] = {y: m for y, c in col.items() if y != x and (m := c.coefficient_of(1))}
    table = KLTable.__new__(KLTable)
    table.system = system
    table.h = h
    table.mu = mu
    return table


def kl_multiply_by_generator(table: KLTable, x: int, s: int,
                             side: str = "right") -> dict[int, LaurentPoly]:
    """C_x C_s (or C_s C_x) expanded in the Kazhdan-Lusztig basis.

    Returns (v + v^-1) C_x in the descent case, otherwise C_{xs} plus
    mu(z, x) C_z over z with s in the relevant descent set.
    """
    system = table.system
    if side == "right":
        if s in system.right_descents[x]:
            return {x: GAUSS}
        out = {system.right[x][s]: ONE}
        for z, m in table.mu[x].items():
            if s in system.right_descents[z]:
                out[z] = LaurentPoly(m)
        return out
    if side == "left":
        if s in system.left_descents[x]:
            return {x: GAUSS}
        out = {system.left_mult(s, x): ONE}
        for z, m in table.mu[x].items():
            if s in system.left_descents[z]:
                out[z] = LaurentPoly(m)
        return out
    raise ValueError("side must be 'left' or 'right'")


# ---------------------------------------------------------------------------
# Bott-Samelson expansion and basis conversion

def bott_samelson_to_standard(system: CoxeterSystem, word: Sequence[int]) -> HeckeElt:
    """Expand the product C_{s_1} ... C_{s_n} in the standard basis as the
    defect-graded sum over decorated subexpressions of the word."""
    out: dict[int, LaurentPoly] = {}
    for sub in system.subexpressions(word):
        _acc(out, sub.terminal, LaurentPoly.v(sub.defect))
    return HeckeElt(system, STD, out)


def unitriangular_solve(system: CoxeterSystem,
                        coeffs: Mapping[int, LaurentPoly],
                        lower_row) -> dict[int, LaurentPoly]:
    """Invert a unitriangular base change: given coefficients in the target
    basis and a function yielding the strictly-lower (element, coefficient)
    terms of each source basis element, express in the source basis.
    Processes by decreasing length so terms created mid-solve are seen."""
    work = dict(coeffs)
    buckets: dict[int, set[int]] = {}
    for x in work:
        buckets.setdefault(system.length[x], set()).add(x)
    out: dict[int, LaurentPoly] = {}
    for level in range(max(buckets, default=0), -1, -1):
        for x in sorted(buckets.get(level, ())):
            c = work.get(x)
            if not c:
                continue
            out[x] = c
            for y, m in lower_row(x):
                _acc(work, y, (m * c).scale(-1))
                buckets.setdefault(system.length[y], set()).add(y)
    return out


def _std_to_kl(system: CoxeterSystem, coeffs: Mapping[int, LaurentPoly],
               table: KLTable) -> dict[int, LaurentPoly]:
    def lower_row(x: int):
        return ((y, h) for y, h in table.h[x].items() if y != x)

    return unitriangular_solve(system, coeffs, lower_row)


def _kl_to_std(system: CoxeterSystem, coeffs: Mapping[int, LaurentPoly],
               table: KLTable) -> dict[int, LaurentPoly]:
    out: dict[int, LaurentPoly] = {}
    for x, c in coeffs.items():
        for y, hyx in table.h[x].items():
            _acc(out, y, hyx * c)
    return out


def change_basis(a: HeckeElt, target: str, kl: KLTable | None = None,
                 pcan=None) -> HeckeElt:
    """Convert between the standard, Kazhdan-Lusztig and canonical bases.

    Conversions through "pcan" need a PCanTable (pcan argument); all paths
    are exact unitriangular substitutions, so round trips are identities.
    """
    if target not in (STD, KL, PCAN):
        raise ValueError(f"unknown basis {target!r}")
    if a.basis == target:
        return HeckeElt(a.system, target, dict(a.coeffs))
    if a.basis in (STD, KL) and target in (STD, KL):
        if kl is None:
            raise ValueError("table missing: conversions need a KLTable")
        fn = _std_to_kl if target == KL else _kl_to_std
        return HeckeElt(a.system, target, fn(a.system, a.coeffs, kl))
    if pcan is None:
        raise ValueError("table missing: conversions involving the canonical "
                         "basis need a PCanTable")
    if a.basis == PCAN:
        as_kl = HeckeElt(a.system, KL, pcan.expand_to_kl_coeffs(a.coeffs))
        return as_kl if target == KL else change_basis(as_kl, target, kl=kl)
    as_kl = a if a.basis == KL else change_basis(a, KL, kl=kl)
    return HeckeElt(a.system, PCAN, pcan.kl_to_pcan_coeffs(as_kl.coeffs))
