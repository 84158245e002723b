"""Canonical-basis tables in characteristic p and their validation.

A PCanTable records the unitriangular base change from the p-canonical
basis to the Kazhdan-Lusztig basis: B_x = C_x + sum over y < x of
m(y, x) C_y.  For p = 0 the table is the identity.  For p > 0 tables are
ingested from JSON fixtures and validated against the structural facts
every such basis satisfies:

  * unitriangularity with ones on the diagonal,
  * every m(y, x) self-dual with non-negative coefficients,
  * m(y, x) = 0 unless both descent sets of x are contained in those of y,
  * m(y, x) = m(y^-1, x^-1).

Structure coefficients mu^z(x, s) in B_x C_s = sum mu^z B_z (and the left
mirror) are computed exactly by expanding to the Kazhdan-Lusztig basis,
multiplying there, and back-substituting through the table.

JSON schema (words are 1-based digit lists, coefficients sorted
[exponent, value] pairs; omitted group elements default to identity rows):

    {"type": "C3", "p": 2,
     "entries": [{"x": [2,3,2,1,2],
                  "terms": [{"y": [2,3,2,1,2], "coeff": [[0,1]]},
                            {"y": [2,3,2],     "coeff": [[0,1]]}]}, ...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .coxeter import CoxeterSystem, ParabolicEmbedding
from .hecke import KLTable, kl_multiply_by_generator
from .laurent import GAUSS, ONE, LaurentPoly

DATA_DIR = Path(__file__).parent / "data"


class PCanValidationError(ValueError):
    """A loaded table violates a structural invariant."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


@dataclass
class PCanTable:
    """Base change from the canonical basis at prime p to the KL basis.

    rows[x] maps y -> m(y, x) for the nonzero strictly-lower terms; the
    diagonal entry 1 is implicit.  Elements absent from rows have identity
    rows (B_x = C_x).
    """

    system: CoxeterSystem
    prime: int
    rows: dict[int, dict[int, LaurentPoly]]
    provenance: str = "unspecified"

    def __post_init__(self):
        self.rows = {x: dict(r) for x, r in self.rows.items() if r}

    @property
    def is_identity(self) -> bool:
        return not self.rows

    def m(self, y: int, x: int) -> LaurentPoly:
        """The base-change coefficient m(y, x)."""
        if y == x:
            return ONE
        return self.rows.get(x, {}).get(y, LaurentPoly())

    def nontrivial_elements(self) -> list[int]:
        return sorted(self.rows)

    # -- conversions -------------------------------------------------------

    def expand_to_kl_coeffs(self, coeffs: Mapping[int, LaurentPoly]
                            ) -> dict[int, LaurentPoly]:
        out: dict[int, LaurentPoly] = {}
        for x, c in coeffs.items():
            _acc(out, x, c)
            for y, m in self.rows.get(x, {}).items():
                _acc(out, y, m * c)
        return out

    def kl_to_pcan_coeffs(self, coeffs: Mapping[int, LaurentPoly]
                          ) -> dict[int, LaurentPoly]:
        from .hecke import unitriangular_solve

        return unitriangular_solve(self.system, coeffs,
                                   lambda x: self.rows.get(x, {}).items())

    # -- serialization ---------------------------------------------------------

    def to_json_obj(self) -> dict:
        sys_ = self.system
        entries = []
        for x in sorted(self.rows, key=lambda w: (sys_.length[w], w)):
            terms = [{"y": _digit_list(sys_, x), "coeff": [[0, 1]]}]
            for y in sorted(self.rows[x], key=lambda w: (sys_.length[w], w)):
                terms.append({"y": _digit_list(sys_, y),
                              "coeff": self.rows[x][y].to_pairs()})
            entries.append({"x": _digit_list(sys_, x), "terms": terms})
        obj = {"p": self.prime, "entries": entries}
        if sys_.label:
            obj["type"] = sys_.label
        return obj


def _acc(acc: dict[int, LaurentPoly], w: int, c: LaurentPoly) -> None:
    s = acc.get(w)
    t = c if s is None else s + c
    if t:
        acc[w] = t
    elif w in acc:
        del acc[w]


def _digit_list(system: CoxeterSystem, w: int) -> list[int]:
    return [s + 1 for s in system.words[w]]


# ---------------------------------------------------------------------------
# construction, loading, validation

def identity_table(system: CoxeterSystem, prime: int = 0) -> PCanTable:
    """The p = 0 table: the canonical basis equals the KL basis."""
    return PCanTable(system, prime, {}, provenance="identity(p=0)")


def validate_table(table: PCanTable, kl: KLTable) -> list[str]:
    """All invariant violations of a table (empty list means valid)."""
    sys_ = table.system
    bad: list[str] = []
    for x, row in table.rows.items():
        dx_l, dx_r = sys_.left_descents[x], sys_.right_descents[x]
        for y, m in row.items():
            lab = f"(y={sys_.id_to_digits(y)}, x={sys_.id_to_digits(x)})"
            if sys_.length[y] >= sys_.length[x] or not sys_.bruhat_leq(y, x):
                bad.append(f"unitriangularity violated at {lab}")
            if not m.is_self_dual():
                bad.append(f"m{lab} = {m} is not self-dual")
            if not m.is_nonnegative():
                bad.append(f"m{lab} = {m} has a negative coefficient")
            if not (dx_l <= sys_.left_descents[y] and dx_r <= sys_.right_descents[y]):
                bad.append(f"descent condition violated at {lab}")
            if table.m(sys_.inverse[y], sys_.inverse[x]) != m:
                bad.append(f"inverse symmetry violated at {lab}")
    return bad


def load_table(source, system: CoxeterSystem, kl: KLTable,
               strict: bool = True, provenance: str | None = None) -> PCanTable:
    """Load a table from a path, file object, or parsed JSON dict.

    With strict=True (the default) any invariant violation raises
    PCanValidationError naming the offending pairs.
    """
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            obj = json.load(fh)
        provenance = provenance or f"external-file:{source}"
    elif isinstance(source, dict):
        obj = source
        provenance = provenance or "external-object"
    else:
        obj = json.load(source)
        provenance = provenance or "external-stream"

    rows: dict[int, dict[int, LaurentPoly]] = {}
    schema_bad: list[str] = []
    try:
        prime = int(obj["p"])
        for entry in obj.get("entries", []):
            x = system.word_to_id(tuple(int(d) - 1 for d in entry["x"]))
            row: dict[int, LaurentPoly] = {}
            saw_diagonal = False
            for term in entry["terms"]:
                y = system.word_to_id(tuple(int(d) - 1 for d in term["y"]))
                coeff = LaurentPoly.from_pairs(term["coeff"])
                if y == x:
                    saw_diagonal = True
                    if coeff != ONE:
                        schema_bad.append(
                            f"diagonal entry at x={system.id_to_digits(x)} "
                            f"is {coeff}, not 1")
                    continue
                if coeff:
                    row[y] = coeff
            if not saw_diagonal and not row:
                continue
            if row:
                rows[x] = row
    except (KeyError, TypeError, ValueError) as e:
        raise PCanValidationError([f"schema error: {e!r}"]) from e
    if schema_bad:
        raise PCanValidationError(schema_bad)

    table = PCanTable(system, prime, rows, provenance=provenance)
    if strict:
        bad = validate_table(table, kl)
        if bad:
            raise PCanValidationError(bad)
    return table


_FIXTURE_ALIASES = {"c3p2": "c3_p2", "b2p2": "b2_p2"}


def fixture_path(name: str) -> Path:
    name = _FIXTURE_ALIASES.get(name.lower(), name.lower())
    return DATA_DIR / f"{name}.json"


def load_fixture(name: str, system: CoxeterSystem, kl: KLTable) -> PCanTable:
    """Load one of the tables shipped with the package (e.g. "c3_p2")."""
    path = fixture_path(name)
    if not path.exists():
        raise FileNotFoundError(f"no fixture named {name!r}")
    return load_table(path, system, kl, provenance=f"fixture:{name}")


# ---------------------------------------------------------------------------
# coefficients derived from a table

def p_h(table: PCanTable, kl: KLTable, y: int, x: int) -> LaurentPoly:
    """Coefficient of H_y in B_x: sum over z of m(z, x) h(y, z)."""
    out = kl.h[x].get(y, LaurentPoly())
    for z, m in table.rows.get(x, {}).items():
        hyz = kl.h[z].get(y)
        if hyz:
            out = out + m * hyz
    return out


def structure_coefficients(table: PCanTable, kl: KLTable, x: int, s: int,
                           side: str = "right") -> dict[int, LaurentPoly]:
    """The coefficients mu^z in B_x C_s = sum_z mu^z B_z (mirror on the left).

    Descent case: {x: v + v^-1}.  Otherwise the product is expanded in the
    KL basis through the table, multiplied by the generator there, and
    back-substituted.
    """
    sys_ = table.system
    descents = sys_.right_descents if side == "right" else sys_.left_descents
    if s in descents[x]:
        return {x: GAUSS}
    acc: dict[int, LaurentPoly] = {}
    for z, c in _pcan_row_kl(table, x):
        for w, d in kl_multiply_by_generator(kl, z, s, side).items():
            _acc(acc, w, c * d)
    return table.kl_to_pcan_coeffs(acc)


def _pcan_row_kl(table: PCanTable, x: int) -> Iterable[tuple[int, LaurentPoly]]:
    yield x, ONE
    yield from table.rows.get(x, {}).items()


def _kl_times_kl(kl: KLTable, a: Mapping[int, LaurentPoly], w: int
                 ) -> dict[int, LaurentPoly]:
    """(sum a_z C_z) * C_w in the KL basis, via the standard basis."""
    from .hecke import HeckeElt, change_basis, std_multiply, KL as KLB, STD

    sys_ = kl.system
    left = change_basis(HeckeElt(sys_, KLB, dict(a)), STD, kl=kl)
    right = change_basis(HeckeElt(sys_, KLB, {w: ONE}), STD, kl=kl)
    prod = std_multiply(left, right)
    return change_basis(prod, KLB, kl=kl).coeffs


def pcan_general_product(table: PCanTable, kl: KLTable, x: int, w: int
                         ) -> dict[int, LaurentPoly]:
    """B_x B_w in the canonical basis, exact through the standard basis."""
    kl_x = dict(_pcan_row_kl(table, x))
    acc: dict[int, LaurentPoly] = {}
    for u, d in _pcan_row_kl(table, w):
        for b, cb in _kl_times_kl(kl, kl_x, u).items():
            _acc(acc, b, cb * d)
    return table.kl_to_pcan_coeffs(acc)


# ---------------------------------------------------------------------------
# parabolic compatibility and automorphisms

@dataclass
class Report:
    """Outcome of a verification pass: ok iff no violations were recorded."""

    name: str
    violations: list[str]
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_obj(self) -> dict:
        return {"check": self.name, "ok": self.ok, "checked": self.checked,
                "violations": self.violations}

    def __str__(self) -> str:
        status = "pass" if self.ok else f"FAIL ({len(self.violations)})"
        out = f"{self.name}: {status} [{self.checked} checks]"
        for v in self.violations[:10]:
            out += f"\n  - {v}"
        if len(self.violations) > 10:
            out += f"\n  ... {len(self.violations) - 10} more"
        return out


def restrict_to_parabolic(table: PCanTable, emb: ParabolicEmbedding) -> PCanTable:
    """The table of the standard parabolic subgroup, read off the big table.

    Base change is block diagonal across cosets, so rows of elements of the
    parabolic restrict to the subgroup's own table.
    """
    parent_to_sub = emb.parent_to_sub()
    rows: dict[int, dict[int, LaurentPoly]] = {}
    for x, row in table.rows.items():
        xs = parent_to_sub.get(x)
        if xs is None:
            continue
        sub_row = {parent_to_sub[y]: m for y, m in row.items() if y in parent_to_sub}
        if sub_row:
            rows[xs] = sub_row
    return PCanTable(emb.sub, table.prime, rows,
                     provenance=f"restriction:{table.provenance}")


def verify_parabolic_factorization(table: PCanTable, kl: KLTable,
                                   gens: Sequence[int]) -> Report:
    """Check the coset factorization identities for a finitary subset I.

    For every x in W^I and y, z, w in W_I:
      * p_h(x y, x z) = p_h(y, z),
      * mu^{x z}(x y, w) = mu^z(y, w)  (right multiplication by B_w).
    """
    sys_ = table.system
    reps = sorted(sys_.minimal_coset_representatives(gens, "right"))
    sub_elements = sorted(sys_.parabolic_elements(gens))
    bad: list[str] = []
    checked = 0

    for x in reps:
        prods = {y: sys_.mult(x, y) for y in sub_elements}
        for z in sub_elements:
            for y in sub_elements:
                checked += 1
                lhs = p_h(table, kl, prods[y], prods[z])
                rhs = p_h(table, kl, y, z)
                if lhs != rhs:
                    bad.append(
                        f"p_h({sys_.id_to_digits(prods[y])}, "
                        f"{sys_.id_to_digits(prods[z])}) = {lhs} != {rhs} "
                        f"[x={sys_.id_to_digits(x)}]")

    for x in reps:
        prods = {y: sys_.mult(x, y) for y in sub_elements}
        for y in sub_elements:
            base = {w: pcan_general_product(table, kl, y, w) for w in sub_elements}
            lifted = {w: pcan_general_product(table, kl, prods[y], w)
                      for w in sub_elements}
            for w in sub_elements:
                for z in sub_elements:
                    checked += 1
                    lhs = lifted[w].get(prods[z], LaurentPoly())
                    rhs = base[w].get(z, LaurentPoly())
                    if lhs != rhs:
                        bad.append(
                            f"mu^({sys_.id_to_digits(prods[z])})"
                            f"({sys_.id_to_digits(prods[y])}, "
                            f"{sys_.id_to_digits(w)}) = {lhs} != {rhs}")
    return Report(f"parabolic-factorization I={sorted(gens)}", bad, checked)


def apply_automorphism_to_table(table: PCanTable, phi: Sequence[int]) -> PCanTable:
    """Relabel a table along a Cartan-preserving generator permutation."""
    sys_ = table.system
    if not sys_.is_cartan_automorphism(phi):
        raise ValueError("permutation does not preserve the Cartan matrix")
    rows = {
        sys_.apply_diagram_automorphism(phi, x): {
            sys_.apply_diagram_automorphism(phi, y): m for y, m in row.items()
        }
        for x, row in table.rows.items()
    }
    return PCanTable(sys_, table.prime, rows,
                     provenance=f"automorphism:{table.provenance}")
