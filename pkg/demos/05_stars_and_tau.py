"""Strings, star operations and the generalized tau invariant.

Strings are the m - 1 middle layers of a dihedral coset; the star
operation flips each string end to end and preserves the cell structure.
The tau invariant refines right-descent-set equality through string
neighbourhoods and, in type A, recovers the left cells exactly.
"""

from pcells import (
    CoxeterSystem,
    compute_cells,
    compute_kl_table,
    identity_table,
    check_base_change_relations,
    star_right,
    string_of,
    tau_partition,
    tau_tilde_partition,
)
from pcells.stars import all_strings, d_r_set

b3 = CoxeterSystem.from_type("B3")
kl = compute_kl_table(b3)
table = identity_table(b3)

r, t = 0, 1  # the bond of order 4
print(f"strings for the pair (1, 2), m = {b3.coxeter_matrix[r][t]}:")
for s in all_strings(b3, r, t)[:4]:
    words = [b3.id_to_digits(x) for x in s.elements]
    print(f"  minimal {b3.id_to_digits(s.coset_min) or 'e'} -> {words}")

x = b3.digits_to_id("121")
sd, pos = string_of(b3, x, r, t)
print(f"\n121 sits at position {pos} of its string; "
      f"star image: {b3.id_to_digits(star_right(b3, x, r, t))}")

rep = check_base_change_relations(table, kl, r, t)
print(f"\nbase-change relations on all string pairs: "
      f"{'pass' if rep.ok else 'fail'} ({rep.checked} checks)")

left = compute_cells(table, kl, "left")
tau = tau_partition(b3)
tau_t = tau_tilde_partition(b3)
print(f"\nB3: {len(left.cells)} left cells, {len(tau.classes)} tau classes, "
      f"{len(tau_t.classes)} tau-tilde classes")
refines = all(len({tau.class_of[w] for w in cell}) == 1 for cell in left.cells)
print("left cells refine the tau classes:", refines)

s4 = CoxeterSystem.from_type("A3")
kl4 = compute_kl_table(s4)
left4 = compute_cells(identity_table(s4), kl4, "left")
print("\nS_4: tau classes equal the left cells:",
      tau_partition(s4).as_sets() == left4.as_sets())
