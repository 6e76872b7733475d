"""Heisenberg and Virasoro operators, the boundary derivation, and the
relation-verification suites.

Run:  python demos/03_heisenberg_virasoro.py
"""

from fockcalc import (
    FockVector,
    boundary_d,
    derivative,
    load_preset,
    q,
    supercommutator,
    verify_relations,
    virasoro,
)

p2 = load_preset("p2")
one, h = p2.unit(), p2.basis_element("h")
vac = FockVector.vacuum(p2)

print("Creation then annihilation picks up the pairing:")
print("  q_-1(h) q_1(h) |0> =", q(-1, h)(q(1, h)(vac)))

print()
print("The Virasoro operator at n=0 grades by weight (eigenvalue -n):")
v = q(2, h)(q(1, one)(vac))
print("  v =", v)
print("  L_0(1) v =", virasoro(0, one)(v))

print()
print("The boundary operator on the simplest non-reduced class:")
print("  d q_2(1)|0> =", boundary_d(p2)(q(2, one)(vac)))

print()
print("Derivatives: [d, q_1(a)] recovers L_1(a) on any vector:")
w = q(1, h)(q(1, h)(vac))
print("  [d, q_1(h)] w =", derivative(q(1, h), 1)(w))
print("  L_1(h) w      =", virasoro(1, h)(w))

print()
print("The Virasoro bracket with its central term, chi(p2) = 3:")
br = supercommutator(virasoro(2, one), virasoro(-2, one))
print("  ([L_2(1), L_-2(1)] - 4 L_0(1)) |0> =",
      br(vac) - 4 * virasoro(0, one)(vac), " (= -chi/2 |0>)")

print()
print("Full relation sweeps (exact, zero tolerance):")
for suite in ("heisenberg", "Lq", "LL", "qprime"):
    rep = verify_relations(suite, p2, max_weight=4, max_index=2)
    print(f"  {suite:10s} checked {rep.checked:7d}  "
          f"discrepancies {rep.discrepancy_count}  ({rep.wall_time:.2f}s)")
