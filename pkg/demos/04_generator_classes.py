"""The two generator families B_i and G_i and the identities tying them.

Run:  python demos/04_generator_classes.py
"""

from fockcalc import (
    Rat,
    b_class,
    filtration_compare,
    g_class,
    commutator_expand,
    load_preset,
    q,
    render_vector,
    vacuum_unit,
)

p2 = load_preset("p2")
one, h = p2.unit(), p2.basis_element("h")

print("The monomial generators B_i(gamma, n):")
for i, n in ((0, 3), (1, 3), (2, 4)):
    print(f"  B_{i}(h, {n}) =", render_vector(b_class(i, h, n).value))
print("  B_0(1, 5) = 5 * unit class:",
      b_class(0, one, 5).value == vacuum_unit(p2, 5).scale(5))

print()
print("The cup-product generators G_i(gamma, n), pinned down on the q_1 span:")
for i, n in ((0, 3), (1, 3), (2, 4)):
    print(f"  G_{i}(h, {n}) =", render_vector(g_class(i, h, n).value))

print()
print("Exact low-order identities: G_0 = B_0 and B_1 = -2 G_1:")
print("  B_1(h, 4) =", render_vector(b_class(1, h, 4).value))
print("  G_1(h, 4) =", render_vector(g_class(1, h, 4).value))

print()
print("For i >= 2 the two families agree to leading order modulo lower")
print("filtration; the leading coefficient of G_i is (-1)^i/((i+1)!(n-i-1)!):")
for i, n in ((2, 4), (3, 5)):
    rep = filtration_compare(i, h, n)
    print(f"  i={i} n={n}: leading {rep.leading_coeff} "
          f"(expected {rep.expected_coeff}), "
          f"difference in lower filtration: {rep.support_ok}")

print()
print("The generic expansion lemma rewrites any operator application as")
print("iterated commutators; here it reproduces q_2(h) on a 2-part monomial:")
mono = ((2, p2.index_of["1"]), (1, p2.index_of["h"]))
print("  expansion:", render_vector(commutator_expand(q(2, h), 2, mono)))
