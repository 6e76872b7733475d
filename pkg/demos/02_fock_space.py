"""The bigraded Fock space: canonical monomials, signs, and the bilinear form.

Run:  python demos/02_fock_space.py
"""

from fockcalc import (
    FockVector,
    bidegree,
    canonicalize,
    inner_product,
    load_preset,
    monomial_basis,
    render_vector,
)

p2 = load_preset("p2")
one, h, h2 = p2.unit(), p2.basis_element("h"), p2.basis_element("h2")

# Basis monomials are products of creation parts applied to the vacuum,
# normalized to sizes-decreasing order.
v = canonicalize(p2, [(1, h), (2, one), (1, h2)])
print("canonical form of q_1(h) q_2(1) q_1(h2) |0> :")
print("  ", render_vector(v))
print("bidegree (weight, cohomological degree):", bidegree(v))

print()
print("weight-2 basis over p2 (9 monomials):")
for mono in monomial_basis(2, p2):
    print("  ", render_vector(FockVector(p2, {mono: 1})))

print()
torus = load_preset("torus_like")
x1, x2 = torus.basis_element("x1"), torus.basis_element("x2")
print("odd colors anticommute and square to zero:")
print("  q_1(x2) q_1(x1)|0> =",
      render_vector(canonicalize(torus, [(1, x2), (1, x1)])))
print("  q_1(x1) q_1(x1)|0> =",
      render_vector(canonicalize(torus, [(1, x1), (1, x1)])))

print()
print("The bilinear form contracts creations against annihilations:")
q1h = canonicalize(p2, [(1, h)])
q2one = canonicalize(p2, [(2, one)])
q2h2 = canonicalize(p2, [(2, h2)])
print("  <q_1(h), q_1(h)>  =", inner_product(q1h, q1h))
print("  <q_2(1), q_2(h2)> =", inner_product(q2one, q2h2))
print("  <q_2(1), q_1(1)^2> =",
      inner_product(q2one, canonicalize(p2, [(1, one), (1, one)])))
