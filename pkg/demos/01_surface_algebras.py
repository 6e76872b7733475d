"""Walk through the graded Frobenius algebras that color the Fock space.

Run:  python demos/01_surface_algebras.py
"""

from fockcalc import (
    diagonal_pushforward,
    dual_basis,
    euler_class,
    integral,
    load_preset,
    mul,
)

# The shipped presets model the cohomology of the projective plane, a quadric,
# a torus-like surface (exterior algebra on four odd classes), and a point.
for name in ("p2", "p1xp1", "torus_like", "point"):
    alg = load_preset(name)
    chi = integral(euler_class(alg))
    print(f"{name:12s} dim {alg.dim:2d}   K_X = {alg.canonical_class!r:16s} "
          f"chi = {chi}")

print()
p2 = load_preset("p2")
h = p2.basis_element("h")
print("On p2 the hyperplane class squares to the point class:")
print("  h * h =", mul(h, h))
print("  integral(h^2) =", integral(mul(h, h)))

print()
print("Dual basis (integral(e_i * e^j) = delta):")
for b, d in zip(p2.basis, dual_basis(p2)):
    print(f"  dual of {b.id} is {d!r}")

print()
print("Diagonal pushforward of the unit (the Kunneth expansion that feeds")
print("the Virasoro operators), solved exactly from the adjunction identity:")
for x, y in diagonal_pushforward(p2.unit()):
    print(f"  {x!r} (x) {y!r}")

print()
torus = load_preset("torus_like")
x1, x2 = torus.basis_element("x1"), torus.basis_element("x2")
print("Odd classes anticommute on the torus-like algebra:")
print("  x1 * x2 =", mul(x1, x2))
print("  x2 * x1 =", mul(x2, x1))
print("  x1 * x1 =", mul(x1, x1))
