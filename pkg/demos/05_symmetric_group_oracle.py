"""The symmetric-group class algebra as a desk-scale generation oracle.

Class sums C_lambda multiply by convolution; the classes C_(i+1, 1^(n-i-1))
mirror the monomial generators upstairs and generate the whole center.

Run:  python demos/05_symmetric_group_oracle.py
"""

from fockcalc import b_analog, class_product, class_size, fh_degree, generation_closure
from fockcalc.class_algebra import partitions_of, render_central

print("Class sizes in S_4:")
for lam in partitions_of(4):
    print(f"  |C{list(lam)}| = {class_size(lam)}   filtration degree {fh_degree(lam)}")

print()
print("Convolution products in S_3 and S_4:")
print("  C[2,1] * C[2,1]   =", render_central(class_product((2, 1), (2, 1), 3)))
print("  C[2,1,1] * C[2,1,1] =",
      render_central(class_product((2, 1, 1), (2, 1, 1), 4)))

print()
print("Generation: the n class sums C_(i+1, 1^(n-i-1)) close to the full")
print("center, whose dimension is the number of partitions p(n):")
for n in range(2, 9):
    rep = generation_closure([b_analog(i, n) for i in range(n)], n)
    print(f"  n={n}: {rep.render_text()}   rounds {rep.rounds}, "
          f"dims {rep.dim_trajectory}, max filtration {rep.fh_profile[-1]}")

print()
print("Diagnostic (not a theorem either way): dropping the transposition")
print("class C_(2,1^(n-2)) from the generator set:")
for n in (3, 4, 5):
    gens = [b_analog(i, n) for i in range(n) if i != 1]
    rep = generation_closure(gens, n)
    print(f"  n={n}: {rep.render_text()}")
