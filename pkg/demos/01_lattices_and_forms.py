"""
Lattices and discriminant forms
===============================

Build a few even lattices, read off their discriminant groups and compare
finite quadratic forms up to isomorphism and sign.
"""
from fractions import Fraction

from k3sandwich.lattice import (
    binary, cyclic_form, direct_sum, disc, disc_forms_isomorphic,
    discriminant_form, hyperbolic_plane, named_lattice, overlattice, signature,
)

# %%
# Root lattices are negative definite here
E7, A1 = named_lattice("E7"), named_lattice("A1")
print("E7 signature", signature(E7), "det", disc(E7))
print("A1 signature", signature(A1), "det", disc(A1))

# %%
# q(E7) is the negative of q(A1), not q(A1) itself
qE7, qA1 = discriminant_form(E7), discriminant_form(A1)
print("q(E7) ~ q(A1):", disc_forms_isomorphic(qE7, qA1))
print("q(E7) ~ -q(A1):", disc_forms_isomorphic(qE7, qA1, negate=True))

# %%
# A rank two form of determinant 15 splits into a 3-part and a 5-part
q = discriminant_form(binary(-4, -1, -4))
print("group orders", q.orders)
print("~ Z/3(4/3) + Z/5(2/5):",
      disc_forms_isomorphic(q, cyclic_form(3, Fraction(4, 3)) + cyclic_form(5, Fraction(2, 5))))

# %%
# Gluing E7 + A1 along the diagonal 2-torsion element gives E8
g = qE7.generators[0]
E8 = overlattice(direct_sum(E7, A1), [list(g) + [Fraction(1, 2)]])
print("glued det", disc(E8), "signature", signature(E8))

# %%
# and U + E8 stays unimodular
print("det U+E8 =", disc(direct_sum(hyperbolic_plane(), E8)))
