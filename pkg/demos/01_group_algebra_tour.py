"""
A first look at F_2[D_8]
========================

The group algebra of the dihedral group of order 8 over GF(2), built from
its Cayley table.  Everything below is exact linear algebra mod 2.
"""

import numpy as np

from mipkit.catalog import dihedral_group
from mipkit.modalg import GroupAlgebra, jennings_bound
from mipkit.pgroup import conjugacy_classes

G = dihedral_group(4)
A = GroupAlgebra(G)
print(f"|G| = {G.order}, dim F_2G = {A.dim}")

# powers of the augmentation ideal shrink one layer at a time
dims = [A.delta_power(n).dim for n in range(A.nilpotency_index() + 1)]
print("dim Delta^n:", dims)

# the Jennings series predicts the same layer structure from the group alone
ranks = A.jennings_ranks()
print("ranks of D_i/D_(i+1):", ranks, " predicted nilpotency index:", jennings_bound(ranks, 2))

# class sums span the centre of the algebra
print("dim Z(FG) =", A.center_basis().dim, "= number of classes", len(conjugacy_classes(G).sizes))

# a reflection s gives s - 1, which squares to zero but is not in Delta^2
s = next(g for g in range(1, G.order) if G._orders[g] == 2 and not A.delta_power(2).contains(A.g_minus_1(g)))
x = A.g_minus_1(s)
print("(s-1)^2 = 0:", not np.any(A.multiply(x, x)))
res = A.omega1_in_delta2()
print(f"Omega_1(FG) in Delta^2: {res.holds} ({res.method}, witness {res.witness_label})")
