"""
Splitting off elementary abelian factors
========================================

Every p-group is T x U with T elementary abelian and as large as the socle
allows.  The group algebra sees this too: FG/Delta(FT)FG is FU, so comparing
two groups reduces to comparing their U factors.
"""

from mipkit.catalog import dihedral_group, quaternion_group
from mipkit.decomp import elementary_decomposition, elementary_ideal, reduce_and_compare
from mipkit.groups import cyclic_group, direct_product, isomorphic

C2 = cyclic_group(2)
G = direct_product(C2, dihedral_group(4))
dec = elementary_decomposition(G)
print(f"|G| = {G.order}: rank T = {dec.rank}, |U| = {dec.U.order}")
print("U is dihedral of order 8:", isomorphic(dec.factor("U"), dihedral_group(4)).isomorphic)

ideal = elementary_ideal(G, dec)
for statement, ok in ideal.checks.items():
    print(f"  {'ok' if ok else 'FAILED'}  {statement}")

# random element orders give different but isomorphic U
sizes = {elementary_decomposition(G, seed=s).U.order for s in range(20)}
print("U orders over 20 seeds:", sizes)

print(reduce_and_compare(G, direct_product(C2, quaternion_group())).describe())
