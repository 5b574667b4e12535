"""
Two central extensions of a dihedral group
==========================================

Q_2^(m|n) and S_2^(m|n) share their order, centre, central quotient and
the first Jennings layers.  They still differ in whether every square-zero
element of the group algebra lies in Delta^2.
"""

from mipkit.families import FamilySpec, build_family, qs_distinguisher, trichotomy_check
from mipkit.pgroup import dg

for kind in "DQS":
    G = build_family(FamilySpec(kind, 2, 3))
    print(f"{G.name}: order {G.order}, minimal generators {dg(G)}, identified as {trichotomy_check(G)}")

for m, n in ((2, 3), (2, 4), (3, 3)):
    print()
    print("\n".join(qs_distinguisher(m, n).lines()))
