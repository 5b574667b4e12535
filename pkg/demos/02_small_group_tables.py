"""
Separating the groups of order 32 and 64
========================================

The shipped corpus holds twelve groups of order 32 and 64 whose group
algebras are hard to tell apart.  The counting invariants k_1 and a_n do a
lot of the work, and the full fingerprint separates every pair.
"""

import itertools

from mipkit.catalog import corpus, load_annotations
from mipkit.invariants import compare, fingerprint
from mipkit.pgroup import a_n, k_n, socle

ann = load_annotations()
entries = corpus()

print("order 32:   k_1  a_2  e (imported)")
for e in entries[:6]:
    print(f"  {e.label:4s} {e.name:10s} {k_n(e.group, 1):3d} {a_n(e.group, 2):4d} {ann.get(e.name):4d}")

print("order 64:   k_1  a_3  |Soc|")
for e in entries[6:12]:
    print(f"  {e.label:4s} {e.name:10s} {k_n(e.group, 1):3d} {a_n(e.group, 3):4d} {socle(e.group).order:5d}")

# the first invariant on which each pair differs
prints = {e.label: fingerprint(e.group, ann) for e in entries[:12]}
for x, y in itertools.combinations(entries[:12], 2):
    if x.group.order == y.group.order:
        print(f"{x.label:>3s} vs {y.label:<3s}", compare(prints[x.label], prints[y.label]).describe())
