"""
Matched pairs on (C3, C6)
=========================

Enumerate every way C6 and C3 can act on each other compatibly, look at
the resulting groups of order 18, and sort them into classes.
"""

from knit import bicrossed, classify_k2, cyclic_group, enumerate_matched_pairs, presentation, structural_report
from knit.cli import render_pair

H = cyclic_group(3, "a")
G = cyclic_group(6, "b")

pairs = enumerate_matched_pairs(H, G)
print(f"{len(pairs)} matched pairs")
for i, mp in enumerate(pairs):
    print("\n".join(render_pair(mp, i)))

# %%
# Each pair gives a group of order 18 on the set C3 x C6.

for mp in pairs:
    E = bicrossed(mp)
    rep = structural_report(E.base)
    print(presentation(E), "abelian" if rep.is_abelian else "nonabelian", "center", len(rep.center))

# %%
# Two pairs are equivalent when some isomorphism of the products fixes C3
# pointwise. Here the two pairs with a nontrivial right action collapse.

c = classify_k2(H, G)
print("classes:", c.classes, "basepoint:", c.basepoint_class)
for (i, j), w in sorted(c.witnesses.items()):
    print(f"  {i} -> {j}: r = {list(w.r)}, v = {list(w.v)}")

# %%
# The three nonabelian products are nevertheless the same abstract group.
# Classes only see isomorphisms that fix C3.

from knit import FiniteGroup, direct_product, is_isomorphic

S3 = FiniteGroup.from_table([[0, 1, 2, 3, 4, 5], [1, 2, 0, 4, 5, 3], [2, 0, 1, 5, 3, 4],
                             [3, 5, 4, 0, 2, 1], [4, 3, 5, 1, 0, 2], [5, 4, 3, 2, 1, 0]])
for mp in pairs[1:]:
    print(presentation(bicrossed(mp)), "is S3 x C3:",
          is_isomorphic(bicrossed(mp).base, direct_product(S3, cyclic_group(3))) is not None)
