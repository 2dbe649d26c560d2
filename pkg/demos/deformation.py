"""
Deforming a matched pair
========================

A datum (sigma, v, r) twists the multiplication of G and both actions.
The new pair has an isomorphic product, by a map that acts as sigma on H.
"""

from knit import automorphisms, cyclic_group, deform, enumerate_deformation_data, enumerate_matched_pairs
from knit.cli import render_pair

H, G = cyclic_group(3, "a"), cyclic_group(6, "b")
mp = enumerate_matched_pairs(H, G)[2]
print("\n".join(render_pair(mp)))

data = enumerate_deformation_data(mp)
print(len(data), "data over the identity automorphism")

# %%
# Group the outcomes: many data give the same deformed pair.

outcomes = {}
for d in data:
    out = deform(mp, d)
    outcomes.setdefault(out.pair.key(), []).append(d)
for key, ds in outcomes.items():
    print(f"{len(ds):4d} data -> beta row for b: {list(key[1][1])}")

# %%
# Inverting b swaps the two nontrivial right actions.

d = next(d for d in data if d.v[1] == 5 and not any(d.r))
print("\n".join(render_pair(deform(mp, d).pair)))

# %%
# Twisting by the nontrivial automorphism of C3 works just as well.

sigma = automorphisms(H)[1]
print(len(enumerate_deformation_data(mp, sigma)), "data over a -> a^2")
