"""
Matched pairs as pairs of permutations
======================================

For cyclic H = <a> and G = <b>, a matched pair is fixed by two
permutations: theta(x) with b > a^x = a^theta(x), and phi(y) with
b^y < a = b^phi(y).
"""

from knit import cyclic_group, enumerate_matched_pairs, special_substitutions, substitution_from_matched_pair

for sp in special_substitutions(3, 6):
    print("theta", sp.theta, "phi", sp.phi)

# %%
# The same list, read off the enumerated matched pairs.

pairs = enumerate_matched_pairs(cyclic_group(3, "a"), cyclic_group(6, "b"))
assert {substitution_from_matched_pair(p) for p in pairs} == set(special_substitutions(3, 6))

# %%
# Counts for small orders.

for n in range(2, 7):
    print(n, [len(special_substitutions(n, m)) for m in range(1, 37 // n + 1)])
