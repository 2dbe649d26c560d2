import math

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from knit import (
    FiniteGroup,
    automorphisms,
    bicrossed,
    center_by_formula,
    cyclic_group,
    deform,
    enumerate_deformation_data,
    enumerate_matched_pairs,
    group_from_json,
    group_to_json,
    invert_rv,
    is_isomorphic,
    is_sigma_isomorphic,
    matched_pair_from_substitution,
    substitution_from_matched_pair,
    varsigma,
    verify_group,
    verify_matched_pair,
    verify_rv,
)
from knit.cyclic import varsigma_count
from oracles import brute_center, is_matched_pair

FAST = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

cyclic_orders = st.tuples(st.integers(1, 8), st.integers(1, 8)).filter(lambda nm: nm[0] * nm[1] <= 36)


@st.composite
def cyclic_pair(draw):
    n, m = draw(cyclic_orders)
    pairs = enumerate_matched_pairs(cyclic_group(n, "a"), cyclic_group(m), cap=n * m)
    return draw(st.sampled_from(pairs))


@FAST
@given(cyclic_pair())
def test_product_is_a_group_with_normal_form(mp):
    E = bicrossed(mp)
    assert verify_group(E.base.table).ok
    nG = mp.G.order
    rows = E.base.rows
    assert all(rows[h * nG][g] == h * nG + g for h in range(mp.H.order) for g in range(nG))
    assert {E.index(*p) for p in center_by_formula(mp)} == brute_center(rows)


@FAST
@given(cyclic_pair())
def test_substitution_round_trip(mp):
    assert matched_pair_from_substitution(substitution_from_matched_pair(mp)) == mp


@FAST
@given(cyclic_pair(), st.data())
def test_single_cell_change_agrees_with_loop_oracle(mp, data):
    a, b = mp.a, mp.b
    which = data.draw(st.sampled_from(["alpha", "beta"]))
    g = data.draw(st.integers(0, mp.G.order - 1))
    h = data.draw(st.integers(0, mp.H.order - 1))
    if which == "alpha":
        a[g][h] = data.draw(st.integers(0, mp.H.order - 1))
    else:
        b[g][h] = data.draw(st.integers(0, mp.G.order - 1))
    assert verify_matched_pair(mp.H, mp.G, a, b).ok == is_matched_pair(mp.H.rows, mp.G.rows, a, b)


@FAST
@given(st.integers(1, 10), st.integers(1, 200))
def test_varsigma_is_a_subgroup_of_the_units(n, m):
    ts = varsigma(n, m)
    assert len(ts) == varsigma_count(n, m)
    assert 1 in ts
    if m > 1:
        s = set(ts)
        assert all((x * y) % m in s for x in ts for y in ts)
        assert all(pow(x, -1, m) in s for x in ts)


@FAST
@given(st.integers(2, 9), st.permutations(range(1, 9)))
def test_relabelled_cyclic_group_is_recognised(n, perm):
    p = [0] + [x for x in perm if x < n]
    C = cyclic_group(n)
    inv = {y: x for x, y in enumerate(p)}
    table = [[p[C.mul(inv[x], inv[y])] for y in range(n)] for x in range(n)]
    G = FiniteGroup.from_table(table)
    assert is_isomorphic(G, C) is not None
    assert group_from_json(group_to_json(G)) == G
    assert len(automorphisms(G)) == sum(1 for t in range(1, n + 1) if math.gcd(t, n) == 1)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(2, 4), (2, 6), (3, 3), (3, 6), (4, 2), (2, 5)]), st.data())
def test_deformation_lands_in_the_same_class(nm, data):
    n, m = nm
    mp = data.draw(st.sampled_from(enumerate_matched_pairs(cyclic_group(n, "a"), cyclic_group(m))))
    sigma = data.draw(st.sampled_from(automorphisms(mp.H)))
    d = data.draw(st.sampled_from(enumerate_deformation_data(mp, sigma)))
    out = deform(mp, d)
    assert out.psi.is_bijective and out.psi.is_homomorphism
    nG = mp.G.order
    assert all(out.psi(h * nG) == sigma(h) * nG for h in range(mp.H.order))
    w = is_sigma_isomorphic(out.pair, mp, sigma)
    assert w is not None
    back = invert_rv(w)
    assert verify_rv(back).ok
