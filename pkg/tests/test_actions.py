import json
import math

import numpy as np
import pytest

from knit import (
    FiniteGroup,
    MalformedTableError,
    NotAMatchedPairError,
    SearchTooLargeError,
    automorphisms,
    cyclic_group,
    direct_product,
    enumerate_matched_pairs,
    fix_g,
    fix_h,
    is_action_by_automorphisms,
    ker_beta,
    matched_pair,
    matched_pair_from_json,
    matched_pair_to_json,
    trivial_beta,
    verify_matched_pair,
)
from conftest import shifted_beta, sign_alpha
from oracles import brute_matched_pairs, is_matched_pair, symmetric_group_table

S3 = FiniteGroup.from_table(symmetric_group_table(3))
V4 = direct_product(cyclic_group(2), cyclic_group(2))
SMALL = [cyclic_group(n) for n in range(1, 7)] + [V4, S3]


def _pairs_within_budget(budget=20000):
    # the oracle tries every unit-fixing permutation per generator
    for H in SMALL:
        for G in SMALL:
            cost = math.factorial(H.order - 1) ** len(G.generators) * math.factorial(G.order - 1) ** len(H.generators)
            if cost <= budget:
                yield H, G


@pytest.mark.parametrize("H,G", list(_pairs_within_budget()), ids=lambda g: g.name or str(g.order))
def test_enumerator_matches_brute_force(H, G):
    found = {(tuple(map(tuple, mp.a)), tuple(map(tuple, mp.b))) for mp in enumerate_matched_pairs(H, G)}
    assert found == brute_matched_pairs(H.rows, G.rows)


def test_c3_c6_has_four_pairs(C3, C6, c3c6):
    found = enumerate_matched_pairs(C3, C6)
    assert len(found) == 4
    assert {mp.key() for mp in found} == {mp.key() for mp in c3c6.values()}


def test_every_enumerated_pair_passes_loop_oracle(C3, C6):
    for mp in enumerate_matched_pairs(C3, C6):
        assert is_matched_pair(C3.rows, C6.rows, mp.a, mp.b)


def test_trivial_alpha_with_shift_beta_fails_right_compatibility(C3, C6):
    rep = verify_matched_pair(C3, C6, None, shifted_beta(6, 2, 4))
    assert not rep.ok
    assert rep.first_failure.name == "compat-right"
    assert rep.first_failure.witness == (1, 1, 1)
    with pytest.raises(NotAMatchedPairError):
        matched_pair(C3, C6, None, shifted_beta(6, 2, 4))


def test_verify_rejects_non_action():
    C2 = cyclic_group(2)
    C3 = cyclic_group(3)
    # a row that is not a permutation of H
    rep = verify_matched_pair(C3, C2, [[0, 1, 2], [0, 1, 1]], None)
    assert not rep.ok and rep.first_failure.name.startswith("alpha")


def test_bad_table_shapes(C3, C6):
    with pytest.raises(MalformedTableError):
        matched_pair(C3, C6, [[0, 1, 2]], None)
    with pytest.raises(MalformedTableError):
        matched_pair(C3, C6, None, [[9, 9, 9]] * 6)


def test_fixed_points_and_kernel(c3c6):
    assert fix_h(c3c6["trivial"]).elements == {0, 1, 2}
    assert fix_h(c3c6["sign"]).elements == {0}
    assert fix_g(c3c6["sign"]).elements == set(range(6))
    assert fix_g(c3c6["shift2"]).elements == {0, 2, 4}
    assert ker_beta(c3c6["shift2"]).elements == {0}
    assert ker_beta(c3c6["sign"]).elements == {0, 1, 2}


def test_is_action_by_automorphisms(C3, C6):
    assert is_action_by_automorphisms(C3, sign_alpha(6), "left")
    assert not is_action_by_automorphisms(C6, shifted_beta(6, 2, 4), "right")
    assert is_action_by_automorphisms(C6, trivial_beta(C3, C6), "right")
    with pytest.raises(ValueError):
        is_action_by_automorphisms(C3, sign_alpha(6), "up")


@pytest.mark.parametrize("n,m,count", [(2, 8, 4), (3, 5, 1), (2, 2, 1), (3, 6, 4), (2, 6, 2), (2, 12, 4)])
def test_cyclic_counts(n, m, count):
    assert len(enumerate_matched_pairs(cyclic_group(n, "a"), cyclic_group(m))) == count


@pytest.mark.parametrize("n,m", [(2, 6), (3, 6), (2, 8), (4, 4), (3, 9)])
def test_swapping_factors_preserves_count(n, m):
    left = enumerate_matched_pairs(cyclic_group(n), cyclic_group(m))
    right = enumerate_matched_pairs(cyclic_group(m), cyclic_group(n))
    assert len(left) == len(right)


@pytest.mark.parametrize("H,G", [(cyclic_group(3), cyclic_group(6)), (V4, cyclic_group(3)), (cyclic_group(7), cyclic_group(3))])
def test_trivial_beta_pairs_are_actions_by_automorphisms(H, G):
    pairs = enumerate_matched_pairs(H, G, beta=trivial_beta(H, G))
    auts = {f.images for f in automorphisms(H)}
    for mp in pairs:
        assert all(tuple(row) in auts for row in mp.a)
    # each such action is fixed by where the generator goes, an element of Aut(H) of order dividing |G|
    brute = [
        f for f in automorphisms(H)
        if all(x == y for x, y in zip(_power(f.images, G.order), range(H.order)))
    ]
    if len(G.generators) == 1:
        assert len(pairs) == len(brute)


def _power(perm, k):
    out = list(range(len(perm)))
    for _ in range(k):
        out = [perm[x] for x in out]
    return out


def test_enumeration_respects_cap():
    with pytest.raises(SearchTooLargeError):
        enumerate_matched_pairs(cyclic_group(9), cyclic_group(9))
    with pytest.raises(SearchTooLargeError):
        enumerate_matched_pairs(cyclic_group(2), cyclic_group(3), cap=5)


def test_cap_can_come_from_environment(monkeypatch):
    monkeypatch.setenv("KNIT_MAX_SEARCH", "4")
    with pytest.raises(SearchTooLargeError):
        enumerate_matched_pairs(cyclic_group(2), cyclic_group(3))


def test_output_is_sorted_and_deterministic(C3, C6):
    a = enumerate_matched_pairs(C3, C6)
    b = enumerate_matched_pairs(C3, C6)
    assert [p.key() for p in a] == sorted(p.key() for p in a) == [p.key() for p in b]


def test_tables_are_read_only(c3c6):
    with pytest.raises(ValueError):
        c3c6["sign"].alpha[0, 0] = 1


def test_json_round_trip(c3c6):
    for mp in c3c6.values():
        data = json.loads(json.dumps(matched_pair_to_json(mp)))
        back = matched_pair_from_json(data)
        assert back == mp
        assert np.array_equal(back.beta, mp.beta)
    with pytest.raises(MalformedTableError):
        matched_pair_from_json('{"H": {"kind": "cyclic", "n": 3}}')
    with pytest.raises(MalformedTableError):
        matched_pair_from_json("[")
