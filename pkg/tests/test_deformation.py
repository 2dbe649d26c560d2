import itertools

import pytest

from knit import (
    DeformationDatum,
    PreconditionError,
    SearchTooLargeError,
    automorphisms,
    cyclic_group,
    deform,
    deformation_closure,
    enumerate_deformation_data,
    enumerate_matched_pairs,
    identity_map,
    is_sigma_isomorphic,
    verify_datum,
    verify_group,
    verify_matched_pair,
)
from knit.deformation import identity_datum


def _crossed(mp, v, r):
    H, G = mp.H, mp.G
    vinv = {y: g for g, y in enumerate(v)}
    return all(
        r[vinv[G.mul(mp.b[v[g1]][r[g2]], v[g2])]] == H.mul(r[g1], mp.a[v[g1]][r[g2]])
        for g1 in range(G.order)
        for g2 in range(G.order)
    )


def _brute_data(mp):
    n = mp.G.order
    return sorted(
        (v, r)
        for tail in itertools.permutations(range(1, n))
        for rt in itertools.product(range(mp.H.order), repeat=n - 1)
        for v, r in [((0,) + tail, (0,) + rt)]
        if _crossed(mp, v, r)
    )


@pytest.mark.parametrize("n,m", [(2, 2), (2, 4), (3, 3), (2, 5), (3, 6)])
def test_data_match_brute_force(n, m):
    for mp in enumerate_matched_pairs(cyclic_group(n, "a"), cyclic_group(m)):
        found = [(d.v, d.r) for d in enumerate_deformation_data(mp)]
        assert found == _brute_data(mp)


def test_c3_c6_data_counts(c3c6):
    counts = {k: len(enumerate_deformation_data(mp)) for k, mp in c3c6.items()}
    assert counts == {"trivial": 360, "sign": 360, "shift2": 480, "shift4": 480}


def test_identity_datum_deforms_to_itself(c3c6):
    for mp in c3c6.values():
        d = identity_datum(mp)
        assert verify_datum(mp, d).ok
        out = deform(mp, d)
        assert out.pair == mp
        assert out.psi == identity_map(out.psi.source)


def test_isomorphism_datum_deforms_target_into_source(c3c6):
    w = is_sigma_isomorphic(c3c6["shift2"], c3c6["shift4"])
    d = DeformationDatum(w.sigma, w.v, w.r)
    assert deform(c3c6["shift4"], d).pair == c3c6["shift2"]


def test_every_datum_deforms_into_an_isomorphic_pair(c3c6):
    for mp in c3c6.values():
        for sigma in automorphisms(mp.H):
            for d in enumerate_deformation_data(mp, sigma)[::37]:
                out = deform(mp, d)
                assert verify_group(out.group.table).ok
                assert verify_matched_pair(out.pair.H, out.pair.G, out.pair.alpha, out.pair.beta).ok
                assert out.psi.is_bijective and out.psi.is_homomorphism
                assert is_sigma_isomorphic(out.pair, mp, sigma) is not None


def test_deformed_group_can_differ_from_original():
    # on (C2, C4) the deformed multiplication need not be the original one
    mp = enumerate_matched_pairs(cyclic_group(2, "a"), cyclic_group(4))[0]
    tables = {deform(mp, d).group.table.tobytes() for d in enumerate_deformation_data(mp)}
    assert len(tables) > 1


def test_invalid_data_are_rejected(c3c6):
    mp = c3c6["shift2"]
    bad = DeformationDatum(identity_map(mp.H), tuple(range(6)), (0, 1, 0, 0, 0, 0))
    rep = verify_datum(mp, bad)
    assert rep.first_failure.name == "crossed"
    with pytest.raises(PreconditionError):
        deform(mp, bad)
    assert verify_datum(mp, DeformationDatum(identity_map(mp.H), (0, 1, 1, 3, 4, 5), (0,) * 6)).first_failure.name == "v-permutation"
    assert verify_datum(mp, DeformationDatum(identity_map(mp.H), (1, 0, 2, 3, 4, 5), (0,) * 6)).first_failure.name == "normalization"


def test_data_enumeration_cap(c3c6):
    with pytest.raises(SearchTooLargeError):
        enumerate_deformation_data(c3c6["sign"], cap=1000)


@pytest.mark.parametrize("m", range(1, 7))
def test_closure_on_c2_cm(m):
    rep = deformation_closure(cyclic_group(2, "a"), cyclic_group(m))
    assert rep.report.ok, str(rep.report)
    n = len(rep.items)
    assert all((0, i, i) in rep.relations for i in range(n))


def test_closure_on_c3_c6():
    rep = deformation_closure(cyclic_group(3, "a"), cyclic_group(6))
    assert rep.report.ok
    assert len(rep.sigmas) == 2
    assert sorted(rep.data_counts.values()) == [360, 360, 360, 360, 480, 480, 480, 480]
