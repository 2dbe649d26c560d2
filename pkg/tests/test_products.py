
import numpy as np
import pytest

from knit import (
    FiniteGroup,
    PreconditionError,
    abelian_criterion,
    bicrossed,
    center_by_formula,
    cyclic_criterion,
    cyclic_group,
    direct_product,
    enumerate_matched_pairs,
    is_isomorphic,
    presentation,
    semidirect_left,
    semidirect_right,
    structural_report,
    verify_fixed_point_diagram,
    verify_group,
)
from knit.products import relations
from conftest import sign_alpha
from oracles import brute_center, symmetric_group_table

S3 = FiniteGroup.from_table(symmetric_group_table(3))
V4 = direct_product(cyclic_group(2), cyclic_group(2))


def test_product_is_a_group_with_embeddings(c3c6):
    for mp in c3c6.values():
        E = bicrossed(mp)
        assert E.base.order == 18
        assert verify_group(E.base.table).ok
        assert E.embed_h.is_homomorphism and E.embed_g.is_homomorphism
        assert E.index(2, 5) == 17 and E.pair(17) == (2, 5)


def test_multiplication_rule(c3c6):
    mp = c3c6["shift2"]
    E = bicrossed(mp)
    for h1, g1, h2, g2 in [(1, 1, 1, 1), (2, 3, 1, 4), (0, 5, 2, 0)]:
        h = mp.H.mul(h1, mp.a[g1][h2])
        g = mp.G.mul(mp.b[g1][h2], g2)
        assert E.base.mul(E.index(h1, g1), E.index(h2, g2)) == E.index(h, g)


def test_generator_relations(c3c6):
    assert relations(bicrossed(c3c6["shift2"])) == ["ba = a^2b^3"]
    assert relations(bicrossed(c3c6["sign"])) == ["ba = a^2b"]
    assert relations(bicrossed(c3c6["trivial"])) == ["ba = ab"]
    assert presentation(bicrossed(c3c6["shift2"])) == "<a,b | a^3, b^6, ba = a^2b^3>"


def test_center_of_shift_pair(c3c6):
    assert center_by_formula(c3c6["shift2"]) == {(0, 0), (0, 2), (0, 4)}
    assert center_by_formula(c3c6["trivial"]) == {(h, g) for h in range(3) for g in range(6)}


def test_criteria_on_c3_c6(c3c6):
    assert abelian_criterion(c3c6["trivial"]) and not cyclic_criterion(c3c6["trivial"])
    assert not abelian_criterion(c3c6["sign"])
    mp = enumerate_matched_pairs(cyclic_group(2, "a"), cyclic_group(3))[0]
    assert cyclic_criterion(mp)


def _corpus():
    groups = [cyclic_group(n) for n in range(1, 9)] + [V4, S3]
    for H in groups:
        for G in groups:
            if H.order * G.order <= 48:
                yield H, G


@pytest.mark.parametrize("H,G", list(_corpus()), ids=lambda g: g.name or str(g.order))
def test_center_and_criteria_match_brute_force(H, G):
    for mp in enumerate_matched_pairs(H, G):
        E = bicrossed(mp)
        rows = E.base.rows
        assert {E.index(*p) for p in center_by_formula(mp)} == brute_center(rows)
        abelian = all(rows[x][y] == rows[y][x] for x in range(len(rows)) for y in range(len(rows)))
        assert abelian_criterion(mp) == abelian
        assert cyclic_criterion(mp) == structural_report(E.base).is_cyclic
        assert verify_fixed_point_diagram(mp).ok


def test_semidirect_products():
    C3, C2 = cyclic_group(3, "a"), cyclic_group(2)
    L = semidirect_left(C3, C2, [[0, 1, 2], [0, 2, 1]])
    assert is_isomorphic(L, S3) is not None
    R = semidirect_right(C2, C3, [[0, 0], [1, 2], [2, 1]])
    assert is_isomorphic(R, S3) is not None
    D = semidirect_left(C3, C2, [[0, 1, 2], [0, 1, 2]])
    assert is_isomorphic(D, cyclic_group(6)) is not None
    with pytest.raises(PreconditionError):
        semidirect_left(C3, C2, [[0, 1, 2], [0, 1, 1]])
    with pytest.raises(PreconditionError):
        semidirect_left(C3, C2, [[0, 1, 2]])


def test_semidirect_matches_bicrossed_with_trivial_beta(C3, C6):
    L = semidirect_left(C3, C6, sign_alpha(6))
    E = bicrossed(next(mp for mp in enumerate_matched_pairs(C3, C6) if mp.beta_trivial and not mp.alpha_trivial))
    assert np.array_equal(L.table, E.base.table)


def test_fixed_point_diagram_report(c3c6):
    rep = verify_fixed_point_diagram(c3c6["shift4"])
    assert rep.ok
    assert rep.names() == [
        "ibar-homomorphism", "jbar-homomorphism", "i-homomorphism", "j-homomorphism",
        "square-commutes", "pullback", "generation",
    ]
    assert rep.notes


def test_nonabelian_products_on_c3_c6_are_all_s3_times_c3(c3c6):
    # distinct up to maps fixing H, yet the same abstract group
    target = direct_product(S3, cyclic_group(3))
    for k in ("sign", "shift2", "shift4"):
        assert is_isomorphic(bicrossed(c3c6[k]).base, target) is not None
    abelian = bicrossed(c3c6["trivial"]).base
    assert is_isomorphic(abelian, direct_product(cyclic_group(3), cyclic_group(6))) is not None
    assert is_isomorphic(abelian, target) is None
