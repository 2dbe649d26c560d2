import pytest

from knit import (
    FiniteGroup,
    InvalidOrderError,
    PreconditionError,
    SearchTooLargeError,
    SubstitutionPair,
    c2_cm_matched_pairs,
    c3_cm_matched_pairs,
    cyclic_group,
    cyclic_report,
    enumerate_matched_pairs,
    matched_pair_from_substitution,
    special_substitutions,
    substitution_from_matched_pair,
    varsigma,
)
from knit.cyclic import (
    _beta_closed,
    _beta_recurrence,
    c3_stated_count,
    factorize,
    varsigma_count,
    varsigma_count_n2,
    varsigma_count_odd_prime,
    verify_substitution,
)
from oracles import power_solutions, symmetric_group_table


def test_varsigma_examples():
    assert varsigma(2, 8) == (1, 3, 5, 7)
    assert varsigma(2, 6) == (1, 5)
    assert varsigma(3, 7) == (1, 2, 4)
    assert varsigma(3, 6) == (1,)
    assert varsigma(5, 1) == (1,)
    with pytest.raises(InvalidOrderError):
        varsigma(0, 5)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_varsigma_against_oracle(n):
    for m in range(1, 80):
        assert list(varsigma(n, m)) == power_solutions(n, m)
        assert varsigma_count(n, m) == len(power_solutions(n, m))


def test_count_formulas():
    for m in range(1, 130):
        assert varsigma_count_n2(m) == len(power_solutions(2, m))
        for p in (3, 5, 7):
            assert varsigma_count_odd_prime(p, m) == len(power_solutions(p, m))
    with pytest.raises(PreconditionError):
        varsigma_count_odd_prime(9, 10)
    assert factorize(360) == {2: 3, 3: 2, 5: 1}


@pytest.mark.parametrize("m", range(1, 65))
def test_c2_cm_against_enumerator(m):
    pairs = c2_cm_matched_pairs(m)
    assert len(pairs) == len(varsigma(2, m)) == varsigma_count_n2(m)
    assert all(mp.alpha_trivial for mp in pairs)


@pytest.mark.parametrize("m", range(1, 37))
def test_c3_cm_against_enumerator(m):
    pairs = c3_cm_matched_pairs(m)
    generic = enumerate_matched_pairs(cyclic_group(3, "a"), cyclic_group(m), cap=3 * m)
    assert {p.key() for p in pairs} == {p.key() for p in generic}
    expected = len(varsigma(3, m)) + (1 if m % 2 == 0 else 0) + (2 if m % 6 == 0 else 0)
    assert len(pairs) == expected


@pytest.mark.parametrize("m", [6, 12, 18, 24, 30, 36])
def test_recurrence_matches_closed_form(m):
    u = m // 6
    assert _beta_recurrence(m, u, 2 * u) == _beta_closed(m, 2 * u, 4 * u)
    assert _beta_recurrence(m, 2 * u, 4 * u) == _beta_closed(m, 4 * u, 2 * u)


def test_report_flags_count_discrepancy():
    r = cyclic_report(3, 12)
    assert r.oracle_count == len(r.varsigma) + 3 == 4
    assert r.stated_count == len(r.varsigma) + 2
    assert r.discrepancy
    assert not cyclic_report(3, 9).discrepancy
    assert cyclic_report(3, 4).stated_count is None and not cyclic_report(3, 4).discrepancy
    assert c3_stated_count(7) == 3
    r2 = cyclic_report(2, 24)
    assert r2.oracle_count == r2.formula_count == r2.stated_count == 8
    r4 = cyclic_report(4, 5)
    assert r4.stated_count is None and r4.oracle_count == len(r4.pairs)


def test_substitution_examples():
    sp = SubstitutionPair(3, 6, (0, 2, 1), (0, 3, 2, 5, 4, 1))
    assert verify_substitution(sp).ok
    mp = matched_pair_from_substitution(sp)
    assert mp.b[1] == [1, 3, 5]
    assert substitution_from_matched_pair(mp) == sp
    bad = SubstitutionPair(3, 6, (0, 1, 2), (0, 3, 2, 5, 4, 1))
    rep = verify_substitution(bad)
    assert not rep.ok
    with pytest.raises(PreconditionError):
        matched_pair_from_substitution(bad)
    assert verify_substitution(SubstitutionPair(3, 2, (1, 0, 2), (0, 1))).first_failure.name == "zero-fixed"
    assert verify_substitution(SubstitutionPair(3, 2, (0, 1), (0, 1))).first_failure.name == "shape"


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 13) for m in range(1, 13) if n * m <= 36])
def test_substitutions_round_trip(n, m):
    subs = special_substitutions(n, m)
    pairs = enumerate_matched_pairs(cyclic_group(n, "a"), cyclic_group(m), cap=n * m)
    assert len(subs) == len(pairs)
    assert {matched_pair_from_substitution(s).key() for s in subs} == {p.key() for p in pairs}
    for p in pairs:
        assert matched_pair_from_substitution(substitution_from_matched_pair(p)) == p


def test_substitution_search_cap():
    with pytest.raises(SearchTooLargeError):
        special_substitutions(9, 9)


def test_non_cyclic_input_is_rejected():
    S3 = FiniteGroup.from_table(symmetric_group_table(3))
    mp = enumerate_matched_pairs(S3, cyclic_group(2))[0]
    with pytest.raises(PreconditionError):
        substitution_from_matched_pair(mp)
