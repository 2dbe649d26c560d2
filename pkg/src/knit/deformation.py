"""Deforming a matched pair along a datum (sigma, v, r).

Given a matched pair (H, G) and a datum satisfying the crossed condition

    r(v^-1((v(g1) < r(g2)) v(g2))) = r(g1) (v(g1) > r(g2)),

the set G carries a new multiplication ``g1 * g2 = v^-1((v(g1) < r(g2)) v(g2))``
and new actions making (H, (G, *)) a matched pair whose bicrossed product is
isomorphic to the original one by a map fixing H up to sigma. Conversely every
such isomorphism arises this way, which :func:`deformation_closure` checks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .actions import MatchedPair, enumerate_matched_pairs, matched_pair, verify_matched_pair
from .errors import InvariantError, PreconditionError, SearchTooLargeError, resolve_cap
from .groups import FiniteGroup, GroupMap, automorphisms, identity_map, verify_group
from .morphisms import RVDatum, is_sigma_isomorphic, psi_from_rv
from .report import Check, Report

__all__ = [
    "ClosureReport",
    "Deformation",
    "DeformationDatum",
    "deform",
    "deformation_closure",
    "enumerate_deformation_data",
    "identity_datum",
    "verify_datum",
]

DEFAULT_DATA_CAP = 10**7


@dataclass(frozen=True)
class DeformationDatum:
    sigma: GroupMap
    v: tuple[int, ...]
    r: tuple[int, ...]

    def key(self) -> tuple:
        return (self.sigma.images, self.v, self.r)

    def __repr__(self) -> str:
        return f"DeformationDatum(sigma={list(self.sigma.images)}, v={list(self.v)}, r={list(self.r)})"


def identity_datum(mp: MatchedPair) -> DeformationDatum:
    return DeformationDatum(identity_map(mp.H), tuple(range(mp.G.order)), (0,) * mp.G.order)


def _inverse_perm(v) -> list[int]:
    out = [0] * len(v)
    for g, y in enumerate(v):
        out[y] = g
    return out


def verify_datum(mp: MatchedPair, d: DeformationDatum) -> Report:
    H, G = mp.H, mp.G
    n = G.order
    checks = [
        Check("sigma-automorphism",
              d.sigma.source == H and d.sigma.target == H and d.sigma.is_bijective and d.sigma.is_homomorphism),
    ]
    shape_ok = (
        len(d.v) == n and len(d.r) == n
        and sorted(d.v) == list(range(n))
        and all(0 <= x < H.order for x in d.r)
    )
    checks.append(Check("v-permutation", shape_ok, None, "" if shape_ok else "v must permute G and r map G into H"))
    if not shape_ok:
        return Report.of(checks)
    norm = d.v[0] == 0 and d.r[0] == 0
    checks.append(Check("normalization", norm, None if norm else (0,), "" if norm else "v(1) = 1 and r(1) = 1 required"))
    vinv = _inverse_perm(d.v)
    Hr, Gr = H.rows, G.rows
    a, b = mp.a, mp.b
    r, v = d.r, d.v
    bad = next(
        (
            (g1, g2)
            for g1 in range(n)
            for g2 in range(n)
            if r[vinv[Gr[b[v[g1]][r[g2]]][v[g2]]]] != Hr[r[g1]][a[v[g1]][r[g2]]]
        ),
        None,
    )
    checks.append(Check("crossed", bad is None, bad, "" if bad is None else "(g1,g2)"))
    return Report.of(checks)


@dataclass(frozen=True, eq=False)
class Deformation:
    """The deformed pair on (G, *) and the isomorphism onto the original bicrossed product."""

    pair: MatchedPair
    psi: GroupMap
    datum: DeformationDatum

    @property
    def group(self) -> FiniteGroup:
        return self.pair.G


def deform(mp: MatchedPair, d: DeformationDatum) -> Deformation:
    report = verify_datum(mp, d)
    if not report.ok:
        raise PreconditionError(f"invalid deformation datum: {report.first_failure}")
    H, G = mp.H, mp.G
    n = G.order
    Hr, Gr = H.rows, G.rows
    a, b = mp.a, mp.b
    r, v = d.r, d.v
    vinv = _inverse_perm(v)
    sig = d.sigma.images
    sinv = d.sigma.inverse().images

    star = [[vinv[Gr[b[v[g1]][r[g2]]][v[g2]]] for g2 in range(n)] for g1 in range(n)]
    gcheck = verify_group(star)
    if not gcheck.ok:
        raise InvariantError(f"deformed multiplication is not a group: {gcheck.first_failure}")
    Gs = FiniteGroup.from_table(star, G.labels, name=f"({G.name or 'G'}, *)")

    beta = [[vinv[b[v[g]][sig[h]]] for h in range(H.order)] for g in range(n)]
    # sigma(g >' h) r(g <' h) = r(g) (v(g) > sigma(h))
    alpha = [
        [sinv[Hr[Hr[r[g]][a[v[g]][sig[h]]]][H.inv(r[beta[g][h]])]] for h in range(H.order)]
        for g in range(n)
    ]
    mcheck = verify_matched_pair(H, Gs, alpha, beta)
    if not mcheck.ok:
        raise InvariantError(f"deformed actions are not a matched pair: {mcheck.first_failure}")
    new = matched_pair(H, Gs, alpha, beta)
    psi = psi_from_rv(RVDatum(new, mp, d.sigma, r, v))
    if not psi.is_bijective:
        raise InvariantError("deformation isomorphism is not bijective")
    return Deformation(new, psi, d)


def enumerate_deformation_data(
    mp: MatchedPair, sigma: GroupMap | None = None, *, cap: int | None = None
) -> list[DeformationDatum]:
    """Every valid datum over `sigma` (default the identity), sorted.

    The crossed condition does not mention sigma, so the (v, r) part of the
    answer is the same for every sigma. The raw space is
    ``|H|^(|G|-1) * (|G|-1)!``; the default cap on it is 10**7.
    """
    H, G = mp.H, mp.G
    sigma = identity_map(H) if sigma is None else sigma
    if not (sigma.source == H and sigma.target == H and sigma.is_bijective and sigma.is_homomorphism):
        raise PreconditionError("sigma must be an automorphism of H")
    n = G.order
    size = H.order ** (n - 1) * math.factorial(n - 1)
    cap = resolve_cap(cap, DEFAULT_DATA_CAP)
    if size > cap:
        raise SearchTooLargeError("deformation-data enumeration", size, cap)
    Hr, Gr = H.rows, G.rows
    a, b = mp.a, mp.b
    out = []
    for tail in itertools.permutations(range(1, n)):
        v = (0,) + tail
        vinv = _inverse_perm(v)
        r = [0] * n

        def consistent(k: int) -> bool:
            # pairs whose three r-values are all assigned once r[k] is
            for g1 in range(k + 1):
                for g2 in range(k + 1):
                    t = vinv[Gr[b[v[g1]][r[g2]]][v[g2]]]
                    if t <= k and (g1 == k or g2 == k or t == k):
                        if r[t] != Hr[r[g1]][a[v[g1]][r[g2]]]:
                            return False
            return True

        def extend(k: int):
            if k == n:
                out.append(DeformationDatum(sigma, v, tuple(r)))
                return
            for x in range(H.order):
                r[k] = x
                if consistent(k):
                    extend(k + 1)
            r[k] = 0

        if consistent(0):
            extend(1)
    for d in out:
        if not verify_datum(mp, d).ok:
            raise InvariantError(f"enumerated datum fails verification: {d}")
    out.sort(key=DeformationDatum.key)
    return out


@dataclass(frozen=True, eq=False)
class ClosureReport:
    """Outcome of :func:`deformation_closure`.

    `relations` maps ``(sigma index, i, j)`` to a datum deforming item j into
    item i, for every ordered pair where an isomorphism over sigma exists.
    """

    items: tuple[MatchedPair, ...]
    sigmas: tuple[GroupMap, ...]
    relations: dict[tuple[int, int, int], DeformationDatum]
    data_counts: dict[tuple[int, int], int]
    report: Report


def deformation_closure(H: FiniteGroup, G: FiniteGroup, *, cap: int | None = None) -> ClosureReport:
    """Check both directions of the deformation correspondence on every pair over (H, G).

    Forward: whenever item i is sigma-isomorphic to item j, the datum read off
    the isomorphism deforms j into exactly i. Converse: every datum on item j
    deforms it into a pair that is sigma-isomorphic to j again.
    """
    items = tuple(enumerate_matched_pairs(H, G, cap=cap))
    sigmas = tuple(automorphisms(H))
    relations: dict[tuple[int, int, int], DeformationDatum] = {}
    forward_bad = None
    for s, sigma in enumerate(sigmas):
        for i, j in itertools.product(range(len(items)), repeat=2):
            w = is_sigma_isomorphic(items[i], items[j], sigma)
            if w is None:
                continue
            d = DeformationDatum(sigma, w.v, w.r)
            relations[(s, i, j)] = d
            if forward_bad is None and deform(items[j], d).pair != items[i]:
                forward_bad = (s, i, j)
    counts: dict[tuple[int, int], int] = {}
    converse_bad = None
    for s, sigma in enumerate(sigmas):
        for j, mp in enumerate(items):
            data = enumerate_deformation_data(mp, sigma, cap=cap)
            counts[(s, j)] = len(data)
            # many data land on the same deformed pair
            seen: dict[tuple, bool] = {}
            for d in data:
                new = deform(mp, d).pair
                k = (new.G.table.tobytes(), new.key())
                if k not in seen:
                    seen[k] = is_sigma_isomorphic(new, mp, sigma) is not None
                if not seen[k] and converse_bad is None:
                    converse_bad = (s, j, d.v, d.r)
    report = Report.of([
        Check("forward", forward_bad is None, forward_bad,
              "" if forward_bad is None else "(sigma,i,j): deforming j does not give i"),
        Check("converse", converse_bad is None, converse_bad,
              "" if converse_bad is None else "(sigma,j,v,r): deformed pair not isomorphic back"),
    ])
    return ClosureReport(items, sigmas, relations, counts, report)
