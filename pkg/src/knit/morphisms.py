"""Morphisms of bicrossed products that restrict to a fixed automorphism of H.

A morphism ``psi: H >< G' -> H >< G`` with ``psi(h, 1) = (sigma(h), 1)`` is
the same thing as a pair of maps ``r: G' -> H``, ``v: G' -> G`` through
``psi(h, g') = (sigma(h) r(g'), v(g'))``; this module searches, checks and
converts between the two descriptions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .actions import MatchedPair, ker_beta
from .errors import InvariantError, PreconditionError
from .groups import GroupMap, identity_map
from .products import bicrossed
from .report import Check, Report

__all__ = [
    "B2Morphism",
    "RVDatum",
    "compose_rv",
    "decompose_psi",
    "enumerate_b2_morphisms",
    "enumerate_sigma_morphisms",
    "invert_rv",
    "is_sigma_isomorphic",
    "psi_from_rv",
    "rv_search",
    "rv_to_json",
    "verify_rv",
]


@dataclass(frozen=True, eq=False)
class RVDatum:
    source_mp: MatchedPair
    target_mp: MatchedPair
    sigma: GroupMap
    r: tuple[int, ...]
    v: tuple[int, ...]

    @property
    def v_bijective(self) -> bool:
        return self.source_mp.G.order == self.target_mp.G.order and len(set(self.v)) == len(self.v)

    def key(self) -> tuple:
        return (self.v, self.r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RVDatum):
            return NotImplemented
        return (
            self.r == other.r
            and self.v == other.v
            and self.sigma == other.sigma
            and self.source_mp == other.source_mp
            and self.target_mp == other.target_mp
        )

    def __hash__(self) -> int:
        return hash((self.r, self.v, self.sigma.images))

    def __repr__(self) -> str:
        return f"RVDatum(sigma={list(self.sigma.images)}, r={list(self.r)}, v={list(self.v)})"


def rv_to_json(d: RVDatum) -> dict:
    return {"sigma": list(d.sigma.images), "r": list(d.r), "v": list(d.v), "bijective": d.v_bijective}


def _require_shared_h(src: MatchedPair, tgt: MatchedPair, sigma: GroupMap) -> None:
    if src.H != tgt.H:
        raise PreconditionError("source and target matched pairs must share H")
    if sigma.source != src.H or sigma.target != src.H:
        raise PreconditionError("sigma must be a map H -> H")
    if not (sigma.is_bijective and sigma.is_homomorphism):
        raise PreconditionError("sigma must be an automorphism of H")


def _rv_arrays(d: RVDatum):
    return np.array(d.sigma.images), np.array(d.r), np.array(d.v)


def verify_rv(d: RVDatum) -> Report:
    """Check normalization and the four morphism equations.

    p1: sigma(g' >' h) r(g' <' h) = r(g') (v(g') > sigma(h))
    p2: v(g' <' h) = v(g') < sigma(h)
    p3: r(g1' * g2') = r(g1') (v(g1') > r(g2'))
    p4: v(g1' * g2') = (v(g1') < r(g2')) v(g2')

    With sigma the identity these are the four equations defining the
    relation used by :func:`knit.classification.classify_k2`.
    """
    src, tgt = d.source_mp, d.target_mp
    nGp = src.G.order
    if len(d.r) != nGp or len(d.v) != nGp:
        return Report.of([Check("shape", False, None, f"r and v need {nGp} entries")])
    if any(not 0 <= x < src.H.order for x in d.r) or any(not 0 <= x < tgt.G.order for x in d.v):
        return Report.of([Check("shape", False, None, "r or v value out of range")])
    sig, r, v = _rv_arrays(d)
    Ht, Gt, Gpt = tgt.H.table, tgt.G.table, src.G.table
    ap, bp, a, b = src.alpha, src.beta, tgt.alpha, tgt.beta
    checks = [Check("normalization", d.r[0] == 0 and d.v[0] == 0, None if d.r[0] == 0 and d.v[0] == 0 else (0,))]

    def check(name, lhs, rhs, detail):
        bad = np.argwhere(lhs != rhs)
        w = None if not len(bad) else tuple(int(x) for x in bad[0])
        checks.append(Check(name, w is None, w, "" if w is None else detail))

    check("p1", Ht[sig[ap], r[bp]], Ht[r[:, None], a[v[:, None], sig[None, :]]], "(g',h)")
    check("p2", v[bp], b[v[:, None], sig[None, :]], "(g',h)")
    check("p3", r[Gpt], Ht[r[:, None], a[v[:, None], r[None, :]]], "(g1',g2')")
    check("p4", v[Gpt], Gt[b[v[:, None], r[None, :]], v[None, :]], "(g1',g2')")
    return Report.of(checks)


def psi_from_rv(d: RVDatum) -> GroupMap:
    """The homomorphism ``psi(h, g') = (sigma(h) r(g'), v(g'))`` between the bicrossed products."""
    report = verify_rv(d)
    if not report.ok:
        raise PreconditionError(f"invalid (r, v) datum: {report.first_failure}")
    Es, Et = bicrossed(d.source_mp), bicrossed(d.target_mp)
    H = d.source_mp.H
    nGp, nG = d.source_mp.G.order, d.target_mp.G.order
    images = tuple(
        H.mul(d.sigma(h), d.r[g]) * nG + d.v[g] for h in range(H.order) for g in range(nGp)
    )
    psi = GroupMap(Es.base, Et.base, images)
    if not psi.is_homomorphism:
        raise InvariantError("psi built from a valid datum is not a homomorphism")
    if any(psi(h * nGp) != d.sigma(h) * nG for h in range(H.order)):
        raise InvariantError("psi does not restrict to sigma on H")
    return psi


def decompose_psi(psi: GroupMap, src: MatchedPair, tgt: MatchedPair, sigma: GroupMap) -> RVDatum:
    """Read off (r, v) from ``psi(1, g') = (r(g'), v(g'))``."""
    nGp, nG = src.G.order, tgt.G.order
    if any(psi(h * nGp) != sigma(h) * nG for h in range(src.H.order)):
        raise PreconditionError("psi does not restrict to sigma on H")
    r = tuple(psi(g) // nG for g in range(nGp))
    v = tuple(psi(g) % nG for g in range(nGp))
    return RVDatum(src, tgt, sigma, r, v)


def _rv_fast_ok(src: MatchedPair, tgt: MatchedPair, sig, r, v) -> bool:
    Ht, Gt, Gpt = tgt.H.table, tgt.G.table, src.G.table
    ap, bp, a, b = src.alpha, src.beta, tgt.alpha, tgt.beta
    return bool(
        (r[Gpt] == Ht[r[:, None], a[v[:, None], r[None, :]]]).all()
        and (v[Gpt] == Gt[b[v[:, None], r[None, :]], v[None, :]]).all()
        and (v[bp] == b[v[:, None], sig[None, :]]).all()
        and (Ht[sig[ap], r[bp]] == Ht[r[:, None], a[v[:, None], sig[None, :]]]).all()
    )


def rv_search(src: MatchedPair, tgt: MatchedPair, sigma: GroupMap) -> tuple[list[RVDatum], int]:
    """All (r, v) data from `src` to `tgt` over `sigma`, plus the number of candidates tried.

    Values are chosen on the generators of the source G and pushed along its
    spanning tree with p3/p4; the full equation set is then re-checked.
    """
    _require_shared_h(src, tgt, sigma)
    H, Gp, G = tgt.H, src.G, tgt.G
    Hr, Gr = H.rows, G.rows
    a, b = tgt.a, tgt.b
    gens = Gp.generators
    sig = np.array(sigma.images)
    cands = list(itertools.product(range(H.order), range(G.order)))
    found, tried = [], 0
    for choice in itertools.product(cands, repeat=len(gens)):
        tried += 1
        at = dict(zip(gens, choice))
        r = [0] * Gp.order
        v = [0] * Gp.order
        for x, p, s in Gp.spanning_tree:
            rs, vs = at[s]
            r[x] = Hr[r[p]][a[v[p]][rs]]
            v[x] = Gr[b[v[p]][rs]][vs]
        if any(at[s] != (r[s], v[s]) for s in gens):
            continue
        ra, va = np.array(r), np.array(v)
        if _rv_fast_ok(src, tgt, sig, ra, va):
            found.append(RVDatum(src, tgt, sigma, tuple(r), tuple(v)))
    found.sort(key=RVDatum.key)
    return found, tried


def enumerate_sigma_morphisms(src: MatchedPair, tgt: MatchedPair, sigma: GroupMap | None = None) -> list[RVDatum]:
    """All sigma-invariant morphisms from src's bicrossed product to tgt's, as (r, v) data."""
    sigma = identity_map(src.H) if sigma is None else sigma
    return rv_search(src, tgt, sigma)[0]


def is_sigma_isomorphic(src: MatchedPair, tgt: MatchedPair, sigma: GroupMap | None = None) -> RVDatum | None:
    """The first datum with v bijective, or None."""
    sigma = identity_map(src.H) if sigma is None else sigma
    if src.G.order != tgt.G.order:
        return None
    for d in enumerate_sigma_morphisms(src, tgt, sigma):
        if d.v_bijective:
            return d
    return None


def compose_rv(first: RVDatum, second: RVDatum) -> RVDatum:
    """The datum of ``psi_second o psi_first``."""
    if first.target_mp != second.source_mp:
        raise PreconditionError("data are not composable")
    H = first.source_mp.H
    s2 = second.sigma
    r = tuple(H.mul(s2(first.r[g]), second.r[first.v[g]]) for g in range(len(first.r)))
    v = tuple(second.v[first.v[g]] for g in range(len(first.v)))
    return RVDatum(first.source_mp, second.target_mp, first.sigma.then(s2), r, v)


def invert_rv(d: RVDatum) -> RVDatum:
    """The datum of ``psi^-1``; needs v bijective."""
    if not d.v_bijective:
        raise PreconditionError("only data with bijective v can be inverted")
    H = d.source_mp.H
    sinv = d.sigma.inverse()
    vinv = [0] * len(d.v)
    for g, y in enumerate(d.v):
        vinv[y] = g
    r = tuple(H.inv(sinv(d.r[vinv[g]])) for g in range(len(vinv)))
    return RVDatum(d.target_mp, d.source_mp, sinv, r, tuple(vinv))


@dataclass(frozen=True, eq=False)
class B2Morphism:
    """A morphism ``psi(h, g) = (h r(g), g)`` between two pairs sharing beta."""

    source_mp: MatchedPair
    target_mp: MatchedPair
    r: tuple[int, ...]

    @cached_property
    def psi(self) -> GroupMap:
        H, G = self.source_mp.H, self.source_mp.G
        nG = G.order
        images = tuple(H.mul(h, self.r[g]) * nG + g for h in range(H.order) for g in range(nG))
        return GroupMap(bicrossed(self.source_mp).base, bicrossed(self.target_mp).base, images)

    def as_rv(self) -> RVDatum:
        """The same morphism seen as an (r, v) datum with sigma = id and v = id."""
        G = self.source_mp.G
        return RVDatum(self.source_mp, self.target_mp, identity_map(self.source_mp.H), self.r, tuple(range(G.order)))

    def __repr__(self) -> str:
        return f"B2Morphism(r={list(self.r)})"


def enumerate_b2_morphisms(src: MatchedPair, tgt: MatchedPair) -> list[B2Morphism]:
    """All maps r: G -> Ker(beta) with

    (g >' h) r(g < h) = r(g) (g > h)     and     r(g1 g2) = r(g1) (g1 > r(g2)),

    where >' is the source's left action and > the target's.
    """
    if src.H != tgt.H or src.G != tgt.G:
        raise PreconditionError("B2 morphisms need matched pairs on the same H and G")
    if not np.array_equal(src.beta, tgt.beta):
        raise PreconditionError("B2 morphisms need matched pairs with the same beta")
    H, G = src.H, src.G
    Hr = H.rows
    a, ap, b = tgt.a, src.a, tgt.b
    kernel = sorted(ker_beta(tgt).elements)
    gens = G.generators
    out = []
    for choice in itertools.product(kernel, repeat=len(gens)):
        at = dict(zip(gens, choice))
        r = [0] * G.order
        for x, p, s in G.spanning_tree:
            r[x] = Hr[r[p]][a[p][at[s]]]
        if any(r[s] != at[s] for s in gens) or not set(r) <= set(kernel):
            continue
        ok = all(
            r[G.mul(g1, g2)] == Hr[r[g1]][a[g1][r[g2]]] for g1 in range(G.order) for g2 in range(G.order)
        ) and all(
            Hr[ap[g][h]][r[b[g][h]]] == Hr[r[g]][a[g][h]] for g in range(G.order) for h in range(H.order)
        )
        if ok:
            m = B2Morphism(src, tgt, tuple(r))
            if not (m.psi.is_homomorphism and m.psi.is_bijective):
                raise InvariantError("B2 morphism is not an isomorphism")
            out.append(m)
    out.sort(key=lambda m: m.r)
    return out
