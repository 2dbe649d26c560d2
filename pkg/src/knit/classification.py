"""Classifying matched pairs up to isomorphisms of bicrossed products that fix H.

``classify_k2`` partitions all matched pairs on (H, G) by existence of an
isomorphism ``psi(h, g) = (h r(g), v(g))``. ``classify_b2`` fixes beta and
partitions by isomorphisms ``psi(h, g) = (h r(g), g)`` with r valued in
Ker(beta). Both record a witness for every related ordered pair and, for
unrelated pairs, how many candidates the exhausted search looked at.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Literal, NamedTuple

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .actions import (
    MatchedPair,
    _action_table,
    enumerate_matched_pairs,
    is_action_by_automorphisms,
    ker_beta,
    trivial_alpha,
    trivial_beta,
)
from .errors import InvariantError, PreconditionError
from .groups import FiniteGroup, automorphisms, homomorphisms, identity_map
from .morphisms import B2Morphism, RVDatum, enumerate_b2_morphisms, rv_search

__all__ = [
    "Classification",
    "LeftSemidirectWitness",
    "RightSemidirectWitness",
    "classify_b2",
    "classify_k2",
    "conjugation_action",
    "recognize_direct_product",
    "recognize_semidirect_left",
    "recognize_semidirect_right",
]


@dataclass(frozen=True, eq=False)
class Classification:
    relation: Literal["k2", "b2"]
    items: tuple[MatchedPair, ...]
    classes: tuple[tuple[int, ...], ...]
    witnesses: dict[tuple[int, int], RVDatum | B2Morphism]
    basepoint_class: int | None
    search_space: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def representatives(self) -> tuple[int, ...]:
        """Smallest item index in each class; items are sorted, so this is the lexicographic minimum."""
        return tuple(min(c) for c in self.classes)

    def class_of(self, i: int) -> int:
        for k, c in enumerate(self.classes):
            if i in c:
                return k
        raise IndexError(i)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def _partition(n: int, related: dict[tuple[int, int], object]) -> tuple[tuple[int, ...], ...]:
    ds = DisjointSet(range(n))
    for i, j in related:
        ds.merge(i, j)
    classes = sorted(tuple(sorted(s)) for s in ds.subsets())
    for c in classes:
        for i, j in itertools.permutations(c, 2):
            if (i, j) not in related:
                raise InvariantError(f"items {i} and {j} share a class but have no direct witness")
    return tuple(classes)


def conjugation_action(H: FiniteGroup, G: FiniteGroup, r) -> np.ndarray:
    """The left action ``g > h = r(g) h r(g)^-1`` for a homomorphism r: G -> H."""
    return np.array(
        [[H.mul(H.mul(r[g], h), H.inv(r[g])) for h in range(H.order)] for g in range(G.order)]
    )


def _check_basepoint_class(items, members) -> None:
    """Every pair equivalent to the trivial one has trivial beta and alpha = conjugation by a hom."""
    H, G = items[0].H, items[0].G
    conj = [conjugation_action(H, G, f.images) for f in homomorphisms(G, H)]
    for i in members:
        mp = items[i]
        if not mp.beta_trivial or not any(np.array_equal(mp.alpha, c) for c in conj):
            raise InvariantError(f"item {i} is in the trivial class but is not of conjugation type")


def classify_k2(H: FiniteGroup, G: FiniteGroup, *, cap: int | None = None) -> Classification:
    """Partition every matched pair on (H, G) into isomorphism classes fixing H."""
    items = enumerate_matched_pairs(H, G, cap=cap)
    sigma = identity_map(H)
    witnesses: dict[tuple[int, int], RVDatum] = {}
    space: dict[tuple[int, int], int] = {}
    for i, j in itertools.permutations(range(len(items)), 2):
        data, tried = rv_search(items[i], items[j], sigma)
        iso = next((d for d in data if d.v_bijective), None)
        if iso is None:
            space[(i, j)] = tried
        else:
            witnesses[(i, j)] = iso
    classes = _partition(len(items), witnesses)
    trivial = next(
        (k for k, mp in enumerate(items) if mp.alpha_trivial and mp.beta_trivial), None
    )
    base = None
    if trivial is not None:
        base = next(k for k, c in enumerate(classes) if trivial in c)
        _check_basepoint_class(items, classes[base])
    return Classification("k2", tuple(items), classes, witnesses, base, space)


def _is_right_action(H: FiniteGroup, G: FiniteGroup, b: np.ndarray) -> bool:
    gi, hi = np.arange(G.order), np.arange(H.order)
    return bool(
        (b[:, 0] == gi).all()
        and (b[gi[:, None, None], H.table[None, :, :]] == b[b[:, :, None], hi[None, None, :]]).all()
    )


def classify_b2(H: FiniteGroup, G: FiniteGroup, beta, *, cap: int | None = None) -> Classification:
    """Partition the matched pairs with the given beta up to isomorphisms that fix H and project to G.

    The item list may be empty: not every right action of H on G extends to a
    matched pair.
    """
    b = _action_table(beta, G.order, H.order, G.order, "beta")
    if not _is_right_action(H, G, b):
        raise PreconditionError("beta is not a right action of H on G")
    items = enumerate_matched_pairs(H, G, beta=b, cap=cap)
    witnesses: dict[tuple[int, int], B2Morphism] = {}
    space: dict[tuple[int, int], int] = {}
    for i, j in itertools.permutations(range(len(items)), 2):
        found = enumerate_b2_morphisms(items[i], items[j])
        if found:
            witnesses[(i, j)] = found[0]
        else:
            space[(i, j)] = len(ker_beta(items[j]).elements) ** len(G.generators)
    classes = _partition(len(items), witnesses)
    trivial = next((k for k, mp in enumerate(items) if mp.alpha_trivial), None)
    base = None if trivial is None else next(k for k, c in enumerate(classes) if trivial in c)
    return Classification("b2", tuple(items), classes, witnesses, base, space)


class LeftSemidirectWitness(NamedTuple):
    alpha: np.ndarray
    r: tuple[int, ...]
    v: tuple[int, ...]


class RightSemidirectWitness(NamedTuple):
    beta: np.ndarray
    r: tuple[int, ...]
    v: tuple[int, ...]


def _left_targets(mp: MatchedPair, alpha) -> list[np.ndarray]:
    H, G = mp.H, mp.G
    if alpha is None:
        return [p.alpha for p in enumerate_matched_pairs(H, G, beta=trivial_beta(H, G), cap=H.order * G.order)]
    a = _action_table(alpha, G.order, H.order, H.order, "alpha")
    if not is_action_by_automorphisms(H, a, "left"):
        raise PreconditionError("alpha must be an action by automorphisms")
    return [a]


def recognize_semidirect_left(mp: MatchedPair, alpha=None) -> LeftSemidirectWitness | None:
    """Find (alpha, r, v) exhibiting H >< G as a left semidirect product H |x_alpha G, fixing H.

    Requires the pair's beta to be trivial; then v must be an automorphism of
    G, r must satisfy ``r(g1 g2) = r(g1) (v(g1) > r(g2))`` and the pair's left
    action must equal ``g >' h = r(g) (v(g) > h) r(g)^-1``. Without `alpha`,
    every action of G on H by automorphisms is tried.
    """
    if not mp.beta_trivial:
        return None
    H, G = mp.H, mp.G
    Hr = H.rows
    ap = mp.a
    for alpha_t in _left_targets(mp, alpha):
        a = alpha_t.tolist()
        for v in automorphisms(G):
            vi = v.images
            for choice in itertools.product(range(H.order), repeat=len(G.generators)):
                at = dict(zip(G.generators, choice))
                r = [0] * G.order
                for x, p, s in G.spanning_tree:
                    r[x] = Hr[r[p]][a[vi[p]][at[s]]]
                if not all(
                    r[G.mul(g1, g2)] == Hr[r[g1]][a[vi[g1]][r[g2]]]
                    for g1 in range(G.order)
                    for g2 in range(G.order)
                ):
                    continue
                if all(
                    ap[g][h] == Hr[Hr[r[g]][a[vi[g]][h]]][H.inv(r[g])]
                    for g in range(G.order)
                    for h in range(H.order)
                ):
                    return LeftSemidirectWitness(alpha_t, tuple(r), vi)
    return None


def _right_targets(mp: MatchedPair, beta) -> list[np.ndarray]:
    H, G = mp.H, mp.G
    if beta is None:
        return [p.beta for p in enumerate_matched_pairs(H, G, alpha=trivial_alpha(H, G), cap=H.order * G.order)]
    b = _action_table(beta, G.order, H.order, G.order, "beta")
    if not (_is_right_action(H, G, b) and is_action_by_automorphisms(G, b, "right")):
        raise PreconditionError("beta must be a right action by automorphisms")
    return [b]


def recognize_semidirect_right(mp: MatchedPair, beta=None) -> RightSemidirectWitness | None:
    """Find (beta, r, v) exhibiting H >< G as a right semidirect product H x|_beta G, fixing H.

    r ranges over homomorphisms G -> H and v over bijections of G with
    ``v(g1 g2) = (v(g1) < r(g2)) v(g2)``; the pair's actions must equal
    ``g <' h = v^-1(v(g) < h)`` and ``g >' h = r(g) h r(v^-1(v(g) < h))^-1``.
    Without `beta`, every right action of H on G by automorphisms is tried.
    """
    H, G = mp.H, mp.G
    Hr, Gr = H.rows, G.rows
    ap, bp = mp.a, mp.b
    for beta_t in _right_targets(mp, beta):
        b = beta_t.tolist()
        for rmap in homomorphisms(G, H):
            r = rmap.images
            for choice in itertools.product(range(G.order), repeat=len(G.generators)):
                at = dict(zip(G.generators, choice))
                v = [0] * G.order
                for x, p, s in G.spanning_tree:
                    v[x] = Gr[b[v[p]][r[s]]][at[s]]
                if len(set(v)) != G.order:
                    continue
                if not all(
                    v[G.mul(g1, g2)] == Gr[b[v[g1]][r[g2]]][v[g2]]
                    for g1 in range(G.order)
                    for g2 in range(G.order)
                ):
                    continue
                vinv = [0] * G.order
                for g, y in enumerate(v):
                    vinv[y] = g
                ok = all(
                    bp[g][h] == vinv[b[v[g]][h]]
                    and ap[g][h] == Hr[Hr[r[g]][h]][H.inv(r[vinv[b[v[g]][h]]])]
                    for g in range(G.order)
                    for h in range(H.order)
                )
                if ok:
                    return RightSemidirectWitness(beta_t, tuple(r), tuple(v))
    return None


def recognize_direct_product(mp: MatchedPair) -> tuple[int, ...] | None:
    """A homomorphism r: G -> H with beta trivial and ``g > h = r(g) h r(g)^-1``, or None."""
    if not mp.beta_trivial:
        return None
    for f in homomorphisms(mp.G, mp.H):
        if np.array_equal(mp.alpha, conjugation_action(mp.H, mp.G, f.images)):
            return f.images
    return None
