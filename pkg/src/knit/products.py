"""Bicrossed products, the two semidirect products, and structural criteria."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .actions import MatchedPair, fix_g, fix_h, is_action_by_automorphisms
from .errors import InvariantError, PreconditionError
from .groups import (
    FiniteGroup,
    GroupMap,
    direct_product,
    structural_report,
    subgroup_generated,
)
from .report import Check, Report

__all__ = [
    "BicrossedGroup",
    "abelian_criterion",
    "bicrossed",
    "center_by_formula",
    "cyclic_criterion",
    "presentation",
    "relations",
    "semidirect_left",
    "semidirect_right",
    "verify_fixed_point_diagram",
]


def _pair_label(lh: str, lg: str) -> str:
    if lh == "1":
        return lg
    if lg == "1":
        return lh
    return f"{lh}{lg}"


@dataclass(frozen=True, eq=False)
class BicrossedGroup:
    """H x G with the bicrossed multiplication; (h, g) lives at index ``h*|G| + g``."""

    base: FiniteGroup
    mp: MatchedPair
    embed_h: GroupMap
    embed_g: GroupMap

    def index(self, h: int, g: int) -> int:
        return h * self.mp.G.order + g

    def pair(self, x: int) -> tuple[int, int]:
        return divmod(x, self.mp.G.order)


@lru_cache(maxsize=512)
def bicrossed(mp: MatchedPair) -> BicrossedGroup:
    if not isinstance(mp, MatchedPair) or not mp.verified:
        raise PreconditionError("bicrossed() needs a verified MatchedPair")
    H, G = mp.H, mp.G
    nH, nG = H.order, G.order
    i = np.arange(nH * nG)
    h, g = np.divmod(i, nG)
    h1, g1 = h[:, None], g[:, None]
    h2, g2 = h[None, :], g[None, :]
    # (h1, g1)(h2, g2) = (h1 (g1 > h2), (g1 < h2) g2)
    t = H.table[h1, mp.alpha[g1, h2]] * nG + G.table[mp.beta[g1, h2], g2]
    labels = [_pair_label(H.labels[x], G.labels[y]) for x, y in zip(h.tolist(), g.tolist())]
    gens = [s * nG for s in H.generators] + list(G.generators)
    base = FiniteGroup.from_table(t, labels, gens, f"{H.name or 'H'} >< {G.name or 'G'}")
    embed_h = GroupMap(H, base, tuple(x * nG for x in range(nH)))
    embed_g = GroupMap(G, base, tuple(range(nG)))
    if not (embed_h.is_homomorphism and embed_g.is_homomorphism):
        raise InvariantError("canonical embeddings are not homomorphisms")
    rows = base.rows
    for x in range(nH):
        for y in range(nG):
            if rows[x * nG][y] != x * nG + y:
                raise InvariantError(f"(h,g) != (h,1)(1,g) at {(x, y)}")
    return BicrossedGroup(base, mp, embed_h, embed_g)


def _check_action(acting: FiniteGroup, on: FiniteGroup, table: np.ndarray, side: str) -> None:
    if side == "left":
        if table.shape != (acting.order, on.order):
            raise PreconditionError(f"action table must have shape {(acting.order, on.order)}")
        ok = (table[0] == np.arange(on.order)).all() and (
            table[acting.table] == table[np.arange(acting.order)[:, None, None], table[None, :, :]]
        ).all()
    else:
        if table.shape != (on.order, acting.order):
            raise PreconditionError(f"action table must have shape {(on.order, acting.order)}")
        ok = (table[:, 0] == np.arange(on.order)).all() and (
            table[:, acting.table] == table[table[:, :, None], np.arange(acting.order)[None, None, :]]
        ).all()
    if not ok:
        raise PreconditionError(f"table is not a {side} action")
    if not is_action_by_automorphisms(on, table, side):
        raise PreconditionError("action is not by automorphisms")


def semidirect_left(H: FiniteGroup, K: FiniteGroup, action) -> FiniteGroup:
    """H x K with ``(h, k)(h', k') = (h (k > h'), k k')``.

    `action` has one row per k and one column per h: ``action[k][h] = k > h``.
    The pair (h, k) lives at index ``h*|K| + k``.
    """
    act = np.asarray(action, dtype=np.int64)
    _check_action(K, H, act, "left")
    nH, nK = H.order, K.order
    h, k = np.divmod(np.arange(nH * nK), nK)
    t = H.table[h[:, None], act[k[:, None], h[None, :]]] * nK + K.table[k[:, None], k[None, :]]
    labels = [_pair_label(H.labels[x], K.labels[y]) for x, y in zip(h.tolist(), k.tolist())]
    gens = [s * nK for s in H.generators] + list(K.generators)
    return FiniteGroup.from_table(t, labels, gens, f"{H.name or 'H'} |x {K.name or 'K'}")


def semidirect_right(K: FiniteGroup, G: FiniteGroup, action) -> FiniteGroup:
    """K x G with ``(k, g)(k', g') = (k k', (g < k') g')``.

    `action` has one row per g and one column per k: ``action[g][k] = g < k``.
    The pair (k, g) lives at index ``k*|G| + g``.
    """
    act = np.asarray(action, dtype=np.int64)
    _check_action(K, G, act, "right")
    nK, nG = K.order, G.order
    k, g = np.divmod(np.arange(nK * nG), nG)
    t = K.table[k[:, None], k[None, :]] * nG + G.table[act[g[:, None], k[None, :]], g[None, :]]
    labels = [_pair_label(K.labels[x], G.labels[y]) for x, y in zip(k.tolist(), g.tolist())]
    gens = [s * nG for s in K.generators] + list(G.generators)
    return FiniteGroup.from_table(t, labels, gens, f"{K.name or 'K'} x| {G.name or 'G'}")


PUSHOUT_NOTE = (
    "the pushout X of the two semidirect products is not built (it is an amalgamated "
    "free product, infinite in general); the checks below are its finite consequences"
)


def verify_fixed_point_diagram(mp: MatchedPair) -> Report:
    """Check the square of the two semidirect products inside H >< G.

    The square is Fix(H) x Fix(G) -> {H |x Fix(G), Fix(H) x| G} -> H >< G.
    Checks: all four maps are homomorphisms, the square commutes, the images
    of the two semidirect products meet exactly in Fix(H) x Fix(G), and
    together they generate H >< G.
    """
    E = bicrossed(mp)
    H, G = mp.H, mp.G
    nG = G.order
    FH, FG = fix_h(mp), fix_g(mp)
    fh, fg = FH.inclusion.images, FG.inclusion.images
    nFG = FG.group.order

    phi = mp.alpha[list(fg), :]  # Fix(G) acting on H
    psi = mp.beta[:, list(fh)]  # Fix(H) acting on G
    L = semidirect_left(H, FG.group, phi)
    R = semidirect_right(FH.group, G, psi)
    P = direct_product(FH.group, FG.group)

    ibar = GroupMap(P, L, tuple(fh[p // nFG] * nFG + p % nFG for p in range(P.order)))
    jbar = GroupMap(P, R, tuple((p // nFG) * nG + fg[p % nFG] for p in range(P.order)))
    i = GroupMap(L, E.base, tuple((x // nFG) * nG + fg[x % nFG] for x in range(L.order)))
    j = GroupMap(R, E.base, tuple(fh[x // nG] * nG + x % nG for x in range(R.order)))

    checks = [
        Check("ibar-homomorphism", ibar.is_homomorphism),
        Check("jbar-homomorphism", jbar.is_homomorphism),
        Check("i-homomorphism", i.is_homomorphism),
        Check("j-homomorphism", j.is_homomorphism),
    ]
    top, bottom = ibar.then(i), jbar.then(j)
    diff = [p for p in range(P.order) if top(p) != bottom(p)]
    checks.append(Check("square-commutes", not diff, diff[0] if diff else None))
    meet = i.image & j.image
    corner = top.image
    extra = sorted(meet ^ corner)
    checks.append(Check("pullback", not extra, extra[0] if extra else None,
                        "" if not extra else "intersection of images differs from Fix(H) x Fix(G)"))
    span = subgroup_generated(E.base, i.image | j.image).elements
    missing = sorted(set(range(E.base.order)) - span)
    checks.append(Check("generation", not missing, missing[0] if missing else None,
                        "" if not missing else "images do not generate H >< G"))
    return Report.of(checks, notes=(PUSHOUT_NOTE,))


def center_by_formula(mp: MatchedPair) -> frozenset[tuple[int, int]]:
    """Center of H >< G from the actions alone.

    (h, g) is central iff h in Fix(H), g in Fix(G), ``g > x = h^-1 x h`` for
    all x in H and ``y < h = g y g^-1`` for all y in G.
    """
    H, G = mp.H, mp.G
    a, b = mp.a, mp.b
    out = set()
    for h in fix_h(mp).elements:
        hi = H.inv(h)
        for g in fix_g(mp).elements:
            gi = G.inv(g)
            if all(a[g][x] == H.mul(H.mul(hi, x), h) for x in range(H.order)) and all(
                b[y][h] == G.mul(G.mul(g, y), gi) for y in range(G.order)
            ):
                out.add((h, g))
    result = frozenset(out)
    E = bicrossed(mp)
    brute = frozenset(E.pair(z) for z in structural_report(E.base).center)
    if brute != result:
        raise InvariantError(f"center formula {sorted(result)} != brute force {sorted(brute)}")
    return result


def abelian_criterion(mp: MatchedPair) -> bool:
    """H >< G is abelian iff H and G are abelian and both actions are trivial."""
    H, G = mp.H, mp.G
    value = (
        structural_report(H).is_abelian
        and structural_report(G).is_abelian
        and mp.alpha_trivial
        and mp.beta_trivial
    )
    if value != structural_report(bicrossed(mp).base).is_abelian:
        raise InvariantError("abelian criterion disagrees with the bicrossed product")
    return value


def cyclic_criterion(mp: MatchedPair) -> bool:
    """H >< G is cyclic iff both actions are trivial and H, G are cyclic of coprime orders."""
    H, G = mp.H, mp.G
    value = (
        mp.alpha_trivial
        and mp.beta_trivial
        and structural_report(H).is_cyclic
        and structural_report(G).is_cyclic
        and math.gcd(H.order, G.order) == 1
    )
    if value != structural_report(bicrossed(mp).base).is_cyclic:
        raise InvariantError("cyclic criterion disagrees with the bicrossed product")
    return value


def relations(E: BicrossedGroup) -> list[str]:
    """Commutation relations ``g h = h' g'`` for generator pairs, e.g. ``ba = a^2b^3``."""
    H, G = E.mp.H, E.mp.G
    out = []
    for s in G.generators:
        for t in H.generators:
            h, g = E.mp.a[s][t], E.mp.b[s][t]
            rhs = _pair_label(H.labels[h], G.labels[g])
            out.append(f"{G.labels[s]}{H.labels[t]} = {rhs}")
    return out


def presentation(E: BicrossedGroup) -> str:
    """A presentation string such as ``<a,b | a^3, b^6, ba = a^2b^3>``.

    Only meaningful as a full presentation when H and G are cyclic; otherwise
    the relators of H and G are left implicit.
    """
    H, G = E.mp.H, E.mp.G
    gens = [H.labels[t] for t in H.generators] + [G.labels[s] for s in G.generators]
    rels = []
    for X in (H, G):
        if len(X.generators) == 1:
            s = X.generators[0]
            rels.append(f"{X.labels[s]}^{X.order}")
    rels.extend(relations(E))
    return f"<{','.join(gens)} | {', '.join(rels)}>"
