"""Matched pairs of groups: action tables, their verification, and enumeration.

Conventions: ``alpha[g][h] = g > h`` is a left action of G on the set H and
``beta[g][h] = g < h`` is a right action of H on the set G. Both tables have
one row per element of G and one column per element of H.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Literal

import numpy as np

from ._mpsearch import MatchedPairSearch
from .errors import (
    InvariantError,
    MalformedTableError,
    NotAMatchedPairError,
    SearchTooLargeError,
    resolve_cap,
)
from .groups import FiniteGroup, Subgroup, group_from_json, group_to_json, subgroup_generated
from .report import Check, Report

__all__ = [
    "MatchedPair",
    "enumerate_matched_pairs",
    "fix_g",
    "fix_h",
    "is_action_by_automorphisms",
    "ker_beta",
    "matched_pair",
    "matched_pair_from_json",
    "matched_pair_to_json",
    "trivial_alpha",
    "trivial_beta",
    "verify_matched_pair",
]

DEFAULT_PAIR_CAP = 64


def trivial_alpha(H: FiniteGroup, G: FiniteGroup) -> np.ndarray:
    return np.tile(np.arange(H.order), (G.order, 1))


def trivial_beta(H: FiniteGroup, G: FiniteGroup) -> np.ndarray:
    return np.tile(np.arange(G.order)[:, None], (1, H.order))


def _action_table(table, rows: int, cols: int, values: int, what: str) -> np.ndarray:
    try:
        arr = np.array([list(r) for r in table], dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedTableError(f"{what} must be a rectangular integer table") from exc
    if arr.shape != (rows, cols):
        raise MalformedTableError(f"{what} must have shape {(rows, cols)}, got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= values):
        raise MalformedTableError(f"{what} entries must lie in 0..{values - 1}")
    return arr


def _first(mask: np.ndarray):
    bad = np.argwhere(mask)
    return None if not len(bad) else tuple(int(x) for x in bad[0])


def verify_matched_pair(H: FiniteGroup, G: FiniteGroup, alpha=None, beta=None) -> Report:
    """Check the action laws and both compatibility conditions; a missing table means trivial.

    Each failing check carries the lexicographically first failing index
    tuple, in the variable order named in its detail string.
    """
    nH, nG = H.order, G.order
    a = trivial_alpha(H, G) if alpha is None else _action_table(alpha, nG, nH, nH, "alpha")
    b = trivial_beta(H, G) if beta is None else _action_table(beta, nG, nH, nG, "beta")
    Ht, Gt = H.table, G.table
    gi = np.arange(nG)
    hi = np.arange(nH)
    checks = []

    def check(name, mask, detail):
        w = _first(mask)
        checks.append(Check(name, w is None, w, "" if w is None else detail))

    check("alpha-unit", a[0] != hi, "(h,): 1 > h != h")
    # (g1 g2) > h == g1 > (g2 > h)
    check("alpha-action", a[Gt[:, :, None], hi[None, None, :]] != a[gi[:, None, None], a[None, :, :]],
          "(g1,g2,h): (g1g2) > h != g1 > (g2 > h)")
    check("beta-unit", b[:, 0] != gi, "(g,): g < 1 != g")
    # g < (h1 h2) == (g < h1) < h2
    check("beta-action", b[gi[:, None, None], Ht[None, :, :]] != b[b[:, :, None], hi[None, None, :]],
          "(g,h1,h2): g < (h1h2) != (g < h1) < h2")
    # g > (h1 h2) == (g > h1)((g < h1) > h2)
    lhs2 = a[gi[:, None, None], Ht[None, :, :]]
    rhs2 = Ht[a[:, :, None], a[b[:, :, None], hi[None, None, :]]]
    check("compat-left", lhs2 != rhs2, "(g,h1,h2): g > (h1h2) != (g > h1)((g < h1) > h2)")
    # (g1 g2) < h == (g1 < (g2 > h))(g2 < h)
    lhs3 = b[Gt[:, :, None], hi[None, None, :]]
    rhs3 = Gt[b[gi[:, None, None], a[None, :, :]], b[None, :, :]]
    check("compat-right", lhs3 != rhs3, "(g1,g2,h): (g1g2) < h != (g1 < (g2 > h))(g2 < h)")
    check("unit-fixed", np.concatenate([a[:, 0] != 0, b[0] != 0]), "(i,): g > 1 = 1 or 1 < h = 1 fails")
    return Report.of(checks)


@dataclass(frozen=True, eq=False)
class MatchedPair:
    """Groups H, G with verified actions ``alpha`` (G on H) and ``beta`` (H on G).

    Use :func:`matched_pair` to build one; it refuses tables that fail
    verification, so every instance in circulation is a genuine matched pair.
    """

    H: FiniteGroup
    G: FiniteGroup
    alpha: np.ndarray
    beta: np.ndarray
    verified: bool = True

    @cached_property
    def a(self) -> list[list[int]]:
        return self.alpha.tolist()

    @cached_property
    def b(self) -> list[list[int]]:
        return self.beta.tolist()

    def key(self) -> tuple:
        """Sort key: the serialized (alpha, beta) tables."""
        return (tuple(map(tuple, self.a)), tuple(map(tuple, self.b)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatchedPair):
            return NotImplemented
        return (
            self.H == other.H
            and self.G == other.G
            and np.array_equal(self.alpha, other.alpha)
            and np.array_equal(self.beta, other.beta)
        )

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.H, self.G, self.alpha.tobytes(), self.beta.tobytes()))

    def __repr__(self) -> str:
        return f"MatchedPair({self.H.name or '?'}, {self.G.name or '?'}, alpha={self.a}, beta={self.b})"

    @property
    def alpha_trivial(self) -> bool:
        return bool(np.array_equal(self.alpha, trivial_alpha(self.H, self.G)))

    @property
    def beta_trivial(self) -> bool:
        return bool(np.array_equal(self.beta, trivial_beta(self.H, self.G)))


def matched_pair(H: FiniteGroup, G: FiniteGroup, alpha=None, beta=None) -> MatchedPair:
    """Verify the tables and wrap them; missing tables default to the trivial action."""
    alpha = trivial_alpha(H, G) if alpha is None else _action_table(alpha, G.order, H.order, H.order, "alpha")
    beta = trivial_beta(H, G) if beta is None else _action_table(beta, G.order, H.order, G.order, "beta")
    report = verify_matched_pair(H, G, alpha, beta)
    if not report.ok:
        raise NotAMatchedPairError(report)
    alpha = alpha.copy()
    beta = beta.copy()
    alpha.setflags(write=False)
    beta.setflags(write=False)
    return MatchedPair(H, G, alpha, beta)


def _invariant_subgroup(G: FiniteGroup, elems: list[int], what: str) -> Subgroup:
    s = set(elems)
    for x in elems:
        if G.inv(x) not in s or any(G.mul(x, y) not in s for y in elems):
            raise InvariantError(f"{what} is not closed at {x}")
    sub = subgroup_generated(G, elems)
    if sub.elements != frozenset(elems):
        raise InvariantError(f"{what} differs from the subgroup it generates")
    return sub


def fix_h(mp: MatchedPair) -> Subgroup:
    """Elements of H fixed by every g under alpha."""
    a = mp.alpha
    elems = [h for h in range(mp.H.order) if bool((a[:, h] == h).all())]
    return _invariant_subgroup(mp.H, elems, "Fix(H)")


def fix_g(mp: MatchedPair) -> Subgroup:
    """Elements of G fixed by every h under beta."""
    b = mp.beta
    elems = [g for g in range(mp.G.order) if bool((b[g] == g).all())]
    return _invariant_subgroup(mp.G, elems, "Fix(G)")


def ker_beta(mp: MatchedPair) -> Subgroup:
    """Elements of H acting as the identity permutation of G under beta."""
    b = mp.beta
    gi = np.arange(mp.G.order)
    elems = [h for h in range(mp.H.order) if bool((b[:, h] == gi).all())]
    return _invariant_subgroup(mp.H, elems, "Ker(beta)")


def is_action_by_automorphisms(group: FiniteGroup, table, side: Literal["left", "right"]) -> bool:
    """Whether each acting element is a group homomorphism of `group`.

    ``side="left"``: `table` is alpha-shaped (rows g, columns h) and `group` is
    the H being acted on. ``side="right"``: `table` is beta-shaped and
    `group` is the G being acted on.
    """
    t = np.asarray(table)
    M = group.table
    if side == "left":
        # g > (h1 h2) == (g > h1)(g > h2)
        return bool((t[:, M] == M[t[:, :, None], t[:, None, :]]).all())
    if side == "right":
        # (g1 g2) < h == (g1 < h)(g2 < h)
        return bool((t[M, :] == M[t[:, None, :], t[None, :, :]]).all())
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def enumerate_matched_pairs(
    H: FiniteGroup,
    G: FiniteGroup,
    *,
    cap: int | None = None,
    alpha=None,
    beta=None,
) -> list[MatchedPair]:
    """Every matched pair on (H, G), sorted by serialized tables.

    Passing `alpha` or `beta` restricts the search to pairs with that table.
    The default cap on ``|H|*|G|`` is 64; raise it with `cap` or the
    KNIT_MAX_SEARCH environment variable.
    """
    cap = resolve_cap(cap, DEFAULT_PAIR_CAP)
    size = H.order * G.order
    if size > cap:
        raise SearchTooLargeError("matched-pair enumeration", size, cap)
    if alpha is not None:
        alpha = _action_table(alpha, G.order, H.order, H.order, "alpha")
    if beta is not None:
        beta = _action_table(beta, G.order, H.order, G.order, "beta")
    search = MatchedPairSearch(H, G, alpha, beta)
    found = []
    for a, b in search.solutions():
        if verify_matched_pair(H, G, a, b).ok:
            found.append(matched_pair(H, G, a, b))
    found.sort(key=MatchedPair.key)
    for mp in found:
        # implied by the compatibility conditions; never imposed beyond the unit cells
        if not ((mp.alpha[:, 0] == 0).all() and (mp.beta[0] == 0).all()):
            raise InvariantError("enumerated pair does not fix the units")
    return found


def matched_pair_to_json(mp: MatchedPair) -> dict:
    return {
        "H": group_to_json(mp.H),
        "G": group_to_json(mp.G),
        "alpha": mp.a,
        "beta": mp.b,
    }


def matched_pair_from_json(data: dict | str) -> MatchedPair:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise MalformedTableError(f"invalid matched-pair JSON: {exc}") from exc
    try:
        H = group_from_json(data["H"], "a")
        G = group_from_json(data["G"], "b")
        return matched_pair(H, G, data["alpha"], data["beta"])
    except (KeyError, TypeError) as exc:
        raise MalformedTableError(f"matched-pair JSON is missing field {exc}") from exc
