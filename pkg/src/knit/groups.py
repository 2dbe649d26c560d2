"""Finite groups stored as Cayley tables, and maps between them.

Every group has its identity at index 0. Elements are plain integers
``0..order-1``; labels are for display only and play no part in equality.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import InvalidOrderError, MalformedTableError, NotAGroupError
from .report import Check, Report

__all__ = [
    "FiniteGroup",
    "GroupMap",
    "StructuralReport",
    "Subgroup",
    "automorphisms",
    "cyclic_group",
    "direct_product",
    "group_from_json",
    "group_to_json",
    "homomorphisms",
    "identity_map",
    "is_isomorphic",
    "structural_report",
    "subgroup_generated",
    "verify_group",
]


def _as_table(table) -> np.ndarray:
    try:
        rows = [list(r) for r in table]
    except TypeError as exc:
        raise MalformedTableError("table must be a sequence of rows") from exc
    n = len(rows)
    if n == 0:
        raise MalformedTableError("table is empty")
    if any(len(r) != n for r in rows):
        raise MalformedTableError(f"table is not square ({n} rows of lengths {sorted({len(r) for r in rows})})")
    try:
        arr = np.array(rows, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedTableError("table entries must be integers") from exc
    if arr.min() < 0 or arr.max() >= n:
        raise MalformedTableError(f"table entries must lie in 0..{n - 1}")
    return arr


def verify_group(table) -> Report:
    """Check the group axioms on a square table, stopping at the first failure.

    Order of checks: latin-square, associativity, identity (index 0 must be a
    two-sided identity), inverses. Failing checks carry the lexicographically
    first counterexample.
    """
    t = _as_table(table)
    n = t.shape[0]
    idx = np.arange(n)
    checks: list[Check] = []

    def done(check: Check) -> Report:
        checks.append(check)
        return Report.of(checks)

    for axis, what in ((1, "row"), (0, "column")):
        srt = np.sort(t, axis=axis)
        bad = np.argwhere(srt != (idx[None, :] if axis == 1 else idx[:, None]))
        if len(bad):
            line = int(bad[0][0] if axis == 1 else bad[0][1])
            vals = t[line] if axis == 1 else t[:, line]
            dup = next(int(v) for v, c in Counter(vals.tolist()).items() if c > 1)
            return done(Check("latin-square", False, (what, line, dup), f"{what} {line} repeats {dup}"))
    checks.append(Check("latin-square", True))

    left = t[t[:, :, None], idx[None, None, :]]  # (ij)k
    right = t[idx[:, None, None], t[None, :, :]]  # i(jk)
    bad = np.argwhere(left != right)
    if len(bad):
        i, j, k = (int(x) for x in bad[0])
        return done(Check("associativity", False, (i, j, k), f"({i}*{j})*{k} != {i}*({j}*{k})"))
    checks.append(Check("associativity", True))

    if not (np.array_equal(t[0], idx) and np.array_equal(t[:, 0], idx)):
        bad_row = np.flatnonzero(t[0] != idx)
        bad_col = np.flatnonzero(t[:, 0] != idx)
        x = int(min(bad_row.tolist() + bad_col.tolist()))
        return done(Check("identity", False, x, "index 0 is not a two-sided identity"))
    checks.append(Check("identity", True))

    for x in range(n):
        right_inv = np.flatnonzero(t[x] == 0)
        if len(right_inv) != 1 or t[int(right_inv[0]), x] != 0:
            return done(Check("inverses", False, x, f"element {x} has no two-sided inverse"))
    checks.append(Check("inverses", True))
    return Report.of(checks)


def _closure(rows: list[list[int]], seeds: Iterable[int]) -> list[int]:
    """Elements of the subgroup generated by `seeds`, sorted."""
    seeds = sorted(set(seeds))
    seen = {0}
    frontier = deque([0])
    while frontier:
        x = frontier.popleft()
        for s in seeds:
            y = rows[x][s]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return sorted(seen)


def _greedy_generators(rows: list[list[int]], orders: list[int]) -> tuple[int, ...]:
    n = len(rows)
    gens: list[int] = []
    span = {0}
    for x in sorted(range(1, n), key=lambda e: (-orders[e], e)):
        if len(span) == n:
            break
        if x not in span:
            gens.append(x)
            span = set(_closure(rows, gens))
    return tuple(gens)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its Cayley table.

    ``table[i][j]`` is the index of ``g_i * g_j``. Build instances with
    :meth:`from_table` (or the constructors below) so the axioms are checked
    and the identity is moved to index 0.
    """

    table: np.ndarray
    labels: tuple[str, ...]
    generators: tuple[int, ...]
    name: str = ""

    @classmethod
    def from_table(
        cls,
        table,
        labels: Sequence[str] | None = None,
        generators: Sequence[int] | None = None,
        name: str = "",
    ) -> "FiniteGroup":
        t = _as_table(table)
        n = t.shape[0]
        labels = [str(x) for x in (labels if labels is not None else range(n))]
        if len(labels) != n:
            raise MalformedTableError(f"expected {n} labels, got {len(labels)}")
        gens = None if generators is None else [int(g) for g in generators]
        if gens is not None and any(not 0 <= g < n for g in gens):
            raise MalformedTableError("generator index out of range")

        ids = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
        if ids and ids[0] != 0:
            # swap the identity into slot 0
            e = ids[0]
            perm = np.arange(n)
            perm[[0, e]] = perm[[e, 0]]
            t = perm[t[np.ix_(perm, perm)]]
            labels[0], labels[e] = labels[e], labels[0]
            if gens is not None:
                gens = [int(perm[g]) for g in gens]
        report = verify_group(t)
        if not report.ok:
            raise NotAGroupError(report)
        t = t.copy()
        t.setflags(write=False)
        if gens is None:
            rows = t.tolist()
            orders = [_element_order(rows, x) for x in range(n)]
            gens = list(_greedy_generators(rows, orders))
        else:
            gens = [g for g in dict.fromkeys(gens) if g != 0]
            if len(_closure(t.tolist(), gens)) != n:
                raise MalformedTableError("generators do not generate the group")
        return cls(t, tuple(labels), tuple(gens), name)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested lists; faster than numpy for scalar lookups."""
        return self.table.tolist()

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    @cached_property
    def inverses(self) -> list[int]:
        return [row.index(0) for row in self.rows]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        k %= self.element_orders[a]
        x = 0
        for _ in range(k):
            x = self.rows[x][a]
        return x

    @cached_property
    def element_orders(self) -> list[int]:
        return [_element_order(self.rows, x) for x in range(self.order)]

    @cached_property
    def order_vector(self) -> tuple[int, ...]:
        return tuple(sorted(self.element_orders))

    @cached_property
    def spanning_tree(self) -> list[tuple[int, int, int]]:
        """Breadth-first tree of the Cayley graph on the generators.

        Entries ``(x, parent, gen)`` with ``x = parent * gen``, listed so that
        every parent precedes its children. The identity is not listed.
        """
        rows = self.rows
        seen = {0}
        out = []
        frontier = deque([0])
        while frontier:
            p = frontier.popleft()
            for s in self.generators:
                x = rows[p][s]
                if x not in seen:
                    seen.add(x)
                    out.append((x, p, s))
                    frontier.append(x)
        return out

    def label(self, x: int) -> str:
        return self.labels[x]

    def relabel(self, labels: Sequence[str], name: str | None = None) -> "FiniteGroup":
        if len(labels) != self.order:
            raise MalformedTableError(f"expected {self.order} labels")
        return FiniteGroup(self.table, tuple(str(x) for x in labels), self.generators, self.name if name is None else name)


def _element_order(rows: list[list[int]], x: int) -> int:
    k, y = 1, x
    while y != 0:
        y = rows[y][x]
        k += 1
    return k


def _power_labels(n: int, symbol: str) -> list[str]:
    return ["1"] + [symbol if i == 1 else f"{symbol}^{i}" for i in range(1, n)]


def cyclic_group(n: int, symbol: str = "b") -> FiniteGroup:
    """C_n as addition mod n; element i stands for ``symbol^i``."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidOrderError(f"cyclic group order must be a positive integer, got {n!r}")
    n = int(n)
    idx = np.arange(n)
    t = (idx[:, None] + idx[None, :]) % n
    t.setflags(write=False)
    return FiniteGroup(t, tuple(_power_labels(n, symbol)), (1,) if n > 1 else (), f"C{n}")


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """A x B with the pair (i, j) stored at index ``i*|B| + j``."""
    nA, nB = A.order, B.order
    i = np.arange(nA * nB)
    a, b = np.divmod(i, nB)
    t = A.table[a[:, None], a[None, :]] * nB + B.table[b[:, None], b[None, :]]
    labels = []
    for x, y in zip(a.tolist(), b.tolist()):
        la, lb = A.labels[x], B.labels[y]
        labels.append(lb if la == "1" else la if lb == "1" else f"({la},{lb})" if "," in la + lb else f"{la}{lb}")
    gens = [g * nB for g in A.generators] + list(B.generators)
    name = f"{A.name or '?'} x {B.name or '?'}"
    return FiniteGroup.from_table(t, labels, gens, name)


@dataclass(frozen=True, eq=False)
class GroupMap:
    """A map between the element sets of two groups."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.order:
            raise MalformedTableError(f"map needs {self.source.order} images, got {len(self.images)}")
        if any(not 0 <= y < self.target.order for y in self.images):
            raise MalformedTableError("map image out of range")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupMap):
            return NotImplemented
        return self.images == other.images and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"GroupMap({self.source.name or '?'} -> {self.target.name or '?'}, {list(self.images)})"

    @cached_property
    def is_homomorphism(self) -> bool:
        f = self.images
        S, T = self.source.rows, self.target.rows
        if f[0] != 0:
            return False
        return all(f[S[x][y]] == T[f[x]][f[y]] for x in range(len(f)) for y in range(len(f)))

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and self.is_injective

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def then(self, other: "GroupMap") -> "GroupMap":
        """``other o self``."""
        if other.source != self.target:
            raise MalformedTableError("maps are not composable")
        return GroupMap(self.source, other.target, tuple(other.images[y] for y in self.images))

    def inverse(self) -> "GroupMap":
        if not self.is_bijective:
            raise MalformedTableError("map is not bijective")
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return GroupMap(self.target, self.source, tuple(inv))


def identity_map(G: FiniteGroup) -> GroupMap:
    return GroupMap(G, G, tuple(range(G.order)))


def _extend(A: FiniteGroup, B: FiniteGroup, gen_images: dict[int, int]) -> list[int] | None:
    """Extend generator images along A's spanning tree; None if not a homomorphism."""
    img = [0] * A.order
    Br = B.rows
    for x, p, s in A.spanning_tree:
        img[x] = Br[img[p]][gen_images[s]]
    Ar = A.rows
    for x in range(A.order):
        for s in A.generators:
            if img[Ar[x][s]] != Br[img[x]][gen_images[s]]:
                return None
    return img


def _search_homs(A: FiniteGroup, B: FiniteGroup, *, bijective: bool):
    gens = A.generators
    if bijective:
        by_order: dict[int, list[int]] = {}
        for y, o in enumerate(B.element_orders):
            by_order.setdefault(o, []).append(y)
        cands = [by_order.get(A.element_orders[s], []) for s in gens]
    else:
        cands = [[y for y in range(B.order) if A.element_orders[s] % B.element_orders[y] == 0] for s in gens]
    for choice in itertools.product(*cands):
        img = _extend(A, B, dict(zip(gens, choice)))
        if img is None:
            continue
        if bijective and len(set(img)) != len(img):
            continue
        yield GroupMap(A, B, tuple(img))


def homomorphisms(A: FiniteGroup, B: FiniteGroup) -> list[GroupMap]:
    """All homomorphisms A -> B, sorted by image list."""
    return sorted(_search_homs(A, B, bijective=False), key=lambda f: f.images)


def automorphisms(G: FiniteGroup) -> list[GroupMap]:
    """All automorphisms of G in lexicographic order of image lists (identity first)."""
    return sorted(_search_homs(G, G, bijective=True), key=lambda f: f.images)


def is_isomorphic(A: FiniteGroup, B: FiniteGroup) -> GroupMap | None:
    """An isomorphism A -> B, or None.

    Groups with different element-order multisets are rejected without search.
    """
    if A.order != B.order or A.order_vector != B.order_vector:
        return None
    if A == B:
        return identity_map(A)
    return next(_search_homs(A, B, bijective=True), None)


@dataclass(frozen=True)
class StructuralReport:
    is_abelian: bool
    is_cyclic: bool
    center: frozenset[int]
    order_vector: tuple[int, ...]


def structural_report(G: FiniteGroup) -> StructuralReport:
    t = G.table
    commutes = t == t.T
    center = frozenset(int(z) for z in np.flatnonzero(commutes.all(axis=1)))
    return StructuralReport(
        is_abelian=len(center) == G.order,
        is_cyclic=max(G.element_orders) == G.order,
        center=center,
        order_vector=G.order_vector,
    )


class Subgroup(NamedTuple):
    group: FiniteGroup
    inclusion: GroupMap

    @property
    def elements(self) -> frozenset[int]:
        return self.inclusion.image


def subgroup_generated(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    """The subgroup generated by S, as a group together with its inclusion into G."""
    S = sorted(set(int(s) for s in S))
    if any(not 0 <= s < G.order for s in S):
        raise MalformedTableError("subset element out of range")
    elems = _closure(G.rows, S)
    pos = {x: i for i, x in enumerate(elems)}
    t = [[pos[G.rows[x][y]] for y in elems] for x in elems]
    gens = [pos[s] for s in S if s != 0]
    sub = FiniteGroup.from_table(t, [G.labels[x] for x in elems], gens, f"<{','.join(G.labels[s] for s in S)}>")
    return Subgroup(sub, GroupMap(sub, G, tuple(elems)))


def group_to_json(G: FiniteGroup) -> dict:
    if G == cyclic_group(G.order):
        return {"kind": "cyclic", "n": G.order}
    return {
        "kind": "table",
        "order": G.order,
        "table": G.rows,
        "labels": list(G.labels),
        "generators": list(G.generators),
    }


def group_from_json(data: dict | str, symbol: str = "b") -> FiniteGroup:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise MalformedTableError(f"invalid group JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedTableError("group JSON must be an object")
    kind = data.get("kind")
    if kind == "cyclic":
        return cyclic_group(data.get("n", 0), symbol)
    if kind == "table":
        G = FiniteGroup.from_table(data["table"], data.get("labels"), data.get("generators"), data.get("name", ""))
        if "order" in data and data["order"] != G.order:
            raise MalformedTableError(f"declared order {data['order']} does not match table size {G.order}")
        return G
    raise MalformedTableError(f"unknown group kind {kind!r}")
