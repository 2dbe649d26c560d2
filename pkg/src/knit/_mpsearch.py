"""Backtracking search for matched-pair action tables.

Cells of the two tables are unknowns; the action laws and the two
compatibility conditions are used as propagation rules. Rule instances are
restricted to products where one factor is a generator, which is enough to
force every table once the generator cells are fixed. Propagation only uses
necessary conditions, so the search is complete; every full assignment is
re-verified by the caller.
"""

from __future__ import annotations

from typing import Iterator

from .groups import FiniteGroup


class _Conflict(Exception):
    pass


class MatchedPairSearch:
    def __init__(self, H: FiniteGroup, G: FiniteGroup, alpha=None, beta=None):
        self.H, self.G = H, G
        nH, nG = H.order, G.order
        self.nH, self.nG = nH, nG
        self.A = [[-1] * nH for _ in range(nG)]
        self.B = [[-1] * nH for _ in range(nG)]
        self.Ainv = [[-1] * nH for _ in range(nG)]
        self.Binv = [[-1] * nG for _ in range(nH)]
        self.trail: list[tuple[int, int, int, int]] = []
        self.unknown = 2 * nG * nH
        self.nodes = 0

        Hr, Gr = H.rows, G.rows
        gH, gG = set(H.generators), set(G.generators)
        # (g1, g2, h, g1*g2) with g1 or g2 a generator of G
        self.rule_g = [
            (g1, g2, h, Gr[g1][g2])
            for g1 in range(nG)
            for g2 in range(nG)
            if g1 in gG or g2 in gG
            for h in range(nH)
        ]
        # (g, h1, h2, h1*h2) with h1 or h2 a generator of H
        self.rule_h = [
            (g, h1, h2, Hr[h1][h2])
            for g in range(nG)
            for h1 in range(nH)
            for h2 in range(nH)
            if h1 in gH or h2 in gH
        ]
        gen_a = [(0, s, h) for s in G.generators for h in range(1, nH)]
        gen_b = [(1, g, t) for t in H.generators for g in range(1, nG)]
        # branch first where cells have fewer possible values
        self.choice_order = (
            (gen_a + gen_b if nH <= nG else gen_b + gen_a)
            + [(0, g, h) for g in range(nG) for h in range(nH)]
            + [(1, g, h) for g in range(nG) for h in range(nH)]
        )

        try:
            for h in range(nH):
                self.set_a(0, h, h)
            for g in range(nG):
                self.set_a(g, 0, 0)
                self.set_b(g, 0, g)
            for h in range(nH):
                self.set_b(0, h, 0)
            if alpha is not None:
                for g in range(nG):
                    for h in range(nH):
                        self.set_a(g, h, int(alpha[g][h]))
            if beta is not None:
                for g in range(nG):
                    for h in range(nH):
                        self.set_b(g, h, int(beta[g][h]))
            self.ok = True
        except _Conflict:
            self.ok = False
        self.trail.clear()

    def set_a(self, g: int, h: int, y: int) -> None:
        cur = self.A[g][h]
        if cur >= 0:
            if cur != y:
                raise _Conflict
            return
        if self.Ainv[g][y] >= 0 or (y == 0) != (h == 0):
            raise _Conflict
        self.A[g][h] = y
        self.Ainv[g][y] = h
        self.trail.append((0, g, h, y))
        self.unknown -= 1
        self.changed = True

    def set_b(self, g: int, h: int, y: int) -> None:
        cur = self.B[g][h]
        if cur >= 0:
            if cur != y:
                raise _Conflict
            return
        if self.Binv[h][y] >= 0 or (y == 0) != (g == 0):
            raise _Conflict
        self.B[g][h] = y
        self.Binv[h][y] = g
        self.trail.append((1, g, h, y))
        self.unknown -= 1
        self.changed = True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            kind, g, h, y = self.trail.pop()
            if kind == 0:
                self.A[g][h] = -1
                self.Ainv[g][y] = -1
            else:
                self.B[g][h] = -1
                self.Binv[h][y] = -1
            self.unknown += 1

    def propagate(self) -> None:
        A, B, Ainv, Binv = self.A, self.B, self.Ainv, self.Binv
        Hr, Gr = self.H.rows, self.G.rows
        Hi, Gi = self.H.inverses, self.G.inverses
        set_a, set_b = self.set_a, self.set_b
        nH, nG = self.nH, self.nG
        self.changed = True
        while self.changed:
            self.changed = False
            for g1, g2, h, g12 in self.rule_g:
                # left action: (g1 g2) > h = g1 > (g2 > h)
                x = A[g2][h]
                lhs = A[g12][h]
                if x >= 0:
                    rhs = A[g1][x]
                    if lhs >= 0:
                        if rhs < 0:
                            set_a(g1, x, lhs)
                        elif rhs != lhs:
                            raise _Conflict
                    elif rhs >= 0:
                        set_a(g12, h, rhs)
                elif lhs >= 0:
                    z = Ainv[g1][lhs]
                    if z >= 0:
                        set_a(g2, h, z)
                # (g1 g2) < h = (g1 < (g2 > h)) (g2 < h)
                k = A[g2][h]
                if k >= 0:
                    X, Y, Z = B[g12][h], B[g1][k], B[g2][h]
                    if Y >= 0 and Z >= 0:
                        if X < 0:
                            set_b(g12, h, Gr[Y][Z])
                        elif X != Gr[Y][Z]:
                            raise _Conflict
                    elif X >= 0:
                        if Z >= 0:
                            set_b(g1, k, Gr[X][Gi[Z]])
                        elif Y >= 0:
                            set_b(g2, h, Gr[Gi[Y]][X])
            for g, h1, h2, h12 in self.rule_h:
                # right action: g < (h1 h2) = (g < h1) < h2
                x = B[g][h1]
                lhs = B[g][h12]
                if x >= 0:
                    rhs = B[x][h2]
                    if lhs >= 0:
                        if rhs < 0:
                            set_b(x, h2, lhs)
                        elif rhs != lhs:
                            raise _Conflict
                    elif rhs >= 0:
                        set_b(g, h12, rhs)
                elif lhs >= 0:
                    z = Binv[h2][lhs]
                    if z >= 0:
                        set_b(g, h1, z)
                # g > (h1 h2) = (g > h1) ((g < h1) > h2)
                k = B[g][h1]
                if k >= 0:
                    X, Y, Z = A[g][h12], A[g][h1], A[k][h2]
                    if Y >= 0 and Z >= 0:
                        if X < 0:
                            set_a(g, h12, Hr[Y][Z])
                        elif X != Hr[Y][Z]:
                            raise _Conflict
                    elif X >= 0:
                        if Z >= 0:
                            set_a(g, h1, Hr[X][Hi[Z]])
                        elif Y >= 0:
                            set_a(k, h2, Hr[Hi[Y]][X])
            # a row (column) with one hole left has only one value to put there
            for g in range(nG):
                row = A[g]
                if row.count(-1) == 1:
                    set_a(g, row.index(-1), Ainv[g].index(-1))
            for h in range(nH):
                col = [B[g][h] for g in range(nG)]
                if col.count(-1) == 1:
                    set_b(col.index(-1), h, Binv[h].index(-1))

    def _choose(self):
        for kind, g, h in self.choice_order:
            if kind == 0 and self.A[g][h] < 0:
                return kind, g, h, [y for y in range(1, self.nH) if self.Ainv[g][y] < 0]
            if kind == 1 and self.B[g][h] < 0:
                return kind, g, h, [y for y in range(1, self.nG) if self.Binv[h][y] < 0]
        raise AssertionError("no open cell although unknowns remain")

    def solutions(self) -> Iterator[tuple[list[list[int]], list[list[int]]]]:
        if not self.ok:
            return
        yield from self._dfs()

    def _dfs(self):
        self.nodes += 1
        mark = len(self.trail)
        try:
            self.propagate()
        except _Conflict:
            self.undo(mark)
            return
        if self.unknown == 0:
            yield [r[:] for r in self.A], [r[:] for r in self.B]
            self.undo(mark)
            return
        kind, g, h, values = self._choose()
        for y in values:
            inner = len(self.trail)
            try:
                (self.set_a if kind == 0 else self.set_b)(g, h, y)
            except _Conflict:
                self.undo(inner)
                continue
            yield from self._dfs()
            self.undo(inner)
        self.undo(mark)
