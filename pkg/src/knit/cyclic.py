"""Matched pairs between cyclic groups.

C_n is written multiplicatively with generator ``a`` (the acted-on factor H)
and C_m with generator ``b`` (G); element ``a^x`` has index x. Actions of
C_n on C_m by automorphisms are ``b -> b^t`` with ``t^n = 1 mod m``; the set
of such t is :func:`varsigma`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .actions import MatchedPair, enumerate_matched_pairs, matched_pair
from .errors import InvalidOrderError, InvariantError, PreconditionError, SearchTooLargeError, resolve_cap
from .groups import FiniteGroup, cyclic_group
from .report import Check, Report

__all__ = [
    "CyclicReport",
    "SubstitutionPair",
    "c2_cm_matched_pairs",
    "c3_cm_matched_pairs",
    "c3_stated_count",
    "cyclic_report",
    "factorize",
    "matched_pair_from_substitution",
    "special_substitutions",
    "substitution_from_matched_pair",
    "varsigma",
    "varsigma_count",
    "varsigma_count_n2",
    "varsigma_count_odd_prime",
    "verify_substitution",
]

DEFAULT_SUBSTITUTION_CAP = 64


def _check_positive(*values: int) -> None:
    for x in values:
        if not isinstance(x, (int, np.integer)) or x < 1:
            raise InvalidOrderError(f"expected a positive integer, got {x!r}")


def factorize(m: int) -> dict[int, int]:
    """Prime factorization as {prime: exponent}."""
    _check_positive(m)
    from sympy import factorint  # deferred: sympy is slow to import

    return {int(p): int(e) for p, e in factorint(int(m)).items()}


def varsigma(n: int, m: int) -> tuple[int, ...]:
    """Exponents t with ``t^n = 1 (mod m)``, each giving the automorphism ``b -> b^t`` of C_m.

    For m = 1 the only automorphism is the identity, returned as ``(1,)``.
    The result is a subgroup of the units mod m; closure is asserted.
    """
    _check_positive(n, m)
    if m == 1:
        return (1,)
    ts = tuple(t for t in range(1, m) if math.gcd(t, m) == 1 and pow(t, n, m) == 1)
    s = set(ts)
    if any((x * y) % m not in s for x in ts for y in ts):
        raise InvariantError(f"solutions of t^{n} = 1 mod {m} are not closed under multiplication")
    return ts


def varsigma_count(n: int, m: int) -> int:
    """|varsigma(n, m)| from the structure of the unit group mod m."""
    _check_positive(n, m)
    f = factorize(m)
    a0 = f.pop(2, 0)
    odd = reduce(lambda acc, pa: acc * math.gcd(n, pa[0] ** pa[1] - pa[0] ** (pa[1] - 1)), f.items(), 1)
    if a0 >= 2:
        return math.gcd(n, 2) * math.gcd(n, 2 ** (a0 - 2)) * odd
    return odd


def varsigma_count_n2(m: int) -> int:
    """|varsigma(2, m)|: 2^k, 2^(k+1) or 2^(k+2) by the 2-adic valuation, k odd primes."""
    f = factorize(m)
    a0 = f.pop(2, 0)
    k = len(f)
    return 2 ** (k + (0 if a0 <= 1 else 1 if a0 == 2 else 2))


def varsigma_count_odd_prime(p: int, m: int) -> int:
    """|varsigma(p, m)| for an odd prime p."""
    if p < 3 or factorize(p) != {p: 1}:
        raise PreconditionError(f"{p} is not an odd prime")
    f = factorize(m)
    f.pop(2, None)
    out = math.prod(math.gcd(p, q - 1) for q in f)
    return out * p if m % (p * p) == 0 else out


def _cyclic_pair(n: int, m: int):
    return cyclic_group(n, "a"), cyclic_group(m, "b")


def _beta_t(n: int, m: int, t: int) -> list[list[int]]:
    # b^i < a^j = b^(i t^j)
    return [[(i * pow(t, j, m)) % m for j in range(n)] for i in range(m)]


def _table_set(pairs) -> set[tuple]:
    return {p.key() for p in pairs}


def _cross_check(H: FiniteGroup, G: FiniteGroup, built: list[MatchedPair], what: str) -> None:
    generic = enumerate_matched_pairs(H, G, cap=H.order * G.order)
    if _table_set(built) != _table_set(generic) or len(built) != len(generic):
        raise InvariantError(f"{what}: closed form gives {len(built)} pairs, generic search {len(generic)}")


def c2_cm_matched_pairs(m: int, *, check: bool = True) -> list[MatchedPair]:
    """All matched pairs (C_2, C_m): trivial left action and ``b^i < a = b^(i t)`` for t in varsigma(2, m).

    With `check` the list is compared against the generic enumerator.
    """
    _check_positive(m)
    H, G = _cyclic_pair(2, m)
    out = sorted((matched_pair(H, G, None, _beta_t(2, m, t)) for t in varsigma(2, m)), key=MatchedPair.key)
    if check:
        _cross_check(H, G, out, f"(C2, C{m})")
    return out


def _sign_alpha(m: int) -> list[list[int]]:
    # b^j > a^x = a^(x (-1)^j)
    return [[x if j % 2 == 0 else (-x) % 3 for x in range(3)] for j in range(m)]


def _beta_recurrence(m: int, l: int, t: int) -> list[list[int]]:
    """beta from ``b < a = b^(2l+1)``, ``b < a^2 = b^(2t+1)`` extended by the recurrences on b^j."""
    rows = []
    for j in range(m):
        k, odd = divmod(j, 2)
        if odd:
            e1 = (2 * k + 2) * l + 2 * k * t + 2 * k + 1
            e2 = 2 * k * l + (2 * k + 2) * t + 2 * k + 1
        else:
            e1 = e2 = 2 * k * (l + t + 1)
        rows.append([j, e1 % m, e2 % m])
    return rows


def _beta_closed(m: int, first: int, second: int) -> list[list[int]]:
    """beta with odd powers shifted by ``first`` under a and ``second`` under a^2, even powers fixed."""
    return [[j, (j + first) % m, (j + second) % m] if j % 2 else [j, j, j] for j in range(m)]


def c3_cm_matched_pairs(m: int, *, check: bool = True) -> list[MatchedPair]:
    """All matched pairs (C_3, C_m) from the three constructions.

    (i) trivial left action with ``b^i < a = b^(i t)``, t in varsigma(3, m);
    (ii) for even m, ``b^j > a^x = a^(x (-1)^j)`` with trivial right action;
    (iii) for 6 | m, the same left action with two non-trivial right actions,
    built from the recurrences and compared with their closed forms.
    """
    _check_positive(m)
    H, G = _cyclic_pair(3, m)
    out = [matched_pair(H, G, None, _beta_t(3, m, t)) for t in varsigma(3, m)]
    if m % 2 == 0:
        out.append(matched_pair(H, G, _sign_alpha(m), None))
    if m % 6 == 0:
        u = m // 6
        for (l, t), shifts in (((u, 2 * u), (2 * u, 4 * u)), ((2 * u, 4 * u), (4 * u, 2 * u))):
            beta = _beta_recurrence(m, l, t)
            if beta != _beta_closed(m, *shifts):
                raise InvariantError(f"recurrence and closed form disagree for m={m}, (l,t)={(l, t)}")
            out.append(matched_pair(H, G, _sign_alpha(m), beta))
    out.sort(key=MatchedPair.key)
    if len(_table_set(out)) != len(out):
        raise InvariantError("constructions (i)-(iii) overlap")
    if check:
        _cross_check(H, G, out, f"(C3, C{m})")
    return out


def c3_stated_count(m: int) -> int | None:
    """The number of (C_3, C_m) pairs as stated in the classification text.

    That text gives |varsigma| for odd m and ``2 + |varsigma|`` for 6 | m; it
    states no number for the remaining even m. The constructions themselves
    yield ``|varsigma| + 3`` when 6 | m.
    """
    s = len(varsigma(3, m))
    if m % 2:
        return s
    if m % 6 == 0:
        return 2 + s
    return None


@dataclass(frozen=True, eq=False)
class CyclicReport:
    n: int
    m: int
    pairs: tuple[MatchedPair, ...]
    varsigma: tuple[int, ...]
    formula_count: int
    oracle_count: int
    stated_count: int | None

    @property
    def discrepancy(self) -> bool:
        return self.stated_count is not None and self.stated_count != self.oracle_count


def cyclic_report(n: int, m: int, *, cap: int | None = None) -> CyclicReport:
    """Pairs on (C_n, C_m) with the closed-form counts next to the exhaustive one.

    n = 2 and n = 3 use the closed-form constructions; other n use the
    generic enumerator. The oracle count always comes from the generic search.
    """
    _check_positive(n, m)
    H, G = _cyclic_pair(n, m)
    generic = enumerate_matched_pairs(H, G, cap=cap if cap is not None else max(n * m, 64))
    if n == 2:
        pairs, stated = c2_cm_matched_pairs(m, check=False), varsigma_count_n2(m)
    elif n == 3:
        pairs, stated = c3_cm_matched_pairs(m, check=False), c3_stated_count(m)
    else:
        pairs, stated = generic, None
    if _table_set(pairs) != _table_set(generic):
        raise InvariantError(f"closed form and generic search disagree on (C{n}, C{m})")
    vs = varsigma(n, m)
    return CyclicReport(n, m, tuple(pairs), vs, varsigma_count(n, m), len(generic), stated)


@dataclass(frozen=True)
class SubstitutionPair:
    """Permutations of Z_n and Z_m encoding ``b^i > a^x = a^(theta^i(x))`` and ``b^y < a^j = b^(phi^j(y))``."""

    n: int
    m: int
    theta: tuple[int, ...]
    phi: tuple[int, ...]


def _powers(perm, count: int) -> list[list[int]]:
    """``out[k][x] = perm^k(x)`` for k < count; -1 where the chain hits an unknown value."""
    size = len(perm)
    out = [list(range(size))]
    for _ in range(1, count):
        prev = out[-1]
        out.append([perm[x] if x >= 0 else -1 for x in prev])
    return out


def _violations(n: int, m: int, theta, phi, *, partial: bool):
    """First failing instance of the four conditions, skipping unknown values when `partial`."""
    if theta[0] not in (0, -1) or phi[0] not in (0, -1):
        return ("zero-fixed", 0)
    T = _powers(theta, m + 1)
    P = _powers(phi, n + 1)
    for x in range(n):
        if T[m][x] >= 0 and T[m][x] != x:
            return ("theta-order", x)
    for y in range(m):
        if P[n][y] >= 0 and P[n][y] != y:
            return ("phi-order", y)
    # theta^y(x+z) - theta^y(z) = theta^(phi^z(y))(x)
    for y in range(m):
        Ty = T[y]
        for z in range(n):
            e = P[z][y]
            if e < 0 or Ty[z] < 0:
                continue
            Te = T[e]
            for x in range(n):
                lhs = Ty[(x + z) % n]
                rhs = Te[x]
                if lhs >= 0 and rhs >= 0 and (lhs - Ty[z]) % n != rhs:
                    return ("theta-condition", (x, y, z))
    # phi^y(x+z) - phi^y(z) = phi^(theta^z(y))(x)
    for y in range(n):
        Py = P[y]
        for z in range(m):
            e = T[z][y]
            if e < 0 or Py[z] < 0:
                continue
            Pe = P[e]
            for x in range(m):
                lhs = Py[(x + z) % m]
                rhs = Pe[x]
                if lhs >= 0 and rhs >= 0 and (lhs - Py[z]) % m != rhs:
                    return ("phi-condition", (x, y, z))
    if not partial and (sorted(theta) != list(range(n)) or sorted(phi) != list(range(m))):
        return ("bijective", None)
    return None


def verify_substitution(sp: SubstitutionPair) -> Report:
    names = ["zero-fixed", "theta-order", "phi-order", "theta-condition", "phi-condition", "bijective"]
    ok_shape = len(sp.theta) == sp.n and len(sp.phi) == sp.m and all(
        0 <= x < sp.n for x in sp.theta
    ) and all(0 <= y < sp.m for y in sp.phi)
    if not ok_shape:
        return Report.of([Check("shape", False, None, "theta must map Z_n and phi Z_m into themselves")])
    bad = _violations(sp.n, sp.m, sp.theta, sp.phi, partial=False)
    return Report.of(
        Check(name, bad is None or bad[0] != name, None if bad is None or bad[0] != name else bad[1])
        for name in names
    )


def special_substitutions(n: int, m: int, *, cap: int | None = None) -> list[SubstitutionPair]:
    """Every (theta, phi) pair on (Z_n, Z_m) satisfying the four conditions, sorted.

    Backtracks over the values of both permutations, smaller ring first,
    rejecting any partial assignment on which a fully evaluable instance of
    a condition fails. Independent of the matched-pair enumerator. The
    default cap on ``n*m`` is 64.
    """
    _check_positive(n, m)
    cap = resolve_cap(cap, DEFAULT_SUBSTITUTION_CAP)
    if n * m > cap:
        raise SearchTooLargeError("substitution search", n * m, cap)
    cells = [(0, x) for x in range(1, n)] + [(1, y) for y in range(1, m)]
    if m < n:
        cells = [(1, y) for y in range(1, m)] + [(0, x) for x in range(1, n)]
    out: list[SubstitutionPair] = []

    def extend(theta: list[int], phi: list[int]) -> None:
        if not _propagate(n, m, theta, phi) or _violations(n, m, theta, phi, partial=True):
            return
        open_cell = next(((w, p) for w, p in cells if (theta if w == 0 else phi)[p] < 0), None)
        if open_cell is None:
            if _violations(n, m, theta, phi, partial=False) is None:
                out.append(SubstitutionPair(n, m, tuple(theta), tuple(phi)))
            return
        which, pos = open_cell
        perm, size = (theta, n) if which == 0 else (phi, m)
        used = set(perm)
        for val in range(1, size):
            if val not in used:
                t2, p2 = theta[:], phi[:]
                (t2 if which == 0 else p2)[pos] = val
                extend(t2, p2)

    extend([0] + [-1] * (n - 1), [0] + [-1] * (m - 1))
    out.sort(key=lambda sp: (sp.theta, sp.phi))
    return out


def _propagate(n: int, m: int, theta: list[int], phi: list[int]) -> bool:
    """Fill values forced by the two conditions; False on a clash.

    Each instance reads ``A = B + C`` for three power values such as
    ``theta^y(x+z)``, ``theta^y(z)`` and ``theta^e(x)``. When two are known the
    third is forced, and if only its last step ``perm(q)`` is missing that
    value is assigned.
    """

    def force(perm, powers, k, p, val, size) -> int:
        # 1 if assigned, 0 if nothing to do, -1 on a clash
        if k == 0:
            return 0 if p == val else -1
        q = powers[k - 1][p]
        if q < 0:
            return 0
        if perm[q] >= 0:
            return 0 if perm[q] == val else -1
        if val in perm:
            return -1
        perm[q] = val
        return 1

    changed = True
    while changed:
        changed = False
        for perm, other, size, osize in ((theta, phi, n, m), (phi, theta, m, n)):
            T = _powers(perm, osize + 1)
            P = _powers(other, size + 1)
            for y in range(osize):
                Ty = T[y]
                for z in range(size):
                    e = P[z][y]
                    if e < 0:
                        continue
                    Te = T[e]
                    b = Ty[z]
                    for x in range(size):
                        w = (x + z) % size
                        a, c = Ty[w], Te[x]
                        known = (a >= 0) + (b >= 0) + (c >= 0)
                        if known == 3:
                            if a != (b + c) % size:
                                return False
                            continue
                        if known < 2:
                            continue
                        if a < 0:
                            res = force(perm, T, y, w, (b + c) % size, size)
                        elif b < 0:
                            res = force(perm, T, y, z, (a - c) % size, size)
                        else:
                            res = force(perm, T, e, x, (a - b) % size, size)
                        if res < 0:
                            return False
                        if res:
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break
            if changed:
                break
    return True


def _require_cyclic(G: FiniteGroup, what: str) -> None:
    if G != cyclic_group(G.order):
        raise PreconditionError(f"{what} must be the standard cyclic group (index i = generator^i)")


def substitution_from_matched_pair(mp: MatchedPair) -> SubstitutionPair:
    """Read ``theta(x)`` from ``b > a^x`` and ``phi(y)`` from ``b^y < a``."""
    _require_cyclic(mp.H, "H")
    _require_cyclic(mp.G, "G")
    n, m = mp.H.order, mp.G.order
    theta = tuple(mp.a[1]) if m > 1 else tuple(range(n))
    phi = tuple(row[1] for row in mp.b) if n > 1 else tuple(range(m))
    return SubstitutionPair(n, m, theta, phi)


def matched_pair_from_substitution(sp: SubstitutionPair) -> MatchedPair:
    """The matched pair with ``b^i > a^x = a^(theta^i(x))`` and ``b^y < a^j = b^(phi^j(y))``."""
    report = verify_substitution(sp)
    if not report.ok:
        raise PreconditionError(f"not a pair of special substitutions: {report.first_failure}")
    H, G = _cyclic_pair(sp.n, sp.m)
    T = _powers(sp.theta, sp.m)
    P = _powers(sp.phi, sp.n)
    alpha = [T[i] for i in range(sp.m)]
    beta = [[P[j][y] for j in range(sp.n)] for y in range(sp.m)]
    return matched_pair(H, G, alpha, beta)
