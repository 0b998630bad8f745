"""Extreme rays of cones {x >= 0 : Ax = 0} by the double description method.

All arithmetic is exact over the integers; rays are returned as primitive
integer vectors (componentwise nonnegative, gcd 1), sorted.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence


def _dot(a: Sequence[int], x: Sequence[int]) -> int:
    return sum(p * q for p, q in zip(a, x))


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _zero_set(r: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(r) if x == 0)


def extreme_rays(equalities: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Primitive extreme rays of {x in R^dim : x >= 0, Ax = 0}."""
    rays: list[tuple[int, ...]] = [
        tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)
    ]
    for a in equalities:
        if not any(a):
            continue
        vals = {r: _dot(a, r) for r in rays}
        zero = [r for r in rays if vals[r] == 0]
        plus = [r for r in rays if vals[r] > 0]
        minus = [r for r in rays if vals[r] < 0]
        zsets = {r: _zero_set(r) for r in rays}
        new: list[tuple[int, ...]] = []
        for rp in plus:
            for rm in minus:
                meet = zsets[rp] & zsets[rm]
                adjacent = True
                for other in rays:
                    if other is rp or other is rm:
                        continue
                    if meet <= zsets[other]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = tuple(
                    vals[rp] * rm[i] - vals[rm] * rp[i] for i in range(dim)
                )
                new.append(_primitive(combo))
        rays = sorted(set(zero + new))
    return sorted(set(rays))


def brute_force_rays(equalities: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Independent small-dimension oracle: scan all support patterns.

    A ray is extreme iff the active constraints at it (the equalities plus
    the vanishing coordinates) have rank dim-1; candidates come from
    1-dimensional kernels over Q.
    """
    from fractions import Fraction
    from itertools import combinations

    out: set[tuple[int, ...]] = set()
    for size in range(1, dim + 1):
        for support in combinations(range(dim), size):
            rows = [list(a) for a in equalities]
            for i in range(dim):
                if i not in support:
                    rows.append([1 if j == i else 0 for j in range(dim)])
            kern = _kernel(rows, dim)
            if len(kern) != 1:
                continue
            v = kern[0]
            if all(x >= 0 for x in v):
                cand = v
            elif all(x <= 0 for x in v):
                cand = [-x for x in v]
            else:
                continue
            if {i for i, x in enumerate(cand) if x} != set(support):
                continue
            out.add(_primitive(cand))
    return sorted(out)


def _kernel(rows: list[list[int]], dim: int) -> list[list[int]]:
    from fractions import Fraction

    M = [[Fraction(x) for x in row] for row in rows]
    pivots: dict[int, list[Fraction]] = {}
    for row in M:
        for col in range(dim):
            if row[col]:
                if col in pivots:
                    f = row[col]
                    row[:] = [x - f * y for x, y in zip(row, pivots[col])]
                else:
                    inv = row[col]
                    pivots[col] = [x / inv for x in row]
                    break
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * dim
        v[f] = Fraction(1)
        for col in sorted(pivots, reverse=True):
            v[col] = -sum(pivots[col][j] * v[j] for j in range(col + 1, dim))
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        basis.append([int(x * den) for x in v])
    return basis
