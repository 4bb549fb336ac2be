"""Brute-force reference enumerator for baskets.

Deliberately naive and independent of :func:`reidbound.basket.enumerate_baskets`:
it walks every multiset of admissible points up to a point-count bound and
filters on chi and lcm. Use only for small ``chi``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement


def _types(index: int) -> list[tuple[int, int]]:
    out = []
    for r in range(2, index + 1):
        if index % r:
            continue
        for b in range(1, r):
            if 2 * b <= r and math.gcd(b, r) == 1:
                out.append((b, r))
    return out


def brute_force_baskets(chi: int, index: int, *, full_index_point: bool = False) -> set[tuple[tuple[int, int], ...]]:
    """Return baskets as sorted tuples of ``(b, r)`` pairs.

    Each point contributes at least 1/16 to chi (the r = 2 value), so at most
    ``16 * chi`` points can appear.
    """
    types = _types(index)
    share = {t: Fraction(t[1] ** 2 - 1, 24 * t[1]) for t in types}
    result = set()
    for n in range(1, 16 * chi + 1):
        for combo in combinations_with_replacement(types, n):
            if sum(share[t] for t in combo) != chi:
                continue
            if math.lcm(*(r for _, r in combo)) != index:
                continue
            if full_index_point and all(r != index for _, r in combo):
                continue
            result.add(tuple(sorted(combo, key=lambda t: (t[1], t[0]))))
    return result
