"""Reid baskets of terminal cyclic quotient points and their enumeration.

A point of type 1/r(1,-1,b) is stored as ``OrbifoldPoint(b, r)`` normalised to
``1 <= b <= r/2`` with ``gcd(b, r) == 1``. A :class:`Basket` is an immutable
multiset of such points kept in canonical ``(r, b)`` order.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

#: Local indices that can occur when chi(O_X) > 0 and q(X) = 0.
ADMISSIBLE_INDICES = (2, 3, 4, 5, 6, 8, 10, 12)
#: Indices allowed when chi(O_X) >= 2.
HIGH_CHI_INDICES = (2, 3, 4, 6)
#: Indices where i(X) = I(X), chi = 1 and Morrison's explicit list applies.
MORRISON_INDICES = (5, 8, 10, 12)


class BasketError(ValueError):
    pass


def validate_point(b: int, r: int) -> bool:
    return (
        isinstance(b, int)
        and isinstance(r, int)
        and r >= 2
        and 1 <= b
        and 2 * b <= r
        and math.gcd(b, r) == 1
    )


@dataclass(frozen=True)
class OrbifoldPoint:
    b: int
    r: int

    def __post_init__(self):
        if not validate_point(self.b, self.r):
            raise BasketError(f"invalid orbifold point ({self.b},{self.r})")

    @property
    def key(self) -> tuple[int, int]:
        return (self.r, self.b)

    def __lt__(self, other: "OrbifoldPoint") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return f"({self.b},{self.r})"


def _as_point(p) -> OrbifoldPoint:
    if isinstance(p, OrbifoldPoint):
        return p
    b, r = p
    return OrbifoldPoint(int(b), int(r))


@dataclass(frozen=True)
class Basket:
    points: tuple[OrbifoldPoint, ...] = ()

    def __init__(self, points: Iterable = ()):
        object.__setattr__(self, "points", tuple(sorted(_as_point(p) for p in points)))

    @classmethod
    def from_counts(cls, counts) -> "Basket":
        """Build from ``{(b, r): multiplicity}`` or an iterable of ``(b, r, mult)``."""
        items = counts.items() if hasattr(counts, "items") else (((b, r), k) for b, r, k in counts)
        pts = []
        for (b, r), k in items:
            if k < 0:
                raise BasketError(f"negative multiplicity for ({b},{r})")
            pts.extend([OrbifoldPoint(b, r)] * k)
        return cls(pts)

    def __iter__(self) -> Iterator[OrbifoldPoint]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def counts(self) -> list[tuple[OrbifoldPoint, int]]:
        """Run-length form in canonical order."""
        c = Counter(self.points)
        return [(p, c[p]) for p in sorted(c)]

    def __str__(self) -> str:
        return format_basket(self)

    def __repr__(self) -> str:
        return f"Basket({format_basket(self)!r})"


def chi_of(basket: Basket) -> Fraction:
    return sum((Fraction(p.r * p.r - 1, 24 * p.r) for p in basket), Fraction(0))


def cartier_index(basket: Basket) -> int:
    return math.lcm(1, *(p.r for p in basket))


# -- serialisation -----------------------------------------------------------

_RUN = re.compile(r"^(?:(\d+)\s*[x×*]\s*)?\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


def format_basket(basket: Basket) -> str:
    return " ".join(f"{k}x({p.b},{p.r})" for p, k in basket.counts())


def parse_basket(text: str) -> Basket:
    """Parse the run-length form, e.g. ``"5x(1,2) 4x(1,3) 1x(1,6)"``.

    The empty string (or ``"{}"``) is the empty basket. Braces and commas
    between runs are tolerated so ``"{2x(1,2), (2,5)}"`` also parses.
    """
    s = text.strip()
    if s.startswith("{") and s.endswith("}"):
        s = s[1:-1]
    s = s.strip()
    if not s:
        return Basket()
    # split on whitespace/commas that sit outside parentheses
    runs, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and (ch.isspace() or ch == ","):
            if cur.strip():
                runs.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        runs.append(cur.strip())
    pts = []
    for run in runs:
        m = _RUN.match(run)
        if not m:
            raise BasketError(f"malformed basket run {run!r}")
        k = int(m.group(1)) if m.group(1) else 1
        pts.extend([OrbifoldPoint(int(m.group(2)), int(m.group(3)))] * k)
    return Basket(pts)


def basket_to_json(basket: Basket) -> list[list[int]]:
    return [[p.b, p.r, k] for p, k in basket.counts()]


def basket_from_json(data) -> Basket:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return Basket.from_counts([(int(b), int(r), int(k)) for b, r, k in data])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, BasketError):
            raise
        raise BasketError(f"malformed basket JSON: {data!r}") from exc


# -- enumeration ---------------------------------------------------------------

def admissible_points(index: int) -> list[OrbifoldPoint]:
    """All normalised points whose index divides ``index``."""
    return [
        OrbifoldPoint(b, r)
        for r in range(2, index + 1)
        if index % r == 0
        for b in range(1, r // 2 + 1)
        if math.gcd(b, r) == 1
    ]


def check_chi_index(chi: int, iX: int) -> None:
    if chi == 0:
        if iX != 1:
            raise BasketError("chi = 0 forces a Gorenstein (empty) basket, i(X) = 1")
        return
    if chi not in (1, 2, 3, 4):
        raise BasketError(f"chi(O_X) must lie in 0..4, got {chi}")
    if iX not in ADMISSIBLE_INDICES:
        raise BasketError(f"i(X) = {iX} is not admissible; expected one of {ADMISSIBLE_INDICES}")
    if chi >= 2 and iX not in HIGH_CHI_INDICES:
        raise BasketError(f"chi = {chi} >= 2 requires i(X) in {HIGH_CHI_INDICES}, got {iX}")


def enumerate_baskets(chi: int, iX: int, *, morrison: bool = True) -> list[Basket]:
    """All baskets with ``chi_of == chi`` and ``cartier_index == iX``.

    For ``iX`` in :data:`MORRISON_INDICES` the global index equals the local
    one, and Morrison's classification only admits baskets that contain a
    point of index exactly ``iX``; ``morrison=False`` drops that filter and
    returns the bare arithmetic solutions.
    """
    check_chi_index(chi, iX)
    if chi == 0:
        return [Basket()]
    pts = admissible_points(iX)
    # integer weights: 24 * iX * (r^2 - 1) / (24 r)
    weights = [iX * (p.r * p.r - 1) // p.r for p in pts]
    target = 24 * iX * chi
    found: list[Basket] = []

    def walk(i: int, left: int, chosen: list[tuple[OrbifoldPoint, int]]) -> None:
        if left == 0:
            b = Basket.from_counts({(p.b, p.r): k for p, k in chosen})
            if cartier_index(b) == iX:
                found.append(b)
            return
        if i == len(pts):
            return
        w = weights[i]
        for k in range(left // w, -1, -1):
            walk(i + 1, left - k * w, chosen + [(pts[i], k)] if k else chosen)

    walk(0, target, [])
    if morrison and iX in MORRISON_INDICES:
        found = [b for b in found if any(p.r == iX for p in b)]
    return sorted(found, key=lambda b: [(p.r, p.b) for p in b.points])
