"""Orbifold Riemann-Roch on terminal threefolds with K numerically trivial.

For a nef and big Weil divisor L and T numerically trivial::

    h0(mL + T) = chi + (m^3 - m)/6 * L^3 + m * lambda + sum_Q c_Q(mL + T)

where ``lambda = L^3/6 + (L.c2)/12`` and ``c_Q`` depends only on the basket
point Q and the local index of the divisor there. Everything here is exact
``Fraction`` arithmetic.

Unknown ``(L^3, lambda)`` are handled through :class:`MarginForm`, a linear
form minimised over the region ``L^3 >= 1/iX``, ``lambda >= 1/iX`` and
``lambda >= L^3/6`` (the last one is ``L.c2 >= 0``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .basket import Basket, OrbifoldPoint, cartier_index, chi_of
from .rational import fmt_q

Q = Fraction

TABLE_A_ROWS = (
    (1, 2), (1, 3), (1, 4), (1, 5), (2, 5), (1, 6),
    (1, 8), (3, 8), (1, 10), (3, 10), (1, 12), (5, 12),
)


@lru_cache(maxsize=None)
def _contribution(b: int, r: int, i: int) -> Fraction:
    total = Q(-i * (r * r - 1), 12 * r)
    for j in range(i):
        jb = (j * b) % r
        total += Q(jb * (r - jb), 2 * r)
    return total


def contribution(point: OrbifoldPoint, i: int) -> Fraction:
    """Reid's correction ``c_Q(D)`` for local index ``i`` of D at Q."""
    if not 0 <= i < point.r:
        raise ValueError(f"local index {i} out of range [0, {point.r}) for {point}")
    return _contribution(point.b, point.r, i)


def table_a() -> dict[tuple[int, int], list[Fraction]]:
    """Rows ``(b, r)`` of all point types occurring for admissible i(X)."""
    return {
        (b, r): [contribution(OrbifoldPoint(b, r), i) for i in range(r)]
        for b, r in TABLE_A_ROWS
    }


def periodic_contribution_sum(point: OrbifoldPoint) -> Fraction:
    """Sum of ``c_Q`` over a full period of local indices; always ``-(r^2-1)/24``."""
    total = sum((contribution(point, i) for i in range(point.r)), Q(0))
    expected = Q(-(point.r ** 2 - 1), 24)
    if total != expected:
        raise ArithmeticError(f"telescoping identity fails at {point}: {total} != {expected}")
    return total


def min_contribution(point: OrbifoldPoint, stride: int) -> Fraction:
    """Worst ``c_Q(kL0)`` when the local index of L0 at Q is unknown.

    ``k * s mod r`` runs exactly over the multiples of ``gcd(k, r)``.
    """
    g = math.gcd(stride, point.r)
    return min(contribution(point, i) for i in range(0, point.r, g))


def paper_min_contribution(point: OrbifoldPoint, k: int) -> Fraction:
    """The coarser worst case used throughout the hand estimates.

    Zero when ``r | k`` (the local index of kL0 vanishes), otherwise the
    minimum over every residue. Never larger than :func:`min_contribution`.
    """
    if k % point.r == 0:
        return Q(0)
    return min(contribution(point, i) for i in range(point.r))


def worst_contribution(point: OrbifoldPoint, k: int, mode: str = "sharp") -> Fraction:
    if mode == "sharp":
        return min_contribution(point, k)
    if mode == "paper":
        return paper_min_contribution(point, k)
    raise ValueError(f"unknown mode {mode!r}")


def shift_set_sum(point: OrbifoldPoint, k: int, shifts: Sequence[int]) -> Fraction:
    """``min_s sum_t c_Q((k*s + t) mod r)`` over the unknown base index s."""
    r = point.r
    return min(
        sum((contribution(point, (k * s + t) % r) for t in shifts), Q(0))
        for s in range(r)
    )


# -- residue constraints -------------------------------------------------------

@dataclass(frozen=True)
class Fixed:
    s: int

    def __str__(self):
        return str(self.s)


@dataclass(frozen=True)
class Free:
    def __str__(self):
        return "*"


FREE = Free()
Residue = Union[Fixed, Free]


def parse_residues(text: str, basket: Basket) -> list[Residue]:
    """``"0,*,3"`` -> aligned constraints; ``*`` (or ``?``) marks a free index."""
    items = [t.strip() for t in text.replace(" ", ",").split(",") if t.strip()]
    if len(items) != len(basket):
        raise ValueError(f"{len(items)} residues given for a basket of {len(basket)} points")
    out: list[Residue] = []
    for tok, p in zip(items, basket):
        if tok in ("*", "?"):
            out.append(FREE)
            continue
        s = int(tok)
        if not 0 <= s < p.r:
            raise ValueError(f"residue {s} out of range [0, {p.r}) for {p}")
        out.append(Fixed(s))
    return out


def _check_residues(basket: Basket, residues: Sequence[Residue]) -> None:
    if len(residues) != len(basket):
        raise ValueError(f"residue vector of length {len(residues)} misaligned with {len(basket)} points")
    for res, p in zip(residues, basket):
        if isinstance(res, Fixed) and not 0 <= res.s < p.r:
            raise ValueError(f"residue {res.s} out of range [0, {p.r}) for {p}")


# -- numerics ------------------------------------------------------------------

@dataclass(frozen=True)
class Numerics:
    """Numerical shadow of a polarised triple: basket, chi(O_X), L^3, lambda(L)."""

    basket: Basket
    chi: Fraction
    L3: Fraction
    lam: Fraction

    def __init__(self, basket: Basket, L3, lam, chi=None):
        object.__setattr__(self, "basket", basket)
        object.__setattr__(self, "chi", chi_of(basket) if chi is None else Q(chi))
        object.__setattr__(self, "L3", Q(L3))
        object.__setattr__(self, "lam", Q(lam))
        iX = cartier_index(basket)
        for name, v in (("L^3", self.L3), ("lambda", self.lam)):
            if v <= 0 or (iX * v).denominator != 1:
                raise ValueError(f"i(X)*{name} must be a positive integer (i(X)={iX}, {name}={fmt_q(v)})")
        if self.chi < 0:
            raise ValueError("chi(O_X) must be non-negative")

    @property
    def index(self) -> int:
        return cartier_index(self.basket)

    def lam_multiple(self, k: int) -> Fraction:
        """lambda(kL) = (k^3 - k)/6 * L^3 + k * lambda."""
        return Q(k ** 3 - k, 6) * self.L3 + k * self.lam


def h0_exact(n: Numerics, m: int, residues: Sequence[Residue]) -> Fraction:
    """Reid's h0(mL + T); residues are local indices of mL + T itself."""
    if m < 1:
        raise ValueError("m must be >= 1: vanishing needs mL + T nef and big")
    _check_residues(n.basket, residues)
    if not all(isinstance(x, Fixed) for x in residues):
        raise ValueError("h0_exact needs every residue fixed")
    corr = sum((contribution(p, x.s) for p, x in zip(n.basket, residues)), Q(0))
    return n.chi + n.lam_multiple(m) + corr


def is_integral_profile(n: Numerics, l_indices: Sequence[int], m_max: int = 12) -> bool:
    """Diagnostic: is h0(mL + iK) integral for all ``1 <= m <= m_max`` and all
    shifts i, given the local indices of L itself?

    Corner numerics picked only as lower bounds usually fail this; the bound
    engine never needs integrality.
    """
    _check_residues(n.basket, [Fixed(s) for s in l_indices])
    for m in range(1, m_max + 1):
        for i in range(n.index):
            res = [Fixed((m * s + i) % p.r) for s, p in zip(l_indices, n.basket)]
            if h0_exact(n, m, res).denominator != 1:
                return False
    return True


# -- margin forms --------------------------------------------------------------

@dataclass(frozen=True)
class MarginForm:
    """``constant + L3_coeff * L^3 + lambda_coeff * lambda``."""

    constant: Fraction = Q(0)
    L3_coeff: Fraction = Q(0)
    lambda_coeff: Fraction = Q(0)

    def __add__(self, other: "MarginForm") -> "MarginForm":
        return MarginForm(self.constant + other.constant,
                          self.L3_coeff + other.L3_coeff,
                          self.lambda_coeff + other.lambda_coeff)

    def __sub__(self, other: "MarginForm") -> "MarginForm":
        return self + other.scale(-1)

    def scale(self, c) -> "MarginForm":
        c = Q(c)
        return MarginForm(c * self.constant, c * self.L3_coeff, c * self.lambda_coeff)

    def shift(self, c) -> "MarginForm":
        return MarginForm(self.constant + Q(c), self.L3_coeff, self.lambda_coeff)

    def at(self, L3, lam) -> Fraction:
        return self.constant + self.L3_coeff * Q(L3) + self.lambda_coeff * Q(lam)

    def minimum(self, iX: int, *, c2_nonneg: bool = True) -> Optional[Fraction]:
        """Infimum over the admissible (L^3, lambda) region, ``None`` if unbounded.

        The region has vertices ``(a, a)`` and ``(6a, a)`` with ``a = 1/iX``
        and recession directions ``(0, 1)`` and ``(6, 1)``; without the c2
        constraint it is the quadrant at ``(a, a)``.
        """
        a = Q(1, iX)
        beta, gamma = self.L3_coeff, self.lambda_coeff
        if gamma < 0:
            return None
        if not c2_nonneg:
            return None if beta < 0 else self.at(a, a)
        if 6 * beta + gamma < 0:
            return None
        return min(self.at(a, a), self.at(6 * a, a))

    def to_json(self) -> dict:
        return {"constant": fmt_q(self.constant),
                "L3_coeff": fmt_q(self.L3_coeff),
                "lambda_coeff": fmt_q(self.lambda_coeff)}

    def __str__(self) -> str:
        return f"{fmt_q(self.constant)} + {fmt_q(self.L3_coeff)}*L3 + {fmt_q(self.lambda_coeff)}*lambda"


def riemann_roch_form(m: int, chi=0) -> MarginForm:
    """chi + (m^3 - m)/6 * L^3 + m * lambda, the residue-free part."""
    return MarginForm(Q(chi), Q(m ** 3 - m, 6), Q(m))


def h0_margin(basket: Basket, m: int, residues: Sequence[Residue], *,
              chi=None, mode: str = "sharp") -> MarginForm:
    """Certified lower bound on h0(mL0) as a form in (L^3, lambda).

    ``Fixed(s)`` is the local index of L0 at the point (so mL0 has index
    ``m*s mod r``); ``Free`` points take the worst case for that multiple.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    _check_residues(basket, residues)
    corr = Q(0)
    for p, res in zip(basket, residues):
        if isinstance(res, Fixed):
            corr += contribution(p, (m * res.s) % p.r)
        else:
            corr += worst_contribution(p, m, mode)
    chi = chi_of(basket) if chi is None else Q(chi)
    return riemann_roch_form(m, chi).shift(corr)


def h0_lower_bound(basket: Basket, m: int, residues: Sequence[Residue], *,
                   numerics: Optional[Numerics] = None, chi=None,
                   mode: str = "sharp", c2_nonneg: bool = True) -> Fraction:
    """Evaluate :func:`h0_margin` at given numerics, or at the worst admissible point."""
    if numerics is not None:
        form = h0_margin(basket, m, residues, chi=numerics.chi, mode=mode)
        return form.at(numerics.L3, numerics.lam)
    form = h0_margin(basket, m, residues, chi=chi, mode=mode)
    value = form.minimum(cartier_index(basket), c2_nonneg=c2_nonneg)
    assert value is not None  # both coefficients are >= 0 for m >= 1
    return value


def averaging_floor(n: Numerics, k: int) -> Fraction:
    """lambda(kL): some shift kL + iK has at least this many sections."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return n.lam_multiple(k)


def averaging_form(k: int) -> MarginForm:
    return riemann_roch_form(k, 0)
