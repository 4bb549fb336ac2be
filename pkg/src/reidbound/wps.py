"""Hilbert series of weighted complete intersections, used as an h0 oracle.

For a quasi-smooth complete intersection X_{d_1..d_c} in P(w_0..w_n) with
O_X(1) = L, h0(mL) is the coefficient of t^m in

    prod (1 - t^d_j) / prod (1 - t^w_i)

Quasi-smoothness is not checked here; the three examples used downstream
are taken to be smooth (or terminal) Calabi-Yau threefolds as stated.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .basket import Basket
from .certify import birational_from, zeta_lower
from .reid import Numerics, h0_exact


@dataclass(frozen=True)
class WeightedVariety:
    weights: tuple[int, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if any(w < 1 for w in self.weights) or any(d < 1 for d in self.degrees):
            raise ValueError("weights and degrees must be positive")
        if len(self.weights) - len(self.degrees) != 4:
            raise ValueError(f"not a threefold: {len(self.weights)} weights, {len(self.degrees)} equations")
        if sum(self.degrees) != sum(self.weights):
            raise ValueError("sum of degrees must equal sum of weights (K ~ 0)")

    def __str__(self) -> str:
        d = ",".join(map(str, self.degrees))
        w = ",".join(map(str, self.weights))
        return f"X{d} in P({w})"


_VARIETY = re.compile(r"^\s*X_?\{?([\d,\s]+?)\}?\s+(?:in|⊂)\s+P\s*\(([\d,\s]+)\)\s*$")


def parse_variety(text: str) -> WeightedVariety:
    """Parse ``"X10 in P(1,1,1,2,5)"`` or ``"X2,6 in P(1,1,1,1,1,3)"``."""
    m = _VARIETY.match(text)
    if not m:
        raise ValueError(f"cannot parse variety {text!r}")
    degrees = tuple(int(x) for x in m.group(1).replace(" ", "").split(",") if x)
    weights = tuple(int(x) for x in m.group(2).replace(" ", "").split(",") if x)
    return WeightedVariety(weights, degrees)


def hilbert_coeffs(v: WeightedVariety, m_max: int) -> list[int]:
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    n = m_max + 1
    coeffs = [0] * n
    coeffs[0] = 1
    for d in v.degrees:  # multiply by (1 - t^d)
        for i in range(n - 1, d - 1, -1):
            coeffs[i] -= coeffs[i - d]
    for w in v.weights:  # divide by (1 - t^w)
        for i in range(w, n):
            coeffs[i] += coeffs[i - w]
    return coeffs


def degree_L3(v: WeightedVariety) -> Fraction:
    return Fraction(math.prod(v.degrees), math.prod(v.weights))


def fit_invariants(v: WeightedVariety, *, check_up_to: int = 20) -> Numerics:
    """Numerics with empty basket, chi = 0, L^3 = degree and lambda = h0(L).

    Raises ``ValueError`` if Reid's smooth formula then disagrees with any
    Hilbert coefficient up to ``check_up_to``.
    """
    h = hilbert_coeffs(v, max(1, check_up_to))
    L3 = degree_L3(v)
    lam = Fraction(h[1])  # m = 1: h0(L) = chi + 0 * L^3 + lambda, chi = 0
    if lam <= 0:
        raise ValueError(f"{v}: h0(L) = 0, no positive lambda fits")
    n = Numerics(Basket(), L3, lam, chi=0)
    for m in range(1, check_up_to + 1):
        if h0_exact(n, m, []) != h[m]:
            raise ValueError(f"{v}: no consistent lambda, Reid gives {h0_exact(n, m, [])} but h0({m}L) = {h[m]}")
    return n


def cross_check_reid(v: WeightedVariety, m_max: int) -> bool:
    try:
        n = fit_invariants(v, check_up_to=1)
    except ValueError:
        return False
    h = hilbert_coeffs(v, m_max)
    return all(h0_exact(n, m, []) == h[m] for m in range(1, m_max + 1))


#: The worked examples: variety, how zeta is obtained, and the stated conclusion.
#: ``"lattice"`` means the generic lower bound on zeta, ``"L3"`` means S and C
#: are cut out by |L| so zeta = L^3.
WORKED_EXAMPLES = (
    ("X10 in P(1,1,1,2,5)", "lattice", 5),
    ("X8 in P(1,1,1,1,4)", "L3", 4),
    ("X2,6 in P(1,1,1,1,1,3)", "L3", 3),
)


def worked_example(v: WeightedVariety, zeta_source: str) -> dict:
    """Run fit_invariants -> zeta -> birational_from with m0 = m1 = mu0 = rho0 = 1."""
    n = fit_invariants(v)
    zeta = zeta_lower(n.index, 1, 1)
    if zeta_source == "L3":
        if n.L3 < zeta:
            raise ValueError(f"{v}: L^3 = {n.L3} below the generic zeta bound {zeta}")
        zeta = n.L3
    elif zeta_source != "lattice":
        raise ValueError(f"unknown zeta source {zeta_source!r}")
    return {
        "variety": str(v),
        "L3": n.L3,
        "lambda": n.lam,
        "zeta": zeta,
        "bound": birational_from(1, 1, 1, 1, zeta),
    }
