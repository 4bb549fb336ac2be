"""Declarative decision trees for the per-index case analysis.

Each case lists one or more families of baskets. A family says how the shift
``L0 = L + i0*K`` is chosen, which multiples of L0 are estimated, the choice of
m0, and the pencil hypotheses to branch over. The engine in
:mod:`reidbound.certify` does all arithmetic; nothing numeric lives here
except the choices themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

#: Birationality threshold for Gorenstein triples (i(X) = 1), taken as given.
GORENSTEIN_BOUND = 5


@dataclass(frozen=True)
class Strategy:
    """How L0 is picked.

    ``identity``   L0 = L, every local index unknown.
    ``anchor``     L0 = L + i0*K with local index 0 at one point of index ``anchor_r``.
    ``shift_set``  some L0 with ``k*L0 ~ k*L + t*K`` for a shift t in ``shifts``
                   has at least the average number of sections over the shifts.
    """

    kind: str
    anchor_r: Optional[int] = None
    k: Optional[int] = None
    shifts: tuple[int, ...] = ()

    def describe(self) -> str:
        if self.kind == "identity":
            return "L0 = L"
        if self.kind == "anchor":
            return f"L0 = L + i0*K with local index 0 at the index-{self.anchor_r} point"
        shifts = ",".join(str(t) for t in self.shifts)
        return f"average of h0({self.k}L + tK) over t in {{{shifts}}}"


IDENTITY = Strategy("identity")


def anchor(r: int) -> Strategy:
    return Strategy("anchor", anchor_r=r)


def shift_set(k: int, shifts) -> Strategy:
    return Strategy("shift_set", k=k, shifts=tuple(shifts))


@dataclass(frozen=True)
class Branch:
    """One pencil hypothesis and the m1 it licenses.

    ``m0_pencil``   True / False / None (no assumption) for |m0 L0|.
    ``same_pencil`` multiples k with |k L0| composed with the same pencil as |m0 L0|.
    ``not_same``    multiples k with |k L0| not composed with that pencil.
    """

    label: str
    m1: int
    m0_pencil: Optional[bool] = None
    same_pencil: tuple[int, ...] = ()
    not_same: tuple[int, ...] = ()

    @property
    def assumes_m0_pencil(self) -> Optional[bool]:
        if self.same_pencil:
            return True
        return self.m0_pencil


@dataclass(frozen=True)
class Family:
    label: str
    chis: tuple[int, ...]
    strategy: Strategy
    multiples: tuple[int, ...]
    m0: int
    branches: tuple[Branch, ...]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class CaseSpec:
    index: int
    title: str
    families: tuple[Family, ...] = field(default_factory=tuple)


def _small_index(i: int) -> CaseSpec:
    return CaseSpec(i, "i(X) = 2 or 3", (
        Family(
            label=f"chi in 1..4, i(X)={i}",
            chis=(1, 2, 3, 4),
            strategy=IDENTITY,
            multiples=(i, 2 * i),
            m0=i,
            branches=(Branch("no pencil hypothesis needed", m1=2 * i),),
        ),
    ))


_PAIR_BRANCHES = {
    # (m0, k, m1 when same pencil)
    8: (4, 6, 8),
    10: (4, 6, 8),
    12: (3, 6, 9),
}


def _morrison_pair(i: int) -> CaseSpec:
    m0, k, m1 = _PAIR_BRANCHES[i]
    return CaseSpec(i, f"i(X) = {i}", (
        Family(
            label=f"Morrison baskets, i(X)={i}",
            chis=(1,),
            strategy=anchor(i),
            multiples=(m0, k, m1),
            m0=m0,
            branches=(
                Branch(f"|{k}L0| and |{m0}L0| composed with the same pencil", m1=m1, same_pencil=(k,)),
                Branch(f"|{k}L0| and |{m0}L0| not composed with the same pencil", m1=k, not_same=(k,)),
            ),
        ),
    ))


CASES: dict[int, CaseSpec] = {
    2: _small_index(2),
    3: _small_index(3),
    4: CaseSpec(4, "i(X) = 4", (
        Family(
            label="chi in 1..4, i(X)=4",
            chis=(1, 2, 3, 4),
            strategy=shift_set(5, range(4)),
            multiples=(4, 5),
            m0=4,
            branches=(
                Branch("|4L0| composed with a pencil", m1=5, m0_pencil=True),
                Branch("|4L0| not composed with a pencil", m1=4, m0_pencil=False),
            ),
            notes=("5L0 ~ 5L + i0*K uses 4K ~ 0, i.e. I(X) = i(X) = 4",),
        ),
    )),
    6: CaseSpec(6, "i(X) = 6", (
        Family(
            label="chi = 1, i(X)=6",
            chis=(1,),
            strategy=anchor(6),
            multiples=(3, 4, 7),
            m0=3,
            branches=(
                Branch("|4L0| and |3L0| composed with the same pencil", m1=7, same_pencil=(4,)),
                Branch("|4L0| and |3L0| not composed with the same pencil", m1=4, not_same=(4,)),
            ),
        ),
        Family(
            label="chi in 2..4, i(X)=6",
            chis=(2, 3, 4),
            strategy=shift_set(3, (0, 3)),
            multiples=(3, 6),
            m0=3,
            branches=(Branch("no pencil hypothesis needed", m1=6),),
            notes=("L0 in {L, L+K}; 3(L+K) ~ 3L + 3K",),
        ),
    )),
    5: CaseSpec(5, "i(X) = 5", (
        Family(
            label="Morrison baskets, i(X)=5",
            chis=(1,),
            strategy=anchor(5),
            multiples=(4, 5, 6),
            m0=4,
            branches=(
                Branch("|5L0| and |4L0| composed with the same pencil", m1=6, same_pencil=(5,)),
                Branch("|4L0| composed with a pencil, |5L0| not the same pencil", m1=5,
                       m0_pencil=True, not_same=(5,)),
                Branch("|4L0| not composed with a pencil", m1=4, m0_pencil=False),
            ),
            notes=("h0(5L0) is quoted as '= 6'; it is 6 only at L^3 = lambda = 1/5, "
                   "the certified statement is h0(5L0) >= 6",),
        ),
    )),
    8: _morrison_pair(8),
    10: _morrison_pair(10),
    12: _morrison_pair(12),
}
