"""Certified birationality bounds for |K_X + mL + T|.

The criterion: |K_X + mL + T| is birational once

    m > max(m0 + m1 + rho0 - 1, mu0 + m1 + 2/zeta)

with m0, m1 certified through lower bounds on h0(kL0), mu0 bounded via pencil
multiplicities and zeta bounded from below on the lattice (1/iX) Z. The
per-index case analyses are replayed from :mod:`reidbound.scenarios`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .basket import (
    ADMISSIBLE_INDICES, HIGH_CHI_INDICES, Basket, admissible_points,
    cartier_index, chi_of, enumerate_baskets, format_basket,
)
from .rational import fmt_q
from .reid import (
    FREE, Fixed, MarginForm, Numerics, Residue, contribution, h0_margin, periodic_contribution_sum,
    riemann_roch_form, shift_set_sum,
)
from .scenarios import CASES, GORENSTEIN_BOUND, Branch, CaseSpec, Family, Strategy

Q = Fraction
MODES = ("paper", "sharp")


class CertificationError(ValueError):
    pass


def _check_index(iX: int) -> None:
    if iX not in ADMISSIBLE_INDICES:
        raise CertificationError(f"i(X) = {iX} is not admissible; expected one of {ADMISSIBLE_INDICES}")


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise CertificationError(f"mode must be one of {MODES}, got {mode!r}")


def default_chis(iX: int) -> tuple[int, ...]:
    return (1, 2, 3, 4) if iX in HIGH_CHI_INDICES else (1,)


# -- scalar pieces ---------------------------------------------------------------

def mu0_upper(k: int, h0_floor: int, same_pencil: bool) -> Fraction:
    """Bound mu0 <= k / iota_k; iota_k = h0 - 1 for a rational pencil, else 1."""
    if h0_floor < 2:
        raise CertificationError("need h0 >= 2 to bound mu0")
    if same_pencil:
        return Q(k, h0_floor - 1)
    return Q(k)


def zeta_lower(iX: int, mu0_ub, m1: int) -> Fraction:
    mu0_ub = Q(mu0_ub)
    if mu0_ub <= 0:
        raise CertificationError("mu0 bound must be positive")
    t = min(Q(1), Q(3) / (mu0_ub + m1 + 1))
    return Q(math.ceil(iX * t), iX)


def birational_from(m0: int, m1: int, mu0_ub, rho0: int, zeta_lb) -> int:
    """Least integer m strictly above ``max(m0+m1+rho0-1, mu0+m1+2/zeta)``."""
    zeta_lb = Q(zeta_lb)
    if zeta_lb <= 0:
        raise CertificationError("zeta bound must be positive")
    top = max(Q(m0 + m1 + rho0 - 1), Q(mu0_ub) + m1 + 2 / zeta_lb)
    return math.floor(top) + 1


def non_pencil_margin(form: MarginForm, iX: int, m: int) -> MarginForm:
    """h0(mL0) - iX * L^3 * m - 1 as a form; positive means not a pencil."""
    return form - MarginForm(Q(1), Q(iX * m), Q(0))


def non_pencil_certified(basket: Basket, m: int, residues: Sequence[Residue], *,
                         numerics: Optional[Numerics] = None, mode: str = "sharp",
                         extra_forms: Iterable[MarginForm] = ()) -> tuple[bool, MarginForm]:
    """Is |mL0| certainly not composed with a pencil of surfaces?

    Returns the verdict and the margin form that decided it (the best one
    tried when none succeeds).
    """
    iX = cartier_index(basket)
    chi = numerics.chi if numerics is not None else None
    forms = [h0_margin(basket, m, residues, chi=chi, mode=mode), *extra_forms]
    best: Optional[tuple[Fraction, MarginForm]] = None
    for form in forms:
        margin = non_pencil_margin(form, iX, m)
        if numerics is not None:
            value = margin.at(numerics.L3, numerics.lam)
        else:
            value = margin.minimum(iX)
        if value is None:
            continue
        if best is None or value > best[0]:
            best = (value, margin)
    if best is None:
        return False, non_pencil_margin(forms[0], iX, m)
    return best[0] > 0, best[1]


def rho0_bound(iX: int, chi_range: Optional[Iterable[int]] = None, *, m_max: int = 60) -> int:
    """Least k with h0(mL + T') > 0 certified for all m >= k, all T', all baskets."""
    _check_index(iX)
    chis = tuple(chi_range) if chi_range is not None else default_chis(iX)
    baskets = [b for chi in chis for b in enumerate_baskets(chi, iX)]
    if not baskets:
        raise CertificationError(f"no baskets for i(X)={iX}, chi in {chis}")
    a = Q(1, iX)
    # residue minima do not depend on m, so the bound increases with m
    worst = min(chi_of(b) + sum((min(contribution(p, i) for i in range(p.r)) for p in b), Q(0))
                for b in baskets)
    for m in range(1, m_max + 1):
        if worst + Q(m ** 3 - m, 6) * a + m * a > 0:
            return m
    raise CertificationError(f"rho0 not reached below m = {m_max}")


# -- certificates ------------------------------------------------------------------

@dataclass
class Scenario:
    family: str
    branch: str
    chis: tuple[int, ...]
    baskets: str
    m0: int
    m1: int
    m1_reason: str
    pencil_hypotheses: list[str]
    mu0_upper: Fraction
    mu0_derivation: str
    iota_floor: dict[int, int]
    h0_floor: dict[int, int]
    non_pencil: list[int]
    rho0: int
    zeta_lb: Fraction
    epsilon_threshold: Fraction
    combinatorial_threshold: int
    final_m: int
    rejected: list[str] = field(default_factory=list)

    def to_json(self, iX: int, mode: str, case_bound: int) -> dict:
        return {
            "iX": iX,
            "mode": mode,
            "family": self.family,
            "chi": list(self.chis),
            "basket": self.baskets,
            "branch": self.branch,
            "pencil_hypotheses": self.pencil_hypotheses,
            "m0": self.m0,
            "m1": self.m1,
            "m1_reason": self.m1_reason,
            "h0_floor": {str(k): v for k, v in sorted(self.h0_floor.items())},
            "non_pencil": self.non_pencil,
            "iota_floor": {str(k): v for k, v in sorted(self.iota_floor.items())},
            "mu0_upper": fmt_q(self.mu0_upper),
            "mu0_derivation": self.mu0_derivation,
            "rho0": self.rho0,
            "zeta_lb": fmt_q(self.zeta_lb),
            "combinatorial_threshold": self.combinatorial_threshold,
            "epsilon_threshold": fmt_q(self.epsilon_threshold),
            "final_m": self.final_m,
            "case_bound": case_bound,
            "rejected": self.rejected,
        }


@dataclass
class BoundCertificate:
    iX: int
    mode: str
    chis: tuple[int, ...]
    rho0: int
    scenarios: list[Scenario]
    case_bound: int
    notes: list[str] = field(default_factory=list)

    def to_json_lines(self) -> list[dict]:
        rows = [s.to_json(self.iX, self.mode, self.case_bound) for s in self.scenarios]
        for row in rows:
            row["notes"] = self.notes
        return rows


def verify_certificate(cert: BoundCertificate) -> None:
    """Re-derive every final_m from the stored fields; raise on any mismatch."""
    for s in cert.scenarios:
        comb = s.m0 + s.m1 + s.rho0 - 1
        eps = s.mu0_upper + s.m1 + 2 / s.zeta_lb
        if s.combinatorial_threshold != comb or s.epsilon_threshold != eps:
            raise CertificationError(f"stored thresholds disagree in {s.branch!r}")
        if not (s.final_m > comb and s.final_m > eps):
            raise CertificationError(f"final_m {s.final_m} not above thresholds in {s.branch!r}")
        if s.final_m - 1 > comb and s.final_m - 1 > eps:
            raise CertificationError(f"final_m {s.final_m} is not minimal in {s.branch!r}")
        if s.zeta_lb != zeta_lower(cert.iX, s.mu0_upper, s.m1):
            raise CertificationError(f"zeta bound mismatch in {s.branch!r}")
        if s.m1 < s.m0 or s.mu0_upper > s.m0:
            raise CertificationError(f"m1 >= m0 or mu0 <= m0 violated in {s.branch!r}")
    if cert.scenarios and cert.case_bound != max(s.final_m for s in cert.scenarios):
        raise CertificationError("case_bound is not the maximum over scenarios")


# -- engine ---------------------------------------------------------------------------

def _residues_for(basket: Basket, strategy: Strategy) -> list[Residue]:
    if strategy.kind != "anchor":
        return [FREE] * len(basket)
    res: list[Residue] = [FREE] * len(basket)
    for i, p in enumerate(basket):
        if p.r == strategy.anchor_r:
            res[i] = Fixed(0)
            return res
    raise CertificationError(f"basket {format_basket(basket)} has no point of index {strategy.anchor_r}")


def _shift_set_ok(strategy: Strategy, iX: int) -> None:
    # each shift t must be reachable as k*L0 = k*(L + t'K), i.e. gcd(k, iX) | t
    g = math.gcd(strategy.k, iX)
    for t in strategy.shifts:
        if t % g:
            raise CertificationError(f"shift {t} unreachable from {strategy.k}L0 when i(X)={iX}")


def _shift_set_form(basket: Basket, strategy: Strategy, mode: str, notes: list[str]) -> MarginForm:
    """Lower bound for max over shifts t of h0(kL + tK), as a form."""
    k, shifts = strategy.k, strategy.shifts
    n = len(shifts)
    base = riemann_roch_form(k, 0)  # lambda(kL)
    if mode == "paper":
        return base
    extra = chi_of(basket) + sum((shift_set_sum(p, k, shifts) for p in basket), Q(0)) / n
    if extra < 0:
        raise CertificationError(f"shift-set average drops below lambda({k}L) on {format_basket(basket)}")
    return base.shift(extra)


def _paper_shift_aggregate(iX: int, strategy: Strategy) -> list[str]:
    """Per point type, |shifts| * chi_Q + shift_sum >= 0, which covers every basket."""
    lines = []
    n = len(strategy.shifts)
    for p in admissible_points(iX):
        share = Q(p.r * p.r - 1, 24 * p.r)
        s = shift_set_sum(p, strategy.k, strategy.shifts)
        if n * share + s < 0:
            raise CertificationError(f"aggregate shift inequality fails at {p}")
        lines.append(f"{p}: {n}*chi_Q + sum c_Q = {fmt_q(n * share + s)} >= 0")
    return lines


@dataclass
class _Ladder:
    floor: dict[int, int]
    non_pencil: dict[int, bool]


def _ladder(baskets: list[Basket], iX: int, fam: Family, mode: str, ks: Iterable[int],
            notes: list[str]) -> _Ladder:
    floor: dict[int, int] = {}
    nonp: dict[int, bool] = {}
    strat = fam.strategy
    for k in ks:
        lows, oks = [], []
        for b in baskets:
            res = _residues_for(b, strat)
            forms = [h0_margin(b, k, res, mode=mode)]
            if strat.kind == "shift_set" and k == strat.k:
                forms.append(_shift_set_form(b, strat, mode, notes))
            vals = [v for v in (f.minimum(iX) for f in forms) if v is not None]
            lows.append(max(vals))
            oks.append(non_pencil_certified(b, k, res, mode=mode, extra_forms=forms[1:])[0])
        floor[k] = max(0, math.ceil(min(lows)))
        nonp[k] = all(oks)
    return _Ladder(floor, nonp)


def _assignments_covered(fam: Family) -> list[str]:
    """Every truth assignment of the pencil propositions is covered by some branch."""
    ks = sorted({k for br in fam.branches for k in br.same_pencil + br.not_same})
    missing = []
    for p0 in (False, True):
        for same in itertools.product((False, True), repeat=len(ks)):
            if not p0 and any(same):
                continue  # "same pencil as |m0L0|" forces |m0L0| to be a pencil
            val = dict(zip(ks, same))
            if not any(_consistent(br, p0, val) for br in fam.branches):
                missing.append(f"m0 pencil={p0}, same={val}")
    return missing


def _consistent(br: Branch, p0: bool, same: dict[int, bool]) -> bool:
    if br.assumes_m0_pencil is not None and br.assumes_m0_pencil != p0:
        return False
    return all(same[k] for k in br.same_pencil) and not any(same[k] for k in br.not_same)


def _hypotheses(fam: Family, br: Branch) -> list[str]:
    out = []
    p0 = br.assumes_m0_pencil
    if p0 is not None:
        out.append(f"|{fam.m0}L0| {'is' if p0 else 'is not'} composed with a pencil")
    out += [f"|{k}L0| composed with the same pencil as |{fam.m0}L0|" for k in br.same_pencil]
    out += [f"|{k}L0| not composed with the same pencil as |{fam.m0}L0|" for k in br.not_same]
    return out


def _evaluate_branch(fam: Family, br: Branch, lad: _Ladder, iX: int, rho0: int, mode: str,
                     chis: tuple[int, ...], basket_desc: str, notes: list[str]) -> Optional[Scenario]:
    m0 = fam.m0
    p0 = br.assumes_m0_pencil
    if p0 and lad.non_pencil.get(m0):
        notes.append(f"{fam.label}: branch '{br.label}' is vacuous, |{m0}L0| is certified non-pencil")
        return None
    for k in br.same_pencil:
        if lad.non_pencil.get(k):
            notes.append(f"{fam.label}: branch '{br.label}' is vacuous, |{k}L0| is certified non-pencil")
            return None

    # mu0 from every multiple known to share the pencil of |m0L0|
    iota: dict[int, int] = {}
    if p0:
        pencil_ks = [m0, *br.same_pencil]
        cands = []
        for k in pencil_ks:
            iota[k] = lad.floor[k] - 1
            cands.append((mu0_upper(k, lad.floor[k], True), k))
        mu0, k_best = min(cands)
        mu0_how = f"mu0 <= {k_best}/iota_{k_best}, iota_{k_best} >= h0({k_best}L0) - 1 = {iota[k_best]}"
        for k in br.same_pencil:
            if k != m0:
                notes.append(f"{fam.label}: iota_{k} >= h0({k}L0) - 1 = {iota[k]} under '{br.label}'")
    else:
        iota[m0] = 1
        mu0, mu0_how = mu0_upper(m0, lad.floor[m0], False), f"mu0 <= m0/iota_{m0} <= {m0}"

    m0_free = p0 is False or lad.non_pencil.get(m0, False)
    if mode == "paper":
        cands_m1 = [br.m1]
    else:
        cands_m1 = sorted({br.m1, *(k for k in lad.floor if k >= m0)})
    rejected = []
    best: Optional[Scenario] = None
    for m1 in cands_m1:
        if m1 < m0:
            rejected.append(f"m1={m1}: below m0")
            continue
        if lad.floor.get(m1, 0) < 2:
            rejected.append(f"m1={m1}: h0 >= 2 not certified")
            continue
        if lad.non_pencil.get(m1):
            why = f"|{m1}L0| certified not composed with a pencil"
        elif m1 in br.not_same:
            why = f"hypothesis: |{m1}L0| not composed with the same pencil as |{m0}L0|"
        elif m1 == m0 and m0_free:
            why = f"m1 = m0 and |{m0}L0| not composed with a pencil"
        else:
            rejected.append(f"m1={m1}: no reason it avoids the pencil of |{m0}L0|")
            continue
        zeta = zeta_lower(iX, mu0, m1)
        final = birational_from(m0, m1, mu0, rho0, zeta)
        sc = Scenario(
            family=fam.label, branch=br.label, chis=chis, baskets=basket_desc,
            m0=m0, m1=m1, m1_reason=why, pencil_hypotheses=_hypotheses(fam, br),
            mu0_upper=mu0, mu0_derivation=mu0_how, iota_floor=dict(iota),
            h0_floor=dict(lad.floor), non_pencil=sorted(k for k, v in lad.non_pencil.items() if v),
            rho0=rho0, zeta_lb=zeta, epsilon_threshold=mu0 + m1 + 2 / zeta,
            combinatorial_threshold=m0 + m1 + rho0 - 1, final_m=final,
        )
        if best is None or final < best.final_m:
            if best is not None:
                rejected.append(f"m1={best.m1}: final m {best.final_m} beaten")
            best = sc
        else:
            rejected.append(f"m1={m1}: final m {final} not better")
    if best is None:
        raise CertificationError(f"{fam.label}: no admissible m1 under '{br.label}' ({'; '.join(rejected)})")
    best.rejected = rejected
    return best


def case_analysis(iX: int, mode: str = "paper") -> BoundCertificate:
    """Replay the decision tree for ``iX`` and return its certificate."""
    _check_index(iX)
    _check_mode(mode)
    case: CaseSpec = CASES[iX]
    rho0 = rho0_bound(iX)
    notes: list[str] = []
    scenarios: list[Scenario] = []
    all_chis: set[int] = set()
    for fam in case.families:
        notes.extend(f"{fam.label}: {n}" for n in fam.notes)
        missing = _assignments_covered(fam)
        if missing:
            raise CertificationError(f"{fam.label}: pencil branches miss {missing}")
        baskets = [b for chi in fam.chis for b in enumerate_baskets(chi, iX)]
        all_chis.update(fam.chis)
        strat = fam.strategy
        if strat.kind == "shift_set":
            _shift_set_ok(strat, iX)
            if set(strat.shifts) == set(range(iX)):
                for p in sorted({p for b in baskets for p in b}):
                    periodic_contribution_sum(p)
                notes.append(f"{fam.label}: shifts cover all of Z/{iX}; average equals lambda({strat.k}L) exactly")
            elif mode == "paper":
                notes.extend(f"{fam.label}: {line}" for line in _paper_shift_aggregate(iX, strat))
            else:
                notes.append(f"{fam.label}: shift average checked on each of {len(baskets)} baskets")
        ks = fam.multiples if mode == "paper" else range(1, max(fam.multiples) + 1)
        lad = _ladder(baskets, iX, fam, mode, ks, notes)
        if lad.floor[fam.m0] < 2:
            raise CertificationError(f"{fam.label}: h0({fam.m0}L0) >= 2 not certified")
        desc = format_basket(baskets[0]) if len(baskets) == 1 else f"worst over {len(baskets)} baskets"
        for br in fam.branches:
            sc = _evaluate_branch(fam, br, lad, iX, rho0, mode, fam.chis, desc, notes)
            if sc is not None:
                scenarios.append(sc)
    cert = BoundCertificate(
        iX=iX, mode=mode, chis=tuple(sorted(all_chis)), rho0=rho0, scenarios=scenarios,
        case_bound=max(s.final_m for s in scenarios), notes=notes,
    )
    verify_certificate(cert)
    return cert


def global_bound(mode: str = "paper") -> int:
    """Max of the Gorenstein constant and every per-index case bound."""
    return max(GORENSTEIN_BOUND, *(case_analysis(i, mode).case_bound for i in ADMISSIBLE_INDICES))


def case_table(mode: str = "paper") -> dict[int, int]:
    return {i: case_analysis(i, mode).case_bound for i in ADMISSIBLE_INDICES}
