"""Supercandidates, minimal jumping divisors and their certification.

The multiplier ideal at ``lam`` is represented by the closure ``d_lam`` of
``floor(lam F) - K``.  The next value at which it can change is

    min over primes P with e(P) >= 1 of (k(P) + 1 + d_lam(P)) / e(P),

and the labels attaining the minimum form the minimal jumping divisor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .effectivity import EFFECTIVE, NOT_EFFECTIVE, UNKNOWN, decide_effective
from .errors import InsufficientBaseWindow, NoPositiveMultiplicity, NotACandidate, UnknownEffectivity
from .model import (
    AFFINE,
    DIVISOR,
    Divisor,
    ResolutionData,
    adjacency,
    connected_components,
    format_rational,
    restrict,
    twist_divisor,
)
from .unloading import BATCH, DEFAULT_ITER_CAP, antieffective_closure, is_antieffective

CERTIFIED_JUMPING = "CertifiedJumping"
CERTIFIED_NOT_JUMPING = "CertifiedNotJumping"
UNDETERMINED = "Undetermined"

DEFAULT_R6_CAP = 20


@dataclass(frozen=True)
class CertificationStatus:
    verdict: str
    rule: Optional[str]
    witness: dict = field(default_factory=dict)

    __hash__ = None

    def to_json(self):
        return {"verdict": self.verdict, "rule": self.rule, "witness": self.witness}


@dataclass
class SupercandidateRecord:
    lam: Fraction
    d_lambda: Divisor
    g_lambda: frozenset
    status: Optional[CertificationStatus] = None

    def to_json(self, r: ResolutionData):
        return {
            "lambda": format_rational(self.lam),
            "closure": {lab: self.d_lambda[lab] for lab in r.labels},
            "minimal_jumping_divisor": [lab for lab in r.labels if lab in self.g_lambda],
            "status": self.status.to_json() if self.status is not None else None,
        }


# -- candidates ---------------------------------------------------------------------

def _positive(r: ResolutionData):
    prs = [p for p in r.primes if p.e >= 1]
    if not prs:
        raise NoPositiveMultiplicity("no prime divisor has positive multiplicity in F")
    return prs


def lct(r: ResolutionData) -> Fraction:
    return min(Fraction(p.k + 1, p.e) for p in _positive(r))


def candidates(r: ResolutionData, bound) -> List[Fraction]:
    bound = Fraction(bound)
    out = set()
    for p in r.primes:
        if p.e < 1:
            continue
        n = 1
        while Fraction(p.k + n, p.e) <= bound:
            out.add(Fraction(p.k + n, p.e))
            n += 1
    return sorted(out)


def is_candidate_for(r: ResolutionData, lam, G: Iterable[str]) -> bool:
    """True iff ``lam * e(P) - k(P)`` is a positive integer for every P in G."""
    lam = Fraction(lam)
    for lab in G:
        p = r.prime(lab)
        v = lam * p.e - p.k
        if v.denominator != 1 or v <= 0:
            return False
    return True


def contribution_class(r: ResolutionData, lam, G, E: str):
    """Class of ``(K - floor(lam F) + G)|_E`` for a reduced divisor G."""
    G = Divisor(G) if not isinstance(G, (set, frozenset, list, tuple)) else Divisor({g: 1 for g in G})
    support = G.support()
    if E not in support:
        raise NotACandidate(f"{E} is not a component of G")
    if not is_candidate_for(r, lam, support):
        raise NotACandidate(f"{format_rational(lam)} is not a candidate for {' + '.join(sorted(support))}")
    D = G - twist_divisor(r, lam)
    return restrict(r, D, E)


# -- supercandidate loop ---------------------------------------------------------------

def closure_at(r: ResolutionData, lam, mode=BATCH, iter_cap=DEFAULT_ITER_CAP) -> Divisor:
    try:
        return antieffective_closure(r, twist_divisor(r, lam), mode=mode, iter_cap=iter_cap)[0]
    except UnknownEffectivity as exc:
        raise exc.at(Fraction(lam))


def next_supercandidate(r: ResolutionData, lam, d_lam) -> Tuple[Fraction, frozenset]:
    vals = {p.label: Fraction(p.k + 1 + d_lam.get(p.label, 0), p.e) for p in _positive(r)}
    best = min(vals.values())
    return best, frozenset(lab for lab, v in vals.items() if v == best)


def supercandidates(
    r: ResolutionData,
    bound,
    mode: str = BATCH,
    iter_cap: int = DEFAULT_ITER_CAP,
    certify_records: bool = False,
    r6_cap: int = DEFAULT_R6_CAP,
) -> List[SupercandidateRecord]:
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    start = lct(r)
    g = frozenset(p.label for p in _positive(r) if Fraction(p.k + 1, p.e) == start)
    lam = start
    records: List[SupercandidateRecord] = []
    while lam <= bound:
        d = closure_at(r, lam, mode=mode, iter_cap=iter_cap)
        rec = SupercandidateRecord(lam, d, g)
        if certify_records:
            rec.status = certify(r, rec, records, r6_cap=r6_cap)
        records.append(rec)
        nxt, g = next_supercandidate(r, lam, d)
        if nxt <= lam:
            raise AssertionError(f"supercandidate sequence stalled at {lam}")
        lam = nxt
    return records


def certify_all(r: ResolutionData, records: Sequence[SupercandidateRecord], r6_cap=DEFAULT_R6_CAP):
    done: List[SupercandidateRecord] = []
    for rec in records:
        rec.status = certify(r, rec, done, r6_cap=r6_cap)
        done.append(rec)
    return records


# -- certification ----------------------------------------------------------------------

def _decision_json(d):
    return d.to_json()


def _jumping(rule, **witness):
    return CertificationStatus(CERTIFIED_JUMPING, rule, witness)


def certify(
    r: ResolutionData,
    rec: SupercandidateRecord,
    prior: Sequence[SupercandidateRecord],
    r6_cap: int = DEFAULT_R6_CAP,
) -> CertificationStatus:
    """Apply R1-R5, then R0 (lct), then the R6 refutation screen."""
    lam = rec.lam
    labels_g = [lab for lab in r.labels if lab in rec.g_lambda]
    exc_g = [lab for lab in labels_g if r.prime(lab).exceptional]

    # R1: multiples of 1/e(P) for an affine component
    for p in r.primes:
        if p.kind == AFFINE and p.e >= 1 and (lam * p.e).denominator == 1:
            return _jumping("R1", affine=p.label)

    # R2: periodicity (divisors) / Skoda (ideals)
    st = _periodicity(r, lam, prior)
    if st is not None:
        return st

    # R3: a connected component of G_lambda that is a single exceptional prime
    graph = adjacency(r)
    for comp in connected_components(graph, labels_g):
        if len(comp) == 1:
            (only,) = comp
            if r.prime(only).exceptional:
                return _jumping("R3", divisor=[only])

    # R4: a single E <= G_lambda whose contribution class is effective
    for E in exc_g:
        if not is_candidate_for(r, lam, [E]):
            continue
        cls = contribution_class(r, lam, [E], E)
        dec = decide_effective(r.geometry(E).oracle, cls)
        if dec.verdict == EFFECTIVE:
            return _jumping("R4", divisor=[E], classes={E: _decision_json(dec)})

    # R5: adjacent faithful pair with connected intersection and trivial classes
    flagged = {frozenset(p) for p in r.intersection_connected}
    for i, a in enumerate(exc_g):
        for b in exc_g[i + 1:]:
            if b not in graph[a] or frozenset((a, b)) not in flagged:
                continue
            if not (r.geometry(a).faithful_for_triviality and r.geometry(b).faithful_for_triviality):
                continue
            if not is_candidate_for(r, lam, [a, b]):
                continue
            ca = contribution_class(r, lam, [a, b], a)
            cb = contribution_class(r, lam, [a, b], b)
            if not any(ca) and not any(cb):
                return _jumping("R5", divisor=[a, b], classes={a: list(ca), b: list(cb)})

    # R0: the log canonical threshold always jumps
    if lam == lct(r):
        return _jumping("R0", lct=format_rational(lam))

    return _refutation_screen(r, lam, labels_g, exc_g, graph, r6_cap)


def _periodicity(r, lam, prior):
    m = r.skoda_threshold
    if lam <= m or lam - 1 <= 0:
        return None
    prev = lam - 1
    known = {rec.lam: rec for rec in prior}
    rule_name = "R2"
    if prev in known:
        st = known[prev].status
        if st is not None and st.verdict in (CERTIFIED_JUMPING, CERTIFIED_NOT_JUMPING):
            return CertificationStatus(st.verdict, rule_name, {"shifted_from": format_rational(prev)})
        return None
    # prior records run consecutively from the lct, so values inside that
    # window that are not supercandidates cannot be jumping numbers
    if prior and (prev < prior[0].lam or prev < max(rec.lam for rec in prior)):
        return CertificationStatus(
            CERTIFIED_NOT_JUMPING, rule_name, {"shifted_from": format_rational(prev), "not_a_supercandidate": True}
        )
    return None


def connected_subsets(graph, nodes: Sequence[str]) -> List[Tuple[str, ...]]:
    """All nonempty subsets of ``nodes`` inducing a connected subgraph."""
    nodes = list(nodes)
    out = []
    for mask in range(1, 1 << len(nodes)):
        sub = [nodes[i] for i in range(len(nodes)) if mask >> i & 1]
        if len(connected_components(graph, sub)) == 1:
            out.append(tuple(sub))
    return out


def _refutation_screen(r, lam, labels_g, exc_g, graph, r6_cap):
    if len(exc_g) > r6_cap:
        return CertificationStatus(
            UNDETERMINED, None, {"reason": f"G_lambda has {len(exc_g)} components, above the cap {r6_cap}"}
        )
    orbits = [lab for lab in exc_g if r.prime(lab).count > 1]
    if orbits:
        return CertificationStatus(
            UNDETERMINED,
            None,
            {"reason": "G_lambda contains an orbit entry; sub-divisors of an orbit are not enumerated",
             "unresolved": [[lab] for lab in orbits]},
        )
    table = []
    unresolved = []
    for G in connected_subsets(graph, exc_g):
        if not is_candidate_for(r, lam, G):
            table.append({"divisor": list(G), "not_a_candidate": True})
            continue
        refuted = None
        undecided = False
        for E in G:
            dec = decide_effective(r.geometry(E).oracle, contribution_class(r, lam, G, E))
            if dec.verdict == NOT_EFFECTIVE:
                refuted = (E, dec)
                break
            if dec.verdict == UNKNOWN:
                undecided = True
        if refuted is not None:
            E, dec = refuted
            table.append(
                {"divisor": list(G), "component": E, "class": list(dec.target),
                 "covector": list(dec.covector), "value": dec.value}
            )
        else:
            unresolved.append({"divisor": list(G), "unknown": undecided})
    if not exc_g:
        return CertificationStatus(UNDETERMINED, None, {"reason": "G_lambda has no exceptional component", "unresolved": []})
    if unresolved:
        return CertificationStatus(UNDETERMINED, None, {"unresolved": unresolved, "refuted": table})
    return CertificationStatus(CERTIFIED_NOT_JUMPING, "R6", {"refutations": table})


def verify_status(r: ResolutionData, rec: SupercandidateRecord) -> bool:
    """Re-evaluate the classes behind an R4/R5/R6 verdict."""
    st = rec.status
    if st is None:
        return False
    if st.rule == "R4":
        (E,) = st.witness["divisor"]
        dec = decide_effective(r.geometry(E).oracle, contribution_class(r, rec.lam, [E], E))
        return dec.verdict == EFFECTIVE and dec.to_json() == st.witness["classes"][E]
    if st.rule == "R5":
        a, b = st.witness["divisor"]
        return not any(contribution_class(r, rec.lam, [a, b], a)) and not any(
            contribution_class(r, rec.lam, [a, b], b)
        )
    if st.rule == "R6":
        graph = adjacency(r)
        exc_g = [lab for lab in r.labels if lab in rec.g_lambda and r.prime(lab).exceptional]
        expected = set(connected_subsets(graph, exc_g))
        seen = set()
        for row in st.witness["refutations"]:
            G = tuple(row["divisor"])
            seen.add(G)
            if row.get("not_a_candidate"):
                if is_candidate_for(r, rec.lam, G):
                    return False
                continue
            dec = decide_effective(r.geometry(row["component"]).oracle, contribution_class(r, rec.lam, G, row["component"]))
            if dec.verdict != NOT_EFFECTIVE:
                return False
        return seen == expected
    return True


# -- cross-check and periodicity -----------------------------------------------------------

def brute_scan(r: ResolutionData, bound, mode=BATCH, iter_cap=DEFAULT_ITER_CAP) -> List[Fraction]:
    """Candidates at which the closure of the twist changes."""
    prev = closure_at(r, 0, mode=mode, iter_cap=iter_cap)
    out = []
    for c in candidates(r, bound):
        cur = closure_at(r, c, mode=mode, iter_cap=iter_cap)
        if cur != prev:
            out.append(c)
        prev = cur
    return out


def extend_by_periodicity(r: ResolutionData, certified, bound, window=None) -> List[Fraction]:
    """Extend jumping numbers known on (0, window] by period 1.

    ``certified`` holds records (only CertifiedJumping or uncertified ones
    are used) or plain rationals.  ``window`` defaults to the largest value
    given.  Divisors extend from (0, 1]; ideals from (m-1, m] with
    m = min(dim, number of generators).
    """
    bound = Fraction(bound)
    base = []
    for item in certified:
        if isinstance(item, SupercandidateRecord):
            if item.status is not None and item.status.verdict != CERTIFIED_JUMPING:
                continue
            base.append(Fraction(item.lam))
        else:
            base.append(Fraction(item))
    base = sorted(set(base))
    m = r.skoda_threshold
    if window is None:
        window = base[-1] if base else Fraction(0)
    window = Fraction(window)
    if window < m:
        raise InsufficientBaseWindow(
            f"periodicity needs jumping numbers on (0, {m}], only (0, {format_rational(window)}] is covered"
        )
    out = {mu for mu in base if mu <= bound}
    period = [mu for mu in base if m - 1 < mu <= m]
    for mu in period:
        j = 1
        while mu + j <= bound:
            out.add(mu + j)
            j += 1
    return sorted(out)


def default_bound(r: ResolutionData) -> Fraction:
    return Fraction(1) if r.input_kind == DIVISOR else Fraction(r.skoda_threshold)


def ceil_bound(bound) -> Fraction:
    return Fraction(math.ceil(Fraction(bound)))


__all__ = [
    "CERTIFIED_JUMPING",
    "CERTIFIED_NOT_JUMPING",
    "UNDETERMINED",
    "CertificationStatus",
    "SupercandidateRecord",
    "lct",
    "candidates",
    "is_candidate_for",
    "contribution_class",
    "closure_at",
    "next_supercandidate",
    "supercandidates",
    "certify",
    "certify_all",
    "verify_status",
    "connected_subsets",
    "brute_scan",
    "extend_by_periodicity",
    "default_bound",
    "is_antieffective",
]
