"""pi-antieffective closure by unloading.

A divisor ``D`` is pi-antieffective when ``-D|_E`` is an effective class on
every exceptional prime ``E``.  If ``-D|_E`` is refuted, every
pi-antieffective divisor above ``D`` is also above ``D + E``, so ``E`` can be
added.  Repeating this reaches the unique minimal pi-antieffective divisor
above ``D``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .effectivity import EFFECTIVE, NOT_EFFECTIVE, UNKNOWN, Decision, decide_effective
from .errors import IterationCapExceeded, UnknownEffectivity
from .model import Divisor, ResolutionData, restrict

BATCH = "batch"
SEQUENTIAL = "sequential"
DEFAULT_ITER_CAP = 10**6


@dataclass
class UnloadTrace:
    steps: List[Tuple[int, FrozenSet[str]]] = field(default_factory=list)
    final: Optional[Divisor] = None

    def added(self) -> Divisor:
        """Total amount added, as a divisor."""
        out = Divisor()
        for _, labels in self.steps:
            out = out + Divisor({lab: 1 for lab in labels})
        return out


def _decide(r: ResolutionData, D: Divisor, E: str, memo=None) -> Decision:
    geom = r.geometry(E)
    cls = tuple(-x for x in restrict(r, D, E))
    if memo is None:
        return decide_effective(geom.oracle, cls)
    key = (E, cls)
    if key not in memo:
        memo[key] = decide_effective(geom.oracle, cls)
    return memo[key]


def is_antieffective(r: ResolutionData, D) -> Tuple[str, Dict[str, Decision]]:
    """Three-valued verdict together with the decision on every exceptional prime."""
    D = Divisor(D)
    decisions = {E: _decide(r, D, E) for E in r.exceptional_labels}
    verdicts = {d.verdict for d in decisions.values()}
    if NOT_EFFECTIVE in verdicts:
        return NOT_EFFECTIVE, decisions
    if UNKNOWN in verdicts:
        return UNKNOWN, decisions
    return EFFECTIVE, decisions


def antieffective_closure(
    r: ResolutionData,
    D,
    mode: str = BATCH,
    order: Optional[Sequence[str]] = None,
    iter_cap: int = DEFAULT_ITER_CAP,
) -> Tuple[Divisor, UnloadTrace]:
    """Minimal pi-antieffective divisor above ``D``.

    ``mode="batch"`` adds every refuted prime in a sweep; ``"sequential"``
    adds only the first refuted prime in ``order`` (default: label order).
    Affine coefficients are never touched.  An orbit entry is raised by one
    for all of its members at once.
    """
    if mode not in (BATCH, SEQUENTIAL):
        raise ValueError(f"unknown unloading mode {mode!r}")
    if iter_cap < 1:
        raise ValueError("iteration cap must be at least 1")
    labels = list(order) if order is not None else r.exceptional_labels
    if sorted(labels) != sorted(r.exceptional_labels):
        raise ValueError("order must be a permutation of the exceptional labels")

    current = Divisor(D)
    for lab in current:
        r.prime(lab)
    trace = UnloadTrace()
    memo: Dict[tuple, Decision] = {}
    sweep = 0
    while True:
        refuted = []
        unknown = {}
        for E in labels:
            dec = _decide(r, current, E, memo)
            if dec.verdict == NOT_EFFECTIVE:
                refuted.append(E)
                if mode == SEQUENTIAL:
                    break
            elif dec.verdict == UNKNOWN:
                unknown[E] = dec.target
        if not refuted:
            if unknown:
                raise UnknownEffectivity(unknown, divisor=current)
            trace.final = current
            return current, trace
        if sweep >= iter_cap:
            raise IterationCapExceeded(
                f"unloading did not stabilise within {iter_cap} sweeps; the oracle data is probably inconsistent"
            )
        current = current + Divisor({E: 1 for E in refuted})
        trace.steps.append((sweep, frozenset(refuted)))
        sweep += 1


def closure(r: ResolutionData, D, **kw) -> Divisor:
    return antieffective_closure(r, D, **kw)[0]
