"""Three-valued effectivity decisions for Picard classes.

An :class:`EffectivityOracle` carries what is known about the effective
classes on one exceptional divisor: a list of effective generators, a list
of necessary covectors (half-spaces containing every effective class) and a
list of sufficient inequality systems.  :func:`decide_effective` answers
``EFFECTIVE``, ``NOT_EFFECTIVE`` or ``UNKNOWN`` and attaches a certificate
that is re-verified exactly before it is returned.
"""
from __future__ import annotations

import contextlib
import contextvars
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import CertificateError, DimensionMismatch
from .lp import EQ, GE, GT, lp_feasible, nonnegative_solution

PicClass = Tuple[int, ...]

EFFECTIVE = "Effective"
NOT_EFFECTIVE = "NotEffective"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Inequality:
    covector: Tuple[int, ...]
    strict: bool = False

    def holds(self, c) -> bool:
        v = dot(self.covector, c)
        return v > 0 if self.strict else v >= 0


@dataclass(frozen=True)
class EffectivityOracle:
    generators: Tuple[PicClass, ...] = ()
    necessary: Tuple[Tuple[int, ...], ...] = ()
    sufficient_systems: Tuple[Tuple[Inequality, ...], ...] = ()

    @classmethod
    def build(cls, generators=(), necessary=(), sufficient_systems=()):
        return cls(
            tuple(tuple(int(a) for a in g) for g in generators),
            tuple(tuple(int(a) for a in n) for n in necessary),
            tuple(
                tuple(q if isinstance(q, Inequality) else Inequality(tuple(q[0]), bool(q[1])) for q in system)
                for system in sufficient_systems
            ),
        )

    def dims(self):
        return {len(v) for v in self.generators} | {len(v) for v in self.necessary} | {
            len(q.covector) for s in self.sufficient_systems for q in s
        }

    def inconsistencies(self):
        """Pairs ``(generator, covector)`` with ``covector . generator < 0``."""
        return [(g, phi) for g in self.generators for phi in self.necessary if dot(phi, g) < 0]

    def to_json(self):
        return {
            "generators": [list(g) for g in self.generators],
            "necessary": [list(n) for n in self.necessary],
            "sufficient_systems": [
                [{"covector": list(q.covector), "strict": q.strict} for q in s] for s in self.sufficient_systems
            ],
        }


@dataclass(frozen=True)
class Decision:
    """Verdict plus certificate.

    ``coefficients`` (cone membership) or ``system`` (index of a satisfied
    sufficient system) certify ``EFFECTIVE``; ``covector``/``value`` certify
    ``NOT_EFFECTIVE``.
    """

    verdict: str
    target: PicClass
    coefficients: Optional[Tuple[Fraction, ...]] = None
    system: Optional[int] = None
    covector: Optional[Tuple[int, ...]] = None
    value: Optional[int] = None

    def verify(self, oracle: EffectivityOracle) -> bool:
        c = self.target
        if self.verdict == EFFECTIVE:
            if self.coefficients is not None:
                if len(self.coefficients) != len(oracle.generators):
                    return False
                if any(a < 0 for a in self.coefficients):
                    return False
                total = [Fraction(0)] * len(c)
                for a, g in zip(self.coefficients, oracle.generators):
                    for i, gi in enumerate(g):
                        total[i] += a * gi
                return tuple(total) == tuple(Fraction(x) for x in c)
            if self.system is not None:
                return all(q.holds(c) for q in oracle.sufficient_systems[self.system])
            return False
        if self.verdict == NOT_EFFECTIVE:
            return (
                self.covector in oracle.necessary
                and dot(self.covector, c) == self.value
                and self.value < 0
            )
        return self.verdict == UNKNOWN

    def to_json(self):
        out = {"verdict": self.verdict, "class": list(self.target)}
        if self.coefficients is not None:
            out["coefficients"] = [str(a) for a in self.coefficients]
        if self.system is not None:
            out["sufficient_system"] = self.system
        if self.covector is not None:
            out["covector"] = list(self.covector)
            out["value"] = self.value
        return out


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


# -- decision recording, used by audits ---------------------------------------

_recorder: contextvars.ContextVar = contextvars.ContextVar("jnum_decision_recorder", default=None)


@contextlib.contextmanager
def recording():
    """Collect every ``(oracle, decision)`` made inside the block."""
    log = []
    token = _recorder.set(log)
    try:
        yield log
    finally:
        _recorder.reset(token)


# -- core operations ------------------------------------------------------------

def cone_member(target: Sequence[int], gens: Sequence[Sequence[int]]) -> Optional[Tuple[Fraction, ...]]:
    """Nonnegative rational coefficients expressing ``target`` over ``gens``.

    Returns ``None`` when ``target`` is outside the cone.
    """
    target = tuple(target)
    n = len(target)
    for g in gens:
        if len(g) != n:
            raise DimensionMismatch(f"generator {list(g)} has length {len(g)}, target has {n}")
    k = len(gens)
    if not any(target):
        return tuple(Fraction(0) for _ in gens)
    if k == 0:
        return None

    unique = _unique_solution(target, gens)
    if unique is not None:
        sol, = unique
        if sol is None or any(a < 0 for a in sol):
            return None
        return sol

    sol = nonnegative_solution([[g[row] for g in gens] for row in range(n)], target)
    return sol


def _unique_solution(target, gens):
    """Solve ``sum l_i g_i = target`` when the generators are independent.

    Returns ``None`` if the generators are dependent (caller falls back to
    LP), ``(None,)`` if independent but the system has no solution, and
    ``(solution,)`` otherwise.
    """
    n, k = len(target), len(gens)
    if k > n:
        return None
    # augmented matrix n x (k+1)
    a = [[Fraction(g[row]) for g in gens] + [Fraction(target[row])] for row in range(n)]
    pivots = []
    r = 0
    for col in range(k):
        p = next((i for i in range(r, n) if a[i][col] != 0), None)
        if p is None:
            return None
        a[r], a[p] = a[p], a[r]
        pv = a[r][col]
        a[r] = [x / pv for x in a[r]]
        for i in range(n):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    if any(a[i][k] != 0 for i in range(r, n)):
        return (None,)
    return (tuple(a[i][k] for i in range(k)),)


def decide_effective(o: EffectivityOracle, c: Sequence[int]) -> Decision:
    """Necessary covectors first, then the generator cone, then sufficient systems."""
    c = tuple(int(x) for x in c)
    dims = o.dims()
    if dims and dims != {len(c)}:
        raise DimensionMismatch(f"class of length {len(c)} against oracle of dimension {sorted(dims)}")

    decision = None
    for phi in o.necessary:
        v = dot(phi, c)
        if v < 0:
            decision = Decision(NOT_EFFECTIVE, c, covector=phi, value=v)
            break
    if decision is None:
        coeffs = cone_member(c, o.generators)
        if coeffs is not None:
            decision = Decision(EFFECTIVE, c, coefficients=coeffs)
    if decision is None:
        for idx, system in enumerate(o.sufficient_systems):
            if all(q.holds(c) for q in system):
                decision = Decision(EFFECTIVE, c, system=idx)
                break
    if decision is None:
        decision = Decision(UNKNOWN, c)

    if not decision.verify(o):
        raise CertificateError(f"certificate for {list(c)} failed re-verification")
    log = _recorder.get()
    if log is not None:
        log.append((o, decision))
    return decision


def cone_facets(gens: Sequence[Sequence[int]]):
    """Primitive integer covectors of the facets of a full-dimensional cone.

    Brute force over (rank-1)-subsets of generators; meant for building
    oracle data offline, not for hot paths.
    """
    gens = [tuple(g) for g in gens]
    if not gens:
        return []
    n = len(gens[0])
    facets = set()
    for subset in itertools.combinations(gens, n - 1):
        phi = _nullvector(subset, n)
        if phi is None:
            continue
        vals = [dot(phi, g) for g in gens]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            phi = tuple(-a for a in phi)
        else:
            continue
        facets.add(phi)
    return sorted(facets)


def _nullvector(rows, n):
    """Primitive integer generator of the kernel when it is one-dimensional."""
    from math import gcd

    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][col]
        a[r] = [x / pv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    v = [Fraction(0)] * n
    v[f] = Fraction(1)
    for i, col in enumerate(pivots):
        v[col] = -a[i][f]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


__all__ = [
    "PicClass",
    "EFFECTIVE",
    "NOT_EFFECTIVE",
    "UNKNOWN",
    "Inequality",
    "EffectivityOracle",
    "Decision",
    "cone_member",
    "decide_effective",
    "cone_facets",
    "recording",
    "lp_feasible",
    "GE",
    "GT",
    "EQ",
]
