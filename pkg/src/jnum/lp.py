"""Exact feasibility of homogeneous linear systems over the rationals.

A system is a list of ``(covector, relation)`` pairs over ``m`` unknowns
with ``relation`` one of ``">="``, ``">"`` or ``"="`` (meaning
``covector . x  rel  0``).  Strict rows are handled without any epsilon:
a homogeneous system is scale invariant, so ``c.x > 0`` may be replaced by
``c.x >= 1``.  The resulting non-strict system is decided by Fourier-Motzkin
elimination for small ``m`` and by a two-phase exact simplex (Bland's rule)
otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

GE, GT, EQ = ">=", ">", "="
RELATIONS = (GE, GT, EQ)

FM_MAX_UNKNOWNS = 8


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.feasible


def check_witness(system, x) -> bool:
    """True iff ``x`` satisfies every row of ``system`` exactly."""
    for cov, rel in system:
        v = sum(Fraction(a) * b for a, b in zip(cov, x))
        if rel == GE and v < 0:
            return False
        if rel == GT and v <= 0:
            return False
        if rel == EQ and v != 0:
            return False
    return True


def lp_feasible(system: Sequence, m: int, method: Optional[str] = None) -> LPResult:
    """Decide whether a homogeneous system has a rational solution.

    ``method`` forces ``"fm"`` or ``"simplex"``; by default Fourier-Motzkin is
    used for at most ``FM_MAX_UNKNOWNS`` unknowns.  The returned witness is
    re-checked before returning.
    """
    rows_ge = []  # (coeffs, rhs) meaning coeffs.x >= rhs
    rows_eq = []
    for cov, rel in system:
        if len(cov) != m:
            raise ValueError(f"covector {list(cov)} has length {len(cov)}, expected {m}")
        if rel not in RELATIONS:
            raise ValueError(f"unknown relation {rel!r}")
        c = [Fraction(a) for a in cov]
        if rel == EQ:
            rows_eq.append(c)
        else:
            rows_ge.append((c, Fraction(1 if rel == GT else 0)))

    if method is None:
        method = "fm" if m <= FM_MAX_UNKNOWNS else "simplex"
    if method == "fm":
        x = _fourier_motzkin(rows_ge, rows_eq, m)
    elif method == "simplex":
        x = _simplex_phase1(rows_ge, rows_eq, m)
    else:
        raise ValueError(f"unknown method {method!r}")

    if x is None:
        return LPResult(False)
    x = tuple(x)
    if not check_witness(system, x):
        raise AssertionError("LP witness failed exact re-check")
    return LPResult(True, x)


# -- Fourier-Motzkin ---------------------------------------------------------

def _normalize(coeffs, rhs):
    for a in coeffs:
        if a != 0:
            s = abs(a)
            return tuple(b / s for b in coeffs), rhs / s
    return tuple(coeffs), rhs


def _fourier_motzkin(rows_ge, rows_eq, m):
    # substitutions x_j = sum(coef_i * x_i), applied in reverse at the end
    subs = []
    rows = [(list(c), r) for c, r in rows_ge]
    eqs = [list(c) for c in rows_eq]
    while eqs:
        eq = eqs.pop(0)
        j = next((i for i, a in enumerate(eq) if a != 0), None)
        if j is None:
            continue
        expr = [-a / eq[j] if i != j else Fraction(0) for i, a in enumerate(eq)]
        subs.append((j, expr))
        eqs = [_substitute(e, j, expr) for e in eqs]
        rows = [(_substitute(c, j, expr), r) for c, r in rows]

    eliminated = {j for j, _ in subs}
    order = [j for j in range(m) if j not in eliminated]

    stages = []
    current = {_normalize(c, r) for c, r in rows}
    for j in order:
        current = {(c, r) for c, r in current if any(c) or r > 0}
        if any(not any(c) and r > 0 for c, r in current):
            return None
        stages.append((j, sorted(current)))
        lower = [(c, r) for c, r in current if c[j] > 0]
        upper = [(c, r) for c, r in current if c[j] < 0]
        nxt = {(c, r) for c, r in current if c[j] == 0}
        for cl, rl in lower:
            for cu, ru in upper:
                wl, wu = -cu[j], cl[j]
                c = tuple(wl * a + wu * b for a, b in zip(cl, cu))
                nxt.add(_normalize(c, wl * rl + wu * ru))
        current = nxt
    if any(not any(c) and r > 0 for c, r in current):
        return None

    x = [Fraction(0)] * m
    for j, cons in reversed(stages):
        lo = hi = None
        for c, r in cons:
            if c[j] == 0:
                continue
            rest = sum(c[i] * x[i] for i in range(m) if i != j)
            bound = (r - rest) / c[j]
            if c[j] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None and lo > hi:
            raise AssertionError("Fourier-Motzkin back-substitution found empty interval")
        if (lo is None or lo <= 0) and (hi is None or hi >= 0):
            x[j] = Fraction(0)
        elif lo is not None and lo > 0:
            x[j] = lo
        else:
            x[j] = hi
    for j, expr in reversed(subs):
        x[j] = sum(a * b for a, b in zip(expr, x))
    return x


def _substitute(coeffs, j, expr):
    a = coeffs[j]
    if a == 0:
        return list(coeffs)
    out = [c + a * e for c, e in zip(coeffs, expr)]
    out[j] = Fraction(0)
    return out


# -- exact simplex, phase 1 only ----------------------------------------------

def _simplex_phase1(rows_ge, rows_eq, m):
    # x = xp - xn, xp, xn >= 0; one surplus per >= row; one artificial per row.
    rows = [(c, r, True) for c, r in rows_ge] + [(c, Fraction(0), False) for c in rows_eq]
    n_rows = len(rows)
    if n_rows == 0:
        return [Fraction(0)] * m
    n_sur = len(rows_ge)
    n_struct = 2 * m + n_sur
    n_cols = n_struct + n_rows
    tab = []
    for i, (c, r, is_ge) in enumerate(rows):
        row = [Fraction(0)] * (n_cols + 1)
        for j, a in enumerate(c):
            row[j] = a
            row[m + j] = -a
        if is_ge:
            row[2 * m + i] = Fraction(-1)
        if r < 0:
            row = [-v for v in row]
            r = -r
        row[n_struct + i] = Fraction(1)
        row[-1] = r
        tab.append(row)
    basis = [n_struct + i for i in range(n_rows)]
    # reduced costs of  min sum(artificials), expressed as the objective row
    obj = [Fraction(0)] * (n_cols + 1)
    for row in tab:
        for j in range(n_cols + 1):
            obj[j] -= row[j]
    for j in range(n_struct, n_cols):
        obj[j] = Fraction(0)

    while True:
        entering = next((j for j in range(n_cols) if obj[j] < 0), None)
        if entering is None:
            break
        best = None
        for i, row in enumerate(tab):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # cannot happen: phase-1 objective is bounded below
            raise AssertionError("phase-1 simplex unbounded")
        _pivot(tab, obj, basis, best[1], entering)

    if -obj[-1] != 0:
        return None
    val = [Fraction(0)] * n_cols
    for i, b in enumerate(basis):
        val[b] = tab[i][-1]
    return [val[j] - val[m + j] for j in range(m)]


def _pivot(tab, obj, basis, i, j):
    prow = tab[i]
    p = prow[j]
    prow[:] = [v / p for v in prow]
    for k, row in enumerate(tab):
        if k != i and row[j] != 0:
            f = row[j]
            row[:] = [a - f * b for a, b in zip(row, prow)]
    if obj[j] != 0:
        f = obj[j]
        obj[:] = [a - f * b for a, b in zip(obj, prow)]
    basis[i] = j


def nonnegative_solution(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[tuple]:
    """Some ``x >= 0`` with ``A x = b``, or ``None``.

    Phase 1 of the simplex method on the standard form, Bland's rule,
    exact arithmetic.  Used for cone membership, where this is far smaller
    than the homogenised system handled by :func:`lp_feasible`.
    """
    n_rows = len(A)
    n_vars = len(A[0]) if n_rows else 0
    tab = []
    for i in range(n_rows):
        row = [Fraction(a) for a in A[i]] + [Fraction(int(i == j)) for j in range(n_rows)] + [Fraction(b[i])]
        if row[-1] < 0:
            row = [-v for v in row]
            row[n_vars + i] = Fraction(1)
        tab.append(row)
    n_cols = n_vars + n_rows
    basis = [n_vars + i for i in range(n_rows)]
    obj = [Fraction(0)] * (n_cols + 1)
    for row in tab:
        for j in range(n_vars):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    while True:
        entering = next((j for j in range(n_cols) if obj[j] < 0), None)
        if entering is None:
            break
        best = None
        for i, row in enumerate(tab):
            if row[entering] > 0:
                key = (row[-1] / row[entering], basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise AssertionError("phase-1 simplex unbounded")
        _pivot(tab, obj, basis, best[1], entering)
    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * n_cols
    for i, bj in enumerate(basis):
        x[bj] = tab[i][-1]
    return tuple(x[:n_vars])
