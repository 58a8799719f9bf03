"""Exact linear programming over rationals for small dense models.

Two engines, both exact:

* :func:`simplex_maximize` optimizes ``c . x`` subject to ``A x <= b`` and
  ``x >= 0`` by primal simplex with Bland's rule. Every right-hand side must
  be nonnegative so the origin is a basic feasible point; the callers in
  this package arrange their models that way and treat a negative right-hand
  side as model infeasibility before pivoting starts.

* :func:`fm_feasible` decides feasibility of ``A x <= b`` (free variables)
  by Fourier-Motzkin elimination, tracking which original constraints were
  combined into each derived row. On infeasibility that provenance is an
  audit trail: a nonnegative combination of exactly those constraints is
  contradictory. On feasibility a point is rebuilt by back-substitution.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .domains import CapExceededError

FM_ROW_CAP = 200_000


class UnboundedModelError(RuntimeError):
    """The linear program has unbounded objective value."""


def simplex_maximize(
    objective: Sequence[Fraction], rows: Sequence[Tuple[Sequence[Fraction], Fraction]]
) -> Tuple[Fraction, List[Fraction]]:
    """Maximize ``objective . x`` s.t. ``coeffs . x <= rhs`` per row and ``x >= 0``."""
    num_vars = len(objective)
    for coeffs, rhs in rows:
        if rhs < 0:
            raise ValueError("simplex_maximize needs nonnegative right-hand sides")
        if len(coeffs) != num_vars:
            raise ValueError("row width does not match objective")
    num_rows = len(rows)
    width = num_vars + num_rows + 1
    # tableau rows: [A | I | b]; objective row keeps reduced costs.
    tableau = []
    for r, (coeffs, rhs) in enumerate(rows):
        row = [Fraction(c) for c in coeffs]
        row.extend(Fraction(1) if s == r else Fraction(0) for s in range(num_rows))
        row.append(Fraction(rhs))
        tableau.append(row)
    cost = [-Fraction(c) for c in objective]
    cost.extend(Fraction(0) for _ in range(num_rows + 1))
    basis = [num_vars + r for r in range(num_rows)]

    while True:
        entering = next((j for j in range(width - 1) if cost[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best: Optional[Fraction] = None
        for r in range(num_rows):
            a = tableau[r][entering]
            if a > 0:
                ratio = tableau[r][-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[r] < basis[leaving]
                ):
                    best = ratio
                    leaving = r
        if leaving is None:
            raise UnboundedModelError("objective is unbounded above")
        pivot = tableau[leaving][entering]
        tableau[leaving] = [v / pivot for v in tableau[leaving]]
        for r in range(num_rows):
            if r != leaving and tableau[r][entering] != 0:
                factor = tableau[r][entering]
                tableau[r] = [
                    v - factor * p for v, p in zip(tableau[r], tableau[leaving])
                ]
        if cost[entering] != 0:
            factor = cost[entering]
            cost = [v - factor * p for v, p in zip(cost, tableau[leaving])]
        basis[leaving] = entering

    solution = [Fraction(0)] * num_vars
    for r, b in enumerate(basis):
        if b < num_vars:
            solution[b] = tableau[r][-1]
    value = sum(c * x for c, x in zip(objective, solution))
    return value, solution


def _normalize(coeffs: Tuple[Fraction, ...], rhs: Fraction):
    for c in coeffs:
        if c != 0:
            scale = abs(c)
            return tuple(v / scale for v in coeffs), rhs / scale
    return coeffs, rhs


def _dedupe(rows):
    best: dict = {}
    for coeffs, rhs, tags in rows:
        coeffs, rhs = _normalize(coeffs, rhs)
        kept = best.get(coeffs)
        if kept is None or rhs < kept[0]:
            best[coeffs] = (rhs, tags)
    return [(coeffs, rhs, tags) for coeffs, (rhs, tags) in best.items()]


def fm_feasible(
    rows: Sequence[Tuple[Sequence[Fraction], Fraction, frozenset]], num_vars: int
):
    """Fourier-Motzkin feasibility for ``coeffs . x <= rhs`` rows with free variables.

    Each row carries a frozenset of caller-chosen tags. Returns
    ``(True, point, None)`` or ``(False, None, conflict_tags)``.
    """
    current = _dedupe(
        [(tuple(Fraction(c) for c in coeffs), Fraction(rhs), tags) for coeffs, rhs, tags in rows]
    )
    levels = []
    for var in range(num_vars - 1, -1, -1):
        pos, neg, rest = [], [], []
        for coeffs, rhs, tags in current:
            a = coeffs[var]
            if a > 0:
                pos.append((coeffs, rhs, tags))
            elif a < 0:
                neg.append((coeffs, rhs, tags))
            else:
                rest.append((coeffs, rhs, tags))
        levels.append((var, pos, neg))
        combined = list(rest)
        for pc, pr, pt in pos:
            a = pc[var]
            for nc, nr, nt in neg:
                b = -nc[var]
                coeffs = tuple(b * p + a * q for p, q in zip(pc, nc))
                combined.append((coeffs, b * pr + a * nr, pt | nt))
                if len(combined) > FM_ROW_CAP:
                    raise CapExceededError("Fourier-Motzkin row blow-up")
        current = _dedupe(combined)

    for coeffs, rhs, tags in current:
        if rhs < 0:
            return False, None, tags

    point = [Fraction(0)] * num_vars
    for var, pos, neg in reversed(levels):
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for coeffs, rhs, _ in pos:
            bound = (rhs - sum(coeffs[j] * point[j] for j in range(num_vars) if j != var)) / coeffs[var]
            if hi is None or bound < hi:
                hi = bound
        for coeffs, rhs, _ in neg:
            bound = (rhs - sum(coeffs[j] * point[j] for j in range(num_vars) if j != var)) / coeffs[var]
            if lo is None or bound > lo:
                lo = bound
        if lo is None and hi is None:
            value = Fraction(0)
        elif lo is None:
            value = min(hi, Fraction(0))
        elif hi is None:
            value = max(lo, Fraction(0))
        elif lo <= 0 <= hi:
            value = Fraction(0)
        else:
            value = (lo + hi) / 2
        point[var] = value
    return True, point, None
