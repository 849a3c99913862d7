"""Exact rational linear programming: dense two-phase tableau simplex, Bland's rule.

Solves   minimize c.x   subject to   A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0
with every quantity a Fraction, so the reported optimum is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ResourceError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None
    value: Fraction | None
    pivots: int


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r, j):
        row = self.rows[r]
        p = row[j]
        if p != 1:
            self.rows[r] = row = [a / p for a in row]
            self.rhs[r] /= p
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[j]
                if f:
                    self.rows[i] = [a - f * b for a, b in zip(other, row)]
                    self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = j
        self.pivots += 1

    def reduced_costs(self, cost):
        red = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                red = [a - cb * x for a, x in zip(red, row)]
        return red

    def run(self, cost, allowed, max_pivots):
        """Bland's-rule primal simplex; returns False if unbounded."""
        while True:
            if self.pivots > max_pivots:
                raise ResourceError(f"simplex exceeded {max_pivots} pivots")
            red = self.reduced_costs(cost)
            j = next((k for k in allowed if red[k] < 0), None)
            if j is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[j]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], j)

    def objective(self, cost):
        return sum((cost[b] * self.rhs[i] for i, b in enumerate(self.basis)), Fraction(0))


def solve_lp(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
             A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
             max_pivots: int = 100_000) -> LPResult:
    n = len(c)
    m_ub, m_eq = len(A_ub), len(A_eq)
    n_slack = m_ub
    rows, rhs, basis, artificial_rows = [], [], [], []
    for i, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = [Fraction(x) for x in a] + [Fraction(0)] * n_slack
        row[n + i] = Fraction(1)
        b = Fraction(b)
        if b < 0:
            row = [-x for x in row]
            b = -b
            artificial_rows.append(len(rows))
            basis.append(None)
        else:
            basis.append(n + i)
        rows.append(row)
        rhs.append(b)
    for a, b in zip(A_eq, b_eq):
        row = [Fraction(x) for x in a] + [Fraction(0)] * n_slack
        b = Fraction(b)
        if b < 0:
            row = [-x for x in row]
            b = -b
        artificial_rows.append(len(rows))
        basis.append(None)
        rows.append(row)
        rhs.append(b)

    n_art = len(artificial_rows)
    width = n + n_slack + n_art
    for i in range(len(rows)):
        rows[i] = rows[i] + [Fraction(0)] * n_art
    for k, i in enumerate(artificial_rows):
        rows[i][n + n_slack + k] = Fraction(1)
        basis[i] = n + n_slack + k

    tab = _Tableau(rows, rhs, basis)
    first_art = n + n_slack
    if n_art:
        cost1 = [Fraction(0)] * first_art + [Fraction(1)] * n_art
        tab.run(cost1, range(width), max_pivots)
        if tab.objective(cost1) > 0:
            return LPResult(INFEASIBLE, None, None, tab.pivots)
        # drive zero-level artificials out of the basis
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= first_art:
                j = next((k for k in range(first_art) if tab.rows[r][k] != 0), None)
                if j is None:
                    del tab.rows[r], tab.rhs[r], tab.basis[r]
                    continue
                tab.pivot(r, j)
            r += 1
        tab.rows = [row[:first_art] for row in tab.rows]

    cost2 = [Fraction(x) for x in c] + [Fraction(0)] * n_slack
    if not tab.run(cost2, range(first_art), max_pivots):
        return LPResult(UNBOUNDED, None, None, tab.pivots)
    x = [Fraction(0)] * first_art
    for i, b in enumerate(tab.basis):
        x[b] = tab.rhs[i]
    return LPResult(OPTIMAL, tuple(x[:n]), tab.objective(cost2), tab.pivots)
