"""Exact two-phase simplex over Fractions.

Problems are tiny (a few dozen variables), so a dense tableau and Bland's
anti-cycling rule are all we need.  Everything stays exact; there is no
tolerance anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

ZERO = Fraction(0)
ONE = Fraction(1)


class Infeasible(Exception):
    pass


class Unbounded(Exception):
    pass


@dataclass
class LPProblem:
    """maximize ``objective . x`` subject to rows and ``x >= 0``.

    Each constraint is ``(coeffs, sense, rhs)`` with sense one of
    ``"<="``, ``">="``, ``"="``.
    """

    n: int
    objective: List[Fraction] = field(default_factory=list)
    constraints: list = field(default_factory=list)

    def __post_init__(self):
        if not self.objective:
            self.objective = [ZERO] * self.n
        if len(self.objective) != self.n:
            raise ValueError("objective length does not match variable count")

    def add(self, coeffs, sense: str, rhs):
        if len(coeffs) != self.n:
            raise ValueError("constraint length does not match variable count")
        if sense not in ("<=", ">=", "="):
            raise ValueError(f"bad sense {sense!r}")
        self.constraints.append(([Fraction(c) for c in coeffs], sense, Fraction(rhs)))


@dataclass
class LPResult:
    value: Fraction
    x: List[Fraction]


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows  # list of lists, each len ncols
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c):
        row = self.rows[r]
        p = row[c]
        if p != ONE:
            self.rows[r] = row = [x / p for x in row]
            self.rhs[r] /= p
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[c]
                if f:
                    self.rows[i] = [a - f * b for a, b in zip(other, row)]
                    self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def optimize(self, cost, allowed):
        """Maximize ``cost . x`` over the current basis (Bland's rule)."""
        while True:
            # reduced costs: cost_j - sum_i cost_basis(i) * a_ij
            cb = [cost[b] for b in self.basis]
            enter = None
            for j in allowed:
                if j in self.basis:
                    continue
                rc = cost[j] - sum((cb[i] * self.rows[i][j] for i in range(len(self.rows))), ZERO)
                if rc > 0:
                    enter = j
                    break
            if enter is None:
                return
            leave, best = None, None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        leave, best = i, ratio
            if leave is None:
                raise Unbounded()
            self.pivot(leave, enter)


def solve(prob: LPProblem) -> LPResult:
    """Solve exactly.  Raises :class:`Infeasible` or :class:`Unbounded`."""
    n = prob.n
    # slacks for inequalities
    n_slack = sum(1 for _, s, _ in prob.constraints if s != "=")
    m = len(prob.constraints)
    ncols = n + n_slack + m  # structural, slack, artificial
    rows, rhs = [], []
    k = n
    for coeffs, sense, b in prob.constraints:
        row = list(coeffs) + [ZERO] * (n_slack + m)
        if sense == "<=":
            row[k] = ONE
            k += 1
        elif sense == ">=":
            row[k] = -ONE
            k += 1
        if b < 0:
            row = [-x for x in row]
            b = -b
        rows.append(row)
        rhs.append(b)
    art0 = n + n_slack
    for i in range(m):
        rows[i][art0 + i] = ONE
    tab = _Tableau(rows, rhs, [art0 + i for i in range(m)])

    phase1 = [ZERO] * ncols
    for i in range(m):
        phase1[art0 + i] = -ONE
    tab.optimize(phase1, range(ncols))
    if any(tab.rhs[i] != 0 for i in range(m) if tab.basis[i] >= art0):
        raise Infeasible()
    # drive zero-level artificials out of the basis where possible
    for i in range(m):
        if tab.basis[i] >= art0:
            for j in range(art0):
                if tab.rows[i][j] != 0:
                    tab.pivot(i, j)
                    break
    cost = list(prob.objective) + [ZERO] * (n_slack + m)
    tab.optimize(cost, range(art0))
    x = [ZERO] * ncols
    for i, b in enumerate(tab.basis):
        x[b] = tab.rhs[i]
    value = sum((prob.objective[j] * x[j] for j in range(n)), ZERO)
    return LPResult(value, x[:n])


def feasible_point(prob: LPProblem) -> Optional[List[Fraction]]:
    try:
        return solve(LPProblem(prob.n, [ZERO] * prob.n, prob.constraints)).x
    except Infeasible:
        return None
