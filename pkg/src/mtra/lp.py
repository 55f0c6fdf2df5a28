"""Exact rational linear programming.

A dense two-phase simplex over ``fractions.Fraction`` using Bland's rule, so
it cannot cycle and every answer is exact.  Problems here are small (a few
hundred variables at most), which is what the dense tableau is sized for.

>>> lp = LinearProgram(1)
>>> lp.add({0: 1}, "<=", Fraction(1, 3))
>>> lp.maximize({0: 1})
>>> solve_lp(lp)
LPResult(status='optimal', value=Fraction(1, 3), point=(Fraction(1, 3),))
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ShapeError

INFEASIBLE = "infeasible"
OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
SENSES = ("<=", ">=", "==")


@dataclass
class Constraint:
    coeffs: dict
    sense: str
    rhs: Fraction


@dataclass
class LinearProgram:
    """Maximize ``objective . x`` subject to the constraints and bounds.

    Variables default to the bounds [0, +inf).  Lower bounds must be finite.
    """
    num_vars: int
    constraints: list = field(default_factory=list)
    objective: dict = field(default_factory=dict)
    lower: list = None
    upper: list = None

    def __post_init__(self):
        if self.lower is None:
            self.lower = [Fraction(0)] * self.num_vars
        if self.upper is None:
            self.upper = [None] * self.num_vars

    def add(self, coeffs: dict, sense: str, rhs) -> None:
        if sense not in SENSES:
            raise ShapeError(f"unknown constraint sense {sense!r}")
        for k in coeffs:
            if not 0 <= k < self.num_vars:
                raise ShapeError(f"variable index {k} out of range")
        self.constraints.append(Constraint({k: Fraction(v) for k, v in coeffs.items() if v},
                                           sense, Fraction(rhs)))

    def maximize(self, coeffs: dict) -> None:
        for k in coeffs:
            if not 0 <= k < self.num_vars:
                raise ShapeError(f"variable index {k} out of range")
        self.objective = {k: Fraction(v) for k, v in coeffs.items() if v}

    def bound(self, k: int, lo=0, hi=None) -> None:
        self.lower[k] = Fraction(lo)
        self.upper[k] = None if hi is None else Fraction(hi)

    def satisfied_by(self, point) -> bool:
        for k, v in enumerate(point):
            if v < self.lower[k] or (self.upper[k] is not None and v > self.upper[k]):
                return False
        for c in self.constraints:
            s = sum((a * point[k] for k, a in c.coeffs.items()), Fraction(0))
            if (c.sense == "<=" and s > c.rhs) or (c.sense == ">=" and s < c.rhs) or (
                    c.sense == "==" and s != c.rhs):
                return False
        return True

    def value_at(self, point) -> Fraction:
        return sum((a * point[k] for k, a in self.objective.items()), Fraction(0))


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    point: Optional[tuple] = None


class _Tableau:
    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows      # list of lists of Fraction
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r, c, obj_rows):
        row = self.rows[r]
        piv = row[c]
        if piv != 1:
            inv = 1 / piv
            for k in range(self.ncols):
                if row[k]:
                    row[k] *= inv
            self.rhs[r] *= inv
        nz = [k for k in range(self.ncols) if row[k]]
        b = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            a = other[c]
            if a:
                for k in nz:
                    other[k] -= a * row[k]
                self.rhs[i] -= a * b
        for obj in obj_rows:
            a = obj[0][c]
            if a:
                for k in nz:
                    obj[0][k] -= a * row[k]
                obj[1] -= a * b
        self.basis[r] = c

    def run(self, obj, allowed, extra=()):
        """Maximize; ``obj`` is [reduced-cost list, minus the objective value]."""
        while True:
            enter = next((k for k in range(self.ncols) if allowed[k] and obj[0][k] > 0), None)
            if enter is None:
                return OPTIMAL
            best, leave = None, None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return UNBOUNDED
            self.pivot(leave, enter, [obj, *extra])


def solve_lp(lp: LinearProgram) -> LPResult:
    n = lp.num_vars
    lo = lp.lower
    # shift x = lo + y so that y >= 0
    cons = []
    for c in lp.constraints:
        rhs = c.rhs - sum((a * lo[k] for k, a in c.coeffs.items()), Fraction(0))
        cons.append((dict(c.coeffs), c.sense, rhs))
    for k in range(n):
        if lp.upper[k] is not None:
            if lp.upper[k] < lo[k]:
                return LPResult(INFEASIBLE)
            cons.append(({k: Fraction(1)}, "<=", lp.upper[k] - lo[k]))
    for i, (co, sense, rhs) in enumerate(cons):
        if rhs < 0:
            flip = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
            cons[i] = ({k: -v for k, v in co.items()}, flip, -rhs)

    n_slack = sum(1 for _, s, _ in cons if s != "==")
    n_art = sum(1 for _, s, _ in cons if s != "<=")
    ncols = n + n_slack + n_art
    rows, rhs, basis = [], [], []
    is_art = [False] * ncols
    s_col, a_col = n, n + n_slack
    for co, sense, b in cons:
        row = [Fraction(0)] * ncols
        for k, v in co.items():
            row[k] = v
        if sense == "<=":
            row[s_col] = Fraction(1)
            basis.append(s_col)
            s_col += 1
        else:
            if sense == ">=":
                row[s_col] = Fraction(-1)
                s_col += 1
            row[a_col] = Fraction(1)
            is_art[a_col] = True
            basis.append(a_col)
            a_col += 1
        rows.append(row)
        rhs.append(b)
    tab = _Tableau(rows, rhs, basis, ncols)

    # objective rows hold reduced costs c_k - z_k and minus the current value
    cost = [Fraction(0)] * ncols
    for k, v in lp.objective.items():
        cost[k] = v
    obj2 = [cost[:], Fraction(0)]

    if n_art:
        art_cost = [Fraction(-1) if is_art[k] else Fraction(0) for k in range(ncols)]
        obj1 = [art_cost, Fraction(0)]
        for i, bk in enumerate(basis):
            if is_art[bk]:
                for k in range(ncols):
                    if rows[i][k]:
                        obj1[0][k] += rows[i][k]
                obj1[1] += rhs[i]
        tab.run(obj1, [True] * ncols, extra=(obj2,))
        if obj1[1] != 0:
            return LPResult(INFEASIBLE)
        # drive artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab.rows):
            if is_art[tab.basis[i]]:
                c = next((k for k in range(ncols) if not is_art[k] and tab.rows[i][k]), None)
                if c is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, c, [obj2])
            i += 1

    allowed = [not a for a in is_art]
    status = tab.run(obj2, allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    y = [Fraction(0)] * ncols
    for i, bk in enumerate(tab.basis):
        y[bk] = tab.rhs[i]
    point = tuple(lo[k] + y[k] for k in range(n))
    return LPResult(OPTIMAL, lp.value_at(point), point)
