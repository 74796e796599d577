"""Exact rational linear programming by two-phase simplex.

Minimizes c.x subject to linear constraints (>=, <=, =) and x >= 0,
entirely in Fraction arithmetic.  Bland's anti-cycling pivot rule is
used throughout, because the programs this package builds are highly
degenerate (many optima); Bland's rule guarantees termination without
perturbation.  The returned point is a vertex certificate that can be
re-substituted into every constraint exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .numerics import format_rational

RELATIONS = (">=", "<=", "=")


@dataclass(frozen=True)
class LinearProgram:
    num_vars: int
    objective: tuple
    constraints: tuple   # of (coeffs tuple, relation, rhs)

    def __init__(self, num_vars: int, objective: Sequence, constraints):
        if num_vars < 1:
            raise ValueError("need at least one variable")
        objective = tuple(Fraction(c) for c in objective)
        if len(objective) != num_vars:
            raise ValueError("objective length mismatch")
        rows = []
        for coeffs, rel, rhs in constraints:
            coeffs = tuple(Fraction(c) for c in coeffs)
            if len(coeffs) != num_vars:
                raise ValueError("constraint length mismatch")
            if rel not in RELATIONS:
                raise ValueError("bad relation %r" % rel)
            rows.append((coeffs, rel, Fraction(rhs)))
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "constraints", tuple(rows))


@dataclass(frozen=True)
class LpOutcome:
    status: str                      # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction] = None
    point: Optional[tuple] = None


def solve(lp: LinearProgram) -> LpOutcome:
    """Exact optimum of the program, with a vertex certificate."""
    n = lp.num_vars
    # Build equality-form rows with rhs >= 0.
    rows = []                        # (coeffs over structural vars, rhs, rel)
    for coeffs, rel, rhs in lp.constraints:
        coeffs = list(coeffs)
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            rel = {">=": "<=", "<=": ">=", "=": "="}[rel]
        rows.append((coeffs, rel, rhs))

    m = len(rows)
    slack_count = sum(1 for _, rel, _ in rows if rel != "=")
    total = n + slack_count + m      # structural + slack/surplus + artificial
    tableau = []
    basis = []
    slack_at = n
    art_at = n + slack_count
    for i, (coeffs, rel, rhs) in enumerate(rows):
        row = coeffs + [Fraction(0)] * (slack_count + m) + [rhs]
        if rel == "<=":
            row[slack_at] = Fraction(1)
            slack_at += 1
        elif rel == ">=":
            row[slack_at] = Fraction(-1)
            slack_at += 1
        row[art_at + i] = Fraction(1)
        tableau.append(row)
        basis.append(art_at + i)

    # Phase 1: minimize the sum of artificials.
    cost1 = [Fraction(0)] * total
    for j in range(art_at, art_at + m):
        cost1[j] = Fraction(1)
    status = _simplex(tableau, basis, cost1, total)
    if status != "optimal":          # phase 1 is always bounded below by 0
        raise RuntimeError("phase 1 reported %s" % status)
    if _objective_value(tableau, basis, cost1) != 0:
        return LpOutcome("infeasible")

    # Drive any remaining artificial variables out of the basis.
    for i in range(len(basis) - 1, -1, -1):
        if basis[i] < art_at:
            continue
        pivot_col = next((j for j in range(art_at)
                          if tableau[i][j] != 0), None)
        if pivot_col is None:
            del tableau[i]
            del basis[i]
        else:
            _pivot(tableau, basis, i, pivot_col)

    # Phase 2 on the structural objective (artificial columns barred by cost).
    cost2 = list(lp.objective) + [Fraction(0)] * (total - n)
    status = _simplex(tableau, basis, cost2, art_at)
    if status == "unbounded":
        return LpOutcome("unbounded")
    point = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            point[var] = tableau[i][-1]
    value = sum((c * x for c, x in zip(lp.objective, point)), Fraction(0))
    return LpOutcome("optimal", value, tuple(point))


def _objective_value(tableau, basis, cost):
    return sum((cost[var] * row[-1] for var, row in zip(basis, tableau)),
               Fraction(0))


def _reduced_costs(tableau, basis, cost, width):
    reduced = list(cost[:width])
    for var, row in zip(basis, tableau):
        cb = cost[var]
        if cb != 0:
            for j in range(width):
                if row[j] != 0:
                    reduced[j] -= cb * row[j]
    return reduced


def _simplex(tableau, basis, cost, width) -> str:
    """Run simplex with Bland's rule; columns >= width never enter."""
    while True:
        reduced = _reduced_costs(tableau, basis, cost, width)
        entering = next((j for j in range(width)
                         if reduced[j] < 0 and j not in basis), None)
        if entering is None:
            return "optimal"
        pivot_row = None
        best_ratio = None
        for i, row in enumerate(tableau):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[pivot_row])):
                    best_ratio = ratio
                    pivot_row = i
        if pivot_row is None:
            return "unbounded"
        _pivot(tableau, basis, pivot_row, entering)


def _pivot(tableau, basis, pivot_row, pivot_col):
    row = tableau[pivot_row]
    factor = row[pivot_col]
    tableau[pivot_row] = [c / factor for c in row]
    row = tableau[pivot_row]
    for i, other in enumerate(tableau):
        if i == pivot_row:
            continue
        a = other[pivot_col]
        if a != 0:
            tableau[i] = [x - a * y for x, y in zip(other, row)]
    basis[pivot_row] = pivot_col


def check_solution(lp: LinearProgram, point: Sequence) -> bool:
    """Exact re-substitution of a point into every constraint and bound."""
    point = [Fraction(x) for x in point]
    if len(point) != lp.num_vars or any(x < 0 for x in point):
        return False
    for coeffs, rel, rhs in lp.constraints:
        lhs = sum((c * x for c, x in zip(coeffs, point)), Fraction(0))
        if rel == ">=" and lhs < rhs:
            return False
        if rel == "<=" and lhs > rhs:
            return False
        if rel == "=" and lhs != rhs:
            return False
    return True


def dual_program(lp: LinearProgram) -> LinearProgram:
    """Dual of a pure >=-form program (min c.x, Ax >= b, x >= 0).

    The dual is max b.y subject to A^T y <= c, y >= 0; it is returned as
    a minimization of -b.y, so the dual optimum is the negation of the
    returned program's optimum.
    """
    if any(rel != ">=" for _, rel, _ in lp.constraints):
        raise ValueError("dual_program expects all constraints in >= form")
    m = len(lp.constraints)
    objective = [-rhs for _, _, rhs in lp.constraints]
    constraints = []
    for j in range(lp.num_vars):
        col = tuple(coeffs[j] for coeffs, _, _ in lp.constraints)
        constraints.append((col, "<=", lp.objective[j]))
    return LinearProgram(m, objective, constraints)


def format_lp(lp: LinearProgram, names: Optional[Sequence[str]] = None) -> str:
    """Plain-text dump: objective line then one constraint per line."""
    if names is None:
        names = ["x%d" % (j + 1) for j in range(lp.num_vars)]

    def term_list(coeffs):
        terms = ["%s %s" % (format_rational(c), names[j])
                 for j, c in enumerate(coeffs) if c != 0]
        return " + ".join(terms) if terms else "0"

    lines = ["minimize: %s" % term_list(lp.objective)]
    for coeffs, rel, rhs in lp.constraints:
        lines.append("%s %s %s" % (term_list(coeffs), rel, format_rational(rhs)))
    return "\n".join(lines) + "\n"
