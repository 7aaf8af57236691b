"""Exact rational simplex for the fractional-matching polytope of a 3-graph.

The program is

    maximize    sum_e w_e
    subject to  sum_{e : v in e} w_e <= 1     (one row per vertex)
                w_e >= 0,

solved by the revised primal simplex over Fractions.  Columns have exactly
three unit entries, so pricing a column costs three additions given the
dual vector, and the basis-inverse column of an entering edge is the sum
of three columns of B^-1.  Bland's smallest-index rule (edges in canonical
order, then slacks) guarantees termination and makes the pivot sequence,
hence the returned optimum, deterministic.

The all-slack basis is feasible (b = 1 >= 0), so no phase one is needed,
and the optimum is bounded above by n/3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvariantViolation

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    weights: dict[tuple[int, ...], Fraction]  # nonzero edge weights only
    dual: tuple[Fraction, ...]  # one multiplier per vertex, >= 0 at optimum
    iterations: int


def solve_matching_lp(n: int, columns: Sequence[tuple[int, ...]]) -> LPResult:
    """Solve the matching LP exactly.

    `columns` lists the admissible edges as sorted vertex triples over
    [1, n]; the variable order is the given column order followed by the
    n slack variables.
    """
    m = len(columns)
    binv = [[_ONE if i == r else _ZERO for i in range(n)] for r in range(n)]
    xb = [_ONE] * n
    basis = list(range(m, m + n))  # slack of row r
    iterations = 0

    while True:
        # simplex multipliers y = c_B B^-1 (edge cost 1, slack cost 0)
        y = [_ZERO] * n
        for r in range(n):
            if basis[r] < m:
                row = binv[r]
                for i in range(n):
                    if row[i]:
                        y[i] += row[i]

        enter = -1
        for j in range(m):
            rc = _ONE
            for v in columns[j]:
                rc -= y[v - 1]
            if rc > 0:
                enter = j
                break
        if enter < 0:
            for i in range(n):
                if y[i] < 0:  # slack reduced cost is -y_i
                    enter = m + i
                    break
        if enter < 0:
            weights: dict[tuple[int, ...], Fraction] = {}
            value = _ZERO
            for r in range(n):
                if basis[r] < m and xb[r]:
                    weights[tuple(columns[basis[r]])] = xb[r]
                    value += xb[r]
            return LPResult(value=value, weights=weights, dual=tuple(y), iterations=iterations)

        if enter < m:
            rows = [v - 1 for v in columns[enter]]
            d = [sum(binv[r][i] for i in rows) for r in range(n)]
        else:
            i = enter - m
            d = [binv[r][i] for r in range(n)]

        leave = -1
        best: Fraction | None = None
        for r in range(n):
            if d[r] > 0:
                ratio = xb[r] / d[r]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave < 0:
            raise InvariantViolation(
                "matching LP reported unbounded; objective is bounded by n/3",
                witness=(n, enter),
            )

        piv = d[leave]
        brow = binv[leave]
        if piv != 1:
            binv[leave] = brow = [x / piv for x in brow]
        theta = xb[leave] / piv
        xb[leave] = theta
        for r in range(n):
            if r != leave and d[r]:
                coef = d[r]
                row = binv[r]
                for i in range(n):
                    if brow[i]:
                        row[i] -= coef * brow[i]
                xb[r] -= coef * theta
        basis[leave] = enter
        iterations += 1


def solve_matching_lp_float(n: int, columns: Sequence[tuple[int, ...]]):
    """Floating-point fallback for instances beyond the exact-LP budget.

    Returns (value, weights dict with entries above 1e-12).  Uses HiGHS via
    scipy; results carry ~1e-9 accuracy and must be labeled approximate.
    """
    import numpy as np
    from scipy.optimize import linprog
    from scipy.sparse import csr_matrix

    m = len(columns)
    if m == 0:
        return 0.0, {}
    rows = []
    cols = []
    for j, e in enumerate(columns):
        for v in e:
            rows.append(v - 1)
            cols.append(j)
    A = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, m))
    res = linprog(
        c=-np.ones(m),
        A_ub=A,
        b_ub=np.ones(n),
        bounds=(0, 1),
        method="highs",
    )
    if not res.success:
        raise InvariantViolation(f"float LP failed: {res.message}", witness=(n, m))
    weights = {
        tuple(columns[j]): float(res.x[j]) for j in range(m) if res.x[j] > 1e-12
    }
    return float(-res.fun), weights
