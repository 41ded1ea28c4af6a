"""Exact rational linear algebra: dense simplex and Gaussian elimination.

Problem sizes here are tiny (a handful of equality rows, tens of columns),
so clarity beats sparsity.  All arithmetic is in Fractions: feasibility and
optimality answers are exact, and Bland's rule guarantees termination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = list[Fraction]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _pivot(tableau: list[Row], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [x / piv for x in tableau[row]]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            factor = r[col]
            tableau[i] = [x - factor * y for x, y in zip(r, tableau[row])]
    basis[row] = col


def _simplex(tableau: list[Row], basis: list[int], ncols: int) -> str:
    """Run Bland-rule pivots on a maximization tableau until optimal or
    unbounded.  Last tableau row is the reduced-cost row; last column is rhs."""
    m = len(tableau) - 1
    while True:
        obj = tableau[m]
        col = next((j for j in range(ncols) if obj[j] > 0), None)
        if col is None:
            return OPTIMAL
        best_row = None
        best_ratio = None
        for i in range(m):
            if tableau[i][col] > 0:
                ratio = tableau[i][ncols] / tableau[i][col]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[best_row])
                ):
                    best_ratio = ratio
                    best_row = i
        if best_row is None:
            return UNBOUNDED
        _pivot(tableau, basis, best_row, col)


def solve_lp_eq(
    a_rows: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    c: Sequence[Fraction],
) -> tuple[str, list[Fraction] | None, Fraction | None]:
    """Maximize c.x subject to a_rows @ x = b, x >= 0.

    Returns (status, x, value) with exact rational entries; x and value are
    None unless status == OPTIMAL.
    """
    m = len(a_rows)
    n = len(c)
    rows: list[Row] = []
    rhs: list[Fraction] = []
    for i in range(m):
        r = [Fraction(x) for x in a_rows[i]]
        bi = Fraction(b[i])
        if bi < 0:
            r = [-x for x in r]
            bi = -bi
        rows.append(r)
        rhs.append(bi)

    # Phase 1: artificial basis, maximize -sum(artificials).
    ncols1 = n + m
    tableau: list[Row] = []
    for i in range(m):
        row = rows[i] + [Fraction(int(j == i)) for j in range(m)] + [rhs[i]]
        tableau.append(row)
    obj = [Fraction(0)] * n + [Fraction(-1)] * m + [Fraction(0)]
    for i in range(m):  # zero out reduced costs on the artificial basis
        obj = [x + y for x, y in zip(obj, tableau[i])]
    tableau.append(obj)
    basis = list(range(n, n + m))

    _simplex(tableau, basis, ncols1)
    infeasibility = sum(
        (tableau[i][ncols1] for i in range(m) if basis[i] >= n), Fraction(0)
    )
    if infeasibility != 0:
        return INFEASIBLE, None, None

    # Drive leftover (zero-valued) artificials out of the basis.
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tableau[i][j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, i, col)
    keep = [i for i in range(m) if basis[i] < n]
    tableau = [[tableau[i][j] for j in range(n)] + [tableau[i][ncols1]] for i in keep]
    basis = [basis[i] for i in keep]
    m = len(basis)

    # Phase 2: real objective.
    obj = [Fraction(x) for x in c] + [Fraction(0)]
    for i in range(m):
        coef = obj[basis[i]]
        if coef != 0:
            obj = [x - coef * y for x, y in zip(obj, tableau[i])]
    tableau.append(obj)
    status = _simplex(tableau, basis, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None

    x = [Fraction(0)] * n
    for i in range(m):
        x[basis[i]] = tableau[i][n]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return OPTIMAL, x, value


def feasible_eq(
    a_rows: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    nvars: int,
) -> bool:
    """Exact feasibility of {x >= 0 : a_rows @ x = b} (phase 1 only)."""
    status, _, _ = solve_lp_eq(a_rows, b, [Fraction(0)] * nvars)
    return status == OPTIMAL


def solve_linear_system(
    mat: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> list[Fraction] | None:
    """Solve a square rational system exactly; None if singular."""
    n = len(rhs)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        piv_val = aug[col][col]
        aug[col] = [x / piv_val for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]
