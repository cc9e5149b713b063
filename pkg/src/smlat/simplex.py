"""Exact phase-one simplex over the integers.

Feasibility solver for systems  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0 with
integer coefficients.  The tableau is kept as scaled integers (true value =
entry / d, where d is the previous pivot), so every pivot divides exactly and
no floating point ever appears; Bland's rule prevents cycling.  Returns a
basic feasible solution -- a vertex of the polyhedron -- as exact Fractions,
or None when infeasible.
"""

from __future__ import annotations

from fractions import Fraction


def solve_feasibility(n_vars: int,
                      eq_rows: list[tuple[list[int], int]],
                      ub_rows: list[tuple[list[int], int]]) -> list[Fraction] | None:
    """Phase-one simplex; rhs of every row must be >= 0."""
    n_eq = len(eq_rows)
    n_ub = len(ub_rows)
    n_slack = n_ub
    total = n_vars + n_slack + n_eq              # artificials only on equalities
    rows: list[list[int]] = []
    basis: list[int] = []
    for k, (coeffs, rhs) in enumerate(ub_rows):
        if rhs < 0:
            raise ValueError("ub rows must have nonnegative rhs")
        row = list(coeffs) + [0] * (n_slack + n_eq) + [rhs]
        row[n_vars + k] = 1
        rows.append(row)
        basis.append(n_vars + k)
    for k, (coeffs, rhs) in enumerate(eq_rows):
        if rhs < 0:
            raise ValueError("eq rows must have nonnegative rhs")
        row = list(coeffs) + [0] * (n_slack + n_eq) + [rhs]
        row[n_vars + n_slack + k] = 1
        rows.append(row)
        basis.append(n_vars + n_slack + k)
    # objective: minimize sum of artificials; price them out so the z-row is
    # expressed over the nonbasic columns (negated sum of the equality rows)
    z = [0] * (total + 1)
    for (coeffs, rhs) in eq_rows:
        for j, c in enumerate(coeffs):
            z[j] -= c
        z[total] -= rhs
    denom = 1
    art_lo = n_vars + n_slack

    def pivot(r: int, c: int) -> None:
        nonlocal denom
        p = rows[r][c]
        assert p > 0
        for i in range(len(rows)):
            if i == r:
                continue
            ric = rows[i][c]
            row_i, row_r = rows[i], rows[r]
            if ric == 0:
                rows[i] = [(p * v) // denom for v in row_i]
            else:
                rows[i] = [(p * row_i[j] - ric * row_r[j]) // denom
                           for j in range(total + 1)]
        zc = z[c]
        row_r = rows[r]
        for j in range(total + 1):
            z[j] = (p * z[j] - zc * row_r[j]) // denom
        denom = p
        basis[r] = c

    while True:
        enter = next((j for j in range(total) if z[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(len(rows)):
            a = rows[i][enter]
            if a <= 0:
                continue
            if leave is None:
                leave = i
            else:
                lhs = rows[i][total] * rows[leave][enter]
                rhs = rows[leave][total] * a
                if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                    leave = i
        if leave is None:
            raise AssertionError("phase-one objective unbounded")
        pivot(leave, enter)

    if z[total] != 0:                            # min sum(artificials) > 0
        return None

    # drive leftover artificials (all at value 0) out of the basis
    for i in range(len(rows) - 1, -1, -1):
        if basis[i] < art_lo:
            continue
        col = next((j for j in range(art_lo) if rows[i][j] != 0), None)
        if col is None:
            del rows[i]                          # redundant equality
            del basis[i]
            continue
        if rows[i][col] < 0:
            rows[i] = [-v for v in rows[i]]
        pivot(i, col)

    values = [Fraction(0)] * n_vars
    for i, b in enumerate(basis):
        if b < n_vars:
            values[b] = Fraction(rows[i][total], denom)
    return values
