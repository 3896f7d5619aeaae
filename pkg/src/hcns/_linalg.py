"""Exact linear algebra over the scalar field (rational functions).

Plain Gaussian elimination with exact zero tests; entries may be
rationals, polynomials or ratios, and division produces ratios as
needed. Used by the identity solver, division, and basis transforms.
"""

from __future__ import annotations

from .scalar import Scalar


class LinearInconsistent(Exception):
    pass


class LinearUnderdetermined(Exception):
    pass


class LinearSingular(Exception):
    pass


def solve_exact(matrix: list[list[Scalar]], rhs: list[Scalar]) -> list[Scalar]:
    """Solve M x = b for the unique exact solution.

    Raises LinearInconsistent when no solution exists and
    LinearUnderdetermined when the solution is not unique. The system may
    be overdetermined.
    """
    m = len(matrix)
    if m == 0:
        raise LinearUnderdetermined("empty system")
    n = len(matrix[0])
    a = [list(row) for row in matrix]
    b = list(rhs)
    piv_rows: list[int] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if not a[r][col].is_zero()), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        b[row], b[pivot] = b[pivot], b[row]
        pv = a[row][col]
        for r in range(row + 1, m):
            f = a[r][col]
            if f.is_zero():
                continue
            factor = f / pv
            for c in range(col, n):
                a[r][c] = a[r][c] - factor * a[row][c]
            b[r] = b[r] - factor * b[row]
        piv_rows.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if not b[r].is_zero():
            raise LinearInconsistent("inconsistent linear system")
    if len(piv_rows) < n:
        raise LinearUnderdetermined("underdetermined linear system")
    x: list[Scalar] = [Scalar.zero()] * n
    for r in range(len(piv_rows) - 1, -1, -1):
        col = piv_rows[r]
        s = b[r]
        for c in range(col + 1, n):
            if not a[r][c].is_zero():
                s = s - a[r][c] * x[c]
        x[col] = s / a[r][col]
    return x


def invert_exact(matrix: list[list[Scalar]]) -> list[list[Scalar]]:
    """Matrix inverse by Gauss-Jordan; raises LinearSingular."""
    n = len(matrix)
    a = [list(row) + [Scalar.one() if i == j else Scalar.zero() for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if pivot is None:
            raise LinearSingular("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if f.is_zero():
                continue
            a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def det_exact(matrix: list[list[Scalar]]) -> Scalar:
    """Determinant by expansion over column subsets (division-free).

    Suited to symbolic entries: no ratios appear, only polynomial
    arithmetic. O(n * 2^n) scalar operations.
    """
    n = len(matrix)
    if n == 0:
        return Scalar.one()
    # d[mask] = determinant of the top-left |mask| rows on column set `mask`
    prev = {0: Scalar.one()}
    for row in range(n):
        cur: dict[int, Scalar] = {}
        for mask, val in prev.items():
            if val.is_zero():
                continue
            used_below = 0
            for col in range(n):
                bit = 1 << col
                if mask & bit:
                    used_below += 1
                    continue
                entry = matrix[row][col]
                if entry.is_zero():
                    continue
                term = val * entry
                # inversions added: previously used columns to the right
                if (row - used_below) % 2:
                    term = -term
                new_mask = mask | bit
                acc = cur.get(new_mask)
                cur[new_mask] = term if acc is None else acc + term
        prev = cur
    return prev.get((1 << n) - 1, Scalar.zero())
