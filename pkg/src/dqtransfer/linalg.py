"""Exact linear algebra over Q and Z used by the modular-form and lattice code."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def solve_rational(columns: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Solve ``sum_j x_j * columns[j] == rhs`` exactly.

    Returns ``(x, rank, consistent)``. ``x`` is a particular solution (free
    variables set to zero) or ``None`` when the system is inconsistent.
    """
    r = len(columns)
    m = len(rhs)
    rows = [[Fraction(columns[j][i]) for j in range(r)] + [Fraction(rhs[i])] for i in range(m)]
    pivots: list[int] = []
    row = 0
    for col in range(r):
        sel = next((i for i in range(row, m) if rows[i][col]), None)
        if sel is None:
            continue
        rows[row], rows[sel] = rows[sel], rows[row]
        pv = rows[row][col]
        rows[row] = [x / pv for x in rows[row]]
        for i in range(m):
            if i != row and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    consistent = all(rows[i][r] == 0 for i in range(row, m))
    if not consistent:
        return None, len(pivots), False
    x = [Fraction(0)] * r
    for i, col in enumerate(pivots):
        x[col] = rows[i][r]
    return x, len(pivots), True


def echelon_with_rhs(columns: Sequence[Sequence[int]], rhs: Sequence[int]):
    """Integral row echelon form of the tall matrix ``[columns | rhs]``.

    Only unimodular row operations are used and pivoting happens on the
    ``columns`` block alone, so the rows below the rank carry the image of
    ``rhs`` under a surjection ``Z^m -> Z^(m - rank)`` whose rational kernel
    is the column span. Returns ``(rows, pivots)`` where ``rows[i]`` has
    ``len(columns) + 1`` entries and ``pivots`` lists the pivot columns in
    order (pivot ``i`` sits in row ``i``).
    """
    r = len(columns)
    m = len(rhs)
    rows = [[columns[j][i] for j in range(r)] + [rhs[i]] for i in range(m)]
    pivots: list[int] = []
    top = 0
    for col in range(r):
        if top == m:
            break
        while True:
            nz = [i for i in range(top, m) if rows[i][col]]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(rows[i][col]))
            rows[top], rows[best] = rows[best], rows[top]
            prow = rows[top]
            p = prow[col]
            clean = True
            for i in range(top + 1, m):
                if rows[i][col]:
                    q = rows[i][col] // p
                    rows[i] = [x - q * y for x, y in zip(rows[i], prow)]
                    if rows[i][col]:
                        clean = False
            if clean:
                break
        if rows[top][col]:
            pivots.append(col)
            top += 1
    return rows, pivots
