"""Exact linear algebra over the rationals.

Matrices are lists of rows of ints or Fractions.  Elimination is plain
Gaussian reduction in exact rational arithmetic; the reduced row echelon
form is canonical for the row space, so nullspace bases are deterministic
given a column order.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import normalize_coeff


def rref(matrix: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot column indices.

    The input is not modified.  Rows of the result are fully reduced and
    pivot-normalized to one; zero rows are dropped.
    """
    rows = [[normalize_coeff(Fraction(c)) for c in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for k in range(r, len(rows)):
            if rows[k][col]:
                pivot_row = k
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        lead = rows[r][col]
        if lead != 1:
            inv = Fraction(1) / Fraction(lead)
            rows[r] = [normalize_coeff(c * inv) for c in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                factor = rows[k][col]
                rows[k] = [
                    normalize_coeff(a - factor * b)
                    for a, b in zip(rows[k], rows[r])
                ]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(matrix: list[list], ncols: int | None = None) -> list[list]:
    """Deterministic basis of the solution space of ``matrix @ x = 0``.

    One basis vector per free column, in ascending column order; the free
    coordinate is set to one and pivot coordinates are back-filled from the
    reduced form.  An empty matrix means every vector is a solution.
    """
    if matrix:
        ncols = len(matrix[0])
    elif ncols is None:
        raise ValueError("ncols is required for an empty constraint matrix")
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for row, pcol in zip(reduced, pivots):
            value = row[free]
            if value:
                vec[pcol] = normalize_coeff(-Fraction(value))
        basis.append(vec)
    return basis
