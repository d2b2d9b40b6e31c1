"""Dense Gauss-Jordan elimination over a FieldSpec (raw coefficient values)."""

from __future__ import annotations

from typing import Any

from .fields import FieldSpec

Matrix = list[list[Any]]


def rref(fld: FieldSpec, rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with leftmost pivots; returns (matrix, pivot columns)."""
    a = [list(r) for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if not fld.is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = fld.inv(a[r][c])
        a[r] = [fld.mul(x, inv) for x in a[r]]
        for i in range(len(a)):
            if i != r and not fld.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(fld: FieldSpec, rows: Matrix) -> int:
    return len(rref(fld, rows)[1])


def inverse(fld: FieldSpec, rows: Matrix) -> Matrix:
    n = len(rows)
    aug = [list(r) + [fld.one if i == j else fld.zero for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(fld, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("singular matrix")
    return [row[n:] for row in red]
