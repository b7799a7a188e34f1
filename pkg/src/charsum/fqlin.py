"""Small dense linear algebra over F_q on integer codes."""

from __future__ import annotations

from typing import Sequence

from .errors import InconsistentSystem
from .fq import FieldSpec


def row_reduce(F: FieldSpec, rows: Sequence[Sequence[int]], columns: Sequence[int]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of an augmented system (last entry = right-hand side).

    Pivots are searched in the given column order.  Returns the nonzero rows
    and the pivot column of each; raises InconsistentSystem for a row 0 = c != 0.
    """
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in columns:
        piv = next((i for i in range(top, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[top], mat[piv] = mat[piv], mat[top]
        inv = F.inv(mat[top][col])
        mat[top] = [F.mul(inv, x) for x in mat[top]]
        for i in range(len(mat)):
            if i != top and mat[i][col]:
                c = mat[i][col]
                mat[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(mat[i], mat[top])]
        pivots.append(col)
        top += 1
        if top == len(mat):
            break
    for row in mat[top:]:
        if row[-1]:
            raise InconsistentSystem("equations have no common solution")
    return mat[:top], pivots


def solve(F: FieldSpec, A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int]:
    """Unique solution of A x = b for square invertible A."""
    n = len(A)
    rows = [list(A[i]) + [b[i]] for i in range(n)]
    red, pivots = row_reduce(F, rows, range(n))
    if len(pivots) != n:
        raise InconsistentSystem("singular system")
    x = [0] * n
    for row, col in zip(red, pivots):
        x[col] = row[-1]
    return x


def inverse(F: FieldSpec, A: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(A)
    cols = [solve(F, A, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]
