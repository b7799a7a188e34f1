"""Exact dense linear algebra over Q(zeta_m) with CycNum entries."""

from __future__ import annotations

from typing import Sequence

from .cyc import CycNum

Matrix = list[list[CycNum]]


def _copy(A: Sequence[Sequence[CycNum]]) -> Matrix:
    return [list(row) for row in A]


def identity(n: int, m: int) -> Matrix:
    return [[CycNum.one(m) if i == j else CycNum.zero(m) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n, k, m = len(A), len(B), A[0][0].m
    cols = list(zip(*B))
    out = []
    for row in A:
        out.append([sum((row[t] * col[t] for t in range(k)), CycNum.zero(m)) for col in cols])
    return out


def trace(A: Matrix) -> CycNum:
    return sum((A[i][i] for i in range(len(A))), CycNum.zero(A[0][0].m))


def det(A: Sequence[Sequence[CycNum]]) -> CycNum:
    """Gaussian elimination with pivoting on nonzero entries."""
    M = _copy(A)
    n = len(M)
    m = M[0][0].m
    result = CycNum.one(m)
    for c in range(n):
        piv = next((i for i in range(c, n) if not M[i][c].is_zero()), None)
        if piv is None:
            return CycNum.zero(m)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            result = -result
        p = M[c][c]
        result = result * p
        inv = p.inverse()
        for i in range(c + 1, n):
            if not M[i][c].is_zero():
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return result


def leading_minors(A: Sequence[Sequence[CycNum]]) -> list[CycNum]:
    """det of the top-left k x k blocks, k = 1..n.

    Elimination without row exchanges gives M_k as a running product of
    pivots; after the first zero pivot the remaining minors are computed
    one by one.
    """
    M = _copy(A)
    n = len(M)
    m = M[0][0].m
    out: list[CycNum] = []
    running = CycNum.one(m)
    for c in range(n):
        p = M[c][c]
        if p.is_zero():
            out.extend(det([row[:k] for row in A[:k]]) for k in range(c + 1, n + 1))
            return out
        running = running * p
        out.append(running)
        inv = p.inverse()
        for i in range(c + 1, n):
            if not M[i][c].is_zero():
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return out


def charpoly(A: Sequence[Sequence[CycNum]]) -> list[CycNum]:
    """det(x I - A) by Faddeev-LeVerrier, coefficients c_0..c_n (c_n = 1)."""
    n = len(A)
    m = A[0][0].m
    A = _copy(A)
    coeffs = [CycNum.zero(m)] * (n + 1)
    coeffs[n] = CycNum.one(m)
    Mk = identity(n, m)
    for k in range(1, n + 1):
        AM = matmul(A, Mk)
        ck = (trace(AM) * -1).scalar_div(k)
        coeffs[n - k] = ck
        Mk = [[AM[i][j] + (ck if i == j else CycNum.zero(m)) for j in range(n)] for i in range(n)]
    return coeffs


def is_hermitian(A: Sequence[Sequence[CycNum]]) -> bool:
    n = len(A)
    return all(A[s][k] == A[k][s].conj() for k in range(n) for s in range(n))


def polymul_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def sign_changes(seq: Sequence[int]) -> int:
    signs = [1 if x > 0 else -1 for x in seq if x != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)
