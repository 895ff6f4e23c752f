"""Exact dense linear algebra over F_p (and small exact helpers).

The workhorse is a panel-blocked Gaussian elimination in float64: with
p = 32003 a k-term dot product stays below 2^53 for any practical k, so
BLAS matmul updates are exact after reduction mod p.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np


def fp_rank(A, p: int, block: int = 48) -> int:
    """Rank over F_p of an integer matrix (2-D array-like).

    Lazy reduction: float64 arithmetic is exact while magnitudes stay below
    2^53, so only pivot rows/columns are reduced eagerly and the trailing
    matrix is reduced when its tracked bound approaches the limit.
    """
    M = np.asarray(A, dtype=np.float64)
    if M.size == 0:
        return 0
    M = M % p
    m, n = M.shape
    if m < n:
        M = np.ascontiguousarray(M.T)
        m, n = n, m
    limit = 4.0e15
    assert block * float(p) * p < limit
    trail_bound = float(p)
    r = 0
    c = 0
    while r < m and c < n:
        bw = min(block, n - c)
        mm = m - r
        # row ops of this panel as E = I + C * Sel(pivot rows); no row scaling
        C = np.zeros((mm, bw))
        piv_local: list[int] = []
        rr = r
        for j in range(c, c + bw):
            if rr == m:
                break
            col = M[rr:, j]
            np.mod(col, p, out=col)
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            i0 = rr + int(nz[0])
            if i0 != rr:
                M[[rr, i0]] = M[[i0, rr]]
                lr0, lr1 = rr - r, i0 - r
                C[[lr0, lr1]] = C[[lr1, lr0]]
            lr = rr - r
            i = len(piv_local)
            row = M[rr, j:c + bw]
            np.mod(row, p, out=row)
            below = M[rr + 1:, j]
            if below.size and below.any():
                inv = float(pow(int(M[rr, j]), p - 2, p))
                f = (below * inv) % p
                sub = M[rr + 1:, j:c + bw]
                sub -= f[:, None] * row
                C[lr + 1:, i] -= f
                if i:
                    crow = C[lr, :i]
                    np.mod(crow, p, out=crow)
                    C[lr + 1:, :i] -= f[:, None] * crow
            piv_local.append(lr)
            rr += 1
        k = len(piv_local)
        if k and c + bw < n:
            np.mod(C, p, out=C)
            X = M[r:, c + bw:]
            Xp = np.mod(X[piv_local, :], p)
            X += C[:, :k] @ Xp
            trail_bound += block * float(p) * p
            if trail_bound > limit:
                np.mod(X, p, out=X)
                trail_bound = float(p)
        r = rr
        c += bw
    return r


def fp_nullspace_small(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Nullspace basis of a small integer matrix over F_p (plain Gauss)."""
    A = [[v % p for v in row] for row in rows]
    m = len(A)
    piv_of_col: dict[int, int] = {}
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, m):
            if A[i][c]:
                pr = i
                break
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = pow(A[r][c], p - 2, p)
        A[r] = [(v * inv) % p for v in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        piv_of_col[c] = r
        r += 1
    free = [c for c in range(ncols) if c not in piv_of_col]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for c, pr in piv_of_col.items():
            v[c] = (-A[pr][fc]) % p
        basis.append(v)
    return basis


def fraction_rank(rows: list[list]) -> int:
    """Exact rank over QQ (used by the rational cross-check mode)."""
    A = [[Fraction(v) for v in row] for row in rows]
    m = len(A)
    if m == 0:
        return 0
    n = len(A[0])
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if A[i][c]:
                pr = i
                break
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(r + 1, m):
            if A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r
