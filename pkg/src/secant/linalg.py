"""Exact matrix algorithms: division-free characteristic polynomials,
Smith normal form over ZZ and ZZ/p^e, and solving over fields.

Matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .ring import BaseRing


def identity(n: int, one=1, zero=0) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(A, B, zero=0):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(cols):
            s = zero
            for k in range(inner):
                a = row[k]
                if a:
                    s = s + a * B[k][j]
            new.append(s)
        out.append(new)
    return out


def transpose(A):
    return [list(r) for r in zip(*A)]


def charpoly(M: Sequence[Sequence], one=1, zero=0, reduce: Callable = lambda x: x) -> list:
    """Coefficients [1, c1, ..., cn] of det(t*I - M) by Berkowitz' algorithm.

    Division-free, hence valid over every commutative ring; ``reduce`` is
    applied to intermediate values (e.g. reduction mod m).
    """
    n = len(M)
    if n == 0:
        return [one]
    C = [one, reduce(-M[0][0])]
    for r in range(1, n):
        # leading block M_r (r x r), column S, row R, corner a
        S = [M[i][r] for i in range(r)]
        Rw = [M[r][j] for j in range(r)]
        a = M[r][r]
        # first column of the Toeplitz matrix: 1, -a, -R S, -R M S, ...
        col = [one, reduce(-a)]
        v = list(S)
        for _ in range(r):
            s = zero
            for j in range(r):
                s = s + Rw[j] * v[j]
            col.append(reduce(-s))
            v = [reduce(sum((M[i][j] * v[j] for j in range(r)), zero)) for i in range(r)]
        # new C = T @ C, T lower-triangular Toeplitz of shape (r+2) x (r+1)
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                s = s + col[i - j] * C[j]
            new.append(reduce(s))
        C = new
    return C


def det(M: Sequence[Sequence], one=1, zero=0, reduce: Callable = lambda x: x):
    n = len(M)
    c = charpoly(M, one, zero, reduce)[-1]
    return reduce(c if n % 2 == 0 else -c)


def eval_matrix_poly(coeffs: Sequence, M, R: BaseRing):
    """sum coeffs[k] * M^(n-k) for coefficients given highest degree first,
    computed by Horner's rule over the base ring."""
    n = len(M)
    acc = [[R.zero()] * n for _ in range(n)]
    for c in coeffs:
        acc = [[R.reduce(x) for x in row] for row in matmul(acc, M, R.zero())] if n else acc
        for i in range(n):
            acc[i][i] = R.add(acc[i][i], c)
    return acc


# -- Smith normal form ------------------------------------------------------


def smith_zz(A: Sequence[Sequence[int]]):
    """Smith normal form over ZZ.

    Returns (U, V, D) with U*A*V == D, U and V unimodular, D diagonal with
    nonnegative entries d1 | d2 | ... (as a full rows x cols matrix).
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    D = [list(map(int, r)) for r in A]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        if k:
            D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
            U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        if k:
            for row in D:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    t = 0
    while t < min(rows, cols):
        # pivot: nonzero entry of smallest absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            p = D[t][t]
            for i in range(t + 1, rows):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if done:
                # divisibility of the rest of the block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if D[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            best = (t, t)
            for i in range(t, rows):
                if D[i][t] and abs(D[i][t]) < abs(D[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, cols):
                if D[t][j] and abs(D[t][j]) < abs(D[best[0]][best[1]]):
                    best = (t, j)
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, V, D


def _valuation(a: int, p: int, e: int) -> int:
    if a % p ** e == 0:
        return e
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def smith_local(A: Sequence[Sequence[int]], p: int, e: int):
    """Smith normal form over the local ring ZZ/p^e.

    Returns (U, V, D) with U*A*V == D mod p^e, U and V invertible mod p^e,
    and D diagonal with entries p^v (v < e) or 0.
    """
    q = p ** e
    rows = len(A)
    cols = len(A[0]) if rows else 0
    D = [[int(a) % q for a in r] for r in A]
    U = identity(rows)
    V = identity(cols)
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j]:
                    v = _valuation(D[i][j], p, e)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        D[t], D[i] = D[i], D[t]
        U[t], U[i] = U[i], U[t]
        for row in D:
            row[t], row[j] = row[j], row[t]
        for row in V:
            row[t], row[j] = row[j], row[t]
        unit = D[t][t] // p ** v
        inv = pow(unit, -1, q)
        D[t] = [(a * inv) % q for a in D[t]]
        U[t] = [(a * inv) % q for a in U[t]]
        pv = p ** v
        for i in range(rows):
            if i != t and D[i][t]:
                k = D[i][t] // pv
                D[i] = [(a - k * b) % q for a, b in zip(D[i], D[t])]
                U[i] = [(a - k * b) % q for a, b in zip(U[i], U[t])]
        for j in range(cols):
            if j != t and D[t][j]:
                k = D[t][j] // pv
                for row in D:
                    row[j] = (row[j] - k * row[t]) % q
                for row in V:
                    row[j] = (row[j] - k * row[t]) % q
        t += 1
    return U, V, D


# -- fields -----------------------------------------------------------------


def solve_field(M: Sequence[Sequence], b: Sequence, R: BaseRing):
    """Solve M x = b over a field; returns x or None if inconsistent."""
    n = len(M)
    cols = len(M[0]) if n else 0
    A = [[R(a) for a in row] + [R(bi)] for row, bi in zip(M, b)]
    piv_cols = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, n) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = R.inverse(A[r][c])
        A[r] = [R.mul(a, inv) for a in A[r]]
        for i in range(n):
            if i != r and A[i][c] != 0:
                k = A[i][c]
                A[i] = [R.sub(a, R.mul(k, b_)) for a, b_ in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(A[i][cols] != 0 for i in range(r, n)):
        return None
    x = [R.zero()] * cols
    for i, c in enumerate(piv_cols):
        x[c] = A[i][cols]
    return x


def rank_field(M: Sequence[Sequence], R: BaseRing) -> int:
    n = len(M)
    if not n:
        return 0
    A = [[R(a) for a in row] for row in M]
    cols = len(A[0])
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, n) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = R.inverse(A[r][c])
        A[r] = [R.mul(a, inv) for a in A[r]]
        for i in range(r + 1, n):
            if A[i][c] != 0:
                k = A[i][c]
                A[i] = [R.sub(a, R.mul(k, b_)) for a, b_ in zip(A[i], A[r])]
        r += 1
    return r


def as_fraction_matrix(M):
    return [[Fraction(a) for a in row] for row in M]
