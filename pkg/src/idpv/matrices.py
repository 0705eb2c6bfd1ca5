"""Small dense matrices over arbitrary ring elements (tuples of tuples).

Everything here works for any coefficient type supporting ring arithmetic
plus ``zero()``/``one()``; inversion additionally needs unit pivots with an
``inverse()`` method.  Matrix sizes stay at desk scale, so determinants go
through cofactor expansion.
"""

from __future__ import annotations

from .errors import NotAUnit, SingularAtOrigin


def freeze(rows):
    return tuple(tuple(r) for r in rows)


def identity(n, one):
    zero = one.zero()
    return freeze(
        [[one if i == j else zero for j in range(n)] for i in range(n)]
    )


def mat_add(A, B):
    return freeze(
        [[A[i][j] + B[i][j] for j in range(len(A[0]))] for i in range(len(A))]
    )


def mat_sub(A, B):
    return freeze(
        [[A[i][j] - B[i][j] for j in range(len(A[0]))] for i in range(len(A))]
    )


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for s in range(1, k):
                acc = acc + A[i][s] * B[s][j]
            row.append(acc)
        out.append(row)
    return freeze(out)


def mat_scale(A, c):
    return freeze([[entry * c for entry in row] for row in A])


def mat_map(A, f):
    return freeze([[f(entry) for entry in row] for row in A])


def mat_eq(A, B):
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb))
        for ra, rb in zip(A, B)
    )


def determinant(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    acc = None
    for j in range(n):
        minor = [
            [A[i][c] for c in range(n) if c != j] for i in range(1, n)
        ]
        term = A[0][j] * determinant(freeze(minor))
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def adjugate(A):
    n = len(A)
    if n == 1:
        return freeze([[A[0][0].one()]])
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [A[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = determinant(freeze(minor))
            if (i + j) % 2:
                cof = -cof
            row.append(cof)
        out.append(row)
    return freeze(out)


def mat_inverse(M):
    """Gauss-Jordan inverse; every pivot must be a unit of the entry ring.

    For matrices of truncated series this realizes inversion up to the
    truncation order and raises SingularAtOrigin when the constant-term
    matrix is singular.
    """
    n = len(M)
    one = M[0][0].one()
    work = [list(row) for row in M]
    inv = [list(row) for row in identity(n, one)]
    for col in range(n):
        piv_row = None
        piv_inv = None
        for r in range(col, n):
            try:
                piv_inv = work[r][col].inverse()
            except NotAUnit:
                continue
            piv_row = r
            break
        if piv_row is None:
            raise SingularAtOrigin(f"no unit pivot in column {col}")
        work[col], work[piv_row] = work[piv_row], work[col]
        inv[col], inv[piv_row] = inv[piv_row], inv[col]
        work[col] = [piv_inv * v for v in work[col]]
        inv[col] = [piv_inv * v for v in inv[col]]
        for r in range(n):
            if r == col:
                continue
            factor = work[r][col]
            if factor.is_zero():
                continue
            work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
            inv[r] = [a - factor * b for a, b in zip(inv[r], inv[col])]
    return freeze(inv)
