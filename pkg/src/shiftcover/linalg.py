"""Exact matrix and polynomial arithmetic over the integers and rationals.

Matrices are tuples of row tuples of Python ints (or Fractions where noted).
Integer polynomials returned to callers are coefficient lists in descending
degree; the internal rational polynomial helpers use ascending lists.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ShapeError

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def shape(A: Sequence[Sequence]) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(A: Sequence[Sequence]) -> tuple:
    return tuple(zip(*A)) if A else ()


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    """Row-by-row product that skips zero entries of ``A`` (matrices here are sparse)."""
    m, k = shape(A)
    k2, n = shape(B)
    if k != k2:
        raise ShapeError(f"cannot multiply {m}x{k} by {k2}x{n}")
    out = []
    for row in A:
        acc = [0] * n
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(tuple(acc))
    return tuple(out)


def trace(A: Sequence[Sequence]) -> int:
    return sum(A[i][i] for i in range(len(A)))


def matpow(A: Sequence[Sequence], d: int) -> tuple:
    n = len(A)
    result = identity(n)
    base = tuple(tuple(r) for r in A)
    while d:
        if d & 1:
            result = matmul(result, base)
        d >>= 1
        if d:
            base = matmul(base, base)
    return result


def trace_powers(A: Sequence[Sequence], dmax: int) -> list[int]:
    """``[trace(A^d) for d in 1..dmax]``."""
    if len(A) != shape(A)[1]:
        raise ShapeError("trace powers need a square matrix")
    out = []
    P = tuple(tuple(r) for r in A)
    for d in range(1, dmax + 1):
        if d > 1:
            P = matmul(P, A)
        out.append(trace(P))
    return out


def char_poly(A: Sequence[Sequence[int]]) -> list[int]:
    """Characteristic polynomial ``det(tI - A)``, descending coefficients.

    Faddeev-LeVerrier: every division by ``k`` is exact over the integers,
    which is asserted rather than assumed.
    """
    n = len(A)
    if n and shape(A)[1] != n:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    coeffs = [1]
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        for i in range(n):
            M[i][i] += c_prev
        AM = matmul(A, M)
        q, r = divmod(-trace(AM), k)
        if r:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs.append(q)
        M = [list(row) for row in AM]
    return coeffs


def det(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Smith normal form over the integers.

    Returns ``(factors, U, V)`` with ``U`` and ``V`` unimodular and
    ``U M V`` diagonal with entries ``factors`` (length ``min(rows, cols)``),
    each nonnegative and dividing the next; zeros come last.
    """
    m, n = shape(M)
    D = [list(row) for row in M]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    factors = [D[i][i] for i in range(min(m, n))]
    return factors, as_matrix(U), as_matrix(V)


# ---- rational linear algebra -------------------------------------------------

def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in rows]
    ncols = len(M[0]) if M else (ncols or 0)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(A: Sequence[Sequence]) -> int:
    return len(rref(A)[0])


def eventual_image_restriction(A: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Matrix of ``A`` restricted to its eventual image ``∩_k im(A^k)`` over Q.

    The image is iterated until its dimension stops dropping (at most n
    steps); the restriction is read off by solving ``V B = A V``.
    """
    n = len(A)
    basis = [list(r) for r in identity(n)]  # basis vectors as rows
    while True:
        images = [[sum(A[i][j] * v[j] for j in range(n)) for i in range(n)] for v in basis]
        reduced, _ = rref(images, n)
        if len(reduced) == len(basis):
            basis = reduced
            break
        basis = reduced
    r = len(basis)
    if r == 0:
        return []
    # columns of V are the basis vectors; solve V B = A V via rref of [V | AV]
    AV = [[sum(A[i][j] * v[j] for j in range(n)) for v in basis] for i in range(n)]
    aug = [[basis[c][i] for c in range(r)] + AV[i] for i in range(n)]
    red, piv = rref(aug, 2 * r)
    if piv[:r] != list(range(r)):
        raise ArithmeticError("eventual image basis is not independent")
    return [row[r:] for row in red[:r]]


# ---- polynomials over Q (ascending coefficient lists) -----------------------

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        _trim(a)
    return _trim(q), a


def _monic(p):
    return [x / p[-1] for x in p] if p else p


def polynomial_invariant_factors(B: Sequence[Sequence]) -> list[list[Fraction]]:
    """Nonunit invariant factors of ``tI - B`` over Q[t], ascending coefficients.

    Plain Smith reduction over the Euclidean domain Q[t]: pivot on an entry
    of least degree, clear its row and column by division with remainder,
    repeat until the pivot divides the remaining block.
    """
    n = len(B)
    F = Fraction
    M = [[([F(-B[i][j])] if B[i][j] else []) for j in range(n)] for i in range(n)]
    for i in range(n):
        M[i][i] = _trim([F(-B[i][i]), F(1)])
    factors = []
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if M[i][j] and (best is None or len(M[i][j]) < len(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return [f for f in factors if len(f) > 1]
            i0, j0 = best
            M[t], M[i0] = M[i0], M[t]
            for row in M:
                row[t], row[j0] = row[j0], row[t]
            p = M[t][t]
            clean = True
            for i in range(t + 1, n):
                if M[i][t]:
                    q, r = _divmod(M[i][t], p)
                    M[i] = [M[i][j] if j < t else _sub(M[i][j], _mul(q, M[t][j]))
                            for j in range(n)]
                    clean = clean and not r
            for j in range(t + 1, n):
                if M[t][j]:
                    q, r = _divmod(M[t][j], p)
                    for i in range(t, n):
                        if M[i][t]:
                            M[i][j] = _sub(M[i][j], _mul(q, M[i][t]))
                    clean = clean and not r
            if not clean:
                continue
            bad = next((i for i in range(t + 1, n) for j in range(t + 1, n)
                        if M[i][j] and _divmod(M[i][j], p)[1]), None)
            if bad is None:
                break
            M[t] = [M[t][j] if j < t else _sub(M[t][j], [-x for x in M[bad][j]])
                    for j in range(n)]
        factors.append(_monic(M[t][t]))
    return [f for f in factors if len(f) > 1]


def to_integer_descending(p: Sequence[Fraction]) -> tuple[int, ...]:
    """Convert an ascending rational polynomial with integral coefficients."""
    out = []
    for c in reversed(p):
        c = Fraction(c)
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {c}")
        out.append(int(c))
    return tuple(out)


def strip_zero_roots(poly: Sequence[int]) -> tuple[int, ...]:
    """Remove all factors of ``t`` from a descending coefficient list."""
    p = list(poly)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)
