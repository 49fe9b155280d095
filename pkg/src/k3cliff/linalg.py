"""Exact linear algebra over the integers and the rationals.

Everything here is pure Python on arbitrary-precision ints and
``fractions.Fraction``; no floating point is ever introduced.  Matrices are
lists of row lists.  The integer half provides the unimodular-reduction
toolkit (column echelon form with transform, kernels, integral solving,
completion of a primitive vector to a basis); the rational half provides
rank / solve via fraction-free elimination on denominator-cleared rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def vec_gcd(v) -> int:
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(m):
                    oi[j] += a * Bt[j]
    return out


def mat_vec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def column_echelon(A, track_inverse: bool = False):
    """Bring A to column echelon form by unimodular column operations.

    Returns (E, V) with A @ V = E, V in GL_n(Z), or (E, V, W) with
    W = V^{-1} when ``track_inverse`` is set.  E has its nonzero columns
    first; in each nonzero column the pivot (first nonzero entry, scanning
    rows top-down) is positive and sits strictly below the pivot of the
    previous column.  The reduction is deterministic.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    E = [list(row) for row in A]
    V = identity(n)
    W = identity(n) if track_inverse else None

    def col_addmul(dst, src, q):
        # column dst += q * column src;  inverse op on W: row src -= q * row dst
        if q == 0:
            return
        for i in range(m):
            E[i][dst] += q * E[i][src]
        for i in range(n):
            V[i][dst] += q * V[i][src]
        if W is not None:
            Ws, Wd = W[src], W[dst]
            for j in range(n):
                Ws[j] -= q * Wd[j]

    def col_swap(a, b):
        if a == b:
            return
        for i in range(m):
            E[i][a], E[i][b] = E[i][b], E[i][a]
        for i in range(n):
            V[i][a], V[i][b] = V[i][b], V[i][a]
        if W is not None:
            W[a], W[b] = W[b], W[a]

    def col_negate(a):
        for i in range(m):
            E[i][a] = -E[i][a]
        for i in range(n):
            V[i][a] = -V[i][a]
        if W is not None:
            W[a] = [-x for x in W[a]]

    pivot_col = 0
    for row in range(m):
        if pivot_col >= n:
            break
        # gcd-reduce the entries of this row across the free columns
        while True:
            nz = [c for c in range(pivot_col, n) if E[row][c] != 0]
            if not nz:
                break
            if len(nz) == 1 and nz[0] == pivot_col:
                break
            # use the column with the smallest nonzero |entry| as the reducer
            best = min(nz, key=lambda c: (abs(E[row][c]), c))
            col_swap(pivot_col, best)
            p = E[row][pivot_col]
            done = True
            for c in range(pivot_col + 1, n):
                # Euclidean step: floor division leaves |remainder| < |p|
                q = E[row][c] // p
                col_addmul(c, pivot_col, -q)
                if E[row][c] != 0:
                    done = False
            if done:
                break
        if pivot_col < n and E[row][pivot_col] != 0:
            if E[row][pivot_col] < 0:
                col_negate(pivot_col)
            pivot_col += 1
    if track_inverse:
        return E, V, W
    return E, V


def kernel_basis(A) -> list[list[int]]:
    """Basis of the integer kernel {x in Z^n : A x = 0}, as row vectors.

    The basis spans the full (saturated) kernel lattice, so any integer
    solution is an integer combination of the returned rows.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    E, V = column_echelon(A)
    out = []
    for c in range(n):
        if all(E[i][c] == 0 for i in range(m)):
            out.append([V[i][c] for i in range(n)])
    return out


def solve_int(A, b) -> list[int] | None:
    """One integer solution x of A x = b, or None if there is none."""
    m = len(A)
    n = len(A[0]) if m else 0
    E, V = column_echelon(A)
    y = [0] * n
    resid = list(b)
    for c in range(n):
        # pivot row of column c
        piv = None
        for i in range(m):
            if E[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        q, r = divmod(resid[piv], E[piv][c])
        if r != 0:
            return None
        y[c] = q
        for i in range(m):
            resid[i] -= q * E[i][c]
    if any(resid):
        return None
    return mat_vec(V, y)


def complete_to_basis(c: list[int]) -> list[list[int]]:
    """Complete a primitive integer vector to a basis of Z^n.

    Returns a unimodular matrix U (det +-1) whose first row is ``c``.
    Raises ValueError if gcd(c) != 1.
    """
    n = len(c)
    if vec_gcd(c) != 1:
        raise ValueError("vector is not primitive")
    E, V, W = column_echelon([list(c)], track_inverse=True)
    # c @ V = (+-1, 0, ..., 0), hence c = (+-1) * (first row of W)
    U = [list(row) for row in W]
    U[0] = list(c)
    return U


def det_int(A) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# rational elimination
# ---------------------------------------------------------------------------


def _clear_row(row) -> list[int]:
    """Scale a row of Fractions/ints to a primitive integer row."""
    fracs = [Fraction(x) for x in row]
    lcm = 1
    for f in fracs:
        d = f.denominator
        lcm = lcm // gcd(lcm, d) * d
    ints = [int(f * lcm) for f in fracs]
    g = vec_gcd(ints)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def rat_rank(M) -> int:
    """Rank of a matrix with rational entries, computed exactly."""
    rows = [_clear_row(r) for r in M if any(r)]
    if not rows:
        return 0
    n = len(rows[0])
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            q = rows[i][col]
            if q == 0:
                continue
            ri = [p * a - q * b for a, b in zip(rows[i], rows[rank])]
            g = vec_gcd(ri)
            if g > 1:
                ri = [x // g for x in ri]
            rows[i] = ri
        rank += 1
        if rank == len(rows):
            break
    return rank


def rat_inv(M) -> list[list[Fraction]] | None:
    """Inverse of a square rational matrix, or None if singular."""
    n = len(M)
    cols = []
    for j in range(n):
        unit = [Fraction(1) if i == j else Fraction(0) for i in range(n)]
        sol = rat_solve(M, unit)
        if sol is None:
            return None
        cols.append(sol)
    if rat_rank(M) < n:
        return None
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def rat_solve(A, b) -> list[Fraction] | None:
    """One rational solution x of A x = b, or None if inconsistent.

    Free variables are set to zero, so the result is deterministic.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [_clear_row(list(A[i]) + [b[i]]) for i in range(m)]
    pivots: list[tuple[int, int]] = []  # (row, col) in echelon order
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if aug[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r][col]
        for i in range(r + 1, m):
            q = aug[i][col]
            if q == 0:
                continue
            ri = [p * a - q * bb for a, bb in zip(aug[i], aug[r])]
            g = vec_gcd(ri)
            if g > 1:
                ri = [x // g for x in ri]
            aug[i] = ri
        pivots.append((r, col))
        r += 1
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for row, col in reversed(pivots):
        s = Fraction(aug[row][n])
        for j in range(col + 1, n):
            if aug[row][j]:
                s -= aug[row][j] * x[j]
        x[col] = s / aug[row][col]
    return x
