"""Exact linear algebra over a RealCyclotomicField.

Small dense matrices only (rank <= ~8): cofactor/bitmask determinants,
characteristic polynomial via principal-minor sums (division free), inertia
through Descartes' rule (valid because the matrices are symmetric, hence all
eigenvalues real), and Gaussian-elimination rank.
"""

from __future__ import annotations

from itertools import combinations


def det(field, M):
    """Determinant by expansion along the first row with subset memoization."""
    n = len(M)
    if n == 0:
        return field.one
    cache = {}

    def minor(row, cols):
        if row == n:
            return field.one
        key = cols
        if key in cache:
            return cache[key]
        acc = field.zero
        sign = 1
        rest = list(cols)
        for idx, c in enumerate(rest):
            entry = M[row][c]
            if not entry.is_zero():
                sub = minor(row + 1, tuple(x for x in rest if x != c))
                term = entry * sub
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        cache[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def principal_submatrix(M, idx):
    return tuple(tuple(M[i][j] for j in idx) for i in idx)


def leading_principal_minors(field, M):
    """Determinants of the k x k upper-left blocks, k = 1..n."""
    return [det(field, principal_submatrix(M, tuple(range(k))))
            for k in range(1, len(M) + 1)]


def charpoly_minor_sums(field, M):
    """e_k = sum of all principal k x k minors, k = 1..n (e_0 = 1 implied).

    The characteristic polynomial is sum_k (-1)^k e_k lambda^(n-k).
    """
    n = len(M)
    out = []
    for k in range(1, n + 1):
        acc = field.zero
        for idx in combinations(range(n), k):
            acc = acc + det(field, principal_submatrix(M, idx))
        out.append(acc)
    return out


def inertia(field, M):
    """(positives, negatives, zeros) of a symmetric matrix, exactly."""
    n = len(M)
    e = charpoly_minor_sums(field, M)
    signs = [s.sign() for s in e]
    zeros = n
    for k in range(n, 0, -1):
        if signs[k - 1] != 0:
            zeros = n - k
            break
    # coefficient sequence of charpoly from lambda^n down: 1, -e1, e2, ...
    seq = [1]
    for k in range(1, n + 1):
        seq.append(signs[k - 1] if k % 2 == 0 else -signs[k - 1])
    nonzero = [s for s in seq if s != 0]
    pos = sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)
    return pos, n - pos - zeros, zeros


def matrix_rank(field, M):
    """Rank by fraction-based Gaussian elimination (exact field division)."""
    if not M:
        return 0
    rows = [list(r) for r in M]
    n, m = len(rows), len(rows[0])
    rank = 0
    col = 0
    for col in range(m):
        pivot = None
        for r in range(rank, n):
            if not rows[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        for r in range(rank + 1, n):
            if rows[r][col].is_zero():
                continue
            factor = rows[r][col] * inv
            for c in range(col, m):
                rows[r][c] = rows[r][c] - factor * rows[rank][c]
        rank += 1
        if rank == n:
            break
    return rank
