"""Gaussian elimination over a field given as a ``Ring``."""

from __future__ import annotations

from .rings import Ring


def row_reduce(ring: Ring, rows, ncols: int):
    """Reduced row echelon form in place; returns the pivot columns."""
    R = ring
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not R.is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = R.inv(rows[r][c])
        rows[r] = [R.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and not R.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def solve(ring: Ring, A, b):
    """One solution x of A x = b, or None if inconsistent.

    Returns (x, rank, nullity).
    """
    R = ring
    n = len(A[0]) if A else 0
    rows = [list(row) + [bi] for row, bi in zip(A, b)]
    pivots = row_reduce(R, rows, n + 1)
    if n in pivots:
        return None, len(pivots) - 1, None
    x = [R.zero] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x, len(pivots), n - len(pivots)


def nullspace(ring: Ring, A, ncols: int):
    """Basis of {x : A x = 0}."""
    R = ring
    rows = [list(r) for r in A]
    pivots = row_reduce(R, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [R.zero] * ncols
        v[f] = R.one
        for i, c in enumerate(pivots):
            v[c] = R.neg(rows[i][f])
        basis.append(v)
    return basis


def rank(ring: Ring, A, ncols: int) -> int:
    return len(row_reduce(ring, [list(r) for r in A], ncols))


def det(ring: Ring, M):
    """Determinant by elimination (field) -- for integer matrices use ``det_int``."""
    R = ring
    n = len(M)
    a = [list(r) for r in M]
    d = R.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not R.is_zero(a[i][c])), None)
        if piv is None:
            return R.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = R.neg(d)
        d = R.mul(d, a[c][c])
        inv = R.inv(a[c][c])
        for i in range(c + 1, n):
            if not R.is_zero(a[i][c]):
                f = R.mul(a[i][c], inv)
                a[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(a[i], a[c])]
    return d
