"""Linear algebra over the prime field F_p.

Vectors are tuples of ints in 0..p-1; matrices are tuples of such rows.
"""

from __future__ import annotations

from itertools import product


def vdot(u, v, p: int) -> int:
    return sum(a * b for a, b in zip(u, v)) % p


def vadd(u, v, p: int):
    return tuple((a + b) % p for a, b in zip(u, v))


def vscale(c, u, p: int):
    return tuple((c * a) % p for a in u)


def weight(u) -> int:
    return sum(1 for a in u if a)


def rref(rows, p: int):
    """Reduced row echelon form mod p; returns (rows, pivot_columns)."""
    work = [[a % p for a in row] for row in rows]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = pow(work[r][col], p - 2, p)
        work[r] = [(x * inv) % p for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [(work[i][j] - f * work[r][j]) % p for j in range(ncols)]
        pivots.append(col)
        r += 1
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def nullspace(rows, k: int, p: int):
    """RREF basis of the right kernel {x : M x = 0} in F_p^k."""
    red, pivots = rref(rows, p) if rows else ((), ())
    free = [c for c in range(k) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * k
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-red[i][fc]) % p
        basis.append(tuple(v))
    red_basis, _ = rref(basis, p) if basis else ((), ())
    return red_basis


def reduce_against(red_rows, pivots, v, p: int):
    """Residue of v after elimination against RREF rows (zero iff in span)."""
    w = [a % p for a in v]
    for row, pc in zip(red_rows, pivots):
        if w[pc]:
            f = w[pc]
            w = [(w[j] - f * row[j]) % p for j in range(len(w))]
    return tuple(w)


def span(rows, p: int):
    """Iterate the full span of the given rows (p^len(rows) words)."""
    k = len(rows[0]) if rows else 0
    if not rows:
        yield (0,) * k
        return
    for coeffs in product(range(p), repeat=len(rows)):
        w = [0] * k
        for c, row in zip(coeffs, rows):
            if c:
                for j in range(k):
                    w[j] = (w[j] + c * row[j]) % p
        yield tuple(w)
