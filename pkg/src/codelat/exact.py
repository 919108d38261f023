"""Exact integer and rational linear algebra.

Everything here works over Python ints and fractions.Fraction; no floating
point is used anywhere.  Matrices are tuples/lists of row tuples, vectors are
tuples.  Row HNF is the canonical form used for lattice equality throughout
the package.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

ZERO = Fraction(0)
ONE = Fraction(1)


class BudgetExceededError(RuntimeError):
    """A configurable search or enumeration cap was hit."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


# ---------------------------------------------------------------------------
# vectors (tuples of Fraction or int)

def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def vdot(u, v):
    return sum(a * b for a, b in zip(u, v))


def is_zero_vec(u) -> bool:
    return all(a == 0 for a in u)


def as_fraction_vec(u) -> tuple[Fraction, ...]:
    return tuple(Fraction(a) for a in u)


# ---------------------------------------------------------------------------
# integer matrices

def _hnf_inplace(work: list[list[int]], ncols: int) -> int:
    """Reduce `work` to row HNF in place; returns the rank.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    pivot columns strictly increase.  Rows past the rank are zero.
    """
    r = 0
    nrows = len(work)
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if work[i][col]:
                if piv is None:
                    piv = i
                else:
                    a, b = work[piv][col], work[i][col]
                    g, x, y = xgcd(a, b)
                    u, v = a // g, b // g
                    rp, ri = work[piv], work[i]
                    new_p = [x * rp[j] + y * ri[j] for j in range(len(rp))]
                    new_i = [-v * rp[j] + u * ri[j] for j in range(len(rp))]
                    work[piv], work[i] = new_p, new_i
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        if work[r][col] < 0:
            work[r] = [-x for x in work[r]]
        a = work[r][col]
        for i in range(r):
            q = work[i][col] // a
            if q:
                work[i] = [work[i][j] - q * work[r][j] for j in range(len(work[i]))]
        r += 1
    return r


def hnf(rows) -> tuple[tuple[int, ...], ...]:
    """Row Hermite normal form of an integer matrix, zero rows dropped."""
    rows = [list(r) for r in rows]
    if not rows:
        return ()
    n = len(rows[0])
    r = _hnf_inplace(rows, n)
    return tuple(tuple(row) for row in rows[:r])


def hnf_with_transform(rows) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Return (H, U) with U unimodular and U*M = H; H keeps zero rows."""
    rows = [list(r) for r in rows]
    m = len(rows)
    if m == 0:
        return (), ()
    n = len(rows[0])
    aug = [rows[i] + [1 if j == i else 0 for j in range(m)] for i in range(m)]
    _hnf_inplace(aug, n)
    h = tuple(tuple(row[:n]) for row in aug)
    u = tuple(tuple(row[n:]) for row in aug)
    return h, u


def left_kernel(rows) -> tuple[tuple[int, ...], ...]:
    """Basis of {x integer row : x*M = 0}."""
    h, u = hnf_with_transform(rows)
    return tuple(u[i] for i in range(len(h)) if all(c == 0 for c in h[i]))


def det_int(mat) -> int:
    d = det_fraction(mat)
    assert d.denominator == 1
    return d.numerator


# ---------------------------------------------------------------------------
# rational matrices

def det_fraction(mat) -> Fraction:
    n = len(mat)
    if n == 0:
        return ONE
    a = [[Fraction(x) for x in row] for row in mat]
    det = ONE
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] * inv
                a[i] = [a[i][j] - f * a[col][j] for j in range(n)]
    return det


def mat_inverse(mat) -> tuple[tuple[Fraction, ...], ...]:
    n = len(mat)
    a = [[Fraction(x) for x in row] + [ONE if j == i else ZERO for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [a[i][j] - f * a[col][j] for j in range(2 * n)]
    return tuple(tuple(row[n:]) for row in a)


def matmul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(vdot(row, col) for col in bt) for row in a)


def mat_transpose(m):
    return tuple(zip(*m))


def identity_matrix(n, one=1):
    return tuple(tuple(one if i == j else 0 * one for j in range(n)) for i in range(n))


def solve_row_combination(basis_rows, v):
    """Rational coefficients a with a*B = v, or None if v is outside the span."""
    if not basis_rows:
        return () if is_zero_vec(v) else None
    m = len(basis_rows)
    n = len(basis_rows[0])
    # solve Bt * a = v by Gaussian elimination on the augmented system
    aug = [[Fraction(basis_rows[i][j]) for i in range(m)] + [Fraction(v[j])]
           for j in range(n)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((i for i in range(row, n) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [aug[i][j] - f * aug[row][j] for j in range(m + 1)]
        pivots.append(col)
        row += 1
    for i in range(row, n):
        if aug[i][m] != 0:
            return None
    coeffs = [ZERO] * m
    for i, col in enumerate(pivots):
        coeffs[col] = aug[i][m]
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# LLL reduction (exact, used only as internal preprocessing)

def lll_reduce(rows) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Exact LLL (delta = 3/4) on integer rows; returns (reduced, T) with
    reduced = T * rows and T unimodular."""
    b = [list(r) for r in rows]
    n = len(b)
    if n <= 1:
        return tuple(tuple(r) for r in b), identity_matrix(n)
    t = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    delta = Fraction(3, 4)

    def gso():
        mu = [[ZERO] * n for _ in range(n)]
        bstar_sq = [ZERO] * n
        bstar = [[Fraction(x) for x in row] for row in b]
        for i in range(n):
            for j in range(i):
                denom = bstar_sq[j]
                mu[i][j] = (vdot(b[i], bstar[j]) / denom) if denom else ZERO
                bstar[i] = [bstar[i][k] - mu[i][j] * bstar[j][k] for k in range(len(bstar[i]))]
            bstar_sq[i] = vdot(bstar[i], bstar[i])
        return mu, bstar_sq

    mu, bsq = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                q = round(mu[k][j])
                b[k] = [b[k][i] - q * b[j][i] for i in range(len(b[k]))]
                t[k] = [t[k][i] - q * t[j][i] for i in range(n)]
                mu, bsq = gso()
        if bsq[k] >= (delta - mu[k][k - 1] ** 2) * bsq[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            t[k], t[k - 1] = t[k - 1], t[k]
            mu, bsq = gso()
            k = max(k - 1, 1)
    return tuple(tuple(r) for r in b), tuple(tuple(r) for r in t)
