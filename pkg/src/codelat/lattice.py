"""Exact rational lattices.

A lattice is stored as an integer numerator matrix over a single common
denominator: the actual vectors are rows/denom and the inner product is the
standard dot product of the rational ambient space.  The stored basis is the
row Hermite normal form of the numerator matrix with the smallest valid
denominator, so two generating sets of the same lattice always produce the
identical object.  All norm computations are exact; short vectors come from a
Fincke-Pohst style recursion whose interval bounds are rounded outward and
whose candidates are confirmed by exact norm evaluation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .exact import (ZERO, det_fraction, hnf, hnf_with_transform, lcm,
                    solve_row_combination, vdot)


_INTERNED: dict = {}


class Lattice:
    """Integral multiple of a rational lattice: rows/denom in Q^ambient_dim."""

    __slots__ = ("ambient_dim", "denom", "basis", "_gram", "_layers")

    def __init__(self, ambient_dim: int, denom: int, basis):
        """Canonicalize the given integer generator rows; rows may be
        dependent or redundant, the stored basis is their HNF."""
        if denom < 1:
            raise ValueError("denominator must be positive")
        rows = [tuple(int(x) for x in row) for row in basis]
        for row in rows:
            if len(row) != ambient_dim:
                raise ValueError("row length does not match ambient dimension")
        reduced = hnf(rows)
        g = denom
        for row in reduced:
            for x in row:
                g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            reduced = tuple(tuple(x // g for x in row) for row in reduced)
            denom //= g
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "denom", denom)
        object.__setattr__(self, "basis", reduced)
        object.__setattr__(self, "_gram", None)
        object.__setattr__(self, "_layers", {})

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    @classmethod
    def from_rows(cls, rows, ambient_dim: int | None = None) -> "Lattice":
        """Build from rational rows (tuples of Fraction or int)."""
        rows = [tuple(Fraction(x) for x in row) for row in rows]
        if ambient_dim is None:
            if not rows:
                raise ValueError("ambient dimension required for empty input")
            ambient_dim = len(rows[0])
        denom = 1
        for row in rows:
            for x in row:
                denom = lcm(denom, x.denominator)
        numer = [[int(x * denom) for x in row] for row in rows]
        return cls(ambient_dim, denom, numer)

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(n, 1, [[1 if j == i else 0 for j in range(n)] for i in range(n)])

    def interned(self) -> "Lattice":
        """A shared instance for this lattice value, so enumeration caches
        survive reconstruction from equal generating sets."""
        key = (self.ambient_dim, self.denom, self.basis)
        found = _INTERNED.get(key)
        if found is None:
            _INTERNED[key] = found = self
        return found

    # -- basic data ---------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.basis)

    def vector(self, i: int) -> tuple[Fraction, ...]:
        d = self.denom
        return tuple(Fraction(x, d) for x in self.basis[i])

    def vectors(self):
        return tuple(self.vector(i) for i in range(self.rank))

    def gram(self):
        """Exact Gram matrix of the stored basis."""
        if self._gram is None:
            d2 = self.denom * self.denom
            g = tuple(tuple(Fraction(vdot(a, b), d2) for b in self.basis)
                      for a in self.basis)
            object.__setattr__(self, "_gram", g)
        return self._gram

    def det(self) -> Fraction:
        return det_fraction(self.gram())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Lattice)
                and (self.ambient_dim, self.denom, self.basis)
                == (other.ambient_dim, other.denom, other.basis))

    def __hash__(self):
        return hash((self.ambient_dim, self.denom, self.basis))

    def __repr__(self):
        return (f"Lattice(ambient_dim={self.ambient_dim}, denom={self.denom}, "
                f"rank={self.rank})")

    # -- membership ---------------------------------------------------------

    def coords(self, vec):
        """Integer coordinates of vec in the stored basis, or None."""
        vec = tuple(Fraction(x) for x in vec)
        scaled = [x * self.denom for x in vec]
        if any(x.denominator != 1 for x in scaled):
            return None
        residual = [int(x) for x in scaled]
        coeffs = []
        for row in self.basis:
            pivot_col = next(j for j, x in enumerate(row) if x)
            q, r = divmod(residual[pivot_col], row[pivot_col])
            if r:
                return None
            coeffs.append(q)
            if q:
                residual = [residual[j] - q * row[j] for j in range(len(residual))]
        if any(residual):
            return None
        return tuple(coeffs)

    def __contains__(self, vec) -> bool:
        return self.coords(vec) is not None

    def span_coords(self, vec):
        """Rational coordinates of vec in the basis, or None if outside the span."""
        return solve_row_combination(self.vectors(), tuple(Fraction(x) for x in vec))

    def coeff_to_vector(self, coeffs) -> tuple[Fraction, ...]:
        d = self.denom
        n = self.ambient_dim
        out = [0] * n
        for c, row in zip(coeffs, self.basis):
            if c:
                for j in range(n):
                    out[j] += c * row[j]
        return tuple(Fraction(x, d) for x in out)

    # -- derived lattices ----------------------------------------------------

    def dual(self) -> "Lattice":
        """Vectors of the rational span pairing integrally with the lattice."""
        if self.rank == 0:
            return Lattice(self.ambient_dim, 1, ())
        from .exact import mat_inverse, matmul
        ginv = mat_inverse(self.gram())
        rows = matmul(ginv, self.vectors())
        return Lattice.from_rows(rows, self.ambient_dim)

    def is_even(self) -> bool:
        g = self.gram()
        for i in range(self.rank):
            for j in range(i, self.rank):
                v = g[i][j]
                if v.denominator != 1:
                    return False
                if i == j and v.numerator % 2:
                    return False
        return True

    # -- enumeration ---------------------------------------------------------

    def _reduced(self):
        """Cached LLL-reduced copy of the basis for enumeration: skewed HNF
        bases make the recursion intervals explode."""
        cached = self._layers.get("reduced")
        if cached is None:
            from .exact import lll_reduce
            red, _t = lll_reduce(self.basis)
            d2 = self.denom * self.denom
            gram = tuple(tuple(Fraction(vdot(a, b), d2) for b in red) for a in red)
            cached = (red, gram)
            self._layers["reduced"] = cached
        return cached

    def _enumerate_ball(self, bound: Fraction, shift=None):
        """Yield (coeff tuple w.r.t. the reduced basis, exact norm) for all
        integer coefficient rows a with |a + shift|^2 <= bound; `shift` is in
        reduced-basis coordinates."""
        _red, gram = self._reduced()
        yield from _enumerate_gram_ball(gram, bound, shift)

    def _reduced_coeff_to_vector(self, coeffs) -> tuple[Fraction, ...]:
        red, _gram = self._reduced()
        d = self.denom
        n = self.ambient_dim
        out = [0] * n
        for c, row in zip(coeffs, red):
            if c:
                for j in range(n):
                    out[j] += c * row[j]
        return tuple(Fraction(x, d) for x in out)

    def _census(self, bound: Fraction) -> dict:
        """Map norm -> count of nonzero vectors with norm <= bound; cached and
        reused for any smaller bound."""
        cached_bound = self._layers.get("census_bound")
        if cached_bound is None or bound > cached_bound:
            counts: dict[Fraction, int] = {}
            for _, norm in self._enumerate_ball(bound):
                if norm > 0:
                    counts[norm] = counts.get(norm, 0) + 1
            self._layers["census_bound"] = bound
            self._layers["census"] = counts
            return counts
        return {n: c for n, c in self._layers["census"].items() if n <= bound}

    def vectors_of_norm(self, r) -> tuple[tuple[Fraction, ...], ...]:
        """All lattice vectors of exact squared norm r, both signs, ordered
        with one representative of each +- pair followed by its negation."""
        r = Fraction(r)
        if r <= 0:
            raise ValueError("norm must be positive")
        key = ("norm", r)
        if key not in self._layers:
            reps = set()
            for coeffs, norm in self._enumerate_ball(r):
                if norm == r:
                    vec = self._reduced_coeff_to_vector(coeffs)
                    reps.add(min(vec, tuple(-x for x in vec)))
            ordered = []
            # pairs sorted lexicographically by their smaller representative,
            # each followed by its negation
            for v in sorted(reps):
                ordered.append(v)
                ordered.append(tuple(-x for x in v))
            self._layers[key] = tuple(ordered)
        return self._layers[key]

    def min_norms(self, count: int) -> list[Fraction]:
        """The first `count` distinct squared norms of nonzero vectors."""
        if count < 1:
            raise ValueError("count must be positive")
        if self.rank == 0:
            raise ValueError("rank-0 lattice has no nonzero vectors")
        _red, gram = self._reduced()
        step = min(gram[i][i] for i in range(self.rank))
        bound = step
        while True:
            norms = sorted(self._census(bound))
            if len(norms) >= count:
                return norms[:count]
            bound += step

    def layer_profile(self, depth: int):
        """First `depth` (norm, cardinality) layers; an isometry invariant."""
        key = ("profile", depth)
        if key not in self._layers:
            norms = self.min_norms(depth)
            counts = self._census(norms[-1])
            self._layers[key] = tuple((n, counts[n]) for n in norms)
        return self._layers[key]

    def coset_min_norm(self, t) -> Fraction:
        """Exact minimum of (x, x) over the coset t + L; t must lie in the
        rational span of L."""
        t = tuple(Fraction(x) for x in t)
        if self.rank == 0:
            if any(x != 0 for x in t):
                raise ValueError("coset representative outside the lattice span")
            return ZERO
        red, gram = self._reduced()
        d = self.denom
        red_vecs = [tuple(Fraction(x, d) for x in row) for row in red]
        tau = solve_row_combination(red_vecs, t)
        if tau is None:
            raise ValueError("coset representative outside the lattice span")
        start = tuple(-round(c) for c in tau)
        best = _gram_norm(gram, tuple(s + c for s, c in zip(start, tau)))
        if best == 0:
            return ZERO
        for _, norm in self._enumerate_ball(best, shift=tau):
            if norm < best:
                best = norm
                if best == 0:
                    break
        return best

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "denom": self.denom,
                "basis": [list(row) for row in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        return cls(int(data["ambient_dim"]), int(data["denom"]),
                   [tuple(row) for row in data["basis"]])


# ---------------------------------------------------------------------------
# quadratic form enumeration helpers

def _ldl(gram):
    """Diagonal/upper decomposition: Q(x) = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2."""
    r = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    d = [ZERO] * r
    m = [[ZERO] * r for _ in range(r)]
    for i in range(r):
        di = a[i][i]
        if di <= 0:
            raise ValueError("Gram matrix is not positive definite")
        d[i] = di
        for j in range(i + 1, r):
            m[i][j] = a[i][j] / di
        for k in range(i + 1, r):
            aik = a[i][k]
            if aik == 0:
                continue
            f = aik / di
            for l in range(k, r):
                a[k][l] -= f * a[i][l]
    return d, m


def _floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def _max_int_leq(c: Fraction, t: Fraction) -> int:
    """Largest integer n with n <= c + sqrt(t); t >= 0."""
    approx = isqrt(t.numerator * t.denominator) // t.denominator
    n = _floor_fraction(c) + approx + 2
    while True:
        diff = n - c
        if diff <= 0 or diff * diff <= t:
            return n
        n -= 1


def _min_int_geq(c: Fraction, t: Fraction) -> int:
    return -_max_int_leq(-c, t)


def _gram_norm(gram, coeffs) -> Fraction:
    total = ZERO
    r = len(gram)
    for i in range(r):
        ci = coeffs[i]
        if ci == 0:
            continue
        row = gram[i]
        total += ci * ci * row[i]
        for j in range(i + 1, r):
            if coeffs[j] != 0:
                total += 2 * ci * coeffs[j] * row[j]
    return total


def _enumerate_gram_ball(gram, bound, shift=None):
    """All integer rows a with Q(a + shift) <= bound for the PD form `gram`.

    Interval ends are rounded outward via exact integer square roots and every
    candidate contributes its exactly evaluated norm, so the output is both
    complete and exact.
    """
    bound = Fraction(bound)
    r = len(gram)
    if r == 0:
        if bound >= 0:
            yield (), ZERO
        return
    if shift is None:
        shift = (ZERO,) * r
    else:
        shift = tuple(Fraction(s) for s in shift)
    d, m = _ldl(gram)
    x = [0] * r

    def rec(i: int, remaining: Fraction, used: Fraction):
        c = shift[i]
        mi = m[i]
        for j in range(i + 1, r):
            if mi[j] != 0:
                c += mi[j] * (x[j] + shift[j])
        t = remaining / d[i]
        lo = _min_int_geq(-c, t)
        hi = _max_int_leq(-c, t)
        for xi in range(lo, hi + 1):
            y = xi + c
            term = d[i] * y * y
            if term > remaining:
                continue
            x[i] = xi
            if i == 0:
                yield tuple(x), used + term
            else:
                yield from rec(i - 1, remaining - term, used + term)
        x[i] = 0

    yield from rec(r - 1, bound, ZERO)


# ---------------------------------------------------------------------------
# binary operations

def index(sub: Lattice, sup: Lattice) -> int:
    """Group index |sup / sub| for a finite-index sublattice."""
    if sub.rank != sup.rank:
        raise ValueError("index requires equal ranks")
    if sub.rank == 0:
        return 1
    rows = []
    for i in range(sub.rank):
        coeffs = sup.span_coords(sub.vector(i))
        if coeffs is None:
            raise ValueError("not a sublattice: vector outside the span")
        if any(c.denominator != 1 for c in coeffs):
            raise ValueError("not a sublattice: non-integral coordinates")
        rows.append(tuple(int(c) for c in coeffs))
    d = det_fraction(rows)
    if d == 0:
        raise ValueError("sublattice has lower rank")
    assert d.denominator == 1
    return abs(d.numerator)


def join(a: Lattice, b: Lattice) -> Lattice:
    """Lattice generated by both inputs."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    d = lcm(a.denom, b.denom)
    rows = [tuple(x * (d // a.denom) for x in row) for row in a.basis]
    rows += [tuple(x * (d // b.denom) for x in row) for row in b.basis]
    return Lattice(a.ambient_dim, d, rows)


def kernel_sublattice(lat: Lattice, functional, modulus: int) -> Lattice:
    """Sublattice {x in L : (x, functional) is an integer}.

    The functional must take values in (1/modulus)Z on L; the index of the
    kernel then divides `modulus`.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    w = tuple(Fraction(x) for x in functional)
    values = []
    for i in range(lat.rank):
        q = vdot(lat.vector(i), w) * modulus
        if q.denominator != 1:
            raise ValueError("functional is not (1/modulus)-integral on the lattice")
        values.append(int(q))
    column = [[v] for v in values] + [[modulus]]
    h, u = hnf_with_transform(column)
    coeff_rows = [u[i][:lat.rank] for i in range(len(h)) if h[i][0] == 0]
    rows = []
    for coeffs in coeff_rows:
        out = [0] * lat.ambient_dim
        for c, brow in zip(coeffs, lat.basis):
            if c:
                for j in range(lat.ambient_dim):
                    out[j] += c * brow[j]
        rows.append(tuple(out))
    return Lattice(lat.ambient_dim, lat.denom, rows)
