"""Root-lattice data for A_{n-1} and the two code-to-lattice constructions.

A_{n-1} is the sum-zero sublattice of Z^n with simple roots a_i = e_i -
e_{i+1}.  The dual basis vectors eps_i have (eps_i, eps_i) = (n-1)/n and
(eps_i, eps_j) = -1/n, and eps_1 generates the glue group dual/root of order
n.  A code C over F_p of length k is identified with a subgroup of the glue
group of the k-fold product via the classes of eps_1 per coordinate:

  construction_a(C)  = preimage of C, generated by the glue lifts of the
                       generators of C together with the k-fold root lattice;
  construction_b(C)  = the index-p sublattice cut out by integrality of the
                       pairing with the character vector chi = (rho, ..., rho)/p.

Orientation convention: the per-coordinate sign flip of code equivalence
corresponds to the diagram automorphism e_i -> -e_{n+1-i} of the coordinate's
A_{p-1} block, which negates the glue class.  Coordinate permutations of the
code correspond to block permutations.  Both are realized exactly by
`monomial_map`.
"""

from __future__ import annotations

from fractions import Fraction

from .codes import Code, SignedPermutation
from .exact import vdot
from .isometry import AmbientMap
from .lattice import Lattice, kernel_sublattice


class AnData:
    """Simple roots, dual basis vectors, and the positive-root half sum of
    A_{n-1} inside Z^n."""

    __slots__ = ("n", "alpha", "epsilon", "rho")

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        self.alpha = tuple(
            tuple(Fraction(1) if j == i else Fraction(-1) if j == i + 1 else Fraction(0)
                  for j in range(n))
            for i in range(n - 1))
        self.epsilon = tuple(
            tuple(Fraction(n - 1, n) if j == i else Fraction(-1, n) for j in range(n))
            for i in range(n))
        # half sum of positive roots: coordinates (n+1-2i)/2 for i = 1..n
        self.rho = tuple(Fraction(n + 1 - 2 * (i + 1), 2) for i in range(n))

    def lattice(self) -> Lattice:
        return Lattice.from_rows(self.alpha, self.n)

    def lambda_block(self, j: int) -> tuple[Fraction, ...]:
        """Glue representative lambda_j = j eps_1 - sum_{i<j} (j-i) a_i."""
        if not 0 <= j < self.n:
            raise ValueError("glue class out of range")
        out = [j * x for x in self.epsilon[0]]
        for i in range(j - 1):
            coeff = j - (i + 1)
            for t in range(self.n):
                out[t] -= coeff * self.alpha[i][t]
        return tuple(out)

    def glue_class(self, block) -> int:
        """Class of a dual vector in dual/root identified with Z_n via eps_1."""
        t = block[0] * self.n
        if t.denominator != 1:
            raise ValueError("vector is not in the dual lattice")
        c = (-int(t)) % self.n
        diff = tuple(b - l for b, l in zip(block, self.lambda_block(c)))
        if any(x.denominator != 1 for x in diff) or sum(diff) != 0:
            raise ValueError("vector is not in the dual lattice")
        return c


_AN_CACHE: dict[int, AnData] = {}


def an_data(n: int) -> AnData:
    if n not in _AN_CACHE:
        _AN_CACHE[n] = AnData(n)
    return _AN_CACHE[n]


def an_lattice(n: int) -> Lattice:
    """The root lattice A_{n-1} in Z^n."""
    return an_data(n).lattice()


def embed_block(p: int, k: int, block_index: int, block) -> tuple[Fraction, ...]:
    """Place a length-p vector into block `block_index` of Q^(pk)."""
    out = [Fraction(0)] * (p * k)
    for j, x in enumerate(block):
        out[block_index * p + j] = Fraction(x)
    return tuple(out)


def block_of(p: int, vec, block_index: int):
    return tuple(vec[block_index * p + j] for j in range(p))


def chi_vector(p: int, k: int) -> tuple[Fraction, ...]:
    """(rho, rho, ..., rho) / p in the k-fold ambient space."""
    rho = an_data(p).rho
    return tuple(Fraction(x, p) for _ in range(k) for x in rho)


def lambda_lift(p: int, word) -> tuple[Fraction, ...]:
    """The glue vector of a codeword: per-coordinate representatives
    lambda_{c_i} concatenated."""
    an = an_data(p)
    out: list[Fraction] = []
    for c in word:
        if not 0 <= c < p:
            raise ValueError("codeword entry out of range")
        out.extend(an.lambda_block(c))
    return tuple(out)


def ambient_roots(p: int, k: int) -> Lattice:
    """The k-fold product of A_{p-1}, ambient dimension pk."""
    an = an_data(p)
    rows = [embed_block(p, k, i, a) for i in range(k) for a in an.alpha]
    return Lattice.from_rows(rows, p * k).interned()


def construction_a(code: Code) -> Lattice:
    """Preimage of the code under the glue map, built from generators."""
    p, k = code.p, code.k
    an = an_data(p)
    rows = [embed_block(p, k, i, a) for i in range(k) for a in an.alpha]
    rows += [lambda_lift(p, g) for g in code.gens]
    return Lattice.from_rows(rows, p * k).interned()


def construction_b(code: Code) -> Lattice:
    """Sublattice of construction_a(code) pairing integrally with chi."""
    if not code.is_self_orthogonal():
        raise ValueError("construction B requires a self-orthogonal code")
    la = construction_a(code)
    lb = kernel_sublattice(la, chi_vector(code.p, code.k), code.p)
    return lb.interned()


def construction(code: Code, which: str) -> Lattice:
    if which == "A":
        return construction_a(code)
    if which == "B":
        return construction_b(code)
    raise ValueError(f"unknown construction {which!r}")


def glue_image(p: int, k: int, vec) -> tuple[int, ...]:
    """The codeword of classes of a vector of the k-fold dual lattice."""
    an = an_data(p)
    return tuple(an.glue_class(block_of(p, vec, i)) for i in range(k))


def monomial_map(p: int, k: int, g: SignedPermutation) -> AmbientMap:
    """The ambient isometry matching the signed permutation g on glue classes:
    block i is carried to block g.perm[i], with the diagram flip applied when
    the sign of the destination is -1.  It maps construction_a(C) onto
    construction_a(g(C)) for every code C."""
    if g.k != k:
        raise ValueError("signed permutation length mismatch")
    n = p * k
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(k):
        dest = g.perm[i]
        flip = g.signs[dest] == -1
        for j in range(p):
            src_col = i * p + j
            if flip:
                mat[dest * p + (p - 1 - j)][src_col] = Fraction(-1)
            else:
                mat[dest * p + j][src_col] = Fraction(1)
    return AmbientMap(mat)


def diagram_flip_map(p: int, k: int, block_index: int) -> AmbientMap:
    """The order-two diagram automorphism e_j -> -e_{p+1-j} on one block."""
    n = p * k
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = Fraction(1)
    base = block_index * p
    for j in range(p):
        for t in range(n):
            mat[base + j][t] = Fraction(0)
        mat[base + j][base + (p - 1 - j)] = Fraction(-1)
    return AmbientMap(mat)


def block_permutation_map(p: int, k: int, block_index: int, perm) -> AmbientMap:
    """A Weyl element of one block: permutation of its p ambient coordinates."""
    n = p * k
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = Fraction(1)
    base = block_index * p
    for j in range(p):
        for t in range(n):
            mat[base + j][t] = Fraction(0)
    for j in range(p):
        mat[base + perm[j]][base + j] = Fraction(1)
    return AmbientMap(mat)


def norm(vec) -> Fraction:
    return vdot(vec, vec)
