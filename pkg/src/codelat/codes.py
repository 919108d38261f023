"""Linear codes over F_p, signed-permutation equivalence, and exhaustive
classification of self-orthogonal codes.

A code is stored canonically as its reduced row echelon generator matrix.
The code-isomorphism group used everywhere is the group generated by
coordinate permutations and per-coordinate negations; it is deliberately
smaller than the full monomial group over F_p^* for p >= 5.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product

from . import fp
from .exact import BudgetExceededError

CANONICAL_GROUP_CAP = 1_000_000
ENUMERATION_WORD_CAP = 200_000


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Code:
    """A linear code over F_p held as a canonical RREF generator matrix."""

    __slots__ = ("p", "k", "gens")

    def __init__(self, p: int, k: int, rows=()):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p}")
        if k < 1:
            raise ValueError("length must be positive")
        for row in rows:
            if len(row) != k:
                raise ValueError("generator length mismatch")
        self.p = p
        self.k = k
        self.gens, _ = fp.rref(rows, p) if rows else ((), ())

    @classmethod
    def zero(cls, p: int, k: int) -> "Code":
        return cls(p, k)

    @property
    def dim(self) -> int:
        return len(self.gens)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Code)
                and (self.p, self.k, self.gens) == (other.p, other.k, other.gens))

    def __hash__(self):
        return hash((self.p, self.k, self.gens))

    def __repr__(self):
        return f"Code(p={self.p}, k={self.k}, gens={list(map(list, self.gens))})"

    def words(self):
        """All p^dim codewords."""
        return fp.span(self.gens, self.p)

    def contains(self, word) -> bool:
        red, pivots = fp.rref(self.gens, self.p) if self.gens else ((), ())
        return all(a == 0 for a in fp.reduce_against(red, pivots, word, self.p))

    def dual(self) -> "Code":
        return Code(self.p, self.k, fp.nullspace(self.gens, self.k, self.p))

    def is_self_orthogonal(self) -> bool:
        for i, g in enumerate(self.gens):
            for h in self.gens[i:]:
                if fp.vdot(g, h, self.p):
                    return False
        return True

    def weight_distribution(self) -> tuple[int, ...]:
        dist = [0] * (self.k + 1)
        for w in self.words():
            dist[fp.weight(w)] += 1
        return tuple(dist)

    def extend(self, word) -> "Code":
        return Code(self.p, self.k, self.gens + (tuple(word),))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "generators": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data: dict) -> "Code":
        return cls(int(data["p"]), int(data["k"]), [tuple(r) for r in data["generators"]])


@dataclass(frozen=True)
class SignedPermutation:
    """A coordinate permutation plus per-coordinate signs.

    Acts on F_p^k by y[j] = signs[j] * x[perm^-1(j)], where perm[i] is the
    image of coordinate i (0-based).
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        k = len(self.perm)
        if sorted(self.perm) != list(range(k)) or len(self.signs) != k:
            raise ValueError("invalid signed permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +-1")

    @classmethod
    def identity(cls, k: int) -> "SignedPermutation":
        return cls(tuple(range(k)), (1,) * k)

    @property
    def k(self) -> int:
        return len(self.perm)

    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * self.k
        for i, j in enumerate(self.perm):
            inv[j] = i
        return tuple(inv)

    def apply_word(self, word, p: int):
        inv = self.inverse_perm()
        return tuple((self.signs[j] * word[inv[j]]) % p for j in range(self.k))

    def apply_code(self, code: Code) -> Code:
        return Code(code.p, code.k, [self.apply_word(g, code.p) for g in code.gens])

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        k = self.k
        perm = tuple(self.perm[other.perm[i]] for i in range(k))
        inv_self = self.inverse_perm()
        signs = tuple(self.signs[j] * other.signs[inv_self[j]] for j in range(k))
        return SignedPermutation(perm, signs)

    def inverse(self) -> "SignedPermutation":
        inv = self.inverse_perm()
        signs = tuple(self.signs[self.perm[i]] for i in range(self.k))
        return SignedPermutation(inv, signs)

    @classmethod
    def random(cls, k: int, rng: random.Random) -> "SignedPermutation":
        perm = list(range(k))
        rng.shuffle(perm)
        signs = tuple(rng.choice((1, -1)) for _ in range(k))
        return cls(tuple(perm), signs)


def dual_code(code: Code) -> Code:
    return code.dual()


def is_self_orthogonal(code: Code) -> bool:
    return code.is_self_orthogonal()


def coset_weight_count(code: Code, t, n: int) -> int:
    """Number of words of weight n in the coset t + C."""
    if len(t) != code.k:
        raise ValueError("coset representative has wrong length")
    count = 0
    for w in code.words():
        if fp.weight(fp.vadd(w, t, code.p)) == n:
            count += 1
    return count


# ---------------------------------------------------------------------------
# equivalence search

def _column_profile(words, i: int, p: int):
    prof = [0] * p
    for w in words:
        prof[w[i]] += 1
    return tuple(prof)


def _flip_profile(prof):
    return (prof[0],) + tuple(reversed(prof[1:]))


def _pair_profile(words, i: int, j: int, p: int):
    prof = [[0] * p for _ in range(p)]
    for w in words:
        prof[w[i]][w[j]] += 1
    return prof


def equivalent(code: Code, other: Code) -> SignedPermutation | None:
    """Search for g with g(code) = other; None when no witness exists.

    Backtracking over coordinate matchings, pruned by single-column and
    column-pair weight profiles of the full codeword sets.
    """
    if code.p != other.p or code.k != other.k:
        raise ValueError("codes must share p and length")
    p, k = code.p, code.k
    if code.dim != other.dim:
        return None
    if code.weight_distribution() != other.weight_distribution():
        return None
    if code == other and code.dim == 0:
        return SignedPermutation.identity(k)

    words_c = list(code.words())
    words_d = list(other.words())
    prof_c = [_column_profile(words_c, i, p) for i in range(k)]
    prof_d = [_column_profile(words_d, j, p) for j in range(k)]
    pair_c = [[_pair_profile(words_c, i, j, p) for j in range(k)] for i in range(k)]
    pair_d = [[_pair_profile(words_d, i, j, p) for j in range(k)] for i in range(k)]

    candidates: list[list[tuple[int, int]]] = []
    for i in range(k):
        opts = []
        for j in range(k):
            if prof_d[j] == prof_c[i]:
                opts.append((j, 1))
            if prof_d[j] == _flip_profile(prof_c[i]):
                opts.append((j, -1))
        if not opts:
            return None
        candidates.append(opts)

    order = sorted(range(k), key=lambda i: len(candidates[i]))
    assigned_j = [-1] * k
    assigned_s = [0] * k
    used = [False] * k

    def pair_ok(i1, j1, s1, i2, j2, s2) -> bool:
        pc = pair_c[i1][i2]
        pd = pair_d[j1][j2]
        for v1 in range(p):
            for v2 in range(p):
                if pc[v1][v2] != pd[(s1 * v1) % p][(s2 * v2) % p]:
                    return False
        return True

    def backtrack(pos: int) -> SignedPermutation | None:
        if pos == k:
            perm = tuple(assigned_j[i] for i in range(k))
            signs = [1] * k
            for i in range(k):
                signs[assigned_j[i]] = assigned_s[i]
            g = SignedPermutation(perm, tuple(signs))
            if g.apply_code(code) == other:
                return g
            return None
        i = order[pos]
        for (j, s) in candidates[i]:
            if used[j]:
                continue
            ok = True
            for prev in range(pos):
                ip = order[prev]
                if not pair_ok(i, j, s, ip, assigned_j[ip], assigned_s[ip]):
                    ok = False
                    break
            if not ok:
                continue
            used[j] = True
            assigned_j[i], assigned_s[i] = j, s
            found = backtrack(pos + 1)
            if found is not None:
                return found
            used[j] = False
        return None

    return backtrack(0)


def canonical_key(code: Code) -> tuple:
    """Lexicographically minimal generator matrix over the signed-permutation
    orbit, flattened.  Gives a total order on equivalence classes."""
    k, p = code.k, code.p
    group_size = 1
    for i in range(2, k + 1):
        group_size *= i
    group_size <<= k
    if group_size > CANONICAL_GROUP_CAP:
        raise BudgetExceededError(
            f"canonical key at length {k} needs {group_size} group elements")
    best = None
    for perm in permutations(range(k)):
        for signs in product((1, -1), repeat=k):
            g = SignedPermutation(perm, signs)
            flat = tuple(x for row in g.apply_code(code).gens for x in row)
            if best is None or flat < best:
                best = flat
    return (code.dim, best)


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class Catalog:
    """Complete list of self-orthogonal codes of length k over F_p, one
    canonical representative per signed-permutation class."""

    p: int
    k: int
    classes: tuple[Code, ...]

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def by_dim(self, d: int) -> tuple[Code, ...]:
        return tuple(c for c in self.classes if c.dim == d)


def _self_orthogonal_extensions(code: Code):
    """Self-orthogonal vectors in dual(C) \\ C, each spanning a valid extension."""
    dual = code.dual()
    seen = set()
    for v in fp.span(dual.gens, code.p):
        if fp.weight(v) == 0 or v in seen:
            continue
        # record the whole line through v; one representative is enough
        for c in range(1, code.p):
            seen.add(fp.vscale(c, v, code.p))
        if fp.vdot(v, v, code.p) == 0 and not code.contains(v):
            yield v


def enumerate_self_orthogonal(p: int, k: int, *,
                              word_cap: int = ENUMERATION_WORD_CAP) -> Catalog:
    """Classify all self-orthogonal codes of length k over F_p up to
    signed-permutation equivalence, by dimension augmentation."""
    if p ** k > word_cap:
        raise BudgetExceededError(f"p^k = {p ** k} exceeds the word budget {word_cap}")
    levels: list[list[Code]] = [[Code.zero(p, k)]]
    while True:
        current = levels[-1]
        nxt: list[Code] = []
        keys: list[tuple] = []
        for code in current:
            for v in _self_orthogonal_extensions(code):
                cand = code.extend(v)
                wd = cand.weight_distribution()
                is_new = True
                for kept, key in zip(nxt, keys):
                    if key == wd and equivalent(cand, kept) is not None:
                        is_new = False
                        break
                if is_new:
                    nxt.append(cand)
                    keys.append(wd)
        if not nxt:
            break
        levels.append(nxt)
    classes = [c for level in levels for c in level]
    classes.sort(key=canonical_key)
    return Catalog(p, k, tuple(classes))


def random_self_orthogonal(p: int, k: int, rng: random.Random,
                           dim: int | None = None) -> Code:
    """A random self-orthogonal code, grown by random extensions."""
    code = Code.zero(p, k)
    target = dim if dim is not None else rng.randint(0, k // 2)
    while code.dim < target:
        options = list(_self_orthogonal_extensions(code))
        if not options:
            break
        code = code.extend(rng.choice(options))
    return code
