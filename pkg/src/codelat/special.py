"""Block-structured code families over F_3 and F_5 and the bridge isometries.

Over F_3, codes inside the m-fold product of the line through (1,2,0) yield a
pair of derived codes of length 3m (append the all-ones blocks, or only their
zero-sum combinations).  Over F_5 the analogous building block is the line
through (1,2).  The bridge maps are explicit orthogonal matrices carrying the
construction-A lattice of the zero-sum family onto the construction-B lattice
of the full family; `verify_bridge` certifies that equality by exact HNF
comparison and reproduces the pinned intermediate echelon forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import construct, fp
from .bridge_tables import ECHELON_3, ECHELON_5, PHI_BLOCK_3, PSI_BLOCK_5
from .codes import Code, SignedPermutation
from .exact import hnf, solve_row_combination, vsub
from .isometry import AmbientMap
from .lattice import Lattice


def u_vector(m: int, i: int) -> tuple[int, ...]:
    """(0,...,0, 1,1,1, 0,...,0) with the ones in block i (1-based)."""
    out = [0] * (3 * m)
    out[3 * (i - 1): 3 * i] = [1, 1, 1]
    return tuple(out)


def v_vector(m: int, i: int) -> tuple[int, ...]:
    """(0,...,0, 1,2, 0,...,0) with the pair in block i (1-based)."""
    out = [0] * (2 * m)
    out[2 * (i - 1): 2 * i] = [1, 2]
    return tuple(out)


@dataclass(frozen=True)
class K3Code:
    """A subcode of the m-fold product of <(1,2,0)> inside F_3^(3m)."""

    m: int
    code: Code

    def __post_init__(self):
        if self.code.p != 3 or self.code.k != 3 * self.m:
            raise ValueError("ambient must be F_3^(3m)")
        for g in self.code.gens:
            for b in range(self.m):
                block = g[3 * b: 3 * b + 3]
                if any((x - block[0] * y) % 3 for x, y in zip(block, (1, 2, 0))):
                    raise ValueError("generator block outside <(1,2,0)>")

    @property
    def dim(self) -> int:
        return self.code.dim

    def is_self_orthogonal(self) -> bool:
        return self.code.is_self_orthogonal()


def k3_full(m: int) -> K3Code:
    rows = []
    for i in range(m):
        row = [0] * (3 * m)
        row[3 * i: 3 * i + 3] = [1, 2, 0]
        rows.append(tuple(row))
    return K3Code(m, Code(3, 3 * m, rows))


def k3_subcodes(m: int):
    """All subcodes of the m-fold product of <(1,2,0)>, via subspaces of F_3^m."""
    full = k3_full(m)
    seen = set()
    for rows in _all_subspaces(3, m):
        gens = []
        for r in rows:
            word = [0] * (3 * m)
            for b, c in enumerate(r):
                word[3 * b: 3 * b + 3] = [(c * x) % 3 for x in (1, 2, 0)]
            gens.append(tuple(word))
        code = Code(3, 3 * m, gens)
        if code not in seen:
            seen.add(code)
            yield K3Code(m, code)


def _all_subspaces(p: int, n: int):
    """Generator matrices of all subspaces of F_p^n (every RREF once)."""
    from itertools import product
    seen = set()
    yield ()
    for dim in range(1, n + 1):
        for rows in product(product(range(p), repeat=n), repeat=dim):
            red, _ = fp.rref(rows, p)
            if len(red) == dim and red not in seen:
                seen.add(red)
                yield red


def d3_code(m: int) -> Code:
    return Code(3, 3 * m, [u_vector(m, i) for i in range(1, m + 1)])


def d3_zero_code(m: int) -> Code:
    rows = [fp.vadd(u_vector(m, i), fp.vscale(2, u_vector(m, m), 3), 3)
            for i in range(1, m)]
    return Code(3, 3 * m, rows)


def code_construction_a3(k3: K3Code) -> Code:
    """K plus the all-ones blocks."""
    m = k3.m
    return Code(3, 3 * m, k3.code.gens + d3_code(m).gens)


def code_construction_b3(k3: K3Code) -> Code:
    """K plus the zero-sum combinations of the all-ones blocks."""
    m = k3.m
    return Code(3, 3 * m, k3.code.gens + d3_zero_code(m).gens)


def d5_code(m: int) -> Code:
    return Code(5, 2 * m, [v_vector(m, i) for i in range(1, m + 1)])


def d5_zero_code(m: int) -> Code:
    rows = [fp.vadd(v_vector(m, i), fp.vscale(4, v_vector(m, m), 5), 5)
            for i in range(1, m)]
    return Code(5, 2 * m, rows)


# ---------------------------------------------------------------------------
# realization criteria

def _criterion_holds(code: Code, block_word, block_len: int, weight: int) -> bool:
    from .codes import coset_weight_count
    k = code.k
    if k < block_len:
        return False
    u1 = tuple(block_word[j] if j < block_len else 0 for j in range(k))
    dual = code.dual()
    if not dual.contains(u1) or code.contains(u1):
        return False
    lhs = Fraction(k, block_len) + coset_weight_count(code, (0,) * k, weight)
    rhs = coset_weight_count(code, u1, weight)
    return lhs <= rhs


def _signed_perm_sending(k: int, sources, dests, signs) -> SignedPermutation:
    """A permutation carrying sources[i] to dests[i] (others shuffled
    consistently) with the given per-source signs."""
    perm = [None] * k
    taken = set()
    for s, d in zip(sources, dests):
        perm[s] = d
        taken.add(d)
    free_dests = [j for j in range(k) if j not in taken]
    it = iter(free_dests)
    for j in range(k):
        if perm[j] is None:
            perm[j] = next(it)
    out_signs = [1] * k
    for s in range(k):
        out_signs[perm[s]] = signs[s]
    return SignedPermutation(tuple(perm), tuple(out_signs))


def realizes_b3(code: Code):
    """If the numeric criterion holds, produce (K, g) with g(code) equal to
    the construction-B code of K; otherwise None."""
    if code.p != 3 or not code.is_self_orthogonal():
        return None
    if not _criterion_holds(code, (1, 1, 1), 3, 3):
        return None
    if code.k % 3:
        return None
    m = code.k // 3
    g_align = _align_first_blocks_p3(code, m)
    if g_align is None:
        return None
    aligned = g_align.apply_code(code)
    result = _project_to_k3(aligned, m)
    if result is None:
        return None
    k3, sigma = result
    g_total = sigma.compose(g_align)
    if g_total.apply_code(code) != code_construction_b3(k3):
        raise AssertionError("realization witness failed verification")
    return k3, g_total


def _align_first_blocks_p3(code: Code, m: int) -> SignedPermutation | None:
    """Signed permutation g with u_i in u_1 + g(C) for all i <= m."""
    k = code.k
    u1 = u_vector(m, 1)
    g_total = SignedPermutation.identity(k)
    current = code
    for r in range(1, m):
        target = None
        for w in current.words():
            x = fp.vadd(w, u1, 3)
            if fp.weight(x) != 3 or any(x[j] for j in range(3 * r)):
                continue
            if target is None or x < target:
                target = x
        if target is None:
            return None
        support = [j for j in range(k) if target[j]]
        signs = [1] * k
        for j in support:
            if target[j] == 2:
                signs[j] = -1
        dests = [3 * r, 3 * r + 1, 3 * r + 2]
        g = _signed_perm_sending(k, support, dests, signs)
        current = g.apply_code(current)
        g_total = g.compose(g_total)
        # invariant: u_1 .. u_{r+1} now lie in u_1 + current
        for i in range(1, r + 2):
            if not current.contains(fp.vadd(u_vector(m, i), fp.vscale(2, u1, 3), 3)):
                return None
    return g_total


def _project_to_k3(code: Code, m: int):
    """Given (d_3^m)_0 inside the code and u_1 outside it, find the block
    permutation and the projection onto a subcode of the (1,2,0) blocks."""
    k = code.k
    u1 = u_vector(m, 1)
    dual = code.dual()
    if not dual.contains(u1) or code.contains(u1):
        return None
    us = [u_vector(m, i) for i in range(1, m + 1)]
    extended = Code(3, k, code.gens + (u1,))
    ext_dual = extended.dual()
    y = None
    for w in fp.span(dual.gens, 3):
        if not ext_dual.contains(w):
            y = w
            break
    if y is None:
        return None
    if fp.vdot(y, us[0], 3) == 2:
        y = fp.vscale(2, y, 3)
    assert all(fp.vdot(y, u, 3) == 1 for u in us)
    # shift y by all-ones blocks until every block is a standard unit vector
    y2 = list(y)
    for b in range(m):
        block = y2[3 * b: 3 * b + 3]
        a = next(a for a in range(3)
                 if sorted((x + a) % 3 for x in block) == [0, 0, 1])
        y2[3 * b: 3 * b + 3] = [(x + a) % 3 for x in block]
    # block-internal coordinate rotations making each block (0,0,1)
    perm = list(range(k))
    for b in range(m):
        block = y2[3 * b: 3 * b + 3]
        pos = block.index(1)
        shift = (2 - pos) % 3
        base = 3 * b
        for j in range(3):
            perm[base + j] = base + (j + shift) % 3
    sigma = SignedPermutation(tuple(perm), (1,) * k)
    moved = sigma.apply_code(code)
    yprime = sigma.apply_word(tuple(y2), 3)
    assert yprime == tuple(([0, 0, 1] * m))
    # project: subtract the multiple of the all-ones block fixed by (.., y')
    k3_rows = []
    for g in moved.gens:
        row = list(g)
        for b in range(m):
            a = row[3 * b + 2]  # block pairing with (0,0,1)
            if a:
                for j in range(3):
                    row[3 * b + j] = (row[3 * b + j] - a) % 3
        k3_rows.append(tuple(row))
    k3 = K3Code(m, Code(3, k, k3_rows))
    return k3, sigma


def realizes_b5(code: Code) -> SignedPermutation | None:
    """If the numeric criterion holds, a witness g with g(code) equal to the
    zero-sum family of (1,2) blocks; otherwise None."""
    if code.p != 5 or not code.is_self_orthogonal():
        return None
    if not _criterion_holds(code, (1, 2), 2, 2):
        return None
    if code.k % 2:
        return None
    m = code.k // 2
    k = code.k
    v1 = v_vector(m, 1)
    g_total = SignedPermutation.identity(k)
    current = code
    for r in range(1, m):
        target = None
        for w in current.words():
            x = fp.vadd(w, v1, 5)
            if fp.weight(x) != 2 or any(x[j] for j in range(2 * r)):
                continue
            if target is None or x < target:
                target = x
        if target is None:
            return None
        support = [j for j in range(k) if target[j]]
        a, b = target[support[0]], target[support[1]]
        # one entry is +-1, the other +-2; orient onto (1, 2)
        if a in (1, 4):
            src = support
        else:
            src = [support[1], support[0]]
            a, b = b, a
        signs = [1] * k
        if a == 4:
            signs[src[0]] = -1
        if b == 3:
            signs[src[1]] = -1
        g = _signed_perm_sending(k, src, [2 * r, 2 * r + 1], signs)
        current = g.apply_code(current)
        g_total = g.compose(g_total)
    if g_total.apply_code(code) != d5_zero_code(m):
        raise AssertionError("realization witness failed verification")
    return g_total


# ---------------------------------------------------------------------------
# bridge isometries

@dataclass(frozen=True)
class BridgeMap:
    """Inner-product preserving block map between the two constructions."""

    p: int
    m: int
    map: AmbientMap


def _block_map_from_table(p: int, slots: int, table) -> AmbientMap:
    """Assemble one block map (ambient dim p*slots) from an eps-image table."""
    an = construct.an_data(p)
    basis = []
    images = []
    for s in range(slots):
        for a_idx in range(p - 1):
            basis.append(construct.embed_block(p, slots, s, an.alpha[a_idx]))
            img_slots = table[s * (p - 1) + a_idx]
            img = [Fraction(0)] * (p * slots)
            for t, coeffs in enumerate(img_slots):
                for e_idx, c in enumerate(coeffs):
                    if c:
                        block = construct.embed_block(p, slots, t, an.epsilon[e_idx])
                        img = [x + c * y for x, y in zip(img, block)]
            images.append(tuple(img))
    ones = []
    for s in range(slots):
        ones.append(construct.embed_block(p, slots, s, (Fraction(1),) * p))
    amb = AmbientMap.from_basis_images(basis + ones, images + ones)
    if not amb.is_orthogonal():
        raise AssertionError("bridge block map is not orthogonal")
    return amb


def bridge_map(p: int, m: int) -> BridgeMap:
    """The m-fold block-diagonal extension of the tabulated block map."""
    if p == 3:
        block = _block_map_from_table(3, 3, PHI_BLOCK_3)
        width = 9
    elif p == 5:
        block = _block_map_from_table(5, 2, PSI_BLOCK_5)
        width = 10
    else:
        raise ValueError("bridge maps exist for p = 3 and p = 5 only")
    n = width * m
    mat = [[Fraction(0)] * n for _ in range(n)]
    for b in range(m):
        for i in range(width):
            for j in range(width):
                mat[b * width + i][b * width + j] = block.mat[i][j]
    amb = AmbientMap(mat)
    assert amb.is_orthogonal()
    return BridgeMap(p, m, amb)


@dataclass(frozen=True)
class BridgeCertificate:
    p: int
    m: int
    echelon: tuple
    echelon_matches: bool
    lhs: Lattice
    rhs: Lattice

    @property
    def ok(self) -> bool:
        return self.echelon_matches and self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m,
                "echelon": [list(r) for r in self.echelon],
                "echelon_matches": self.echelon_matches,
                "lattices_equal": self.lhs == self.rhs}


def _coefficient_echelon(p: int) -> tuple:
    """Echelon form of the alpha-coefficient matrix of the generating
    differences of the image of the zero-code construction-B lattice."""
    bm = bridge_map(p, 1)
    an = construct.an_data(p)
    slots = 3 if p == 3 else 2
    alphas = [construct.embed_block(p, slots, s, an.alpha[i])
              for s in range(slots) for i in range(p - 1)]
    images = [bm.map.apply(a) for a in alphas]
    pivot = (slots - 1) * (p - 1)  # index of a1 in the final slot
    last = images[pivot]
    rows = []
    for idx, img in enumerate(images):
        if idx == pivot:
            rows.append(tuple(x * p for x in last))
        else:
            rows.append(vsub(img, last))
    coeff_rows = []
    for row in rows:
        coeffs = solve_row_combination(alphas, row)
        assert coeffs is not None and all(c.denominator == 1 for c in coeffs)
        coeff_rows.append(tuple(int(c) for c in coeffs))
    return hnf(coeff_rows)


def verify_bridge(p: int, arg) -> BridgeCertificate:
    """Certify that the bridge carries construction A of the B-side code onto
    construction B of the A-side code, as an exact lattice equality.

    For p = 3, `arg` is a K3Code; for p = 5 it is the block count m.
    """
    if p == 3:
        k3: K3Code = arg
        m = k3.m
        if not k3.is_self_orthogonal():
            raise ValueError("the block code must be self-orthogonal")
        source = construct.construction_a(code_construction_b3(k3))
        target = construct.construction_b(code_construction_a3(k3))
        expected = ECHELON_3
    elif p == 5:
        m = int(arg)
        source = construct.construction_a(d5_zero_code(m))
        target = construct.construction_b(d5_code(m))
        expected = ECHELON_5
    else:
        raise ValueError("bridge maps exist for p = 3 and p = 5 only")
    bm = bridge_map(p, m)
    image = bm.map.apply_lattice(source)
    echelon = _coefficient_echelon(p)
    cert = BridgeCertificate(p, m, echelon, echelon == expected, image, target)
    if not cert.ok:
        raise AssertionError("bridge verification failed: the images disagree")
    return cert
