"""Root systems of even lattices: extraction, decomposition, frames.

A frame of an even lattice of rank (p-1)k is a set of norm-2 vectors forming
k mutually orthogonal subsystems of type A_{p-1}.  The product lattice of k
copies of A_{p-1} supplies the standard frame; `normalize_frame` moves any
frame onto the standard one by an automorphism of the construction-A lattice,
using per-block transporters plus explicit reflections for p = 3 and Weyl
transporters inside a rank-8 unimodular block for p = 5.  For p >= 7 every
frame already is the standard one because the lattice has no other roots.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import construct
from .codes import Code
from .exact import BudgetExceededError, vadd, vdot, vneg, vsub
from .isometry import AmbientMap, transporter
from .lattice import Lattice

BASE_SEED = "root-base-functional"
FRAME_NODE_CAP = 1_000_000
TWO = Fraction(2)


def roots(lat: Lattice) -> tuple[tuple[Fraction, ...], ...]:
    """All norm-2 vectors of an even lattice."""
    if not lat.is_even():
        raise ValueError("root extraction requires an even lattice")
    return lat.vectors_of_norm(TWO)


@dataclass(frozen=True)
class RootComponent:
    """An orthogonally indecomposable piece of a root set."""

    roots: tuple
    rank: int
    label: str
    base: tuple

    def __len__(self):
        return len(self.roots)


def _rank_of(vectors) -> int:
    from .exact import hnf, lcm
    denom = 1
    for v in vectors:
        for x in v:
            denom = lcm(denom, Fraction(x).denominator)
    return len(hnf([[int(Fraction(x) * denom) for x in v] for v in vectors]))


def _component_label(rank: int, count: int) -> str:
    if count == rank * (rank + 1):
        return f"A{rank}"
    if (rank, count) == (8, 240):
        return "E8"
    return f"other(rank={rank},roots={count})"


def generic_functional(vectors, dim: int, seed: str = BASE_SEED):
    """A seeded rational functional vanishing on none of the given vectors."""
    attempt = 0
    while True:
        rng = random.Random(f"{seed}:{attempt}")
        w = tuple(Fraction(rng.randint(1, 10 ** 9)) for _ in range(dim))
        if all(vdot(w, v) != 0 for v in vectors):
            return w
        attempt += 1


def simple_system(component_roots, seed: str = BASE_SEED) -> tuple:
    """A deterministic simple system: positive roots for a seeded generic
    functional that are not sums of two positive roots."""
    component_roots = list(component_roots)
    dim = len(component_roots[0])
    w = generic_functional(component_roots, dim, seed)
    pos = [v for v in component_roots if vdot(w, v) > 0]
    posset = set(pos)
    simple = [v for v in pos
              if not any(tuple(vsub(v, u)) in posset for u in pos if u != v)]
    return tuple(sorted(simple))


def decompose(root_list) -> tuple[RootComponent, ...]:
    """Partition a root set into orthogonal-indecomposable components."""
    root_list = [tuple(Fraction(x) for x in v) for v in root_list]
    for v in root_list:
        if vdot(v, v) != 2:
            raise ValueError("input contains a non-root")
    rootset = set(root_list)
    for v in root_list:
        if vneg(v) not in rootset:
            raise ValueError("root set is not closed under negation")
    unassigned = set(root_list)
    components = []
    while unassigned:
        seed_root = min(unassigned)
        comp = {seed_root}
        frontier = [seed_root]
        while frontier:
            x = frontier.pop()
            for y in list(unassigned):
                if y not in comp and vdot(x, y) != 0:
                    comp.add(y)
                    frontier.append(y)
            unassigned -= comp
        comp_sorted = tuple(sorted(comp))
        rank = _rank_of(comp_sorted)
        base = simple_system(comp_sorted)
        components.append(RootComponent(comp_sorted, rank,
                                        _component_label(rank, len(comp_sorted)), base))
    components.sort(key=lambda c: c.roots[0])
    return tuple(components)


def chain_order(base) -> tuple:
    """Order a type-A simple system along its Dynkin path, deterministically."""
    base = list(base)
    if len(base) == 1:
        return tuple(base)
    nbrs = {i: [] for i in range(len(base))}
    for i in range(len(base)):
        for j in range(i + 1, len(base)):
            d = vdot(base[i], base[j])
            if d == -1:
                nbrs[i].append(j)
                nbrs[j].append(i)
            elif d != 0:
                raise ValueError("not a simple system of type A")
    ends = sorted(i for i, lst in nbrs.items() if len(lst) == 1)
    if len(ends) != 2 or any(len(lst) > 2 for lst in nbrs.values()):
        raise ValueError("not a simple system of type A")
    start = min(ends, key=lambda i: base[i])
    path = [start]
    prev = None
    while len(path) < len(base):
        nxt = [j for j in nbrs[path[-1]] if j != prev]
        prev = path[-1]
        path.append(nxt[0])
    return tuple(base[i] for i in path)


# ---------------------------------------------------------------------------
# frames

@dataclass(frozen=True)
class Frame:
    """k pairwise orthogonal A_{p-1} subsystems inside L(2)."""

    components: tuple

    @property
    def all_roots(self) -> frozenset:
        return frozenset(x for comp in self.components for x in comp)

    def validate(self, p: int) -> bool:
        size = p * (p - 1)
        for comp in self.components:
            if len(comp) != size:
                return False
            if _component_label(_rank_of(comp), len(comp)) != f"A{p - 1}":
                return False
        for i, a in enumerate(self.components):
            for b in self.components[i + 1:]:
                for x in a:
                    if any(vdot(x, y) != 0 for y in b):
                        return False
        return True

    def apply(self, amb: AmbientMap) -> "Frame":
        return Frame(tuple(tuple(sorted(amb.apply(x) for x in comp))
                           for comp in self.components))

    def component_of(self, vec):
        for comp in self.components:
            if vec in comp:
                return comp
        raise KeyError("vector not in the frame")


def standard_frame(p: int, k: int) -> Frame:
    """R(2): the root sets of the k blocks of the product lattice."""
    comps = []
    for i in range(k):
        block_roots = []
        for a in range(p):
            for b in range(p):
                if a != b:
                    v = [Fraction(0)] * p
                    v[a], v[b] = Fraction(1), Fraction(-1)
                    block_roots.append(construct.embed_block(p, k, i, v))
        comps.append(tuple(sorted(block_roots)))
    return Frame(tuple(comps))


def _closure(idx_set, sums):
    """Close a set of root indices under root addition."""
    out = set(idx_set)
    frontier = list(out)
    while frontier:
        i = frontier.pop()
        for j in list(out):
            s = sums.get((i, j))
            if s is not None and s not in out:
                out.add(s)
                frontier.append(s)
    return frozenset(out)


def _a_subsystems(root_list, target_rank: int, cap: int):
    """All closed subsystems of type A_{target_rank} in the root set."""
    n = len(root_list)
    index = {v: i for i, v in enumerate(root_list)}
    dots = [[int(vdot(root_list[i], root_list[j])) for j in range(n)] for i in range(n)]
    sums = {}
    for i in range(n):
        for j in range(i + 1, n):
            if dots[i][j] == -1:
                s = index.get(vadd(root_list[i], root_list[j]))
                if s is not None:
                    sums[(i, j)] = s
                    sums[(j, i)] = s
    neg = [index[vneg(v)] for v in root_list]

    level = set()
    for i in range(n):
        if i < neg[i]:
            level.add(frozenset((i, neg[i])))
    nodes = 0
    for rank in range(2, target_rank + 1):
        nxt = set()
        for sub in level:
            for y in range(n):
                if y in sub:
                    continue
                ds = [dots[y][x] for x in sub]
                if any(abs(d) == 2 for d in ds):
                    continue
                if all(d == 0 for d in ds):
                    continue
                nodes += 1
                if nodes > cap:
                    raise BudgetExceededError("frame subsystem search cap exceeded")
                closed = _closure(sub | {y, neg[y]}, sums)
                if len(closed) == rank * (rank + 1):
                    nxt.add(closed)
        level = nxt
        if not level:
            break
    return [tuple(sorted(root_list[i] for i in sub)) for sub in
            sorted(level, key=lambda s: tuple(sorted(root_list[i] for i in s)))], dots, index


def find_frames(lat: Lattice, p: int, cap: int = FRAME_NODE_CAP) -> tuple[Frame, ...]:
    """Complete list of A_{p-1} frames of an even lattice, found by
    backtracking over orthogonal closed subsystems.  Deterministic order."""
    if lat.rank % (p - 1):
        raise ValueError("rank is not divisible by p - 1")
    k = lat.rank // (p - 1)
    root_list = list(roots(lat))
    subsystems, dots, index = _a_subsystems(root_list, p - 1, cap)
    sub_idx = [frozenset(index[v] for v in s) for s in subsystems]
    ortho_cache: dict[tuple[int, int], bool] = {}

    def ortho(i: int, j: int) -> bool:
        key = (i, j) if i < j else (j, i)
        val = ortho_cache.get(key)
        if val is None:
            val = all(dots[x][y] == 0 for x in sub_idx[i] for y in sub_idx[j])
            ortho_cache[key] = val
        return val

    frames: list[Frame] = []
    chosen: list[int] = []
    nodes = 0

    def backtrack(start: int):
        nonlocal nodes
        if len(chosen) == k:
            frames.append(Frame(tuple(subsystems[i] for i in chosen)))
            return
        for i in range(start, len(subsystems)):
            nodes += 1
            if nodes > cap:
                raise BudgetExceededError("frame assembly cap exceeded")
            if all(ortho(i, j) for j in chosen):
                chosen.append(i)
                backtrack(i + 1)
                chosen.pop()

    backtrack(0)
    return tuple(frames)


# ---------------------------------------------------------------------------
# frame normalization

@dataclass
class FrameNormalization:
    """Result of moving a frame onto the standard one."""

    map: AmbientMap
    steps: int

    def witness_on(self, lat: Lattice):
        return self.map.witness_on(lat)


def _in_standard(p: int, k: int, vec) -> bool:
    """Is a norm-2 lattice vector one of the standard frame roots?"""
    nonzero = None
    for i in range(k):
        block = construct.block_of(p, vec, i)
        if any(x != 0 for x in block):
            if nonzero is not None:
                return False
            nonzero = block
    if nonzero is None:
        return False
    return all(x.denominator == 1 for x in nonzero)


def _support_blocks(p: int, k: int, vec):
    out = []
    for i in range(k):
        block = construct.block_of(p, vec, i)
        if any(x != 0 for x in block):
            out.append((i, block))
    return out


def _weyl_to_eps(p: int, k: int, block_index: int, eps_index: int) -> AmbientMap:
    """Block Weyl element (coordinate transposition) sending eps_{j} to eps_1."""
    perm = list(range(p))
    perm[0], perm[eps_index] = perm[eps_index], perm[0]
    return construct.block_permutation_map(p, k, block_index, perm)


def _weyl_pair_to_front(p: int, k: int, block_index: int, a: int, b: int) -> AmbientMap:
    """Block Weyl element sending coordinates {a, b} to {0, 1}."""
    perm = list(range(p))
    pos_a, pos_b = perm.index(a), perm.index(b)
    perm[0], perm[pos_a] = perm[pos_a], perm[0]
    pos_b = perm.index(b)
    perm[1], perm[pos_b] = perm[pos_b], perm[1]
    inv = [0] * p
    for i, v in enumerate(perm):
        inv[v] = i
    return construct.block_permutation_map(p, k, block_index, inv)


def _block_transport(p: int, k: int, block_index: int, block, an) -> tuple[AmbientMap, int]:
    """Aut(A_{p-1}) element carrying a short dual vector onto the class
    representative lambda_c; returns the map and the class c in {1, ..., p-1}."""
    cls = an.glue_class(block)
    work = tuple(block)
    maps: list[AmbientMap] = []
    if p == 3:
        target_cls = 1
    else:
        target_cls = cls if cls in (1, 2) else p - cls
    if cls != target_cls:
        maps.append(construct.diagram_flip_map(p, k, block_index))
        flipped = [Fraction(0)] * p
        for j in range(p):
            flipped[p - 1 - j] = -work[j]
        work = tuple(flipped)
    if target_cls == 1:
        eps_index = next(i for i in range(p) if work == an.epsilon[i])
        maps.append(_weyl_to_eps(p, k, block_index, eps_index))
    else:
        # norm 6/5 class-2 vectors of the A_4 dual are the eps_a + eps_b
        pair = next((a, b) for a in range(p) for b in range(a + 1, p)
                    if work == vadd(an.epsilon[a], an.epsilon[b]))
        maps.append(_weyl_pair_to_front(p, k, block_index, pair[0], pair[1]))
    total = maps[0]
    for m in maps[1:]:
        total = m.compose(total)
    return total, cls


def _compose_all(maps, n: int) -> AmbientMap:
    total = AmbientMap.identity(n)
    for m in maps:
        total = m.compose(total)
    return total


def _normalize_step_p3(p, k, lat, frame, an):
    off = sorted(x for x in frame.all_roots if not _in_standard(p, k, x))
    lam = off[0]
    comp = frame.component_of(lam)
    supp = _support_blocks(p, k, lam)
    assert len(supp) == 3, "p=3 frame root must touch exactly three blocks"
    maps = []
    for (i, block) in supp:
        m, _ = _block_transport(p, k, i, block, an)
        maps.append(m)
    phi = _compose_all(maps, p * k)
    mu = phi.apply(lam)
    supp_idx = [i for (i, _) in supp]
    expected = [Fraction(0)] * (p * k)
    for i in supp_idx:
        for j in range(p):
            expected[i * p + j] += an.epsilon[0][j]
    assert mu == tuple(expected), "block transport must align the glue vector"

    comp_img = {phi.apply(x) for x in comp}
    # clear the long-root case: move +-(a1 + a2) in the moved component to +-a1
    for i in supp_idx:
        long_root = construct.embed_block(p, k, i, vadd(an.alpha[0], an.alpha[1]))
        if long_root in comp_img or vneg(long_root) in comp_img:
            adj = AmbientMap.reflection(construct.embed_block(p, k, i, an.alpha[1]))
            phi = adj.compose(phi)
            mu = phi.apply(lam)
            comp_img = {phi.apply(x) for x in comp}

    frame_img = frame.apply(phi)
    fixed = {x for x in frame_img.all_roots if _in_standard(p, k, x)}
    for i in supp_idx:
        v = vsub(mu, construct.embed_block(p, k, i, vadd(an.alpha[0], an.alpha[1])))
        assert vdot(v, v) == 2
        refl = AmbientMap.reflection(v)
        if all(refl.apply(x) == x for x in fixed):
            return phi.inverse().compose(refl).compose(phi)
    raise AssertionError("no admissible reflection found; the input is not a frame")


def _e8_block_lattice(p, k, lat, mu, blocks) -> Lattice:
    an = construct.an_data(p)
    rows = [mu]
    for i in blocks:
        rows += [construct.embed_block(p, k, i, a) for a in an.alpha]
    return Lattice.from_rows(rows, p * k).interned()


def _normalize_step_p5(p, k, lat, frame, an):
    off = sorted(x for x in frame.all_roots if not _in_standard(p, k, x))
    lam = off[0]
    comp = frame.component_of(lam)
    supp = _support_blocks(p, k, lam)
    assert len(supp) == 2, "p=5 frame root must touch exactly two blocks"
    # order the two blocks so the class-(+-1) coordinate comes first
    def norm_of(entry):
        return vdot(entry[1], entry[1])
    supp.sort(key=norm_of)
    (i1, b1), (i2, b2) = supp
    assert norm_of((i1, b1)) == Fraction(4, 5) and norm_of((i2, b2)) == Fraction(6, 5)
    m1, _ = _block_transport(p, k, i1, b1, an)
    m2, _ = _block_transport(p, k, i2, b2, an)
    phi = m2.compose(m1)
    mu = phi.apply(lam)
    expected = vadd(construct.embed_block(p, k, i1, an.epsilon[0]),
                    construct.embed_block(p, k, i2, vadd(an.epsilon[0], an.epsilon[1])))
    assert mu == expected, "block transport must align the glue vector"

    block8 = _e8_block_lattice(p, k, lat, mu, (i1, i2))
    assert block8.rank == 8 and block8.det() == 1

    comp_img = sorted(phi.apply(x) for x in comp)
    assert all(x in block8 for x in comp_img), "component must lie in the rank-8 block"
    base = simple_system(comp_img)
    chain_src = chain_order(base)
    chain_dst = tuple(construct.embed_block(p, k, i1, a) for a in an.alpha)
    sigma = e8_chain_transport(chain_src, chain_dst, lat=block8)
    full_sigma = sigma
    return phi.inverse().compose(full_sigma).compose(phi)


def normalize_frame(code: Code, frame: Frame, *, max_steps: int | None = None) -> FrameNormalization:
    """An automorphism of construction_a(code) carrying the frame onto the
    standard frame, built by the constructive transporter loop: each round
    strictly enlarges the intersection with the standard root set."""
    p, k = code.p, code.k
    an = construct.an_data(p)
    lat = construct.construction_a(code)
    total = AmbientMap.identity(p * k)
    count_cap = max_steps if max_steps is not None else p * (p - 1) * k + 1
    current = frame
    steps = 0
    while True:
        inter = sum(1 for x in current.all_roots if _in_standard(p, k, x))
        if inter == p * (p - 1) * k:
            break
        if steps >= count_cap:
            raise AssertionError("frame normalization failed to make progress")
        if p == 3:
            step = _normalize_step_p3(p, k, lat, current, an)
        elif p == 5:
            step = _normalize_step_p5(p, k, lat, current, an)
        else:
            raise AssertionError(
                "frames off the standard one cannot exist for p >= 7")
        new_frame = current.apply(step)
        new_inter = sum(1 for x in new_frame.all_roots if _in_standard(p, k, x))
        assert new_inter > inter, "normalization step must make strict progress"
        assert step.apply_lattice(lat) == lat, "step must preserve the lattice"
        current = new_frame
        total = step.compose(total)
        steps += 1
    return FrameNormalization(total, steps)


def recover_code(p: int, lat: Lattice) -> Code:
    """Read the glue code off a lattice containing the standard frame."""
    if lat.ambient_dim % p:
        raise ValueError("ambient dimension is not a multiple of p")
    k = lat.ambient_dim // p
    an = construct.an_data(p)
    for i in range(k):
        for a in an.alpha:
            if construct.embed_block(p, k, i, a) not in lat:
                raise ValueError("standard frame is not contained in the lattice")
    words = []
    for i in range(lat.rank):
        vec = lat.vector(i)
        words.append(construct.glue_image(p, k, vec))
    return Code(p, k, words)


def induced_signed_permutation(p: int, k: int, amb: AmbientMap):
    """The signed permutation induced on glue classes by an automorphism that
    preserves the product of the k root blocks."""
    from .codes import SignedPermutation
    an = construct.an_data(p)
    perm = [None] * k
    signs = [0] * k
    for i in range(k):
        img = amb.apply(construct.embed_block(p, k, i, an.alpha[0]))
        blocks = _support_blocks(p, k, img)
        if len(blocks) != 1:
            raise ValueError("map does not permute the frame blocks")
        dest = blocks[0][0]
        perm[i] = dest
        eps_img = amb.apply(construct.embed_block(p, k, i, an.epsilon[0]))
        cls = an.glue_class(construct.block_of(p, eps_img, dest))
        if cls == 1:
            signs[dest] = 1
        elif cls == p - 1:
            signs[dest] = -1
        else:
            raise ValueError("map does not act by +-1 on glue classes")
    return SignedPermutation(tuple(perm), tuple(signs))


# ---------------------------------------------------------------------------
# the rank-8 even unimodular lattice in its even-coordinate model

def e8_lattice() -> Lattice:
    """Vectors of Z^8 union (Z + 1/2)^8 with even coordinate sum."""
    rows = [[2, 0, 0, 0, 0, 0, 0, 0]]
    for i in range(6):
        row = [0] * 8
        row[i], row[i + 1] = 1, -1
        rows.append(row)
    rows.append([Fraction(1, 2)] * 8)
    return Lattice.from_rows(rows, 8).interned()


def e8_simple_roots() -> tuple:
    a = [
        (1, -1, 0, 0, 0, 0, 0, 0),
        (0, 1, -1, 0, 0, 0, 0, 0),
        (0, 0, 1, -1, 0, 0, 0, 0),
        (0, 0, 0, 1, -1, 0, 0, 0),
        (0, 0, 0, 0, 1, -1, 0, 0),
        (0, 0, 0, 0, 0, 1, 1, 0),
        tuple(Fraction(-1, 2) for _ in range(8)),
        (0, 0, 0, 0, 0, 1, -1, 0),
    ]
    return tuple(tuple(Fraction(x) for x in row) for row in a)


def e8_highest_root() -> tuple:
    a = e8_simple_roots()
    coeffs = (2, 3, 4, 5, 6, 4, 2, 3)
    theta = [Fraction(0)] * 8
    for c, root in zip(coeffs, a):
        for i in range(8):
            theta[i] += c * root[i]
    return tuple(theta)


def e8_base_chain() -> tuple:
    """The 4-chain (-theta, a1, a2, a3) used as the reference chain."""
    a = e8_simple_roots()
    return (vneg(e8_highest_root()), a[0], a[1], a[2])


def is_chain(vectors) -> bool:
    if len(vectors) != 4:
        return False
    for i, x in enumerate(vectors):
        if vdot(x, x) != 2:
            return False
        for j in range(i + 1, len(vectors)):
            want = -1 if j == i + 1 else 0
            if vdot(x, vectors[j]) != want:
                return False
    return True


def e8_chain_transport(chain_a, chain_b, lat: Lattice | None = None) -> AmbientMap:
    """A Weyl-group element of a rank-8 even unimodular lattice carrying one
    4-chain of roots onto another, found by backtracking extension of the
    partial root map to a full automorphism.  Every automorphism of this
    lattice lies in its Weyl group, so realizing the map as a lattice
    automorphism realizes it in the Weyl group."""
    lat = lat if lat is not None else e8_lattice()
    chain_a = tuple(tuple(Fraction(x) for x in v) for v in chain_a)
    chain_b = tuple(tuple(Fraction(x) for x in v) for v in chain_b)
    if not is_chain(chain_a) or not is_chain(chain_b):
        raise ValueError("inputs must be 4-chains of roots")
    if chain_a == chain_b:
        return AmbientMap.identity(lat.ambient_dim)
    amb = transporter(lat, tuple(zip(chain_a, chain_b)))
    if amb is None:
        raise AssertionError("chains of an even unimodular rank-8 lattice "
                             "must lie in one Weyl orbit")
    return amb


def chain_completion_count(x1, lat: Lattice | None = None) -> int:
    """Number of extensions of a fixed root to a 4-chain, by direct counting."""
    lat = lat if lat is not None else e8_lattice()
    all_roots = roots(lat)
    x1 = tuple(Fraction(x) for x in x1)
    n = len(all_roots)
    idx = {v: i for i, v in enumerate(all_roots)}
    dots = [[int(vdot(a, b)) for b in all_roots] for a in all_roots]
    i1 = idx[x1]
    count = 0
    for i2 in range(n):
        if dots[i1][i2] != -1:
            continue
        for i3 in range(n):
            if dots[i1][i3] != 0 or dots[i2][i3] != -1:
                continue
            for i4 in range(n):
                if dots[i1][i4] == 0 and dots[i2][i4] == 0 and dots[i3][i4] == -1:
                    count += 1
    return count


def random_root_automorphism(lat: Lattice, rng: random.Random, length: int = 12) -> AmbientMap:
    """A random product of reflections in roots of the lattice."""
    root_list = roots(lat)
    total = AmbientMap.identity(lat.ambient_dim)
    for _ in range(length):
        total = AmbientMap.reflection(rng.choice(root_list)).compose(total)
    return total
