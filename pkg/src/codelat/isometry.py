"""Lattice isometry testing with integer witnesses, and exact ambient maps.

The decision procedure compares cheap invariants (rank, determinant, the
cardinalities of the first few norm layers) and then runs a backtracking
search mapping basis vectors of one lattice onto short vectors of the other
with matching inner-product profiles.  Every positive answer carries a
certified witness U with U G1 U^T = G2; every negative answer carries either
the separating invariant or an exhausted search.

The same engine doubles as a transporter search: optional pinned vector pairs
constrain the map pointwise, which is how Weyl-group elements with prescribed
images are found.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (BudgetExceededError, det_fraction, identity_matrix,
                    left_kernel, lcm, lll_reduce, mat_inverse, mat_transpose,
                    matmul, vdot)
from .lattice import Lattice

DEFAULT_INVARIANT_DEPTH = 3
DEFAULT_NODE_CAP = 10_000_000


@dataclass(frozen=True)
class IsometryWitness:
    """Integer basis change certifying Gram-equivalence of two lattices."""

    u: tuple[tuple[int, ...], ...]

    def verify(self, source: Lattice, target: Lattice) -> bool:
        """True when U G_source U^T = G_target exactly and det U = +-1."""
        g1 = source.gram()
        g2 = target.gram()
        prod = matmul(matmul(self.u, g1), mat_transpose(self.u))
        if prod != g2:
            return False
        return abs(det_fraction(self.u)) == 1 if self.u else True

    def to_json(self) -> dict:
        return {"U": [list(row) for row in self.u]}


class AmbientMap:
    """Exact linear map on the rational ambient space (column action)."""

    __slots__ = ("mat",)

    def __init__(self, mat):
        self.mat = tuple(tuple(Fraction(x) for x in row) for row in mat)

    @classmethod
    def identity(cls, n: int) -> "AmbientMap":
        return cls(identity_matrix(n, Fraction(1)))

    @classmethod
    def reflection(cls, vec) -> "AmbientMap":
        """Reflection in the hyperplane orthogonal to vec."""
        vec = tuple(Fraction(x) for x in vec)
        nn = vdot(vec, vec)
        if nn == 0:
            raise ValueError("cannot reflect in the zero vector")
        n = len(vec)
        return cls(tuple(tuple((1 if i == j else 0) - 2 * vec[i] * vec[j] / nn
                               for j in range(n)) for i in range(n)))

    @classmethod
    def from_basis_images(cls, basis_rows, image_rows) -> "AmbientMap":
        """The unique linear map sending the given basis rows to the images."""
        binv = mat_inverse(mat_transpose(basis_rows))
        return cls(matmul(mat_transpose(image_rows), binv))

    @property
    def n(self) -> int:
        return len(self.mat)

    def apply(self, vec) -> tuple[Fraction, ...]:
        return tuple(vdot(row, vec) for row in self.mat)

    def compose(self, other: "AmbientMap") -> "AmbientMap":
        """self after other."""
        return AmbientMap(matmul(self.mat, other.mat))

    def inverse(self) -> "AmbientMap":
        return AmbientMap(mat_inverse(self.mat))

    def is_orthogonal(self) -> bool:
        return matmul(mat_transpose(self.mat), self.mat) == identity_matrix(
            self.n, Fraction(1))

    def apply_lattice(self, lat: Lattice) -> Lattice:
        rows = [self.apply(lat.vector(i)) for i in range(lat.rank)]
        return Lattice.from_rows(rows, lat.ambient_dim)

    def witness_on(self, source: Lattice, target: Lattice | None = None) -> IsometryWitness:
        """Express the map as an integer basis change source -> target."""
        target = target if target is not None else source
        rows = []
        for i in range(source.rank):
            img = self.apply(source.vector(i))
            coeffs = target.coords(img)
            if coeffs is None:
                raise ValueError("map does not carry the source into the target")
            rows.append(coeffs)
        return IsometryWitness(tuple(rows))


def orthogonal_complement_rows(rows, n: int):
    """Rational basis of the orthogonal complement of the row span in Q^n."""
    if not rows:
        return tuple(tuple(Fraction(1 if j == i else 0) for j in range(n))
                     for i in range(n))
    denom = 1
    frac_rows = [tuple(Fraction(x) for x in row) for row in rows]
    for row in frac_rows:
        for x in row:
            denom = lcm(denom, x.denominator)
    int_rows = [[int(x * denom) for x in row] for row in frac_rows]
    # complement vectors y satisfy M y^T = 0: left kernel of M^T
    kernel = left_kernel([list(col) for col in zip(*int_rows)])
    return tuple(tuple(Fraction(x) for x in row) for row in kernel)


def span_map_to_ambient(lat: Lattice, image_rows) -> AmbientMap:
    """Extend basis(lat) -> image_rows by the identity on the orthogonal
    complement of the span."""
    basis = list(lat.vectors())
    comp = list(orthogonal_complement_rows(basis, lat.ambient_dim))
    return AmbientMap.from_basis_images(basis + comp, list(image_rows) + comp)


# ---------------------------------------------------------------------------
# the backtracking engine

def _transform_of(lat: Lattice, red_rows):
    """Integer T with red_rows = T * basis (rows of reduced-basis coords)."""
    rows = []
    for row in red_rows:
        coeffs = lat.coords(tuple(Fraction(x, lat.denom) for x in row))
        assert coeffs is not None
        rows.append(coeffs)
    return tuple(rows)


def _sign_canonical(coeffs) -> bool:
    for c in coeffs:
        if c:
            return c > 0
    return True


def find_isometry(source: Lattice, target: Lattice, *, pins=(),
                  depth: int = DEFAULT_INVARIANT_DEPTH,
                  node_cap: int = DEFAULT_NODE_CAP):
    """Backtracking search for an isometry mapping `source` onto `target`.

    Returns (witness, reason).  The witness rows are target-basis coordinates
    of the images of the source basis vectors, so U G_target U^T = G_source.
    On failure the reason is one of "rank", "det", "layer-profile",
    "exhausted".

    `pins` is a sequence of ambient vector pairs (x, y) with x in the source
    and y in the target; every candidate image u of a source basis vector b
    must satisfy (u, y) = (b, x), which forces g(x) = y once the assignment
    is complete.
    """
    same = source == target
    if not same:
        if source.rank != target.rank:
            return None, "rank"
        if source.det() != target.det():
            return None, "det"
    r = source.rank
    if r == 0:
        return IsometryWitness(()), None
    if not same and source.layer_profile(depth) != target.layer_profile(depth):
        return None, "layer-profile"

    # enumerate images of an LLL-reduced source basis: short vectors only
    red, gs = source._reduced()
    d_s = source.denom
    red_vecs = [tuple(Fraction(x, d_s) for x in row) for row in red]
    t_mat = _transform_of(source, red)

    gt = target.gram()
    needed = sorted({gs[i][i] for i in range(r)})
    cands: dict[Fraction, list] = {}
    for nm in needed:
        cands[nm] = [target.coords(v) for v in target.vectors_of_norm(nm)]
        if not cands[nm]:
            return None, "exhausted"

    all_cand = {c for lst in cands.values() for c in lst}

    # fingerprints against the smallest norm layer (an isometry invariant
    # set); pins constrain candidates far harder, so skip the fingerprints
    # whenever pins are given
    use_fingerprints = not pins
    if use_fingerprints:
        n1 = target.min_norms(1)[0]
        layer_t = [target.coords(v) for v in target.vectors_of_norm(n1)]
        layer_s_vecs = source.vectors_of_norm(source.min_norms(1)[0])
        all_cand = all_cand | set(layer_t)
    gt_cols = list(zip(*gt))
    gt_rows = {a: tuple(vdot(a, col) for col in gt_cols) for a in all_cand}

    def fp_of_candidate(a):
        ga = gt_rows[a]
        return tuple(sorted(vdot(ga, s) for s in layer_t))

    def fp_of_source_row(i):
        return tuple(sorted(vdot(red_vecs[i], s) for s in layer_s_vecs))

    pin_pairs = []
    for (x, y) in pins:
        y = tuple(Fraction(v) for v in y)
        yt = tuple(vdot(target.vector(j), y) for j in range(r))
        pin_pairs.append((tuple(Fraction(v) for v in x), yt))

    fp_cache: dict = {}
    per_row = []
    for i in range(r):
        nm = gs[i][i]
        fp_i = fp_of_source_row(i) if use_fingerprints else None
        opts = []
        for a in cands[nm]:
            if use_fingerprints:
                fpa = fp_cache.get(a)
                if fpa is None:
                    fpa = fp_cache[a] = fp_of_candidate(a)
                if fpa != fp_i:
                    continue
            if any(vdot(a, yt) != vdot(red_vecs[i], x) for (x, yt) in pin_pairs):
                continue
            opts.append(a)
        if not opts:
            return None, "exhausted"
        per_row.append(opts)

    order = sorted(range(r), key=lambda i: len(per_row[i]))
    sign_reduce = not pins
    chosen: list = [None] * r
    nodes = 0

    def backtrack(pos: int) -> bool:
        nonlocal nodes
        if pos == r:
            return True
        i = order[pos]
        for a in per_row[i]:
            nodes += 1
            if nodes > node_cap:
                raise BudgetExceededError("isometry search node cap exceeded")
            if pos == 0 and sign_reduce and not _sign_canonical(a):
                continue
            ga = gt_rows[a]
            ok = True
            for prev in range(pos):
                ip = order[prev]
                if vdot(ga, chosen[ip]) != gs[i][ip]:
                    ok = False
                    break
            if not ok:
                continue
            chosen[i] = a
            if backtrack(pos + 1):
                return True
            chosen[i] = None
        return False

    if not backtrack(0):
        return None, "exhausted"

    t_inv = mat_inverse(t_mat)
    u_rows = matmul(t_inv, tuple(chosen))
    u = []
    for row in u_rows:
        assert all(x.denominator == 1 for x in row)
        u.append(tuple(int(x) for x in row))
    witness = IsometryWitness(tuple(u))
    assert witness.verify(target, source)
    return witness, None


def isometry_decision(a: Lattice, b: Lattice, *, depth: int = DEFAULT_INVARIANT_DEPTH,
                      node_cap: int = DEFAULT_NODE_CAP):
    """(witness U with U G_a U^T = G_b, or None; separating reason or None)."""
    if a == b:
        return IsometryWitness(identity_matrix(a.rank)), None
    # find_isometry(b, a) yields U with U G_a U^T = G_b
    return find_isometry(b, a, depth=depth, node_cap=node_cap)


def is_isometric(a: Lattice, b: Lattice, *, depth: int = DEFAULT_INVARIANT_DEPTH,
                 node_cap: int = DEFAULT_NODE_CAP) -> IsometryWitness | None:
    """Witness U with U G_a U^T = G_b when the lattices are isometric.

    Deterministic: candidate images are explored in lexicographic order, so
    the returned witness is the lexicographically first one the pruned search
    reaches.  Raises BudgetExceededError if the node cap is hit.
    """
    witness, _ = isometry_decision(a, b, depth=depth, node_cap=node_cap)
    return witness


def transporter(lat: Lattice, pairs, *, node_cap: int = DEFAULT_NODE_CAP) -> AmbientMap | None:
    """An automorphism of `lat` mapping pairs[i][0] to pairs[i][1] exactly.

    Realized by the isometry engine with pinned vectors; the returned map is
    extended by the identity on the orthogonal complement of the span.
    """
    witness, _ = find_isometry(lat, lat, pins=tuple(pairs), node_cap=node_cap)
    if witness is None:
        return None
    images = [lat.coeff_to_vector(row) for row in witness.u]
    amb = span_map_to_ambient(lat, images)
    for (x, y) in pairs:
        if amb.apply(tuple(Fraction(v) for v in x)) != tuple(Fraction(v) for v in y):
            raise AssertionError("transporter failed to honor a pinned pair")
    return amb
