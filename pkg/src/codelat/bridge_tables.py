"""Per-block image tables of the two explicit bridge isometries.

Each entry gives the image of one simple root of one block slot as a tuple of
slot images; a slot image is a coefficient vector over the dual basis vectors
eps_1..eps_n of that slot (n = 3 or 5).  The block maps are orthogonal: this
is checked exactly every time a map is assembled.
"""

# length-3 blocks: images of (a1,0,0), (a2,0,0), (0,a1,0), (0,a2,0),
# (0,0,a1), (0,0,a2); each image lists three eps-coefficient vectors
PHI_BLOCK_3 = (
    # (a1,0,0) -> (e3, e2, e1)
    (((0, 0, 1), (0, 1, 0), (1, 0, 0))),
    # (a2,0,0) -> (e2, e1, e3)
    (((0, 1, 0), (1, 0, 0), (0, 0, 1))),
    # (0,a1,0) -> (e1, e2, e3)
    (((1, 0, 0), (0, 1, 0), (0, 0, 1))),
    # (0,a2,0) -> (e3, e1, e2)
    (((0, 0, 1), (1, 0, 0), (0, 1, 0))),
    # (0,0,a1) -> (e1, e1, e1)
    (((1, 0, 0), (1, 0, 0), (1, 0, 0))),
    # (0,0,a2) -> (e3, e3, e3)
    (((0, 0, 1), (0, 0, 1), (0, 0, 1))),
)

# length-2 blocks over five coordinates: images of (a1,0)..(a4,0), (0,a1)..(0,a4)
PSI_BLOCK_5 = (
    # (a1,0) -> (e1, -(e1+e2+e4))
    ((1, 0, 0, 0, 0), (-1, -1, 0, -1, 0)),
    # (a2,0) -> (e3, e2+e4)
    ((0, 0, 1, 0, 0), (0, 1, 0, 1, 0)),
    # (a3,0) -> (e5, e1+e3)
    ((0, 0, 0, 0, 1), (1, 0, 1, 0, 0)),
    # (a4,0) -> (e2, -(e1+e3+e4))
    ((0, 1, 0, 0, 0), (-1, 0, -1, -1, 0)),
    # (0,a1) -> (e1, e1+e2)
    ((1, 0, 0, 0, 0), (1, 1, 0, 0, 0)),
    # (0,a2) -> (e2, e3+e4)
    ((0, 1, 0, 0, 0), (0, 0, 1, 1, 0)),
    # (0,a3) -> (e3, -(e2+e3+e4))
    ((0, 0, 1, 0, 0), (0, -1, -1, -1, 0)),
    # (0,a4) -> (e4, e2+e3)
    ((0, 0, 0, 1, 0), (0, 1, 1, 0, 0)),
)

# pinned row echelon forms of the coefficient matrices arising in the two
# sublattice computations of the bridge verification
ECHELON_3 = (
    (1, 0, 0, 0, 0, 2),
    (0, 1, 0, 0, 0, 2),
    (0, 0, 1, 0, 0, 2),
    (0, 0, 0, 1, 0, 2),
    (0, 0, 0, 0, 1, 2),
    (0, 0, 0, 0, 0, 3),
)

ECHELON_5 = (
    (1, 0, 0, 0, 0, 0, 0, 4),
    (0, 1, 0, 0, 0, 0, 0, 4),
    (0, 0, 1, 0, 0, 0, 0, 4),
    (0, 0, 0, 1, 0, 0, 0, 4),
    (0, 0, 0, 0, 1, 0, 0, 4),
    (0, 0, 0, 0, 0, 1, 0, 4),
    (0, 0, 0, 0, 0, 0, 1, 4),
    (0, 0, 0, 0, 0, 0, 0, 5),
)
