"""Exact-arithmetic lattices from self-orthogonal codes over prime fields."""

from .codes import (Catalog, Code, SignedPermutation, coset_weight_count,
                    dual_code, enumerate_self_orthogonal, equivalent,
                    is_self_orthogonal, random_self_orthogonal)
from .construct import (AnData, an_data, an_lattice, chi_vector, construction,
                        construction_a, construction_b, lambda_lift,
                        monomial_map)
from .exact import BudgetExceededError
from .isometry import AmbientMap, IsometryWitness, is_isometric, isometry_decision, transporter
from .lattice import Lattice, index, join, kernel_sublattice
from .rootsys import (Frame, RootComponent, decompose, e8_chain_transport,
                      e8_lattice, find_frames, normalize_frame, recover_code,
                      roots, standard_frame)
from .special import (BridgeMap, K3Code, bridge_map, code_construction_a3,
                      code_construction_b3, d5_code, d5_zero_code, k3_full,
                      realizes_b3, realizes_b5, verify_bridge)
from .harness import Report, theorem_matrix, verify_suite

__version__ = "0.1.0"

__all__ = [
    "AmbientMap", "AnData", "BridgeMap", "BudgetExceededError", "Catalog",
    "Code", "Frame", "IsometryWitness", "K3Code", "Lattice", "Report",
    "RootComponent", "SignedPermutation", "an_data", "an_lattice",
    "bridge_map", "chi_vector", "code_construction_a3", "code_construction_b3",
    "construction", "construction_a", "construction_b", "coset_weight_count",
    "d5_code", "d5_zero_code", "decompose", "dual_code", "e8_chain_transport",
    "e8_lattice", "enumerate_self_orthogonal", "equivalent", "find_frames",
    "index", "is_isometric", "is_self_orthogonal", "isometry_decision",
    "join", "k3_full", "kernel_sublattice", "lambda_lift", "monomial_map",
    "normalize_frame", "random_self_orthogonal", "realizes_b3", "realizes_b5",
    "recover_code", "roots", "standard_frame", "theorem_matrix", "transporter",
    "verify_suite",
]
