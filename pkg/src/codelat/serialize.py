"""File formats: codes, lattices, and isometry witnesses as canonical JSON."""

from __future__ import annotations

import hashlib
import json

from .codes import Code
from .isometry import IsometryWitness
from .lattice import Lattice


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def dump_code(code: Code, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_json(code.to_json()))


def load_code(path: str) -> Code:
    with open(path) as fh:
        return Code.from_json(json.load(fh))


def dump_lattice(lat: Lattice, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_json(lat.to_json()))


def load_lattice(path: str) -> Lattice:
    with open(path) as fh:
        return Lattice.from_json(json.load(fh))


def lattice_sha256(lat: Lattice) -> str:
    return hashlib.sha256(canonical_json(lat.to_json()).encode()).hexdigest()


def witness_json(witness: IsometryWitness, source: Lattice, target: Lattice) -> dict:
    return {"U": [list(r) for r in witness.u],
            "source_sha256": lattice_sha256(source),
            "target_sha256": lattice_sha256(target)}


def dump_witness(witness: IsometryWitness, source: Lattice, target: Lattice,
                 path: str) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_json(witness_json(witness, source, target)))
