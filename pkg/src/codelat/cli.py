"""Command line surface.

Exit codes: 0 success, 1 mathematical "no" or failed verification
(counterexample available in the report), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import construct, harness, rootsys, serialize, special
from .codes import Code, enumerate_self_orthogonal, equivalent
from .isometry import is_isometric

EXIT_OK = 0
EXIT_MATH_NO = 1
EXIT_USAGE = 2


def _print_json(data, path=None):
    text = serialize.canonical_json(data)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_construct(args) -> int:
    code = serialize.load_code(args.code)
    if args.p is not None and args.p != code.p:
        print(f"error: code file has p={code.p}, got --p {args.p}", file=sys.stderr)
        return EXIT_USAGE
    lat = construct.construction(code, args.construction)
    serialize.dump_lattice(lat, args.out)
    print(f"wrote {args.out}: rank {lat.rank}, det {_frac_str(lat.det())}")
    return EXIT_OK


def cmd_roots(args) -> int:
    lat = serialize.load_lattice(args.lattice)
    rts = rootsys.roots(lat)
    if args.json:
        _print_json({"count": len(rts),
                     "roots": [[_frac_str(x) for x in v] for v in rts]})
    else:
        print(f"{len(rts)} roots")
        for v in rts:
            print(" ".join(_frac_str(x) for x in v))
    return EXIT_OK


def cmd_minima(args) -> int:
    lat = serialize.load_lattice(args.lattice)
    norms = lat.min_norms(args.count)
    if args.json:
        _print_json({"norms": [_frac_str(n) for n in norms]})
    else:
        print(" ".join(_frac_str(n) for n in norms))
    return EXIT_OK


def cmd_isometric(args) -> int:
    a = serialize.load_lattice(args.lattice1)
    b = serialize.load_lattice(args.lattice2)
    witness = is_isometric(a, b, depth=args.depth)
    if witness is None:
        print("not isometric")
        return EXIT_MATH_NO
    if args.witness_out:
        serialize.dump_witness(witness, a, b, args.witness_out)
    print("isometric")
    if args.json:
        _print_json(serialize.witness_json(witness, a, b))
    return EXIT_OK


def cmd_equivalent(args) -> int:
    c = serialize.load_code(args.code1)
    d = serialize.load_code(args.code2)
    g = equivalent(c, d)
    if g is None:
        print("not equivalent")
        return EXIT_MATH_NO
    print("equivalent")
    if args.json:
        _print_json({"perm": list(g.perm), "signs": list(g.signs)})
    return EXIT_OK


def cmd_enumerate(args) -> int:
    catalog = enumerate_self_orthogonal(args.p, args.k)
    data = {"p": args.p, "k": args.k, "classes": [c.to_json() for c in catalog]}
    if args.out:
        _print_json(data, args.out)
    print(f"{len(catalog)} classes")
    for c in catalog:
        print(f"  dim {c.dim}: {list(map(list, c.gens))}")
    return EXIT_OK


def cmd_frames(args) -> int:
    lat = serialize.load_lattice(args.lattice)
    frames = rootsys.find_frames(lat, args.p, cap=args.max)
    print(f"{len(frames)} frames")
    if args.json:
        _print_json({"count": len(frames)})
    return EXIT_OK


def cmd_recover_code(args) -> int:
    lat = serialize.load_lattice(args.lattice)
    code = rootsys.recover_code(args.p, lat)
    _print_json(code.to_json(), args.out)
    if args.out:
        print(f"wrote {args.out}: dim {code.dim}")
    return EXIT_OK


def cmd_bridge(args) -> int:
    if args.p == 3:
        k3 = special.k3_full(args.m) if args.full else \
            special.K3Code(args.m, Code(3, 3 * args.m))
        cert = special.verify_bridge(3, k3)
    else:
        cert = special.verify_bridge(5, args.m)
    if args.emit_hnf:
        for row in cert.echelon:
            print(" ".join(str(x) for x in row))
    if args.json:
        _print_json(cert.to_json())
    print(f"bridge p={args.p} m={args.m}: "
          f"{'ok' if cert.ok else 'FAILED'}")
    return EXIT_OK if cert.ok else EXIT_MATH_NO


def cmd_verify(args) -> int:
    params = json.loads(args.params) if args.params else {}
    if args.seed is not None:
        params.setdefault("seed", args.seed)
    report = harness.verify_suite(args.suite, params)
    _emit_report(report, args)
    return EXIT_OK if report.passed else EXIT_MATH_NO


def cmd_theorem(args) -> int:
    report = harness.theorem_matrix(args.p, args.k, args.construction,
                                    seed=args.seed or harness.DEFAULT_SEED,
                                    jobs=args.jobs)
    _emit_report(report, args)
    return EXIT_OK if report.passed else EXIT_MATH_NO


def _emit_report(report, args) -> None:
    if getattr(args, "json", None):
        _print_json(report.to_json(), args.json if isinstance(args.json, str) else None)
    status = "PASS" if report.passed else "FAIL"
    print(f"[{status}] {report.suite} "
          f"({sum(c.passed for c in report.checks)}/{len(report.checks)} checks, "
          f"{report.elapsed:.2f}s)")
    for c in report.checks:
        if not c.passed:
            print(f"  FAIL {c.name}: {c.details}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codelat",
        description="Exact lattices from self-orthogonal codes over F_p")
    parser.add_argument("--seed", default=None, help="seed for randomized suites")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a construction A or B lattice")
    c.add_argument("--p", type=int, default=None)
    c.add_argument("--construction", choices=("A", "B"), required=True)
    c.add_argument("--code", required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(fn=cmd_construct)

    c = sub.add_parser("roots", help="list the norm-2 vectors of an even lattice")
    c.add_argument("--lattice", required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=cmd_roots)

    c = sub.add_parser("minima", help="first distinct squared norms")
    c.add_argument("--lattice", required=True)
    c.add_argument("--count", type=int, default=3)
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=cmd_minima)

    c = sub.add_parser("isometric", help="decide lattice isometry with witness")
    c.add_argument("--lattice1", required=True)
    c.add_argument("--lattice2", required=True)
    c.add_argument("--witness-out", default=None)
    c.add_argument("--depth", type=int, default=3)
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=cmd_isometric)

    c = sub.add_parser("equivalent", help="decide signed-permutation code equivalence")
    c.add_argument("--code1", required=True)
    c.add_argument("--code2", required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=cmd_equivalent)

    c = sub.add_parser("enumerate", help="classify self-orthogonal codes")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--out", default=None)
    c.set_defaults(fn=cmd_enumerate)

    c = sub.add_parser("frames", help="enumerate frames of an even lattice")
    c.add_argument("--lattice", required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--max", type=int, default=rootsys.FRAME_NODE_CAP)
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=cmd_frames)

    c = sub.add_parser("recover-code", help="read the glue code off a lattice")
    c.add_argument("--lattice", required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--out", default=None)
    c.set_defaults(fn=cmd_recover_code)

    c = sub.add_parser("bridge", help="verify a bridge isometry certificate")
    c.add_argument("--p", type=int, choices=(3, 5), required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--full", action="store_true",
                   help="p=3 only: use the full block code instead of the zero code")
    c.add_argument("--emit-hnf", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=cmd_bridge)

    c = sub.add_parser("verify", help="run a named verification suite")
    c.add_argument("--suite", required=True)
    c.add_argument("--params", default=None, help="JSON parameter overrides")
    c.add_argument("--json", default=None, nargs="?", const=True,
                   help="emit the JSON report (optionally to a file)")
    c.set_defaults(fn=cmd_verify)

    c = sub.add_parser("theorem", help="run the isometry/equivalence matrix")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--construction", choices=("A", "B"), required=True)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--json", default=None, nargs="?", const=True)
    c.set_defaults(fn=cmd_theorem)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
