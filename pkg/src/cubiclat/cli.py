"""Command line interface.

Subcommands mirror the library one to one; with ``--json`` the payload
is emitted as a stable JSON document of the form

    {"command": ..., "status": "ok", "payload": {...}}

and without it a terse human-readable rendering of the same data is
printed.  Exit codes: 0 ok, 2 usage error, 3 lattice file parse error,
4 domain error (degenerate Gram, failed precondition).  Diagnostics go
to stderr, payloads to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import admissibility, chow, cohomology, mukai
from .errors import CubiclatError, DegenerateGramError, LatticeFormatError, ParityError
from .exactlinalg import IntMatrix, determinant
from .lattices import (
    Lattice,
    discriminant_group,
    lattice_by_name,
    load_lattice,
    signature,
)

USAGE_ERROR = 2
PARSE_ERROR = 3
DOMAIN_ERROR = 4


def jsonable(value):
    """Render library values into JSON-stable primitives.

    Integers stay integers; non-integral rationals become strings in
    lowest terms ("4/3"); matrices and vectors become nested lists.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, IntMatrix):
        return value.to_lists()
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def resolve_lattice(source: str) -> Lattice:
    """Interpret a lattice argument as a catalog name or a file path."""
    for d in (26, 42):
        if source.strip().upper() == f"L{d}":
            return mukai.kuznetsov_rank3_lattice(d)
    try:
        return lattice_by_name(source)
    except ValueError:
        pass
    if os.path.exists(source):
        return load_lattice(source)
    raise LatticeFormatError(f"unknown lattice name and no such file: {source!r}")


# ---------------------------------------------------------------------------
# payload builders (shared by tests to pin CLI/library agreement)


def admissible_payload(max_d: int, verbose: bool) -> dict:
    payload: dict = {
        "max": max_d,
        "admissible": admissibility.enumerate_admissible(max_d),
    }
    if verbose:
        payload["reports"] = [
            {
                "d": r.d,
                "star": r.satisfies_star,
                "star_star": r.satisfies_star_star,
                "genus": r.genus,
                "witness": r.witness,
            }
            for r in map(admissibility.discriminant_report, range(1, max_d + 1))
        ]
    return payload


def lattice_info_payload(L: Lattice) -> dict:
    det = determinant(L.gram)
    if det == 0:
        raise DegenerateGramError("lattice is degenerate")
    p, n = signature(L)
    return {
        "label": L.label,
        "rank": L.rank,
        "det": det,
        "abs_det": abs(det),
        "signature": [p, n],
        "discriminant_group": list(discriminant_group(L).factors),
        "gram": L.gram.to_lists(),
    }


def mukai_verify_payload(L: Lattice, v, vp, w, d: int) -> dict:
    triple = mukai.IsotropicTriple(L.vec(v), L.vec(vp), L.vec(w), d)
    check = mukai.verify_triple(L, triple)
    return {
        "lattice": L.label,
        "v": list(v),
        "vprime": list(vp),
        "w": list(w),
        "d": d,
        "conditions": check.conditions(),
        "all_ok": check.all_ok,
    }


def mukai_search_payload(L: Lattice, d: int, bound: int) -> dict:
    result = mukai.find_isotropic_triple(L, d, bound)
    payload: dict = {
        "lattice": L.label,
        "d": d,
        "bound": bound,
        "status": result.status,
    }
    if result.reason:
        payload["reason"] = result.reason
    if result.triple is not None:
        t = result.triple
        check = mukai.verify_triple(L, t)
        payload.update(
            {
                "v": list(t.v.coords),
                "vprime": list(t.vprime.coords),
                "w": list(t.w.coords),
                "conditions": check.conditions(),
                "all_ok": check.all_ok,
            }
        )
    return payload


def mukai_gram_lambda_payload() -> dict:
    return {"basis": ["lambda1", "lambda2"], "gram": cohomology.lambda_gram()}


def mukai_normalize_payload(L: Lattice, v, vp) -> dict:
    basis, gram = mukai.hyperbolic_normalize(L, v, vp)
    return {
        "lattice": L.label,
        "basis": [list(b.coords) for b in basis],
        "gram": gram.to_lists(),
    }


def chow_payload(name: str) -> dict:
    spec = chow.SURFACES[name]
    gram, disc = chow.label_gram(spec.degree, spec.rr)
    relation = chow.pushforward_relation(spec)
    gd = chow.gdch_generators(spec)
    restricted = chow.restricted_pushforward(spec)
    return {
        "surface": spec.name,
        "degree": spec.degree,
        "rr": spec.rr,
        "label_gram": gram.to_lists(),
        "discriminant": disc,
        "relation": relation.text(),
        "restricted_pushforward": {
            "class": {k: v for k, v in restricted.coeffs.items()},
            "text": restricted.text(),
        },
        "gdch": {
            "generators": [g.text() for g in gd.generators],
            "collapsed": gd.collapsed,
        },
    }


def scroll_ideal_payload() -> dict:
    return {"minors": [q.text() for q in chow.quartic_scroll_minors()]}


# ---------------------------------------------------------------------------
# rendering


def emit(command: str, payload: dict, as_json: bool) -> None:
    if as_json:
        doc = {"command": command, "status": "ok", "payload": jsonable(payload)}
        print(json.dumps(doc, indent=2, sort_keys=True))
        return
    for line in human_lines(payload):
        print(line)


def human_lines(payload: dict, indent: str = "") -> list[str]:
    out = []
    for key, value in payload.items():
        if isinstance(value, dict):
            out.append(f"{indent}{key}:")
            out.extend(human_lines(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            out.append(f"{indent}{key}:")
            for item in value:
                out.extend(human_lines(item, indent + "  "))
                out.append(f"{indent}  -")
        else:
            out.append(f"{indent}{key}: {jsonable(value)}")
    return out


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        )


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps an absent subcommand-level --json from clobbering the
    # top-level default in the shared namespace
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS,
        help="emit a stable JSON payload",
    )

    parser = argparse.ArgumentParser(
        prog="cubiclat",
        description="exact lattice and intersection-theory computations "
        "for special cubic fourfolds and their associated K3 surfaces",
    )
    parser.add_argument(
        "--json", action="store_true", default=False, help="emit a stable JSON payload"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("admissible", parents=[common], help="enumerate admissible discriminants")
    p.add_argument("--max", type=int, required=True, help="upper bound on d")
    p.add_argument("--verbose", action="store_true", help="include per-d reports")

    p = sub.add_parser("lattice", parents=[common], help="lattice catalog and files")
    lsub = p.add_subparsers(dest="lattice_command", required=True)
    q = lsub.add_parser("info", parents=[common], help="rank, determinant, signature, discriminant group")
    q.add_argument("source", help="catalog name (Gamma, E8, U, ...) or lattice file path")

    p = sub.add_parser("mukai", parents=[common], help="rank-3 lattices and isotropic triples")
    msub = p.add_subparsers(dest="mukai_command", required=True)

    q = msub.add_parser("verify", parents=[common], help="check the four triple conditions")
    q.add_argument("--lattice", required=True)
    q.add_argument("--v", type=_vector, required=True)
    q.add_argument("--vp", type=_vector, required=True)
    q.add_argument("--w", type=_vector, required=True)
    q.add_argument("--d", type=int, required=True)

    q = msub.add_parser("search", parents=[common], help="search a coordinate box for a triple")
    q.add_argument("--lattice", required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--bound", type=int, default=25)

    msub.add_parser("gram-lambda", parents=[common], help="Euler-pairing Gram of (lambda1, lambda2)")

    q = msub.add_parser("normalize", parents=[common], help="split off the hyperbolic plane of (v, v')")
    q.add_argument("--lattice", required=True)
    q.add_argument("--v", type=_vector, required=True)
    q.add_argument("--vp", type=_vector, required=True)

    p = sub.add_parser("chow", parents=[common], help="surface class relations")
    p.add_argument(
        "--surface",
        required=True,
        choices=sorted(chow.SURFACES),
    )

    sub.add_parser("scroll-ideal", parents=[common], help="minors cutting out the quartic scroll")

    return parser


def dispatch(args: argparse.Namespace) -> tuple[str, dict]:
    if args.command == "admissible":
        if args.max < 1:
            raise ValueError("--max must be a positive integer")
        return "admissible", admissible_payload(args.max, args.verbose)
    if args.command == "lattice":
        return "lattice info", lattice_info_payload(resolve_lattice(args.source))
    if args.command == "mukai":
        if args.mukai_command == "verify":
            L = resolve_lattice(args.lattice)
            return "mukai verify", mukai_verify_payload(L, args.v, args.vp, args.w, args.d)
        if args.mukai_command == "search":
            L = resolve_lattice(args.lattice)
            return "mukai search", mukai_search_payload(L, args.d, args.bound)
        if args.mukai_command == "gram-lambda":
            return "mukai gram-lambda", mukai_gram_lambda_payload()
        if args.mukai_command == "normalize":
            L = resolve_lattice(args.lattice)
            return "mukai normalize", mukai_normalize_payload(L, args.v, args.vp)
    if args.command == "chow":
        return "chow", chow_payload(args.surface)
    if args.command == "scroll-ideal":
        return "scroll-ideal", scroll_ideal_payload()
    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR
    try:
        command, payload = dispatch(args)
    except LatticeFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return PARSE_ERROR
    except (DegenerateGramError, ParityError) as e:
        print(f"error: {e}", file=sys.stderr)
        return DOMAIN_ERROR
    except (ValueError, CubiclatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return DOMAIN_ERROR
    emit(command, payload, args.json)
    return 0


if __name__ == "__main__":
    sys.exit(main())
