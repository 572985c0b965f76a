"""Command-line front end.

Exit codes: 0 success, 1 domain error (not a unit, log of a nonpositive
constant, invalid family, ...), 2 usage error (bad flags or documents).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import calculus, documents, tensor
from .cobordism import gamma_from_json
from .errors import ClosureExplosion, DomainError, GradedSeriesError, InfiniteDecomposition, NotAUnit
from .paths import PolyPath, solve_log_ode
from .rings import QQ, RR
from .series import Series, parallelism

RINGS = {"rational": QQ, "real64": RR}


class UsageError(Exception):
    pass


def _read_input(path: str | None) -> Any:
    text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not JSON: {exc}") from exc


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_series(args, a: Series, symmetric: bool = False) -> None:
    if args.pretty:
        _write(args, a.pretty() + "\n")
    else:
        _write(args, documents.dumps(documents.series_to_doc(a, symmetric=symmetric)))


def _load_series(args) -> Series:
    try:
        a = documents.series_from_doc(_read_input(args.input))
    except documents.DocumentError as exc:
        raise UsageError(str(exc)) from exc
    if args.ring is not None and args.ring != a.ring.name:
        if (a.ring.name, args.ring) != ("rational", "real64"):
            raise UsageError(f"cannot convert {a.ring.name} coefficients to {args.ring}")
        a = a.change_ring(RR, float)
    if args.degree is not None:
        if args.degree > a.truncation:
            raise UsageError(f"--degree {args.degree} exceeds the document truncation {a.truncation}")
        a = a.truncate(args.degree)
    return a


def cmd_bch(args) -> None:
    if args.degree is None:
        args.degree = 4
    if args.degree < 1:
        raise UsageError("--degree must be >= 1")
    if args.letters < 2:
        raise UsageError("--letters must be >= 2")
    alg = tensor.tensor_algebra(args.letters, args.degree, RINGS[args.ring or "rational"])
    gens = alg.gens()
    _emit_series(args, calculus.bch(gens[0], gens[1]))


def _unary(op: Callable[[Series], Series], symmetric: bool = False):
    def run(args) -> None:
        _emit_series(args, op(_load_series(args)), symmetric=symmetric)

    return run


def cmd_ode(args) -> None:
    try:
        v = documents.path_from_doc(_read_input(args.input))
    except documents.DocumentError as exc:
        raise UsageError(str(exc)) from exc
    if args.degree is not None:
        if args.degree > v.algebra.truncation:
            raise UsageError(f"--degree {args.degree} exceeds the document truncation")
        v = PolyPath(v.algebra.with_truncation(args.degree), [c.truncate(args.degree) for c in v.coeffs])
    g = solve_log_ode(v)
    if args.pretty:
        lines = [f"t^{j}: {c.pretty()}" for j, c in enumerate(g.coeffs)]
        _write(args, "\n".join(lines) + "\n")
    else:
        _write(args, documents.dumps(documents.path_to_doc(g)))


def cmd_cobordism_validate(args) -> int:
    doc = _read_input(args.input)
    try:
        documents.gamma_doc_validate(doc)
        if args.degree is not None:
            doc = dict(doc, length_bound=args.degree)
        report = gamma_from_json(doc, strict=args.strict, budget=args.budget)
    except (documents.DocumentError, ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    _write(args, report.summary() + "\n")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-N", "--degree", type=int, help="truncation order")
    common.add_argument("--ring", choices=sorted(RINGS), help="coefficient ring")
    common.add_argument("--pretty", action="store_true", help="human-readable monomials instead of JSON")
    common.add_argument("--in", dest="input", metavar="FILE", help="input document (default: stdin)")
    common.add_argument("--out", metavar="FILE", help="output file (default: stdout)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for series products")

    parser = argparse.ArgumentParser(prog="gradedseries", description="Truncated graded formal series.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bch", parents=[common], help="print BCH(x1, x2) up to the given order")
    p.add_argument("-d", "--letters", type=int, default=2, help="alphabet size")
    p.set_defaults(func=cmd_bch)

    for name, op, helptext in (
        ("invert", Series.invert, "multiplicative inverse"),
        ("exp", calculus.exp, "exponential"),
        ("log", calculus.log, "logarithm"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.set_defaults(func=_unary(op))
    p = sub.add_parser("sym", parents=[common], help="symmetrize a word series")
    p.set_defaults(func=_unary(tensor.symmetrize, symmetric=True))

    p = sub.add_parser("ode", parents=[common], help="solve g^-1 dg/dt = v for a polynomial path v")
    p.set_defaults(func=cmd_ode)

    p = sub.add_parser("cobordism-validate", parents=[common], help="validate a cobordism generator family")
    p.add_argument("--strict", action="store_true", help="also require the whole family to be finite")
    p.add_argument("--budget", type=int, default=100_000, help="maximal closure size")
    p.set_defaults(func=cmd_cobordism_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        with parallelism(args.threads):
            status = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (NotAUnit, DomainError, ClosureExplosion, InfiniteDecomposition) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GradedSeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
