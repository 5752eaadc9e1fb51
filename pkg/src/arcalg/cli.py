"""Command line front end: ``arcalg <command> [flags]``.

Every command prints one JSON document with a ``schema_version`` field.
Exit codes: 0 success, 1 a check failed or a result could not be certified,
2 usage or limit error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import __version__
from .algebra import ArcAlgebra, element_from_json
from .braids import BraidWord, akh, braid_bimodule_complex, jones, kh_cube, ss_check
from .errors import ArcAlgError, InvalidParameters, TruncationError
from .fields import Field
from .hochschild import diagonal_bimodule, relative_bar_hochschild
from .modules import module_report
from .verify import run_suite

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit code 2 with our own message format
        raise UsageError(message)


def _poly(p: dict[int, int]) -> dict[str, int]:
    return {str(e): c for e, c in sorted(p.items())}


def _algebra(args) -> ArcAlgebra:
    if getattr(args, "kind", "K") == "H" and args.n is not None:
        if args.n > args.limit_m:
            raise UsageError(f"n={args.n} exceeds the limit {args.limit_m}")
        return ArcAlgebra.H(args.n, args.field)
    if args.n is None or args.m is None:
        raise UsageError("--n and --m are required")
    if not 0 <= args.n <= args.m:
        raise UsageError(f"need 0 <= n <= m, got n={args.n}, m={args.m}")
    if args.m > args.limit_m:
        raise UsageError(f"m={args.m} exceeds the limit {args.limit_m} (raise --limit-m)")
    return ArcAlgebra(getattr(args, "kind", "K"), args.n, args.m, args.field)


def _braid(args, text: str | None = None, strands: int | None = None) -> BraidWord:
    text = args.braid if text is None else text
    if text is None:
        raise UsageError("--braid is required")
    strands = getattr(args, "strands", None) if strands is None else strands
    try:
        word = BraidWord.parse(text, strands)
    except InvalidParameters as exc:
        raise UsageError(str(exc)) from None
    if word.n > args.limit_strands or len(word) > args.limit_length:
        raise UsageError(f"braid exceeds desk-scale limits ({args.limit_strands} strands, "
                         f"length {args.limit_length}); raise --limit-strands/--limit-length")
    return word


# -- commands ---------------------------------------------------------------------------------


def cmd_dim(args) -> tuple[dict, bool]:
    A = _algebra(args)
    return {"algebra": repr(A), "total": A.dim, "graded": _poly(A.graded_dimension())}, True


def cmd_mult(args) -> tuple[dict, bool]:
    A = _algebra(args)
    try:
        x = element_from_json(A, json.loads(args.x))
        y = element_from_json(A, json.loads(args.y))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise UsageError(f"bad element: {exc}") from None
    return {"algebra": repr(A), "product": (x * y).to_json()}, True


def cmd_modules(args) -> tuple[dict, bool]:
    A = _algebra(args)
    rep = module_report(A).to_json()
    return rep, rep["DtD_equals_cartan"] and rep["unitriangular"]


def cmd_hh(args) -> tuple[dict, bool]:
    A = _algebra(args)
    if args.coeff == "diagonal":
        M = diagonal_bimodule(A)
        graded = True
    elif args.coeff.startswith("braid:"):
        word = _braid(args, args.coeff[len("braid:"):], strands=A.m)
        if word.n != A.m:
            raise UsageError(f"braid on {word.n} strands needs --m {word.n}")
        cx = braid_bimodule_complex(word, A.n, A.field)
        M, graded = cx.module, cx.q_homogeneous
    else:
        raise UsageError("--coeff must be 'diagonal' or 'braid:<word>'")
    res = relative_bar_hochschild(A, M, args.max_degree, graded=graded)
    out = {"algebra": repr(A), "coefficients": args.coeff, **res.to_json(),
           "ranks_by_degree": res.to_json()["ranks"], "ranks": res.rank_list(),
           "first_degree": min(res.ranks, default=0)}
    return out, True


def cmd_kh(args) -> tuple[dict, bool]:
    return kh_cube(_braid(args), args.field).to_json(), True


def cmd_jones(args) -> tuple[dict, bool]:
    word = _braid(args)
    return {"braid": str(word), "strands": word.n, "jones": _poly(jones(word))}, True


def cmd_akh(args) -> tuple[dict, bool]:
    res = akh(_braid(args), pmax=args.max_degree, field=args.field)
    return res.to_json(), True


def cmd_ss_check(args) -> tuple[dict, bool]:
    rep = ss_check(_braid(args), max_m=args.m_max, field=args.field)
    return rep.to_json(), rep.passed


def cmd_verify(args) -> tuple[dict, bool]:
    results = run_suite(args.suite, args.field, args.seed, args.n_max, args.m_max)
    for r in results:
        print(r.line(), file=sys.stderr)
    out = {"suite": args.suite, "seed": args.seed,
           "results": [{k: v for k, v in r.to_json().items() if k != "seconds"} for r in results],
           "passed": all(r.passed for r in results)}
    return out, out["passed"]


COMMANDS = {
    "dim": cmd_dim,
    "mult": cmd_mult,
    "modules": cmd_modules,
    "hh": cmd_hh,
    "kh": cmd_kh,
    "jones": cmd_jones,
    "akh": cmd_akh,
    "ss-check": cmd_ss_check,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="'Q' (default) or a prime p")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--limit-m", type=int, default=8)
    common.add_argument("--limit-strands", type=int, default=3)
    common.add_argument("--limit-length", type=int, default=5)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="arcalg", description="Arc algebras, Hochschild homology and braid invariants.")
    parser.add_argument("--version", action="version", version=f"arcalg {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def algebra_flags(p):
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)

    p = sub.add_parser("dim", parents=[common], help="basis size and graded dimension")
    algebra_flags(p)
    p.add_argument("--kind", choices=("K", "H", "Hc"), default="K",
                   help="K(n,m); H takes --n only as H_{n,2n}; Hc is the compact subalgebra")
    p = sub.add_parser("mult", parents=[common], help="multiply two elements given as JSON")
    algebra_flags(p)
    p.add_argument("--x", required=True, help='e.g. [[1, "v^:v^:v^"]]')
    p.add_argument("--y", required=True)
    p = sub.add_parser("modules", parents=[common], help="projective, standard and simple modules")
    algebra_flags(p)
    p = sub.add_parser("hh", parents=[common], help="Hochschild homology")
    algebra_flags(p)
    p.add_argument("--coeff", default="diagonal", help="'diagonal' or 'braid:<word>' (sector --n, strands --m)")
    p.add_argument("--max-degree", type=int, default=3, help="bar depth; degrees below it are certified")
    for name, helptext in (("kh", "Khovanov homology of the closure"), ("jones", "Jones polynomial"),
                           ("akh", "annular Khovanov homology via Hochschild homology"),
                           ("ss-check", "spectral-sequence rank constraints")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--braid", required=True, help='signed letters, e.g. "1 1 -2"')
        p.add_argument("--strands", type=int, default=None)
        if name == "akh":
            p.add_argument("--max-degree", type=int, default=None,
                           help="bar depth (default: enough for a complete answer)")
        if name == "ss-check":
            p.add_argument("--m-max", type=int, default=8)
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=("quick", "algebra", "full"), default="quick")
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--m-max", type=int, default=4)
    return parser


def _text(doc: dict) -> str:
    lines = []
    for k, v in doc.items():
        if k == "schema_version":
            continue
        lines.append(f"{k}: {json.dumps(v, ensure_ascii=False)}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        try:
            args.field = Field.parse(args.field)
        except InvalidParameters as exc:
            raise UsageError(str(exc)) from None
        doc, ok = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"arcalg: error: {exc}", file=sys.stderr)
        return 2
    except TruncationError as exc:
        print(f"arcalg: not certified: {exc}", file=sys.stderr)
        return 1
    except ArcAlgError as exc:
        print(f"arcalg: error: {exc}", file=sys.stderr)
        return 1
    doc = {"schema_version": SCHEMA_VERSION, "command": args.command, **doc}
    if args.format == "text":
        print(_text(doc))
    else:
        print(json.dumps(doc, ensure_ascii=False))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
