"""wittkit command line.

Exit codes: 0 success, 2 syntax or usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .complexes import FreeComplexEndo, euler_class
from .endo import EndoClass, apply_operation, class_of, split_class
from .errors import DomainError, ParseError, WittError
from .expr import Parser, evaluate, parse, parse_matrix, parse_operation, render
from .matrix import Matrix
from .oracle import format_report, run_oracle
from .rings import Ring, parse_ring
from .selftest import CRITERIA, default_seed, run
from .witt import WittFraction, ghost, truncate

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 2, 3


@dataclass(frozen=True)
class SessionConfig:
    ring: Ring
    structured: bool = False
    depth: int = 8
    seed: int | None = None


class UsageError(Exception):
    """Malformed command-line input that is not an expression syntax error."""


class _ArgumentParser(argparse.ArgumentParser):
    """Raises instead of exiting so main() can route output streams."""

    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")

    def exit(self, status=0, message=None):
        if message:
            raise UsageError(message.rstrip())
        raise _Exit(status)


class _Exit(Exception):
    def __init__(self, status):
        self.status = status


def _ring_arg(text: str) -> Ring:
    try:
        return parse_ring(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--ring", type=_ring_arg, default=parse_ring("Z"),
                        help="coefficient ring: Z, Z/m, GF(p), optionally extended as Z[t], GF(5)[t][s] (default Z)")
    common.add_argument("--structured", action="store_true",
                        help="print line-oriented coefficient arrays instead of formatted text")
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $WITTKIT_SEED or 1729)")

    p = _ArgumentParser(prog="wittkit", description="Exact rational Witt vector and endomorphism K0 calculator.")
    sub = p.add_subparsers(dest="command", parser_class=_ArgumentParser, metavar="command")
    sub.required = True

    s = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    s.add_argument("expression")

    s = sub.add_parser("ghost", parents=[common], help="ghost components of a Witt expression")
    s.add_argument("--depth", type=_positive_int, default=8)
    s.add_argument("expression")

    s = sub.add_parser("truncate", parents=[common], help="image in the truncated big Witt vectors")
    s.add_argument("--depth", type=_positive_int, default=8)
    s.add_argument("expression")

    s = sub.add_parser("class", parents=[common], help="class (rank, det(Id + M r)) of a square matrix")
    s.add_argument("--matrix", required=True)

    s = sub.add_parser("apply", parents=[common], help="apply an operation element to a matrix")
    s.add_argument("--op", required=True, help='operation such as "ver 2", "frob 3", "[[t^2]] - frob 2"')
    s.add_argument("--target", required=True, help="square matrix over the selected ring")

    s = sub.add_parser("split", parents=[common], help="split a class into its rank and Witt parts")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix")
    g.add_argument("--expression", help="expression evaluating to a class")

    s = sub.add_parser("euler", parents=[common], help="Euler class of a complex with endomorphism")
    s.add_argument("--complex", required=True, dest="complex_json",
                   help="JSON text, @path to a JSON file, or - for standard input")

    s = sub.add_parser("oracle", parents=[common], help="brute-force K0 presentation over GF(q)")
    s.add_argument("--field", type=int, required=True)
    s.add_argument("--maxdim", type=int, required=True)
    s.add_argument("--allow-large", action="store_true", help="permit GF(2) up to dimension 3 (slow)")
    s.add_argument("--no-certify", action="store_true", help="skip the exhaustive conjugation certificate")

    s = sub.add_parser("selftest", parents=[common], help="run the property suites")
    s.add_argument("--only", type=int, action="append", choices=sorted(CRITERIA),
                   help="run only this criterion (repeatable)")
    s.add_argument("--verbose", "-v", action="store_true", help="print every check")
    return p


# ---------------------------------------------------------------------------
# complexes from JSON
# ---------------------------------------------------------------------------

def _json_matrix(value, ring: Ring, nrows: int, ncols: int, what: str) -> Matrix:
    if value is None:
        if nrows and ncols:
            raise UsageError(f"{what} is missing")
        return Matrix.zeros(ring, nrows, ncols)
    if isinstance(value, str):
        m = parse_matrix(value, ring)
    else:
        if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
            raise UsageError(f"{what} must be a list of rows or a matrix literal")
        rows = [[_json_entry(x, ring, what) for x in r] for r in value]
        if any(len(r) != len(rows[0]) for r in rows):
            raise UsageError(f"{what} is ragged")
        m = Matrix.from_payload_rows(ring, rows, len(rows[0]) if rows else ncols)
    if (m.nrows, m.ncols) != (nrows, ncols):
        raise DomainError(f"{what} is {m.nrows}x{m.ncols}, expected {nrows}x{ncols}")
    return m


def _json_entry(x, ring: Ring, what: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise UsageError(f"{what}: entries must be integers or ring literals")
    if isinstance(x, int):
        return ring.from_int(x)
    p = Parser(x, ring)
    val = p.entry()
    if p.tok.kind != "end":
        p.fail("unexpected trailing input in matrix entry", ["end of input"])
    return val


def complex_from_json(text: str, ring: Ring) -> FreeComplexEndo:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"complex is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("levels"), list):
        raise UsageError('complex must be an object {"lowest": int, "levels": [...]}')
    lowest = data.get("lowest", 0)
    if not isinstance(lowest, int):
        raise UsageError("lowest must be an integer")
    levels = data["levels"]
    ranks = []
    for i, lv in enumerate(levels):
        if not isinstance(lv, dict) or not isinstance(lv.get("rank"), int) or lv["rank"] < 0:
            raise UsageError(f"level {i} needs a non-negative integer rank")
        ranks.append(lv["rank"])
    endos, diffs = [], []
    for i, lv in enumerate(levels):
        deg = lowest + i
        endos.append(_json_matrix(lv.get("endo"), ring, ranks[i], ranks[i], f"endo at degree {deg}"))
        if i + 1 < len(levels):
            diffs.append(_json_matrix(lv.get("differential"), ring, ranks[i + 1], ranks[i], f"differential at degree {deg}"))
        elif lv.get("differential") not in (None, []):
            raise UsageError(f"the top level (degree {deg}) cannot have a differential")
    return FreeComplexEndo(ring, lowest, tuple(ranks), tuple(diffs), tuple(endos))


def _read_source(arg: str, stdin) -> str:
    if arg == "-":
        return stdin.read()
    if arg.startswith("@"):
        try:
            with open(arg[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {arg[1:]}: {exc.strerror}") from None
    return arg


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _witt_operand(value, what: str) -> WittFraction:
    if not isinstance(value, WittFraction):
        raise DomainError(f"{what} needs a Witt vector expression")
    return value


def _square(m: Matrix) -> Matrix:
    m.require_square()
    return m


def dispatch(args, cfg: SessionConfig, out, stdin) -> int:
    R = cfg.ring
    cmd = args.command
    if cmd == "eval":
        print(render(evaluate(parse(args.expression, R)), cfg.structured), file=out)
    elif cmd == "ghost":
        x = _witt_operand(evaluate(parse(args.expression, R)), "ghost")
        print(render(ghost(args.depth, x), cfg.structured), file=out)
    elif cmd == "truncate":
        x = _witt_operand(evaluate(parse(args.expression, R)), "truncate")
        print(render(truncate(args.depth, x), cfg.structured), file=out)
    elif cmd == "class":
        print(render(class_of(_square(parse_matrix(args.matrix, R))), cfg.structured), file=out)
    elif cmd == "apply":
        op = parse_operation(args.op)
        target = _square(parse_matrix(args.target, R))
        print(render(apply_operation(op, target), cfg.structured), file=out)
    elif cmd == "split":
        if args.matrix is not None:
            cls = class_of(_square(parse_matrix(args.matrix, R)))
        else:
            cls = evaluate(parse(args.expression, R))
            if not isinstance(cls, EndoClass):
                raise DomainError("split needs an endomorphism class (a matrix expression)")
        rank_part, witt_part = split_class(cls)
        if cfg.structured:
            print(f"part rank\n{render(rank_part, True)}\npart witt\n{render(witt_part, True)}", file=out)
        else:
            print(f"rank part: {rank_part}\nwitt part: {witt_part}", file=out)
    elif cmd == "euler":
        c = complex_from_json(_read_source(args.complex_json, stdin), R)
        print(render(euler_class(c), cfg.structured), file=out)
    elif cmd == "oracle":
        certify = False if args.no_certify else None
        res = run_oracle(args.field, args.maxdim, allow_large=args.allow_large, certify=certify)
        print(format_report(res), file=out)
        return EXIT_OK if res.passed else EXIT_DOMAIN
    elif cmd == "selftest":
        seed = cfg.seed if cfg.seed is not None else default_seed()
        print(f"seed {seed}", file=out)
        results = run(seed, only=args.only)
        for r in results:
            print(r.report() if args.verbose or not r.passed else r.line(), file=out)
        failed = [r.number for r in results if not r.passed]
        print(f"{len(results) - len(failed)} of {len(results)} criteria passed", file=out)
        return EXIT_DOMAIN if failed else EXIT_OK
    return EXIT_OK


def main(argv=None, stdout=None, stderr=None, stdin=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=err)
        return EXIT_USAGE
    except _Exit as exc:
        if exc.status == 0:
            # --help already went to stdout through argparse
            return EXIT_OK
        return EXIT_USAGE
    cfg = SessionConfig(args.ring, args.structured, getattr(args, "depth", 8), args.seed)
    try:
        return dispatch(args, cfg, out, stdin)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except WittError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN
    except (ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
