"""Command-line interface: ``bconj jack | verify | htable | cache``.

Exit status: 0 when every theorem-level check passes, 1 when one fails (or on
I/O and evaluation errors), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import AlgebraError
from .jack import CACHE_ENV, DEFAULT_MAX_SIZE, HARD_MAX_SIZE, JackEngine, set_default_engine
from .partitions import Partition, PartitionError, partitions_up_to

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
HARD_N_MAX = 8
HARD_R_MAX = 5


class UsageError(Exception):
    pass


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except PartitionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _bounded(lo: int, hi: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if not lo <= value <= hi:
            raise argparse.ArgumentTypeError(f"{value} outside {lo}..{hi}")
        return value

    return parse


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bconj", description="Exact Jack polynomials, cumulants and the b-conjecture series.")
    p.add_argument("--cache-dir", help=f"persistent Jack cache (overrides ${CACHE_ENV})")
    p.add_argument("--max-size", type=_bounded(0, HARD_MAX_SIZE), default=DEFAULT_MAX_SIZE,
                   help="largest |lambda| the Jack engine will solve")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    j = sub.add_parser("jack", help="print a Jack polynomial")
    j.add_argument("partition", type=_partition, help='e.g. "3,1,1"; "-" for the empty partition')
    j.add_argument("--basis", choices=("m", "p"), default="m")
    j.add_argument("--alpha", type=_fraction, help="evaluate the coefficients at this rational value")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=("jack", "factorization", "lattice", "lemmas", "bconj"))
    v.add_argument("--max-weight", type=_bounded(1, HARD_MAX_SIZE), default=None,
                   help="jack: largest |lambda|; factorization: largest |lambda^i|")
    v.add_argument("--max-total", type=_bounded(1, HARD_MAX_SIZE), default=None,
                   help="factorization: bound on the total size of a tuple")
    v.add_argument("--r", type=_bounded(2, HARD_R_MAX), default=None,
                   help="factorization: largest number of partitions (3); lattice: largest ground set (5)")
    v.add_argument("--n", type=_bounded(1, HARD_N_MAX), default=4, help="bconj: largest degree")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=_bounded(1, 10_000), default=None)

    h = sub.add_parser("htable", help="tabulate h coefficients with verdicts")
    h.add_argument("--n", type=_bounded(1, HARD_N_MAX), required=True)
    h.add_argument("--format", choices=("csv", "json"), default="csv")
    h.add_argument("--out", help="output file (default: stdout)")
    h.add_argument("--degree-only", action="store_true", help="only entries of degree exactly n")

    c = sub.add_parser("cache", help="inspect or fill the Jack cache")
    c.add_argument("action", choices=("warm", "list", "clear"))
    c.add_argument("--max-weight", type=_bounded(0, HARD_MAX_SIZE), default=6)
    return p


def _engine(args) -> JackEngine:
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV) or None
    engine = JackEngine(cache_dir, max_size=args.max_size)
    set_default_engine(engine)
    return engine


def cmd_jack(args, out) -> int:
    engine = _engine(args)
    if args.partition.size > engine.max_size:
        raise UsageError(f"|lambda|={args.partition.size} exceeds --max-size {engine.max_size}")
    fn = engine.jack(args.partition, args.basis).function
    if args.alpha is not None:
        try:
            fn = fn.evaluate_alpha(args.alpha)
        except (AlgebraError, ZeroDivisionError) as exc:
            print(f"cannot evaluate at alpha={args.alpha}: {exc}", file=sys.stderr)
            return EXIT_FAIL
    out.write(fn.format() + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .verify import run_suite

    _engine(args)
    kw: dict = {}
    if args.suite == "jack":
        kw["max_weight"] = args.max_weight or 6
    elif args.suite == "factorization":
        kw.update(max_weight=args.max_weight or 2, r_max=args.r or 3, max_total=args.max_total, seed=args.seed)
        if args.samples:
            kw["samples"] = args.samples
    elif args.suite == "lattice":
        kw.update(r_max=args.r or 5, seed=args.seed)
        if args.samples:
            kw["samples"] = args.samples
    elif args.suite == "lemmas":
        kw["seed"] = args.seed
        if args.samples:
            kw["samples"] = args.samples
    elif args.suite == "bconj":
        kw["n"] = args.n
    if args.suite in ("factorization", "lattice", "lemmas"):
        out.write(f"seed {args.seed}\n")
    result = run_suite(args.suite, **kw)
    out.write("\n".join(result.lines()) + "\n")
    if args.suite == "bconj":
        out.write(f"conjecture-level findings: {result.conjecture_findings} (not gating)\n")
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_htable(args, out) -> int:
    from .gjseries import check_suite, extract_h, to_csv, to_json

    engine = _engine(args)
    if args.n > engine.max_size:
        raise UsageError(f"--n {args.n} exceeds --max-size {engine.max_size}")
    entries = extract_h(args.n, n_min=args.n if args.degree_only else 1)
    text = to_csv(entries) if args.format == "csv" else to_json(check_suite(entries))
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_FAIL
    else:
        out.write(text)
    return EXIT_OK


def cmd_cache(args, out) -> int:
    engine = _engine(args)
    if engine.cache_dir is None:
        raise UsageError(f"no cache directory: pass --cache-dir or set ${CACHE_ENV}")
    if args.action == "warm":
        count = 0
        for lam in partitions_up_to(min(args.max_weight, engine.max_size)):
            for basis in ("m", "p"):
                engine.jack(lam, basis)
                count += 1
        out.write(f"{count} records in {engine.cache_dir}\n")
    elif args.action == "list":
        for path in sorted(engine.cache_dir.glob("J_*.json")) if engine.cache_dir.exists() else []:
            out.write(path.name + "\n")
    else:
        removed = 0
        for path in engine.cache_dir.glob("J_*.json") if engine.cache_dir.exists() else []:
            path.unlink()
            removed += 1
        out.write(f"removed {removed} records\n")
    return EXIT_OK


COMMANDS = {"jack": cmd_jack, "verify": cmd_verify, "htable": cmd_htable, "cache": cmd_cache}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"bconj: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
