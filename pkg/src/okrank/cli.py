"""okrank command line.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from typing import Sequence, TextIO

from . import __version__
from .bijection import (
    ValidationError,
    VectorPartition,
    k_conjugate,
    over_to_vector,
    vector_kbar_rank,
    vector_to_over,
)
from .cache import TableCache, cache_key, resolve_cache_dir
from .counting import METHODS, STAT_ALIASES, UsageError, canonical_stat, rank_table
from .identities import UnknownIdentity, get_case, list_identities, verify, verify_all
from .partitions import ParseError, format_overpartition, generalized_durfee, parse_overpartition
from .series import DomainError

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
KBAR_RANGE = range(2, 6)


class _Parser(argparse.ArgumentParser):
    # argparse exits on its own; raise instead so run() owns the exit code
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="okrank", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"okrank {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="rank count table")
    p.add_argument("--stat", required=True,
                   help="one of " + ", ".join(STAT_ALIASES))
    p.add_argument("--k", type=int)
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--method", choices=METHODS, default="gf")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--cache-dir", help="cache directory (default: $OKRANK_CACHE, else no cache)")
    p.add_argument("--verbose", action="store_true", help="report timing and cache use on stderr")

    p = sub.add_parser("map", help="overpartition to vector partition and back")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--overpartition", help='e.g. "7o,6,4o,4"')
    g.add_argument("--inverse", metavar="JSON",
                   help="vector partition JSON (or the output of map) to turn back into text")

    for name, helptext in (("rank", "kbar-rank of an overpartition"),
                           ("conjugate", "image under k-conjugation")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--overpartition", required=True)

    p = sub.add_parser("verify", help="check registered identities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--id", dest="identity")
    g.add_argument("--all", action="store_true")
    p.add_argument("--order", type=int)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--perturb", type=int, metavar="EXP",
                   help="add q^EXP to the left side (harness self-test)")
    p.add_argument("--format", choices=("text", "json"), default="text")

    sub.add_parser("list-identities", help="registered identity ids")
    return parser


# ---------------------------------------------------------------- commands


def _cmd_count(args, out: TextIO, err: TextIO) -> int:
    stat = canonical_stat(args.stat)
    k = args.k if stat in ("N_k", "Nbar_k") else None
    start = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cache = TableCache(resolve_cache_dir(args.cache_dir))
    for w in caught:
        print(f"warning: {w.message}", file=err)
    key = cache_key(stat, args.method, k, args.max_n)
    table, hit = cache.get_or_compute(key, lambda: rank_table(stat, args.method, args.max_n, k))
    elapsed = (time.perf_counter() - start) * 1000.0
    if args.format == "json":
        out.write(table.to_json() + "\n")
    else:
        out.write(table.to_tsv())
    if args.verbose:
        state = "disabled" if not cache.enabled else ("hit" if hit else "miss")
        print(f"cache: {state}; {elapsed:.1f} ms", file=err)
    return EXIT_OK


def _map_payload(text: str) -> dict:
    lam = parse_overpartition(text)
    v = over_to_vector(lam)
    return {
        "overpartition": format_overpartition(lam),
        "generalized_durfee": generalized_durfee(lam),
        "vector": v.to_dict(),
        "kbar_ranks": {str(k): vector_kbar_rank(v, k) for k in KBAR_RANGE},
    }


def _cmd_map(args, out: TextIO, err: TextIO) -> int:
    if args.overpartition is not None:
        out.write(json.dumps(_map_payload(args.overpartition)) + "\n")
        return EXIT_OK
    try:
        data = json.loads(args.inverse)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--inverse expects JSON: {exc}") from None
    if isinstance(data, dict) and "vector" in data:
        data = data["vector"]
    if not isinstance(data, dict):
        raise UsageError("--inverse expects a JSON object")
    out.write(format_overpartition(vector_to_over(VectorPartition.from_dict(data))) + "\n")
    return EXIT_OK


def _check_k(k: int) -> None:
    if k < 2:
        raise UsageError("--k must be at least 2")


def _cmd_rank(args, out: TextIO, err: TextIO) -> int:
    _check_k(args.k)
    v = over_to_vector(parse_overpartition(args.overpartition))
    out.write(f"{vector_kbar_rank(v, args.k)}\n")
    return EXIT_OK


def _cmd_conjugate(args, out: TextIO, err: TextIO) -> int:
    _check_k(args.k)
    v = over_to_vector(parse_overpartition(args.overpartition))
    out.write(format_overpartition(vector_to_over(k_conjugate(v, args.k))) + "\n")
    return EXIT_OK


def _report_line(r) -> str:
    line = f"{r.id}\torder={r.order}\t{r.outcome}"
    if r.mismatch:
        m = r.mismatch
        line += f"\tq^{m['q_exp']} z^{m['z_exp']} a^{m['a_exp']}: lhs={m['lhs']} rhs={m['rhs']}"
    if r.error:
        line += f"\t{r.error}"
    return line


def _cmd_verify(args, out: TextIO, err: TextIO) -> int:
    if args.all:
        if args.order is not None or args.perturb is not None:
            raise UsageError("--order and --perturb apply to a single --id")
        reports = verify_all(scale=args.scale, jobs=args.jobs)
    else:
        get_case(args.identity)
        perturb = None if args.perturb is None else (args.perturb, 1)
        reports = [verify(args.identity, args.order, perturb=perturb)]
    for r in reports:
        out.write((json.dumps(r.to_dict()) if args.format == "json" else _report_line(r)) + "\n")
    if any(r.error and r.error.startswith("DomainError") for r in reports):
        return EXIT_DOMAIN
    return EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH


def _cmd_list(args, out: TextIO, err: TextIO) -> int:
    for i in list_identities():
        case = get_case(i)
        out.write(f"{i}\t{case.default_order}\t{case.anchor}\n")
    return EXIT_OK


COMMANDS = {
    "count": _cmd_count,
    "map": _cmd_map,
    "rank": _cmd_rank,
    "conjugate": _cmd_conjugate,
    "verify": _cmd_verify,
    "list-identities": _cmd_list,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out, err)
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    except (UsageError, ParseError, ValidationError, UnknownIdentity) as exc:
        print(f"okrank: error: {exc}", file=err)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"okrank: domain error: {exc}", file=err)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"okrank: error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
