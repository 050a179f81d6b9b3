import argparse
import logging
import sys
from typing import Optional, Sequence
from plane_matroids.cli import commands
from plane_matroids.core.defaults import (
    COMPLEX_TOL_NONZERO,
    COMPLEX_TOL_ZERO,
    DEFAULT_BUDGET,
    DEFAULT_WORKERS,
)

logger = logging.getLogger(__name__)

EXIT_USAGE = 2

def configure_logging(verbose:int=0, quiet:bool=False) -> None:
    if quiet:
        level = logging.ERROR
    else:
        level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )

def _add_search_options(parser:argparse.ArgumentParser) -> None:
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of visited search nodes")

def _add_group_options(parser:argparse.ArgumentParser, required:bool) -> None:
    parser.add_argument("--group", required=required, help='finite abelian group, e.g. "Z3" or "Z2xZ4"')
    parser.add_argument("--g0", help='group element, e.g. "0" or "1,0" (default: the identity)')
    parser.add_argument("--g1", help="group element (default: the second element in canonical order)")

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plane-matroids",
        description="Rank-3 matroid families: orientability, minimality and projective-plane embeddings.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log INFO (-v) or DEBUG (-vv) to standard error")
    parser.add_argument("-q", "--quiet", action="store_true", help="log errors only")
    parser.add_argument("--workers", type=int, default=DEFAULT_WORKERS, help="worker processes for chirotope search")
    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", help="print a matroid in the matroid file format")
    build_families = build.add_subparsers(dest="family", required=True)
    build_sigma = build_families.add_parser("sigma", help="M(n, sigma)")
    build_sigma.add_argument("--n", type=int, required=True)
    build_sigma.add_argument("--perm", required=True, help='fixed-point-free permutation, e.g. "(1 3)(2 4)"')
    _add_group_options(build_families.add_parser("group", help="M(G, g0, g1)"), required=True)
    build_prime = build_families.add_parser("prime", help="M'(n)")
    build_prime.add_argument("--n", type=int, required=True)

    orient = subparsers.add_parser("orient", help="decide orientability")
    orient_modes = orient.add_subparsers(dest="mode", required=True)
    criterion = orient_modes.add_parser("criterion", help="cycle or group-order criterion")
    source = criterion.add_mutually_exclusive_group(required=True)
    source.add_argument("--perm", help="permutation sigma of M(n, sigma)")
    source.add_argument("--group", help="group of M(G, g0, g1)")
    criterion.add_argument("--n", type=int)
    criterion.add_argument("--g0")
    criterion.add_argument("--g1")
    brute = orient_modes.add_parser("brute", help="exhaustive chirotope search")
    brute.add_argument("--matroid", required=True, help="matroid JSON file")
    _add_search_options(brute)

    minimal = subparsers.add_parser("minimal", help="certify minimal non-orientability")
    minimal.add_argument("--matroid", required=True, help="matroid JSON file")
    _add_search_options(minimal)

    embedding = subparsers.add_parser("embed", help="projective-plane embeddings")
    embed_modes = embedding.add_subparsers(dest="mode", required=True)
    verify = embed_modes.add_parser("verify", help="verify an explicit embedding")
    construction = verify.add_mutually_exclusive_group(required=True)
    construction.add_argument("--prime", type=int, help="M(Z_p, 0, 1) into the plane over GF(p)")
    construction.add_argument("--subgroup", help="M,P,T: M(Z_m, 0, 1) into the plane over GF(p^t)")
    table = embed_modes.add_parser("table", help="one minimal non-orientable member per plane order")
    table.add_argument("--max-q", type=int, default=27)
    obstruction = embed_modes.add_parser("obstruction", help="counting obstruction against a plane order")
    target = obstruction.add_mutually_exclusive_group(required=True)
    target.add_argument("--matroid", help="matroid JSON file")
    target.add_argument("--group", help="group of M(G, g0, g1)")
    obstruction.add_argument("--g0")
    obstruction.add_argument("--g1")
    obstruction.add_argument("--q", type=int, required=True)
    complex_ = embed_modes.add_parser("complex", help="numerical complex-realizability evidence for M(Z_n, 0, 1)")
    complex_.add_argument("--n", type=int, required=True)
    complex_.add_argument("--tol-zero", type=float, default=COMPLEX_TOL_ZERO)
    complex_.add_argument("--tol-nonzero", type=float, default=COMPLEX_TOL_NONZERO)

    sweep = subparsers.add_parser("sweep", help="criterion against search for every derangement")
    sweep.add_argument("--max-n", type=int, required=True)
    sweep.add_argument("--min-n", type=int, default=2)
    _add_search_options(sweep)

    realize = subparsers.add_parser("realize", help="explicit rational realizations")
    kind = realize.add_mutually_exclusive_group(required=True)
    kind.add_argument("--four-cycles", action="store_true", help="M(n, sigma) for an involution sigma")
    kind.add_argument("--F", dest="f_arrangement", action="store_true", help="the arrangement F(n, tau)")
    realize.add_argument("--n", type=int, required=True)
    realize.add_argument("--perm", help="involution sigma (with --four-cycles)")
    realize.add_argument("--tau", default="()", help="permutation tau (with --F), default identity")

    groups = subparsers.add_parser("groups", help="group criterion against the permutation criterion")
    groups.add_argument("--max-order", type=int, default=8)

    return parser

def _dispatch(args:argparse.Namespace):
    if args.command in ("orient", "embed"):
        key = (args.command, args.mode)
    else:
        key = (args.command, None)
    return {
        ("build", None): commands.run_build,
        ("orient", "criterion"): commands.run_orient_criterion,
        ("orient", "brute"): commands.run_orient_brute,
        ("minimal", None): commands.run_minimal,
        ("embed", "verify"): commands.run_embed_verify,
        ("embed", "table"): commands.run_embed_table,
        ("embed", "obstruction"): commands.run_embed_obstruction,
        ("embed", "complex"): commands.run_embed_complex,
        ("sweep", None): commands.run_sweep,
        ("realize", None): commands.run_realize,
        ("groups", None): commands.run_groups,
    }[key]

def run(argv:Optional[Sequence[str]]=None) -> int:
    """
    Parse argv, run one subcommand and return its exit code.

    Returns
    -------
    int
        0 when a verdict was computed, 1 when a search budget ran out, 2 for usage
        or validation errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_USAGE if exit_.code else 0

    configure_logging(args.verbose, args.quiet)
    if args.command == "realize" and args.four_cycles and args.perm is None:
        logger.error("--four-cycles needs --perm")
        return EXIT_USAGE

    try:
        return _dispatch(args)(args)
    except (ValueError, OSError) as error:
        logger.error("%s", error)
        return EXIT_USAGE

def main() -> None:
    sys.exit(run())
