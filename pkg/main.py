import argparse
import logging
import sys
import traceback
from typing import List, Optional

from cli.commands import COMMANDS
from config import get_settings
from errors import SpatialGameError


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2^64), got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--topology", choices=["moore8", "vonneumann4", "hex6"], default=None,
                        help="Neighborhood structure (default from settings: moore8)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log progress to standard error")
    parser.add_argument("--quiet", "-q", action="store_true", help="Log errors only")


def _add_rank_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ranks", default=None,
                        help="Rank matrix: file:PATH | inline:ROW0/ROW1 | builtin:NAME")
    parser.add_argument("--game", default=None, help="Derive the rank matrix from payoffs a,b,c,d")


def _add_run(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--manifest", default=None, help="JSON run manifest; flags win on conflict")
    parser.add_argument("--rule", choices=["best", "any-better"], default=None, help="Imitation rule")
    parser.add_argument("--seed", type=_seed, default=None, help="64-bit seed for random initial grids")
    parser.add_argument("--rows", type=int, default=None)
    parser.add_argument("--cols", type=int, default=None)
    parser.add_argument("--init", default=None,
                        help="uniform0 | uniform1 | bernoulli:P | center | center:S | file:PATH")
    parser.add_argument("--horizon", type=_positive, default=None,
                        help="Steps to follow when classifying the trajectory")


def build_parser() -> argparse.ArgumentParser:
    """Command-line interface of the simulator"""
    parser = argparse.ArgumentParser(
        prog="spatialgames",
        description="Simulate and analyze nonlinear spatial games on a torus",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
        Examples:
          python main.py derive --game 1.0,0.1,1.9,0.3 --topology moore8
          python main.py simulate --ranks builtin:octo --rows 100 --cols 100 --seed 7 --steps 200 --out frames/
          python main.py check-linear pd.ranks
          python main.py explore --topology moore8 --budget 100 --seed 1
        """
    )
    commands = parser.add_subparsers(dest="command", required=True)

    derive = commands.add_parser("derive", help="Rank matrix of a game")
    _add_common(derive)
    derive.add_argument("--game", required=True, help="Payoffs a,b,c,d")

    simulate = commands.add_parser("simulate", help="Run the dynamics and write PBM frames")
    _add_common(simulate)
    _add_rank_source(simulate)
    _add_run(simulate)
    simulate.add_argument("--steps", type=_non_negative, default=None)
    simulate.add_argument("--out", default=None, help="Output directory for frames (default: frames/)")
    simulate.add_argument("--format", choices=["pbm-ascii", "pbm-binary"], default=None)
    simulate.add_argument("--stride", type=_positive, default=None, help="Write every K-th frame")
    simulate.add_argument("--record", action="store_true", help="Store the run summary in the database")

    check = commands.add_parser("check-linear", help="Decide whether payoff sums can realize a rank matrix")
    _add_common(check)
    _add_rank_source(check)
    check.add_argument("path", nargs="?", default=None, help="Rank-matrix file")
    check.add_argument("--backend", choices=["highs", "exact"], default=None)

    classify = commands.add_parser("classify", help="Fixed point, cycle or undetermined within a horizon")
    _add_common(classify)
    _add_rank_source(classify)
    _add_run(classify)

    explore = commands.add_parser("explore", help="Score random rank matrices by how lively they are")
    _add_common(explore)
    explore.add_argument("--rule", choices=["best", "any-better"], default=None)
    explore.add_argument("--seed", type=_seed, default=None)
    explore.add_argument("--budget", type=_positive, default=None)
    explore.add_argument("--rows", type=int, default=None)
    explore.add_argument("--cols", type=int, default=None)
    explore.add_argument("--horizon", type=_positive, default=None)
    explore.add_argument("--workers", type=_positive, default=None)
    explore.add_argument("--record", action="store_true", help="Store the results in the database")

    count = commands.add_parser("count", help="Number of rank matrices")
    _add_common(count)
    count.add_argument("--monotone", action="store_true", help="Count only matrices with monotone rows")

    census = commands.add_parser("census", help="Estimate the share of linearly realizable rank matrices")
    _add_common(census)
    census.add_argument("--samples", type=_positive, default=None)
    census.add_argument("--seed", type=_seed, default=None)
    census.add_argument("--backend", choices=["highs", "exact"], default=None)
    census.add_argument("--workers", type=_positive, default=None)
    census.add_argument("--record", action="store_true", help="Store the estimate in the database")

    catalog = commands.add_parser("catalog", help="List the built-in rank matrices")
    _add_common(catalog)

    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Diagnostics go to standard error; standard output carries results only."""
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.ERROR
    else:
        level = getattr(logging, get_settings().log_level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI interface"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage and 0 on --help
        return e.code if isinstance(e.code, int) else 2

    configure_logging(args.verbose, args.quiet)

    try:
        return COMMANDS[args.command](args)

    except SpatialGameError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    except KeyboardInterrupt:
        print("\ninterrupted", file=sys.stderr)
        return 130

    except Exception as e:
        print(f"error: {e}", file=sys.stderr)
        if args.verbose:
            traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
