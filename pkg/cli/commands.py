"""
Command implementations.

Each command takes the parsed argparse namespace, writes its result to
standard output and returns the process exit code. Errors are raised as
SpatialGameError subclasses and mapped to exit codes by main.main().
"""

import logging
import sys
from itertools import chain, islice
from typing import Any, Dict, List

from analysis.census import count_monotone_rank_matrices, count_rank_matrices, estimate_linear_proportion
from analysis.cycles import classify, classify_states
from analysis.explore import explore
from analysis.metrics import density, digest
from cli.frames import prepare_output_dir, write_frame
from cli.manifest import RunManifest, build_manifest
from config import get_settings
from engine.dynamics import StepMetrics, UpdateRule, run, trajectory
from errors import EXIT_NOT_REALIZABLE, ManifestError
from lattice.grid import Grid
from lattice.topology import get_topology
from rankmodel.catalog import CATALOG
from rankmodel.game import GameMatrix
from rankmodel.rank_matrix import derive_rank_matrix, serialize_rank_matrix
from rankmodel.realizability import is_linear_realizable

logger = logging.getLogger(__name__)

MANIFEST_FLAGS = (
    "topology", "ranks", "game", "rows", "cols", "init", "seed",
    "rule", "steps", "horizon", "out", "format", "stride",
)


def _given(value, default):
    return default if value is None else value


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def _topology(args):
    return get_topology(args.topology or get_settings().default_topology)


def _rule(args) -> UpdateRule:
    return UpdateRule(args.rule or get_settings().default_rule)


def _recording(args) -> bool:
    return bool(getattr(args, "record", False)) or get_settings().record_results


def manifest_from_args(args) -> RunManifest:
    flags: Dict[str, Any] = {name: getattr(args, name, None) for name in MANIFEST_FLAGS}
    return build_manifest(flags, getattr(args, "manifest", None))


def cmd_derive(args) -> int:
    """Print the rank matrix of a game in the rank-matrix file format."""
    try:
        game = GameMatrix.parse(args.game)
    except ValueError as e:
        raise ManifestError(f"bad --game '{args.game}': {e}") from None
    rm = derive_rank_matrix(game, _topology(args))
    _emit(serialize_rank_matrix(rm).decode("utf-8"))
    return 0


def cmd_simulate(args) -> int:
    manifest = manifest_from_args(args)
    rm = manifest.resolve_rank_matrix()
    topology = rm.topology
    rule = UpdateRule(manifest.rule)
    initial = manifest.initial_grid(topology)

    horizon = manifest.horizon or manifest.steps

    directory = prepare_output_dir(manifest.out)
    write_frame(directory, 0, initial, manifest.format)
    kept: List[Grid] = [initial]

    def observer(index: int, grid: Grid, metrics: StepMetrics) -> None:
        if index % manifest.stride == 0:
            write_frame(directory, index, grid, manifest.format)
        if index <= horizon:
            kept.append(grid)

    record = run(initial, rm, topology, rule, manifest.steps, observer)

    if horizon >= 1:
        # the run's states, continued past the last step only if the horizon needs it
        states = chain(kept, islice(trajectory(record.final, rm, topology, rule), 1, None))
        record.classification = classify_states(states, horizon).label()

    summary = (
        f"steps={record.steps} final_density={density(record.final):.6f} "
        f"digest={digest(record.final)} classification={record.classification or 'none'}\n"
    )
    _emit(summary)

    if _recording(args):
        from database.repository import save_simulation

        save_simulation(
            manifest.model_dump_json(),
            record.steps,
            density(record.final),
            digest(record.final),
            record.classification,
        )
    return 0


def cmd_check_linear(args) -> int:
    """REALIZABLE (exit 0) with a witness game, or NOT_REALIZABLE (exit 4)."""
    if getattr(args, "path", None):
        if args.ranks or args.game:
            raise ManifestError("give either a rank-matrix path or --ranks/--game, not both")
        flags = {"ranks": f"file:{args.path}"}
    else:
        flags = {"ranks": args.ranks, "game": args.game}
    flags["topology"] = args.topology
    rm = build_manifest(flags).resolve_rank_matrix()

    verdict = is_linear_realizable(rm, backend=getattr(args, "backend", None))
    if not verdict.realizable:
        _emit(f"NOT_REALIZABLE\nrank_matrix={rm.inline()}\n")
        return EXIT_NOT_REALIZABLE
    _emit(
        f"REALIZABLE\nrank_matrix={rm.inline()}\n"
        f"witness={verdict.witness}\nmargin={verdict.margin:.6g}\n"
    )
    return 0


def cmd_classify(args) -> int:
    manifest = manifest_from_args(args)
    rm = manifest.resolve_rank_matrix()
    horizon = manifest.horizon or get_settings().explore_horizon
    result = classify(
        manifest.initial_grid(rm.topology), rm, rm.topology, UpdateRule(manifest.rule), horizon
    )
    uniform_at = "none" if result.uniform_at is None else str(result.uniform_at)
    _emit(
        f"classification={result.label()} uniform_at={uniform_at} "
        f"final_density={result.density[-1]:.6f}\n"
    )
    return 0


def cmd_explore(args) -> int:
    settings = get_settings()
    topology = _topology(args)
    rule = _rule(args)
    seed = _given(args.seed, 0)
    results = explore(
        topology,
        rule,
        budget=_given(args.budget, settings.explore_budget),
        seed=seed,
        rows=_given(args.rows, settings.explore_rows),
        cols=_given(args.cols, settings.explore_cols),
        horizon=_given(args.horizon, settings.explore_horizon),
        workers=args.workers,
    )
    _emit("".join(result.record() + "\n" for result in results))

    if _recording(args):
        from database.repository import save_explorations

        save_explorations(results, rule.value, seed)
    return 0


def cmd_count(args) -> int:
    """(2(N+1))!, or with --monotone the number of rank matrices with monotone rows."""
    topology = _topology(args)
    count = count_monotone_rank_matrices(topology) if args.monotone else count_rank_matrices(topology)
    _emit(f"{count}\n")
    return 0


def cmd_census(args) -> int:
    settings = get_settings()
    result = estimate_linear_proportion(
        _topology(args),
        samples=_given(args.samples, settings.census_samples),
        seed=_given(args.seed, 0),
        backend=args.backend,
        workers=args.workers,
    )
    _emit(
        f"topology={result.topology} samples={result.samples} realizable={result.realizable} "
        f"solver_failures={result.solver_failures} "
        f"nonmonotone_realizable={result.nonmonotone_realizable} "
        f"proportion={result.proportion:.6f} half_width={result.half_width:.6f} "
        f"monotone_bound={result.monotone_bound:.6e}\n"
    )

    if _recording(args):
        from database.repository import save_census

        save_census(result)
    return 0


def cmd_catalog(args) -> int:
    lines: List[str] = [
        f"{name}\t{rm.topology.kind}\t{rm.inline()}\n" for name, rm in CATALOG.items()
    ]
    _emit("".join(lines))
    return 0


COMMANDS = {
    "derive": cmd_derive,
    "simulate": cmd_simulate,
    "check-linear": cmd_check_linear,
    "classify": cmd_classify,
    "explore": cmd_explore,
    "count": cmd_count,
    "census": cmd_census,
    "catalog": cmd_catalog,
}
