"""
Rank matrices: a distinct rank 1..2(N+1) for every (own strategy s,
count k of type-1 neighbors) pair. Higher rank means a better outcome.

File format (UTF-8): topology token, then row 0 and row 1 as
space-separated integers, each line newline-terminated.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import groupby, permutations
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from errors import ManifestError, NonGenericGameError, RankMatrixFormatError
from lattice.prng import SplitMix64
from lattice.topology import Topology, get_topology
from rankmodel.game import GameMatrix, payoff

Row = Tuple[int, ...]


@dataclass(frozen=True)
class RankMatrix:
    """2 x (N+1) permutation of 1..2(N+1); row = own strategy, column = k."""

    topology: Topology
    entries: Tuple[Row, Row]

    def __post_init__(self):
        try:
            entries = tuple(tuple(int(v) for v in row) for row in self.entries)
        except (TypeError, ValueError):
            raise RankMatrixFormatError("rank-matrix entries must be integers") from None
        object.__setattr__(self, "entries", entries)
        width = self.topology.neighbor_count + 1
        if len(entries) != 2 or any(len(row) != width for row in entries):
            raise RankMatrixFormatError(
                f"{self.topology.kind} rank matrix needs 2 rows of {width} entries"
            )
        if sorted(entries[0] + entries[1]) != list(range(1, 2 * width + 1)):
            raise RankMatrixFormatError(
                f"entries are not a permutation of 1..{2 * width}"
            )

    @property
    def neighbor_count(self) -> int:
        return self.topology.neighbor_count

    @property
    def size(self) -> int:
        return 2 * (self.neighbor_count + 1)

    def rank(self, s: int, k: int) -> int:
        return self.entries[s][k]

    @cached_property
    def table(self) -> np.ndarray:
        """Entries as a read-only (2, N+1) int16 array for vectorized lookup."""
        table = np.array(self.entries, dtype=np.int16)
        table.setflags(write=False)
        return table

    def inline(self) -> str:
        """Rows joined by '/', e.g. '13 11 ... 1/18 17 ... 3'."""
        return "/".join(" ".join(str(v) for v in row) for row in self.entries)


def derive_rank_matrix(game: GameMatrix, topology: Topology) -> RankMatrix:
    """
    Rank the 2(N+1) payoff sums of `game` ascending: the smallest payoff
    gets rank 1. Raises NonGenericGameError listing every group of
    (s, k) pairs with equal payoffs.
    """
    n = topology.neighbor_count
    cells = [(s, k) for s in (0, 1) for k in range(n + 1)]
    values = {cell: payoff(game, cell[0], cell[1], n) for cell in cells}
    ordered = sorted(cells, key=lambda cell: values[cell])

    collisions = []
    for _, group in groupby(ordered, key=lambda cell: values[cell]):
        group = tuple(group)
        if len(group) > 1:
            collisions.append(group)
    if collisions:
        raise NonGenericGameError(collisions)

    ranks = {cell: position for position, cell in enumerate(ordered, 1)}
    return RankMatrix(
        topology=topology,
        entries=tuple(tuple(ranks[(s, k)] for k in range(n + 1)) for s in (0, 1)),
    )


def _strictly_monotone(row: Sequence[int]) -> bool:
    pairs = list(zip(row, row[1:]))
    return all(x < y for x, y in pairs) or all(x > y for x, y in pairs)


def rows_monotone(rm: RankMatrix) -> bool:
    """True iff each row is strictly increasing or strictly decreasing in k."""
    return all(_strictly_monotone(row) for row in rm.entries)


def complement_transform(rm: RankMatrix) -> RankMatrix:
    """rm'(s, k) = rm(1 - s, N - k): swap the rows and reverse the columns."""
    return RankMatrix(
        topology=rm.topology,
        entries=(tuple(reversed(rm.entries[1])), tuple(reversed(rm.entries[0]))),
    )


def random_rank_matrix(topology: Topology, seed: int) -> RankMatrix:
    """Uniform random rank matrix: Fisher-Yates shuffle driven by SplitMix64(seed)."""
    width = topology.neighbor_count + 1
    values = list(range(1, 2 * width + 1))
    rng = SplitMix64(seed)
    for i in range(len(values) - 1, 0, -1):
        j = rng.below(i + 1)
        values[i], values[j] = values[j], values[i]
    return RankMatrix(topology=topology, entries=(tuple(values[:width]), tuple(values[width:])))


def _parse_row(line: str, number: int) -> Row:
    try:
        return tuple(int(token) for token in line.split())
    except ValueError:
        raise RankMatrixFormatError(f"line {number}: ranks must be integers") from None


def parse_inline(text: str, topology: Topology) -> RankMatrix:
    """Parse 'row0/row1' for a known topology."""
    rows = text.strip().split("/")
    if len(rows) != 2:
        raise RankMatrixFormatError("inline rank matrix needs two rows separated by '/'")
    return RankMatrix(topology=topology, entries=(_parse_row(rows[0], 1), _parse_row(rows[1], 2)))


def parse_rank_matrix(text: Union[bytes, str]) -> RankMatrix:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError:
            raise RankMatrixFormatError("rank-matrix file is not UTF-8") from None
    if not text.endswith("\n"):
        raise RankMatrixFormatError("rank-matrix file must end with a newline")
    lines = text[:-1].split("\n")
    if len(lines) != 3:
        raise RankMatrixFormatError(f"expected 3 lines, got {len(lines)}")
    try:
        topology = get_topology(lines[0].strip())
    except ManifestError as e:
        raise RankMatrixFormatError(str(e)) from None
    return RankMatrix(topology=topology, entries=(_parse_row(lines[1], 2), _parse_row(lines[2], 3)))


def serialize_rank_matrix(rm: RankMatrix) -> bytes:
    lines = [rm.topology.kind] + [" ".join(str(v) for v in row) for row in rm.entries]
    return ("\n".join(lines) + "\n").encode("utf-8")


def all_rank_matrices(topology: Topology) -> Iterable[RankMatrix]:
    """Every rank matrix of a topology; only sensible for tiny N."""
    width = topology.neighbor_count + 1
    for values in permutations(range(1, 2 * width + 1)):
        yield RankMatrix(topology=topology, entries=(values[:width], values[width:]))

