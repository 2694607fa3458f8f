"""
Toroidal grids of binary strategies.

A Grid wraps a read-only uint8 numpy array; every operation returns a new
Grid. Explicit grid text is one line of '0'/'1' characters per row, each
line newline-terminated.
"""

import logging
from typing import Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, field_validator
from scipy.ndimage import correlate

from errors import GridFormatError, InvalidDimensionsError, ManifestError
from lattice.prng import SplitMix64
from lattice.topology import MIN_SIDE, Cell, Topology

logger = logging.getLogger(__name__)


class Grid:
    """Immutable rows x cols array of strategies 0/1."""

    __slots__ = ("cells",)

    def __init__(self, cells):
        array = np.array(cells, dtype=np.uint8)
        if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
            raise GridFormatError(f"grid must be a non-empty 2-D array, got shape {array.shape}")
        if array.size and array.max() > 1:
            raise GridFormatError("grid cells must be 0 or 1")
        array.setflags(write=False)
        self.cells = array

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    @property
    def shape(self):
        return self.cells.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grid):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash((self.shape, np.packbits(self.cells).tobytes()))

    def __repr__(self) -> str:
        return f"Grid({self.rows}x{self.cols}, ones={self.ones()})"

    def ones(self) -> int:
        return int(self.cells.sum())

    def is_uniform(self) -> bool:
        first = self.cells.flat[0]
        return bool(np.all(self.cells == first))

    def complement(self) -> "Grid":
        """Flip every cell's strategy."""
        return Grid(1 - self.cells)

    def shift(self, dr: int, dc: int) -> "Grid":
        """Cyclic translation: cell (r, c) moves to (r + dr, c + dc)."""
        return Grid(np.roll(self.cells, (dr, dc), axis=(0, 1)))

    def to_text(self) -> str:
        return "".join("".join("1" if v else "0" for v in row) + "\n" for row in self.cells)

    @classmethod
    def from_text(cls, text: str) -> "Grid":
        if not text.endswith("\n"):
            raise GridFormatError("grid text must be newline-terminated")
        lines = text[:-1].split("\n")
        if not lines or not lines[0]:
            raise GridFormatError("grid text is empty")
        width = len(lines[0])
        for number, line in enumerate(lines, 1):
            if len(line) != width:
                raise GridFormatError(f"line {number}: expected {width} cells, got {len(line)}")
            if set(line) - {"0", "1"}:
                raise GridFormatError(f"line {number}: only '0' and '1' are allowed")
        return cls([[int(ch) for ch in line] for line in lines])


class InitSpec(BaseModel):
    """How to fill a fresh grid."""

    kind: Literal["uniform", "bernoulli", "explicit", "center"]
    strategy: int = 1
    p: float = 0.5
    text: Optional[str] = None

    model_config = {"frozen": True}

    @field_validator("strategy")
    @classmethod
    def _strategy_is_binary(cls, value: int) -> int:
        if value not in (0, 1):
            raise ValueError("strategy must be 0 or 1")
        return value

    @field_validator("p")
    @classmethod
    def _p_in_unit_interval(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise ValueError("bernoulli probability must lie in [0, 1]")
        return value

    @classmethod
    def parse(cls, token: str) -> "InitSpec":
        """
        Parse a command-line init token:
        uniform0 | uniform1 | bernoulli:P | center | center:S | file:PATH
        """
        try:
            if token in ("uniform0", "uniform1"):
                return cls(kind="uniform", strategy=int(token[-1]))
            if token.startswith("bernoulli:"):
                return cls(kind="bernoulli", p=float(token.split(":", 1)[1]))
            if token == "center":
                return cls(kind="center", strategy=1)
            if token.startswith("center:"):
                return cls(kind="center", strategy=int(token.split(":", 1)[1]))
            if token.startswith("file:"):
                path = token.split(":", 1)[1]
                with open(path, encoding="utf-8") as handle:
                    return cls(kind="explicit", text=handle.read())
        except (ValueError, OSError) as e:
            raise ManifestError(f"bad --init '{token}': {e}") from e
        raise ManifestError(f"unknown --init '{token}'")


def make_grid(
    rows: int,
    cols: int,
    init: InitSpec,
    seed: int = 0,
    topology: Optional[Topology] = None,
) -> Grid:
    """
    Build a grid deterministically from (init, seed).

    Bernoulli cells are drawn in row-major order from SplitMix64(seed):
    a cell is 1 when its uniform draw is below p.
    """
    if topology is not None:
        topology.check_dimensions(rows, cols)
    elif rows < MIN_SIDE or cols < MIN_SIDE:
        raise InvalidDimensionsError(f"grid needs at least {MIN_SIDE}x{MIN_SIDE} cells, got {rows}x{cols}")
    logger.debug("make_grid %dx%d init=%s seed=%d", rows, cols, init.kind, seed)

    if init.kind == "uniform":
        return Grid(np.full((rows, cols), init.strategy, dtype=np.uint8))

    if init.kind == "center":
        cells = np.full((rows, cols), 1 - init.strategy, dtype=np.uint8)
        cells[rows // 2, cols // 2] = init.strategy
        return Grid(cells)

    if init.kind == "bernoulli":
        draws = SplitMix64(seed).random_array(rows * cols)
        return Grid((draws < init.p).astype(np.uint8).reshape(rows, cols))

    grid = Grid.from_text(init.text or "")
    if grid.shape != (rows, cols):
        raise GridFormatError(f"explicit grid is {grid.rows}x{grid.cols}, expected {rows}x{cols}")
    return grid


def count_field(grid: Grid, topology: Topology) -> np.ndarray:
    """Number of type-1 neighbors of every cell (own strategy excluded)."""
    topology.check_dimensions(grid.rows, grid.cols)
    cells = grid.cells.astype(np.int16)
    counts = correlate(cells, topology.kernel(0), mode="wrap")
    if topology.parity_dependent:
        odd = correlate(cells, topology.kernel(1), mode="wrap")
        counts[1::2] = odd[1::2]
    return counts


def count_type1_neighbors(grid: Grid, topology: Topology, cell: Cell) -> int:
    topology.check_dimensions(grid.rows, grid.cols)
    r, c = cell
    return sum(
        int(grid.cells[(r + dr) % grid.rows, (c + dc) % grid.cols])
        for dr, dc in topology.offsets_for_row(r)
    )


def neighbor_values(values: Union[np.ndarray, Grid], topology: Topology) -> np.ndarray:
    """
    Stack of neighbor views, shape (N, rows, cols).

    Slot i at (r, c) holds the value at the i-th neighbor of (r, c); for
    hexagonal lattices slot i follows the offset table of the row's parity.
    """
    array = values.cells if isinstance(values, Grid) else values
    stacked = []
    for even, odd in zip(topology.even_offsets, topology.odd_offsets):
        view = np.roll(array, (-even[0], -even[1]), axis=(0, 1))
        if odd != even:
            view = view.copy()
            view[1::2] = np.roll(array, (-odd[0], -odd[1]), axis=(0, 1))[1::2]
        stacked.append(view)
    return np.stack(stacked)
