"""Per-state and per-transition measurements of a trajectory."""

import hashlib

import numpy as np

from lattice.grid import Grid


def activity(g1: Grid, g2: Grid) -> float:
    """Fraction of cells whose strategy differs between two same-sized grids."""
    if g1.shape != g2.shape:
        raise ValueError(f"grid shapes differ: {g1.shape} vs {g2.shape}")
    return float(np.count_nonzero(g1.cells != g2.cells)) / g1.cells.size


def density(g: Grid) -> float:
    """Fraction of type-1 cells."""
    return g.ones() / g.cells.size


def digest(g: Grid) -> str:
    """
    BLAKE2b-128 over rows and cols (8-byte little-endian each) followed by
    the row-major cells packed 8 per byte, most significant bit first.
    """
    h = hashlib.blake2b(digest_size=16)
    h.update(g.rows.to_bytes(8, "little"))
    h.update(g.cols.to_bytes(8, "little"))
    h.update(np.packbits(g.cells).tobytes())
    return h.hexdigest()
