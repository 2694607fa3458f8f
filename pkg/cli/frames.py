"""
Bit-exact frame export as portable bitmaps (PBM).

1 = type-1 cell = black pixel. Binary rows are padded to a byte boundary,
most significant bit first.
"""

from pathlib import Path

import numpy as np

from errors import ManifestError, OutputError
from lattice.grid import Grid

FRAME_FORMATS = ("pbm_ascii", "pbm_binary")


def _normalize(fmt: str) -> str:
    token = fmt.replace("-", "_")
    if token not in FRAME_FORMATS:
        raise ManifestError(f"unknown frame format '{fmt}' (known: pbm-ascii, pbm-binary)")
    return token


def export_frame(grid: Grid, fmt: str) -> bytes:
    fmt = _normalize(fmt)
    header = f"{'P1' if fmt == 'pbm_ascii' else 'P4'}\n{grid.cols} {grid.rows}\n".encode("ascii")
    if fmt == "pbm_ascii":
        body = "".join(" ".join(str(int(v)) for v in row) + "\n" for row in grid.cells)
        return header + body.encode("ascii")
    return header + np.packbits(grid.cells, axis=1).tobytes()


def frame_name(index: int) -> str:
    """Zero-padded so lexicographic order is temporal order."""
    return f"frame_{index:06d}.pbm"


def prepare_output_dir(out: str) -> Path:
    path = Path(out)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f"cannot create output directory '{out}': {e}") from None
    return path


def write_frame(directory: Path, index: int, grid: Grid, fmt: str) -> Path:
    target = directory / frame_name(index)
    try:
        target.write_bytes(export_frame(grid, fmt))
    except OSError as e:
        raise OutputError(f"cannot write frame '{target}': {e}") from None
    return target
