"""Published example games and rank matrices, addressable by name."""

from typing import Dict

from errors import ManifestError
from lattice.topology import HEX6, MOORE8
from rankmodel.game import GameMatrix
from rankmodel.rank_matrix import RankMatrix, derive_rank_matrix

PRISONERS_DILEMMA = GameMatrix.of(1.0, 0.1, 1.9, 0.3)

CATALOG: Dict[str, RankMatrix] = {
    "prisoners-dilemma": derive_rank_matrix(PRISONERS_DILEMMA, MOORE8),
    # nonlinear moore8 examples
    "octo": RankMatrix(
        topology=MOORE8,
        entries=((12, 8, 16, 14, 9, 3, 6, 1, 10), (2, 11, 18, 17, 5, 13, 4, 15, 7)),
    ),
    "cellz": RankMatrix(
        topology=MOORE8,
        entries=((9, 18, 4, 13, 5, 1, 8, 7, 14), (3, 12, 10, 17, 11, 6, 16, 15, 2)),
    ),
    "turq": RankMatrix(
        topology=HEX6,
        entries=((4, 13, 1, 5, 10, 2, 7), (9, 14, 12, 11, 6, 8, 3)),
    ),
}


def builtin(name: str) -> RankMatrix:
    try:
        return CATALOG[name]
    except KeyError:
        raise ManifestError(
            f"unknown builtin rank matrix '{name}' (known: {', '.join(CATALOG)})"
        ) from None
