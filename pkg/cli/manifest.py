"""
Run manifests: everything a simulation run depends on.

A manifest can come from a JSON file, from command-line flags, or both;
flags win over the file and the file wins over settings defaults.
"""

from pathlib import Path
from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from config import get_settings
from errors import ManifestError, TopologyMismatchError
from lattice.grid import Grid, InitSpec, make_grid
from lattice.topology import TOPOLOGIES, Topology, get_topology
from rankmodel.catalog import builtin
from rankmodel.game import GameMatrix
from rankmodel.rank_matrix import RankMatrix, derive_rank_matrix, parse_inline, parse_rank_matrix

RANK_SOURCES = ("file:", "inline:", "builtin:")


class RunManifest(BaseModel):
    """Validated description of one simulation run"""

    topology: Optional[str] = None
    ranks: Optional[str] = None  # file:PATH | inline:ROW0/ROW1 | builtin:NAME
    game: Optional[str] = None  # a,b,c,d
    rows: int = 100
    cols: int = 100
    init: str = "bernoulli:0.5"
    seed: int = Field(default=0, ge=0, lt=2**64)
    rule: Literal["best", "any-better"] = "best"
    steps: int = Field(default=0, ge=0)
    horizon: Optional[int] = Field(default=None, ge=1)
    out: str = "frames"
    format: Literal["pbm-ascii", "pbm-binary"] = "pbm-binary"
    stride: int = Field(default=1, ge=1)

    model_config = ConfigDict(frozen=True, extra="forbid")

    @field_validator("topology")
    @classmethod
    def _known_topology(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in TOPOLOGIES:
            raise ValueError(f"unknown topology '{value}'")
        return value

    @field_validator("ranks")
    @classmethod
    def _known_source(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and not value.startswith(RANK_SOURCES):
            raise ValueError("ranks must start with file:, inline: or builtin:")
        return value

    @field_validator("format", mode="before")
    @classmethod
    def _dashed_format(cls, value: Any) -> Any:
        return value.replace("_", "-") if isinstance(value, str) else value

    @model_validator(mode="after")
    def _one_rank_source(self) -> "RunManifest":
        if (self.ranks is None) == (self.game is None):
            raise ValueError("exactly one of ranks or game must be given")
        return self

    def resolve_rank_matrix(self) -> RankMatrix:
        """Load, derive or look up the rank matrix; checks it against `topology`."""
        requested = get_topology(self.topology) if self.topology else None

        if self.game is not None:
            try:
                game = GameMatrix.parse(self.game)
            except ValueError as e:
                raise ManifestError(f"bad game '{self.game}': {e}") from None
            return derive_rank_matrix(game, requested or get_topology(get_settings().default_topology))

        kind, _, body = self.ranks.partition(":")
        if kind == "inline":
            return parse_inline(body, requested or get_topology(get_settings().default_topology))
        if kind == "builtin":
            rm = builtin(body)
        else:
            try:
                rm = parse_rank_matrix(Path(body).read_bytes())
            except OSError as e:
                raise ManifestError(f"cannot read rank-matrix file '{body}': {e}") from None
        if requested is not None and requested != rm.topology:
            raise TopologyMismatchError(
                f"rank matrix is for {rm.topology.kind}, --topology says {requested.kind}"
            )
        return rm

    def initial_grid(self, topology: Topology) -> Grid:
        return make_grid(self.rows, self.cols, InitSpec.parse(self.init), self.seed, topology)


class ManifestFile(BaseModel):
    """A JSON manifest on disk; any field may be left to flags or settings."""

    topology: Optional[str] = None
    ranks: Optional[str] = None
    game: Optional[str] = None
    rows: Optional[int] = None
    cols: Optional[int] = None
    init: Optional[str] = None
    seed: Optional[int] = None
    rule: Optional[str] = None
    steps: Optional[int] = None
    horizon: Optional[int] = None
    out: Optional[str] = None
    format: Optional[str] = None
    stride: Optional[int] = None

    model_config = ConfigDict(extra="forbid")


def load_manifest_file(path: str) -> Dict[str, Any]:
    """Fields explicitly present in a JSON manifest file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ManifestError(f"cannot read manifest '{path}': {e}") from None
    try:
        return ManifestFile.model_validate_json(text).model_dump(exclude_unset=True)
    except ValidationError as e:
        raise ManifestError(f"invalid manifest '{path}': {e}") from None


def build_manifest(flags: Dict[str, Any], manifest_path: Optional[str] = None) -> RunManifest:
    """
    Merge a manifest file with command-line flags. Flags that are None are
    treated as absent. A rank source given as a flag replaces both sources
    of the file.
    """
    settings = get_settings()
    merged: Dict[str, Any] = {"rule": settings.default_rule}
    if manifest_path:
        merged.update(load_manifest_file(manifest_path))

    given = {key: value for key, value in flags.items() if value is not None}
    if "ranks" in given or "game" in given:
        merged.pop("ranks", None)
        merged.pop("game", None)
    merged.update(given)

    try:
        return RunManifest(**merged)
    except ValidationError as e:
        raise ManifestError(_first_error(e)) from None


def _first_error(error: ValidationError) -> str:
    details = error.errors()
    if not details:
        return str(error)
    first = details[0]
    where = ".".join(str(part) for part in first.get("loc", ())) or "manifest"
    return f"{where}: {first.get('msg', 'invalid value')}"
