from pathlib import Path

import pytest

from config import get_settings
from lattice.topology import Topology
from rankmodel.catalog import CATALOG, PRISONERS_DILEMMA

GOLDEN_DIR = Path(__file__).parent / "golden"

PD_ROW0 = (13, 11, 10, 8, 7, 5, 4, 2, 1)
PD_ROW1 = (18, 17, 16, 15, 14, 12, 9, 6, 3)


def pytest_addoption(parser):
    parser.addoption(
        "--regold", action="store_true", default=False,
        help="Rewrite golden files instead of comparing against them",
    )


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch, tmp_path):
    """Every test sees default settings and a throwaway database location."""
    monkeypatch.setenv("SPATIALGAMES_DATABASE_URL", f"sqlite:///{tmp_path / 'results.db'}")
    for name in ("RECORD_RESULTS", "WORKERS", "LP_BACKEND", "DEFAULT_TOPOLOGY", "DEFAULT_RULE"):
        monkeypatch.delenv(f"SPATIALGAMES_{name}", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def pd_game():
    return PRISONERS_DILEMMA


@pytest.fixture
def pd_matrix():
    return CATALOG["prisoners-dilemma"]


@pytest.fixture
def octo():
    return CATALOG["octo"]


@pytest.fixture
def pair_topology():
    """One neighbor to the right: 2x2 rank matrices, 24 of them."""
    return Topology(kind="pair", even_offsets=((0, 1),), odd_offsets=((0, 1),))


@pytest.fixture
def golden(request):
    """
    compare(name, text): check `text` against tests/golden/<name>. With
    --regold the file is rewritten and the test skipped; without it a
    missing file fails.
    """
    regold = request.config.getoption("--regold")

    def compare(name: str, text: str) -> None:
        path = GOLDEN_DIR / name
        if regold:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            pytest.skip(f"recorded {path.name}")
        if not path.exists():
            pytest.fail(f"missing golden file {path.name}; rerun with --regold to record it")
        assert text == path.read_text(encoding="utf-8")

    return compare
