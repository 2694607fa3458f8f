import json

import pytest

import engine.dynamics as dynamics
from conftest import PD_ROW0, PD_ROW1
from main import build_parser, main
from rankmodel.game import GameMatrix
from rankmodel.rank_matrix import derive_rank_matrix, parse_rank_matrix
from lattice.topology import MOORE8

PD_FILE = "moore8\n13 11 10 8 7 5 4 2 1\n18 17 16 15 14 12 9 6 3\n"
OCTO_FILE = "moore8\n12 8 16 14 9 3 6 1 10\n2 11 18 17 5 13 4 15 7\n"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def pd_file(tmp_path):
    path = tmp_path / "pd.ranks"
    path.write_text(PD_FILE, encoding="utf-8")
    return path


@pytest.fixture
def octo_file(tmp_path):
    path = tmp_path / "octo.ranks"
    path.write_text(OCTO_FILE, encoding="utf-8")
    return path


# --- parser ---

def test_parser_knows_every_command():
    parser = build_parser()
    for command in ("derive --game 1,2,3,4", "simulate", "check-linear x", "classify",
                    "explore", "count", "census", "catalog"):
        args = parser.parse_args(command.split())
        assert args.command == command.split()[0]


def test_parser_rejects_bad_tokens(capsys):
    assert main(["simulate", "--rule", "worst"]) == 2
    assert main(["explore", "--seed", "-1"]) == 2
    assert main(["simulate", "--stride", "0"]) == 2
    assert main(["teleport"]) == 2
    capsys.readouterr()


# --- derive ---

def test_derive_pd(capsys):
    code, out, err = run_cli(capsys, "derive", "--game", "1.0,0.1,1.9,0.3", "--topology", "moore8")
    assert code == 0
    assert out == PD_FILE
    assert err == ""


def test_derive_non_generic(capsys):
    code, out, err = run_cli(capsys, "derive", "--game", "1,1,1,1", "--topology", "moore8")
    assert code == 3
    assert out == ""
    assert "non-generic" in err


def test_derive_von_neumann(capsys):
    code, out, _ = run_cli(capsys, "derive", "--game", "4,1,3,2.2", "--topology", "vonneumann4")
    assert code == 0
    rm = parse_rank_matrix(out)
    assert rm.topology.kind == "vonneumann4"
    assert sorted(rm.entries[0] + rm.entries[1]) == list(range(1, 11))


@pytest.mark.parametrize("game", ["1,2,3", "1,2,3,x", "1,2,3,nan"])
def test_derive_bad_game(capsys, game):
    code, _, err = run_cli(capsys, "derive", "--game", game)
    assert code == 2
    assert err.startswith("error:")


def test_derive_defaults_to_moore8(capsys):
    _, out, _ = run_cli(capsys, "derive", "--game", "1.0,0.1,1.9,0.3")
    assert out == PD_FILE


# --- check-linear ---

def test_check_linear_pd(capsys, pd_file):
    code, out, _ = run_cli(capsys, "check-linear", str(pd_file))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "REALIZABLE"
    witness = GameMatrix.parse(lines[2].removeprefix("witness="))
    assert derive_rank_matrix(witness, MOORE8).entries == (PD_ROW0, PD_ROW1)


def test_check_linear_exact_backend(capsys, pd_file):
    code, out, _ = run_cli(capsys, "check-linear", str(pd_file), "--backend", "exact")
    assert code == 0
    assert out.startswith("REALIZABLE\n")


def test_check_linear_exact_backend_verdicts(capsys, pd_file, octo_file):
    code, out, _ = run_cli(capsys, "check-linear", str(octo_file), "--backend", "exact")
    assert code == 4
    assert out.startswith("NOT_REALIZABLE\n")

    code, out, _ = run_cli(capsys, "check-linear", str(pd_file), "--backend", "exact")
    witness = GameMatrix.parse(out.splitlines()[2].removeprefix("witness="))
    assert derive_rank_matrix(witness, MOORE8).entries == (PD_ROW0, PD_ROW1)


def test_check_linear_nonlinear_example(capsys, octo_file):
    code, out, _ = run_cli(capsys, "check-linear", str(octo_file))
    assert code == 4
    assert out.startswith("NOT_REALIZABLE\n")


def test_check_linear_other_sources(capsys):
    assert run_cli(capsys, "check-linear", "--ranks", "builtin:turq")[0] == 4
    assert run_cli(capsys, "check-linear", "--ranks", "inline:13 11 10 8 7 5 4 2 1/18 17 16 15 14 12 9 6 3")[0] == 0
    assert run_cli(capsys, "check-linear", "--game", "1.0,0.1,1.9,0.3", "--topology", "hex6")[0] == 0


@pytest.mark.parametrize("content", ["moore8\n1 2 3\n4 5 6\n", "garbage", "hex6\n1 2 3 4 5 6 7\n8 9 10 11 12 13 13\n"])
def test_check_linear_malformed_file(capsys, tmp_path, content):
    path = tmp_path / "bad.ranks"
    path.write_text(content, encoding="utf-8")
    code, out, err = run_cli(capsys, "check-linear", str(path))
    assert code == 2
    assert out == ""
    assert "error:" in err


def test_check_linear_missing_file(capsys, tmp_path):
    assert run_cli(capsys, "check-linear", str(tmp_path / "none.ranks"))[0] == 2


def test_check_linear_topology_mismatch(capsys, octo_file):
    assert run_cli(capsys, "check-linear", str(octo_file), "--topology", "hex6")[0] == 2


# --- count, catalog, census ---

@pytest.mark.parametrize("topology,expected", [
    ("moore8", "6402373705728000"),
    ("vonneumann4", "3628800"),
    ("hex6", "87178291200"),
])
def test_count(capsys, topology, expected):
    code, out, _ = run_cli(capsys, "count", "--topology", topology)
    assert (code, out) == (0, expected + "\n")


def test_count_monotone(capsys):
    assert run_cli(capsys, "count", "--monotone")[1] == "194480\n"


def test_catalog(capsys):
    code, out, _ = run_cli(capsys, "catalog")
    assert code == 0
    names = [line.split("\t")[0] for line in out.splitlines()]
    assert names == ["prisoners-dilemma", "octo", "cellz", "turq"]


def test_census(capsys):
    code, out, _ = run_cli(capsys, "census", "--topology", "vonneumann4", "--samples", "20", "--seed", "4")
    assert code == 0
    assert out.startswith("topology=vonneumann4 samples=20 realizable=")
    assert run_cli(capsys, "census", "--topology", "vonneumann4", "--samples", "20", "--seed", "4")[1] == out


# --- simulate ---

def simulate(capsys, out_dir, *extra):
    return run_cli(capsys, "simulate", "--out", str(out_dir), *extra)


def test_zero_steps_writes_the_initial_frame(capsys, tmp_path):
    code, out, _ = simulate(capsys, tmp_path / "f", "--ranks", "builtin:octo", "--rows", "8", "--cols", "8",
                            "--seed", "3", "--steps", "0")
    assert code == 0
    assert [p.name for p in (tmp_path / "f").iterdir()] == ["frame_000000.pbm"]
    assert out.startswith("steps=0 final_density=")
    assert out.endswith(" classification=none\n")


def test_uniform_start_gives_identical_frames(capsys, tmp_path):
    code, out, _ = simulate(capsys, tmp_path / "f", "--ranks", "builtin:cellz", "--rows", "6", "--cols", "6",
                            "--init", "uniform0", "--steps", "4", "--format", "pbm-ascii")
    assert code == 0
    frames = sorted((tmp_path / "f").iterdir())
    assert len(frames) == 5
    assert {p.read_bytes() for p in frames} == {b"P1\n6 6\n" + b"0 0 0 0 0 0\n" * 6}
    assert "final_density=0.000000" in out
    assert out.endswith("classification=fixed_point(transient=0)\n")


def test_stride(capsys, tmp_path):
    simulate(capsys, tmp_path / "f", "--game", "1.0,0.1,1.9,0.3", "--rows", "9", "--cols", "9",
             "--init", "center", "--steps", "5", "--stride", "2")
    assert sorted(p.name for p in (tmp_path / "f").iterdir()) == [
        "frame_000000.pbm", "frame_000002.pbm", "frame_000004.pbm",
    ]


def test_first_published_example_is_pinned(capsys, tmp_path):
    code, out, _ = simulate(capsys, tmp_path / "f", "--ranks", "builtin:octo", "--rows", "100", "--cols", "100",
                            "--seed", "7", "--steps", "200", "--stride", "50")
    assert code == 0
    assert out == (
        "steps=200 final_density=1.000000 digest=8fa2c7816719502da59ae827ecf5ed0f "
        "classification=fixed_point(transient=13)\n"
    )
    assert len(list((tmp_path / "f").iterdir())) == 5


def test_simulate_steps_the_dynamics_once(capsys, tmp_path, monkeypatch):
    calls = []
    original = dynamics.step

    def counting_step(*args, **kwargs):
        calls.append(1)
        return original(*args, **kwargs)

    monkeypatch.setattr(dynamics, "step", counting_step)
    code, _, _ = simulate(capsys, tmp_path / "f", "--ranks", "builtin:octo", "--rows", "16", "--cols", "16",
                          "--seed", "42", "--steps", "12", "--rule", "any-better")
    assert code == 0
    assert len(calls) == 12


def test_simulate_classifies_past_the_last_step(capsys, tmp_path):
    code, out, _ = simulate(capsys, tmp_path / "f", "--game", "1.0,0.1,1.9,0.3", "--rows", "9", "--cols", "9",
                            "--init", "center", "--steps", "2", "--horizon", "50")
    assert code == 0
    assert out.startswith("steps=2 final_density=0.308642 ")
    assert out.endswith(" classification=fixed_point(transient=4)\n")


def test_simulate_is_byte_identical_across_runs(capsys, tmp_path):
    args = ("--ranks", "builtin:turq", "--rows", "12", "--cols", "10", "--seed", "99",
            "--steps", "15", "--rule", "any-better")
    first = simulate(capsys, tmp_path / "a", *args)
    second = simulate(capsys, tmp_path / "b", *args)
    assert first == second
    a_frames = sorted((tmp_path / "a").iterdir())
    b_frames = sorted((tmp_path / "b").iterdir())
    assert [p.name for p in a_frames] == [p.name for p in b_frames]
    assert [p.read_bytes() for p in a_frames] == [p.read_bytes() for p in b_frames]


def test_manifest_file_and_flag_override(capsys, tmp_path):
    manifest = tmp_path / "run.json"
    manifest.write_text(json.dumps({
        "ranks": "builtin:octo", "rows": 8, "cols": 8, "init": "uniform1",
        "steps": 3, "out": str(tmp_path / "f"), "format": "pbm_ascii",
    }), encoding="utf-8")
    code, out, _ = run_cli(capsys, "simulate", "--manifest", str(manifest), "--steps", "1")
    assert code == 0
    assert out.startswith("steps=1 final_density=1.000000")
    assert len(list((tmp_path / "f").iterdir())) == 2

    # a rank source given as a flag replaces the file's
    code, out, _ = run_cli(capsys, "simulate", "--manifest", str(manifest), "--game", "1.0,0.1,1.9,0.3")
    assert code == 0


@pytest.mark.parametrize("document", [
    {"ranks": "builtin:octo", "game": "1,2,3,4"},
    {"rows": 8},
    {"ranks": "builtin:octo", "steps": -1},
    {"ranks": "builtin:octo", "colour": "red"},
])
def test_invalid_manifest(capsys, tmp_path, document):
    manifest = tmp_path / "run.json"
    manifest.write_text(json.dumps(document), encoding="utf-8")
    assert run_cli(capsys, "simulate", "--manifest", str(manifest), "--out", str(tmp_path / "f"))[0] == 2


def test_simulate_needs_a_rank_source(capsys, tmp_path):
    assert simulate(capsys, tmp_path / "f")[0] == 2


def test_simulate_dimension_errors(capsys, tmp_path):
    assert simulate(capsys, tmp_path / "f", "--ranks", "builtin:turq", "--rows", "5", "--cols", "6")[0] == 2
    assert simulate(capsys, tmp_path / "f", "--ranks", "builtin:octo", "--rows", "2", "--cols", "6")[0] == 2


def test_simulate_topology_mismatch(capsys, tmp_path):
    code, _, err = simulate(capsys, tmp_path / "f", "--ranks", "builtin:turq", "--topology", "moore8")
    assert code == 2
    assert "hex6" in err


def test_unwritable_output(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, out, _ = simulate(capsys, blocker / "frames", "--ranks", "builtin:octo", "--rows", "8", "--cols", "8")
    assert code == 6
    assert out == ""


# --- classify and explore ---

def test_classify_single_defector(capsys):
    code, out, _ = run_cli(capsys, "classify", "--game", "1.0,0.1,1.9,0.3", "--rows", "9", "--cols", "9",
                           "--init", "center", "--horizon", "50")
    assert code == 0
    assert out == "classification=fixed_point(transient=4) uniform_at=4 final_density=1.000000\n"


def test_explore_budget_one(capsys):
    code, out, _ = run_cli(capsys, "explore", "--budget", "1", "--rows", "10", "--cols", "10",
                           "--horizon", "20", "--seed", "2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1
    assert lines[0].split("\t")[:2] == ["0", "moore8"]


def test_explore_is_byte_identical(capsys):
    args = ("explore", "--budget", "6", "--rows", "10", "--cols", "10", "--horizon", "20", "--seed", "9",
            "--topology", "hex6", "--rule", "any-better")
    first = run_cli(capsys, *args)
    second = run_cli(capsys, *args)
    assert first == second
    assert len(first[1].splitlines()) == 6


# --- persistence ---

def test_record_flag_stores_results(capsys, tmp_path):
    from database.connection import session_scope
    from database.models import ExplorationRecord, SimulationRecord

    run_cli(capsys, "explore", "--budget", "3", "--rows", "8", "--cols", "8", "--horizon", "10", "--record")
    run_cli(capsys, "simulate", "--ranks", "builtin:octo", "--rows", "8", "--cols", "8", "--steps", "2",
            "--out", str(tmp_path / "f"), "--record")
    with session_scope() as db:
        assert db.query(ExplorationRecord).count() == 3
        stored = db.query(SimulationRecord).one()
        assert stored.steps == 2
        assert json.loads(stored.manifest)["ranks"] == "builtin:octo"


def test_results_are_not_stored_by_default(capsys, tmp_path):
    run_cli(capsys, "count")
    assert not (tmp_path / "results.db").exists()
