import json

import pytest
from click.testing import CliRunner

from legcob.io import catalog
from legcob.io.cli import main
from legcob.io.jsonio import movie_to_json

UNKNOT = "L1 R1\n"
TREFOIL = "L1 L3 X2 X2 X2 R1 R1\n"


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_normalizes(runner, tmp_path):
    f = _write(tmp_path, "u.front", "  L1   R1  # eye\n")
    r = runner.invoke(main, ["parse", f])
    assert r.exit_code == 0
    assert r.output.strip() == "L1 R1"


def test_parse_error_exit_code(runner, tmp_path):
    f = _write(tmp_path, "bad.front", "L1 R2\n")
    r = runner.invoke(main, ["parse", f])
    assert r.exit_code == 1
    assert "error" in r.output or "error" in (r.stderr or "")


def test_invariants_json(runner, tmp_path):
    f = _write(tmp_path, "t.front", TREFOIL)
    r = runner.invoke(main, ["invariants", f, "--json"])
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["tb"] == 1
    assert data["rot"] == [0]


def test_invariants_reads_stdin(runner):
    r = runner.invoke(main, ["invariants", "-", "--json"], input=UNKNOT)
    assert r.exit_code == 0
    assert json.loads(r.output)["tb"] == -1


def test_rulings_poly(runner, tmp_path):
    f = _write(tmp_path, "t.front", TREFOIL)
    r = runner.invoke(main, ["rulings", f, "--poly", "--json"])
    data = json.loads(r.output)
    assert data["count"] == 3
    assert data["polynomial"] == "z + 2z^-1"


def test_obstruct_pass_and_fail(runner, tmp_path):
    u = _write(tmp_path, "u.front", UNKNOT)
    t = _write(tmp_path, "t.front", TREFOIL)
    ok = runner.invoke(main, ["obstruct", u, t, "--chi", "-2"])
    assert ok.exit_code == 0
    bad = runner.invoke(main, ["obstruct", t, u, "--chi", "2", "--q", "2,3"])
    assert bad.exit_code == 2
    assert "OBSTRUCTED" in bad.output


def test_moves_then_apply_round_trip(runner, tmp_path):
    u = _write(tmp_path, "u.front", UNKNOT)
    listed = runner.invoke(main, ["moves", u, "--json"])
    moves = json.loads(listed.output)["moves"]
    assert moves
    applied = runner.invoke(
        main, ["apply", u, json.dumps(moves[0]), "--json"])
    assert applied.exit_code == 0
    assert "front" in json.loads(applied.output)


def test_apply_rejects_bad_move(runner, tmp_path):
    u = _write(tmp_path, "u.front", UNKNOT)
    move = {"variant": "Saddle", "template_id": "saddle",
            "index": 5, "pos": 9, "direction": "forward"}
    r = runner.invoke(main, ["apply", u, json.dumps(move)])
    assert r.exit_code == 2


def test_verify_movie(runner, tmp_path):
    blob = json.dumps(movie_to_json(catalog.trefoil_filling()))
    f = _write(tmp_path, "filling.json", blob)
    r = runner.invoke(main, ["verify-movie", f, "--json"])
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["chi"] == -1
    assert data["genus"] == 1
    assert data["consistency"] == "PASS"


def test_satellite_builtin_clasp(runner, tmp_path):
    t = _write(tmp_path, "t.front", TREFOIL)
    r = runner.invoke(main, ["satellite", t, "builtin:clasp", "--json"])
    assert r.exit_code == 0
    word = json.loads(r.output)["front"]
    assert word.count("L") >= 4


def test_satellite_pattern_file(runner, tmp_path):
    t = _write(tmp_path, "t.front", TREFOIL)
    p = _write(tmp_path, "clasp.pattern",
               "strands 2\nL2 X1 X3 R2\norient s2 = -\n")
    via_file = runner.invoke(main, ["satellite", t, p, "--json"])
    builtin = runner.invoke(main, ["satellite", t, "builtin:clasp",
                                   "--json"])
    assert via_file.output == builtin.output


def test_search_found_exit_zero(runner, tmp_path):
    u = _write(tmp_path, "u.front", UNKNOT)
    t = _write(tmp_path, "t.front", TREFOIL)
    r = runner.invoke(main, ["search", u, t, "--max-steps", "5", "--json"])
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["outcome"] == "found"
    assert len(data["movie"]["steps"]) == 5


def test_search_pruned_exit_four(runner, tmp_path):
    u = _write(tmp_path, "u.front", UNKNOT)
    t = _write(tmp_path, "t.front", TREFOIL)
    r = runner.invoke(main, ["search", t, u, "--max-steps", "3"])
    assert r.exit_code == 4


def test_search_exhausted_exit_two(runner, tmp_path):
    u = _write(tmp_path, "u.front", UNKNOT)
    t = _write(tmp_path, "t.front", TREFOIL)
    r = runner.invoke(main, ["search", u, t, "--max-steps", "2"])
    assert r.exit_code == 2


def test_search_env_budget(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("LEGCOB_MAX_STEPS", "2")
    u = _write(tmp_path, "u.front", UNKNOT)
    t = _write(tmp_path, "t.front", TREFOIL)
    r = runner.invoke(main, ["search", u, t])
    assert r.exit_code == 2


def test_catalog_listing_and_fetch(runner):
    r = runner.invoke(main, ["catalog"])
    assert "trefoil" in r.output
    one = runner.invoke(main, ["catalog", "trefoil", "--json"])
    data = json.loads(one.output)
    assert data["tb"] == 1


def test_lagdiag_verify(runner, tmp_path):
    from legcob.io.jsonio import lin_sequence_to_json
    from legcob.lagdiag import LinMove, empty_diagram

    seq = lin_sequence_to_json(
        empty_diagram(),
        (LinMove("F", (), ("1/2",)),))
    f = _write(tmp_path, "seq.json", json.dumps(seq))
    r = runner.invoke(main, ["lagdiag", "verify", f, "--json"])
    assert r.exit_code == 0
    assert json.loads(r.output)["verdict"] == "EXACT"
