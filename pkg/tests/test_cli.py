import json

import pytest

from omega_rea import cli
from omega_rea.codec import pair
from omega_rea.oracles import write_fixtures
from omega_rea.scenarios import r_scenario


@pytest.fixture()
def fixture_file(tmp_path):
    p = tmp_path / "r.json"
    write_fixtures(r_scenario(), p)
    return p


def test_run_verify_inspect(tmp_path, fixture_file, capsys):
    out = tmp_path / "t.jsonl"
    assert cli.main(["run", "--fixtures", str(fixture_file), "--stages", "120", "--out", str(out)]) == 0
    assert out.exists()
    assert cli.main(["verify", "--trace", str(out), "--fixtures", str(fixture_file)]) == 0
    assert "OK" in capsys.readouterr().out
    assert cli.main(["verify", "--trace", str(out), "--check", "schedule", "--check", "outcomes"]) == 0
    text = capsys.readouterr().out
    assert "PASS schedule" in text and "constraint-I" not in text
    assert cli.main(["inspect", "--trace", str(out), "--stage", "28"]) == 0
    text = capsys.readouterr().out
    assert "R(0,0)" in text and "outcome 3" in text
    assert cli.main(["inspect", "--trace", str(out), "--stage", "28", "--column", "1"]) == 0
    assert "column 1: rows [2, 3]" in capsys.readouterr().out


def test_run_with_seed(tmp_path, capsys):
    out = tmp_path / "s.jsonl"
    assert cli.main(["run", "--seed", "3", "--stages", "50", "--out", str(out)]) == 0
    assert cli.main(["verify", "--trace", str(out)]) == 0


def test_verify_fails_on_corruption(tmp_path, fixture_file, capsys):
    out = tmp_path / "t.jsonl"
    cli.main(["run", "--fixtures", str(fixture_file), "--stages", "100", "--out", str(out)])
    lines = out.read_text().splitlines()
    rec = json.loads(lines[30])
    rec["w"] += 3
    lines[30] = json.dumps(rec)
    out.write_text("\n".join(lines) + "\n")
    assert cli.main(["verify", "--trace", str(out), "--fixtures", str(fixture_file)]) == 1
    assert "FAILED" in capsys.readouterr().out


def test_oracle_command(tmp_path, capsys, monkeypatch):
    doc = {
        "axioms": [
            {"level": 0, "cond": [], "target": pair(0, 1)},
            {"level": 1, "cond": [[pair(0, 1), 1]], "target": pair(1, 0)},
            {"level": 1, "cond": [[pair(0, 2), 1]], "target": pair(1, 2)},
        ]
    }
    p = tmp_path / "ax.json"
    p.write_text(json.dumps(doc))
    assert cli.main(["oracle", "--axioms", str(p), "--horizon", "20"]) == 0
    assert "match" in capsys.readouterr().out
    # a broken engine must be reported as a mismatch
    monkeypatch.setattr(cli, "yields_over", lambda *a, **k: cli.SetDescription())
    assert cli.main(["oracle", "--axioms", str(p), "--horizon", "20"]) == 1
    assert "MISMATCH" in capsys.readouterr().out


def test_oracle_horizon_too_small(tmp_path, capsys):
    p = tmp_path / "ax.json"
    p.write_text(json.dumps([{"level": 0, "target": 50}]))
    assert cli.main(["oracle", "--axioms", str(p), "--horizon", "10"]) == 2
    assert "horizon" in capsys.readouterr().err


def test_errors_exit_two(tmp_path, capsys):
    assert cli.main(["inspect", "--trace", str(tmp_path / "missing.jsonl"), "--stage", "0"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"functionals": 3}')
    assert cli.main(["run", "--fixtures", str(bad), "--stages", "5", "--out", str(tmp_path / "o")]) == 2


def test_list_checks(capsys):
    assert cli.main(["verify", "--list-checks"]) == 0
    assert "flag-disagreement" in capsys.readouterr().out
