import json

import pytest

from sl2parahoric.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from sl2parahoric.config import RunConfig
from sl2parahoric.errors import DomainError
from sl2parahoric.workspace import CACHE_ENV


def _lines(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


def test_zvalues(tmp_path):
    out = tmp_path / "z.jsonl"
    assert main(["zvalues", "--p", "3", "--level", "2", "--out", str(out)]) == EXIT_OK
    rows = _lines(out)
    assert [r["z"] for r in rows] == ["1", "1/3", "1/3", "1", "1/3", "1/3"]
    assert [r["deg_i"] for r in rows] == ["1", "3", "3", "1", "3", "3"]


def test_verify_depth_one_passes(tmp_path):
    out = tmp_path / "r.jsonl"
    assert main(["verify", "--p", "3", "--depth", "1", "--out", str(out)]) == EXIT_OK
    recs = _lines(out)
    assert recs and all(r["pass"] for r in recs)
    assert set(recs[0]) == {"check_id", "inputs", "expected", "got", "pass"}


def test_single_suite_and_jobs(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["verify", "--depth", "1", "--suite", "all", "--jobs", "3", "--out", str(a)]) == EXIT_OK
    assert main(["verify", "--depth", "1", "--suite", "all", "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert main(["verify", "--depth", "1", "--suite", "mackey", "--out", str(a)]) == EXIT_OK
    assert {r["check_id"].split(".")[0] for r in _lines(a)} == {"mackey"}


def test_usage_errors(capsys):
    assert main(["verify", "--p", "4"]) == EXIT_USAGE
    assert main(["verify", "--suite", "nope"]) == EXIT_USAGE
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["verify", "--depth", "0"]) == EXIT_USAGE


def test_budget_exit():
    assert main(["verify", "--depth", "4"]) == EXIT_BUDGET
    assert main(["verify", "--depth", "2", "--suite", "dihedral", "--max-words", "10"]) == EXIT_BUDGET


def test_verification_failure_exit(monkeypatch, tmp_path):
    from sl2parahoric import verify

    def broken(ws, n):
        c = verify.Collector(ws.p, n)
        c.add("iwahori.fake", 1, 2)
        return c.checks

    monkeypatch.setitem(verify._RUNNERS, "iwahori", broken)
    assert main(["verify", "--depth", "1", "--suite", "iwahori", "--out", str(tmp_path / "x")]) == EXIT_FAIL


def test_table_and_cache_env(tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    monkeypatch.setenv(CACHE_ENV, str(cache))
    out = tmp_path / "t.json"
    assert main(["table", "--p", "3", "--level", "1", "--tag", "full", "--cache-dir", str(tmp_path / "ignored"),
                 "--out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["order"] == 24 and doc["class_count"] == 7
    assert (cache / "table_p3_N1_full.json").exists()
    assert not (tmp_path / "ignored").exists()


def test_homology_report(tmp_path):
    out = tmp_path / "h.json"
    exp = tmp_path / "mats"
    assert main(["homology", "--depth", "2", "--out", str(out), "--export-dir", str(exp)]) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["h1"]["kernel_dim"] == 2 and rep["h1"]["excess"] == 0
    assert all(rep["identities"].values())
    assert (exp / "g_boundary_p3_n2.txt").read_text().startswith("104 34\n")


def test_run_config_validation():
    with pytest.raises(DomainError):
        RunConfig(p=9)
    with pytest.raises(DomainError):
        RunConfig(jobs=0)
