from __future__ import annotations

import json

import pytest

from flagquant.cli import JOBFILE_SCHEMA, main, run_job


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    doc = json.loads(out)
    assert doc["schema_version"] == 1 and doc["command"] == argv[0]
    return code, doc["result"]


def test_bbw_examples(capsys):
    code, r = run_json(capsys, "bbw", "-f", "A", "-r", "2", "--theta", "1", "--weight", "0,-3")
    assert code == 0 and r["degree"] == 2 and r["highest_weight"] == ["0", "0"] and r["dim"] == 1
    code, r = run_json(capsys, "bbw", "-f", "A", "-r", "1", "--weight", "-1")
    assert code == 0 and r["vanishes"] is True
    code, r = run_json(capsys, "bbw", "-f", "A", "-r", "1", "--weight", "4")
    assert r["degree"] == 0 and r["dim"] == 5


def test_bbw_dual(capsys):
    code, r = run_json(capsys, "bbw", "-f", "B", "-r", "2", "--weight", "1,-5", "--dual")
    assert code == 0 and r["duality"]["passed"]


def test_smodule_commands(capsys):
    assert run_json(capsys, "inertia", "-f", "A", "-r", "2", "--weight", "1,-3")[1]["inertia"] == 2
    assert run_json(capsys, "canonical", "-f", "A", "-r", "2", "--theta", "1")[1]["canonical_weight"] == ["0", "-3"]
    assert run_json(capsys, "dual", "-f", "A", "-r", "1", "--weight", "4")[1]["lambda_dual"] == ["-6"]


def test_symbol(capsys):
    code, r = run_json(capsys, "symbol", "--n", "2", "--word", "H", "--eval", "z=1")
    assert code == 0
    assert r["symbol"] == "(-2*z*zbar + 2)/(z*zbar + 1)"
    assert r["value"] == "0" and r["agrees_with_matrix_symbol"] and r["trace"] == r["N_integral"]


def test_symbol_matrix_file(capsys, tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps([[1, 0], [0, 0]]))
    code, r = run_json(capsys, "symbol", "--n", "1", "--matrix-file", str(p))
    assert code == 0 and r["symbol"] == "(1)/(z*zbar + 1)"
    p.write_text("[[1]]")
    assert run(capsys, "symbol", "--n", "1", "--matrix-file", str(p))[0] == 2


def test_star(capsys):
    code, r = run_json(capsys, "star", "--f", "zbar", "--g", "z", "--order", "1")
    assert code == 0
    assert r["coefficients"] == {"C0": "z*zbar", "C1": "z^2*zbar^2 + 2*z*zbar + 1"}
    code, r = run_json(capsys, "star", "--f", "1", "--g", "z", "--order", "2", "--eval", "z=1/2")
    assert r["coefficients"] == {"C0": "z", "C1": "0", "C2": "0"}
    assert r["values"]["C0"] == "1/2"


def test_star_env_order(capsys, monkeypatch):
    monkeypatch.setenv("FLAGQUANT_ORDER", "1")
    assert run_json(capsys, "star", "--f", "zbar", "--g", "z")[1]["order"] == 1


def test_human_output_matches_json(capsys):
    code, out, _ = run(capsys, "bbw", "-f", "A", "-r", "2", "--theta", "1", "--weight", "0,-3")
    assert code == 0
    assert "degree: 2" in out and "dim: 1" in out and "highest_weight: (0,0)" in out


@pytest.mark.parametrize("argv", [
    ["bbw", "-f", "A", "-r", "2", "--theta", "1", "--weight", "1,0"],   # not W_theta invariant
    ["bbw", "-f", "A", "-r", "2", "--weight", "1/2,0"],
    ["bbw", "-f", "Q", "-r", "2", "--weight", "0,0"],
    ["inertia", "-f", "A", "-r", "2", "--weight", "1"],
    ["symbol", "--n", "2", "--word", "EXH"],
    ["star", "--f", "z +", "--g", "z"],
    ["star", "--f", "z", "--g", "z", "--n", "0"],
    ["asymptotics", "--ns", "a,b"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bbw", "-f", "A"])
    assert exc.value.code == 2


def test_degenerate_inertia(capsys):
    code, r = run_json(capsys, "inertia", "-f", "A", "-r", "2", "--weight", "1,-1")
    assert code == 0 and r["inertia"] == "degenerate"


def test_byte_identical_runs(capsys):
    argv = ["bbw", "-f", "C", "-r", "3", "--weight", "1,-4,2", "--dual", "--json"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b


def test_asymptotics_csv(capsys, tmp_path):
    p = tmp_path / "err.csv"
    code, r = run_json(capsys, "asymptotics", "--pair", "fH2", "--ns", "2,4", "--csv", str(p))
    assert code == 1 or code == 0
    assert [row["n"] for row in r["rows"]] == [2, 4]
    assert p.read_text().splitlines()[0] == "pair,n,max_error"


def test_verify_rootsys_serial_equals_parallel(capsys, tmp_path):
    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "--suite", "rootsys", "--report", str(r1))[0] == 0
    assert run(capsys, "verify", "--suite", "rootsys", "--jobs", "2", "--report", str(r2))[0] == 0
    assert r1.read_text() == r2.read_text()


def test_jobfile(capsys, tmp_path):
    jobs = {"schema_version": 1, "jobs": [
        {"command": "bbw", "family": "A", "rank": 2, "theta": [1], "weight": "0,-3", "dual": True},
        {"command": "symbol", "n": 3, "word": "EF"},
        {"command": "star", "f": "zbar", "g": "z", "order": 2},
        {"command": "canonical", "family": "G", "rank": 2},
    ]}
    p = tmp_path / "jobs.json"
    p.write_text(json.dumps(jobs))
    rep = tmp_path / "rep.json"
    code, r = run_json(capsys, "verify", "--jobfile", str(p), "--jobs", "2", "--report", str(rep))
    assert code == 0 and r["passed"] and r["jobs"] == 4
    assert len(json.loads(rep.read_text())["records"]) == 4


def test_jobfile_failure_reports_first_case(capsys, tmp_path):
    p = tmp_path / "jobs.json"
    p.write_text(json.dumps({"schema_version": 1, "jobs": [
        {"command": "bbw", "family": "A", "rank": 1, "weight": "2"},
        {"command": "inertia", "family": "A", "rank": 2, "weight": "1,x"},
    ]}))
    code, out, err = run(capsys, "verify", "--jobfile", str(p))
    assert code == 1 and "FAILED" in err and "inertia" in err


@pytest.mark.parametrize("doc", [
    {"jobs": []},
    {"schema_version": 2, "jobs": []},
    {"schema_version": 1, "jobs": [{"command": "launch"}]},
    {"schema_version": 1, "jobs": [{"command": "bbw", "rank": "two"}]},
])
def test_invalid_jobfile(capsys, tmp_path, doc):
    p = tmp_path / "jobs.json"
    p.write_text(json.dumps(doc))
    assert run(capsys, "verify", "--jobfile", str(p))[0] == 2


def test_run_job_captures_input_errors():
    rec = run_job({"command": "bbw", "family": "A", "rank": 1, "weight": "x"})
    assert rec["passed"] is False and "error" in rec
    assert JOBFILE_SCHEMA["properties"]["schema_version"]["const"] == 1
