import json
import subprocess
import sys

import pytest

from liechar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(text):
    doc = json.loads(text)
    assert doc["schema"] == "liechar/1"
    return doc


def test_beta(capsys):
    code, out, _ = run(capsys, "beta", "3,2")
    assert code == 0
    assert as_json(out)["value"] == {"num": 1, "den": 2}


def test_table_g2(capsys):
    code, out, _ = run(capsys, "table", "--group", "G2")
    rows = as_json(out)["rows"]
    assert [(r["levi"], r["alpha"]) for r in rows] == [("A1", {"num": 1, "den": 3}), ("~A1", {"num": 1, "den": 4})]


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--group", "g2", "--out", "csv")
    lines = out.strip().splitlines()
    assert lines[0].startswith("group,levi,alpha")
    assert lines[1].startswith("G2,A1,1/3")


def test_alpha_classical_and_exceptional(capsys):
    _, out, _ = run(capsys, "alpha", "--family", "GL", "--n", "5", "--levi", "4,1")
    doc = as_json(out)
    assert doc["result"]["value"] == {"num": 3, "den": 4}
    assert doc["ratio_bound_holds"] is True
    _, out, _ = run(capsys, "alpha", "--group", "E7", "--levi", "D6")
    assert as_json(out)["result"]["alpha"] == {"num": 5, "den": 9}
    _, out, _ = run(capsys, "alpha", "--family", "Sp", "--r", "3", "--levi", "1")
    assert as_json(out)["levi"]["classical_factor"] == 4


def test_group_and_supp(capsys):
    _, out, _ = run(capsys, "group", "--kind", "SL", "--n", "2", "--q", "5")
    doc = as_json(out)
    assert len(doc["classes"]) == 9
    _, out, _ = run(capsys, "group", "--kind", "GL", "--n", "2", "--q", "3", "supp", "--matrix", "0,2;1,0")
    assert as_json(out)["supp"] == 1


def test_walk(capsys):
    code, out, _ = run(capsys, "walk", "--kind", "SL", "--n", "2", "--q", "7", "--class-rep", "2,0;0,4",
                       "--tmax", "12", "--levi", "1,1")
    report = as_json(out)["report"]
    assert code == 0
    assert report["T_l1"] <= report["levi_bound"] == 5
    assert [row["t"] for row in report["trajectory"]] == list(range(len(report["trajectory"])))


def test_bounds(capsys):
    _, out, _ = run(capsys, "bounds", "--family", "Sp", "--r", "5", "--levi", "2,1", "--supp", "3")
    names = [b["name"] for b in as_json(out)["bounds"]]
    assert "Levi mixing" in names and "support mixing" in names


def test_audits(capsys):
    assert run(capsys, "audit", "steinberg", "--kind", "GL", "--n", "2", "--q", "5")[0] == 0
    assert run(capsys, "audit", "unipotent", "--kind", "GL", "--n", "3", "--q", "5")[0] == 0  # skipped, not failed
    code, out, _ = run(capsys, "audit", "coset", "--kind", "GL", "--n", "2", "--q", "5", "--g", "2,0;0,1",
                       "--levi", "1,1")
    assert code == 0 and as_json(out)["result"]["max_residual"] < 1e-8


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "1,7")
    doc = as_json(out)
    assert code == 0 and doc["all_ok"]
    assert [r["criterion"] for r in doc["results"]] == [1, 7]
    code, out, _ = run(capsys, "verify", "--e7d6", "--out", "text")
    assert code == 0 and '"ok":true' in out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["beta", "3,2", "--bogus"])
    assert exc.value.code == 2
    assert run(capsys, "beta", "x,y")[0] == 2
    assert run(capsys, "group", "--kind", "SL", "--n", "2", "--q", "6")[0] == 2
    assert run(capsys, "verify", "--suite", "99")[0] == 2
    assert run(capsys, "alpha", "--group", "E7", "--levi", "Z9")[0] == 2
    code, _, err = run(capsys, "group", "--kind", "SL", "--n", "2", "--q", "5", "supp", "--matrix", "2,0;0,2")
    assert code == 2 and "not in" in err


def test_json_is_byte_identical_across_runs(capsys):
    argv = ["chartable", "--kind", "SL", "--n", "2", "--q", "7"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "liechar", "beta", "2,2", "--out", "text"],
                          capture_output=True, text=True, check=True)
    assert "value=1/2" in proc.stdout
