import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from qpart.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_verify_identity():
    code, out, _ = run("verify", "--identity", "thm_5_2", "--order", "12")
    assert code == 0
    assert "OK" in out


def test_verify_unknown_identity_suggests():
    code, _, err = run("verify", "--identity", "nope")
    assert code == 2
    assert "did you mean" in err
    code, _, err = run("verify", "--identity", "thm_5_3")
    assert code == 2
    assert "thm_5_2" in err


def test_verify_all_json_golden():
    code, out, _ = run("verify", "--all", "--order", "25", "--json")
    assert code == 0
    doc = json.loads(out)
    assert isinstance(doc, list)
    assert all(r["verdict"] == "OK" and r["order"] == 25 for r in doc)
    assert out == (GOLDEN / "verify_all_25.json").read_text(encoding="utf-8")


def test_verify_all_json_is_deterministic():
    _, a, _ = run("verify", "--all", "--order", "12", "--json")
    _, b, _ = run("verify", "--all", "--order", "12", "--json", "--parallel")
    assert a == b


def test_verify_timing_flag():
    _, out, _ = run("verify", "--identity", "thm_1_2", "--order", "5", "--json", "--timing")
    (r,) = json.loads(out)
    assert r["millis"] >= 0


def test_verify_file(tmp_path):
    good = tmp_path / "good.qid"
    good.write_text("identity g { weighted(D, unit) = poch(-, 1, 1, inf) }\n")
    assert run("verify", "--file", str(good))[0] == 0
    bad = tmp_path / "bad.qid"
    bad.write_text("identity b { weighted(D, unit) = poch(-, 1, 2, inf) }\n")
    code, out, _ = run("verify", "--file", str(bad), "--json")
    assert code == 1
    (r,) = json.loads(out)
    assert r["verdict"] == "MISMATCH"
    assert r["first_bad_exponent"] == 2
    broken = tmp_path / "broken.qid"
    broken.write_text("identity b { q^ }")
    code, _, err = run("verify", "--file", str(broken))
    assert code == 2
    assert "broken.qid:1:17" in err
    assert run("verify", "--file", str(tmp_path / "missing.qid"))[0] == 2


def test_verify_env_order(monkeypatch):
    monkeypatch.setenv("QPART_ORDER", "7")
    _, out, _ = run("verify", "--identity", "thm_1_2", "--json")
    assert json.loads(out)[0]["order"] == 7
    _, out, _ = run("verify", "--identity", "thm_1_2", "--json", "--order", "4")
    assert json.loads(out)[0]["order"] == 4
    monkeypatch.setenv("QPART_ORDER", "x")
    assert run("verify", "--identity", "thm_1_2")[0] == 2


def test_usage_errors():
    assert run()[0] == 2
    assert run("verify")[0] == 2
    assert run("verify", "--all", "--identity", "thm_1_2")[0] == 2
    assert run("verify", "--all", "--order", "-1")[0] == 2
    assert run("table", "--paper-table", "2")[0] == 2


@pytest.mark.parametrize("number,total", [(3, "28"), (4, "11"), (5, "162"), (6, "162"), (7, "16")])
def test_table(number, total):
    code, out, _ = run("table", "--paper-table", str(number))
    assert code == 0
    assert f"total {total}" in out


def test_table_5_footnote():
    _, out, _ = run("table", "--paper-table", "5")
    assert "(7,2,1)" in out
    assert "missing from published table" in out
    _, out, _ = run("table", "--paper-table", "5", "--json")
    doc = json.loads(out)
    d = doc["columns"][1]
    assert d["total"] == 162
    assert {"partition": "(7,2,1)", "weight": 9, "note": "missing from published table"} in d["rows"]


def test_table_7_json():
    _, out, _ = run("table", "--paper-table", "7", "--json")
    doc = json.loads(out)
    assert [r["weight"] for r in doc["columns"][0]["rows"]] == [2, 4, 1, 1, 2, 4, 2]
    assert doc["columns"][1]["count"] == 16


def test_expand():
    assert run("expand", "--expr", "poch(-,1,1,inf)/poch(+,1,1,inf)", "--order", "5")[1] == "1 2 4 8 14 24\n"
    assert run("expand", "--expr", "1", "--order", "0")[1] == "1\n"
    code, _, err = run("expand", "--expr", "q^((3*j^2", "--order", "4")
    assert code == 2
    assert "1:" in err
    code, _, err = run("expand", "--expr", "(1 + q", "--order", "4")
    assert code == 2
    assert "1:7" in err
    assert run("expand", "--expr", "1/q", "--order", "3")[0] == 2
    _, out, _ = run("expand", "--expr", "q", "--order", "2", "--json")
    assert json.loads(out)["coefficients"] == [0, 1, 0]


def test_enumerate():
    code, out, _ = run("enumerate", "--set", "GG2", "--n", "12", "--weight", "omega2", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["count"] == 4 and doc["total"] == 11
    assert out == (GOLDEN / "enumerate_gg2_12.json").read_text(encoding="utf-8")
    _, out, _ = run("enumerate", "--set", "U", "--n", "0", "--json")
    assert json.loads(out)["rows"] == [{"partition": "()"}]
    _, out, _ = run("enumerate", "--set", "P_rdo", "--n", "12")
    assert "count 11" in out
    assert run("enumerate", "--set", "GG3", "--n", "3")[0] == 2
    assert run("enumerate", "--set", "U", "--n", "3", "--weight", "nope")[0] == 2
    _, out, _ = run("enumerate", "--set", "U_n(2)", "--n", "4")
    assert "count 3" in out


def test_list():
    code, out, _ = run("list", "--json")
    assert code == 0
    names = [s["name"] for s in json.loads(out)]
    assert "thm_5_2" in names and len(names) == len(set(names))


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qpart", "verify", "--identity", "thm_3_4", "--order", "12"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    proc = subprocess.run([sys.executable, "-m", "qpart", "verify", "--identity", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2
