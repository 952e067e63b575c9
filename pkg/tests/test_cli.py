import io
import json
import subprocess
import sys

import pytest

from lrcforge import cli
from lrcforge.descriptor import CodeDescriptor


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


EX1 = ["--q", "11", "--n", "5", "--r", "3", "--delta", "3", "--kind", "t1"]
EX3 = ["--q", "7", "--n", "30", "--r", "4", "--delta", "3", "--kind", "t3"]


@pytest.fixture(scope="module")
def ex3_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("desc") / "ex3.json"
    assert cli.main(["construct", *EX3, "--out", str(path)]) == 0
    return path


def test_construct_t1_n5(capsys):
    code, out, _ = run(capsys, "construct", *EX1)
    assert code == 0
    desc = json.loads(out)
    assert desc["k"] == 2 and desc["d_exact"] == 4 and desc["optimal"] is True
    assert desc["singleton_bound"] == 4
    assert desc["locality"]["defining_set"] == {"holds": True, "witness": {"ells": [1, 2], "step": 1}}
    assert desc["repair_groups"] == [[0, 1, 2, 3, 4]]


@pytest.mark.parametrize("argv,needle", [
    (["--q", "5", "--n", "12", "--r", "4", "--delta", "3", "--kind", "t4"], "n must be odd"),
    (["--q", "11", "--n", "11", "--r", "3", "--delta", "3", "--kind", "t1"], "gcd(n,q) ≠ 1"),
])
def test_construct_precondition_exit_2(capsys, argv, needle):
    code, _, err = run(capsys, "construct", *argv)
    assert code == 2 and needle in err


def test_round_trip_and_verify(capsys, ex3_file):
    text = ex3_file.read_text()
    desc = CodeDescriptor.loads(text)
    assert CodeDescriptor.loads(desc.dumps()) == desc
    assert json.loads(desc.dumps()) == json.loads(text)
    code, out, _ = run(capsys, "verify", "--in", str(ex3_file))
    assert code == 0 and "MISMATCH" not in out


def test_verify_detects_tampering(capsys, ex3_file, tmp_path):
    data = json.loads(ex3_file.read_text())
    data["d_exact"] = 5
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, err = run(capsys, "verify", "--in", str(bad), "--json")
    assert code == 2
    report = json.loads(out)
    assert [c["name"] for c in report["checks"] if not c["ok"]] == ["d_exact"]


def test_verify_stdin(capsys, monkeypatch, ex3_file):
    monkeypatch.setattr(sys, "stdin", io.StringIO(ex3_file.read_text()))
    code, _, _ = run(capsys, "verify", "--in", "-")
    assert code == 0


def test_verify_malformed_descriptor(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    assert run(capsys, "verify", "--in", str(p))[0] == 2
    p.write_text(json.dumps({"q": 11}))
    assert run(capsys, "verify", "--in", str(p))[0] == 2
    assert run(capsys, "verify", "--in", str(tmp_path / "missing.json"))[0] == 2


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--q", "11", "--n-max", "30", "--r-range", "3",
                       "--delta-range", "3", "--json")
    rows = json.loads(out)
    assert code == 0
    assert [r["n"] for r in rows if r["kind"] == "t1"] == [5, 10, 15, 20, 25, 30]
    keys = [(r["n"], r["r"], r["delta"]) for r in rows]
    assert keys == sorted(keys)
    code, out, _ = run(capsys, "search", "--q", "7", "--n-max", "30", "--r-range", "4",
                       "--delta-range", "3", "--json")
    t3 = {r["n"] for r in json.loads(out) if r["kind"] == "t3"}
    assert {6, 30} <= t3
    code, out, _ = run(capsys, "search", "--q", "2", "--n-max", "3", "--json")
    assert json.loads(out) == []
    code, out, _ = run(capsys, "search", "--q", "11", "--n-max", "10", "--r-range", "3",
                       "--delta-range", "3")
    assert out.splitlines()[0].split() == ["n", "r", "delta", "kind"]


def test_simulate_local_and_global(capsys, ex3_file):
    code, out, _ = run(capsys, "simulate", "--in", str(ex3_file), "--erasures", "local:2",
                       "--trials", "1000", "--seed", "1")
    s = json.loads(out)
    assert code == 0 and s["successes"] == 1000 and s["paths"]["local"] == 1000
    assert s["contact_sizes"]["max"] <= 5
    code, out, _ = run(capsys, "simulate", "--in", str(ex3_file), "--erasures", "global:5",
                       "--trials", "1000", "--seed", "1")
    s = json.loads(out)
    assert s["successes"] == 1000 and s["paths"]["global"] == 1000
    code, out, _ = run(capsys, "simulate", "--in", str(ex3_file), "--erasures", "local:0", "--trials", "20")
    s = json.loads(out)
    assert s["successes"] == 20 and s["paths"]["none"] == 20


def test_simulate_reproducible(capsys, ex3_file):
    args = ["simulate", "--in", str(ex3_file), "--erasures", "global:7", "--trials", "200",
            "--seed", "42", "--allow-failures"]
    a = run(capsys, *args)[1]
    b = run(capsys, *args)[1]
    assert a == b
    s = json.loads(a)
    assert s["successes"] + s["failures"] == 200


def test_simulate_explicit_and_capability(capsys, ex3_file):
    code, out, _ = run(capsys, "simulate", "--in", str(ex3_file), "--erasures", "0,1,2", "--trials", "5")
    assert code == 0 and json.loads(out)["successes"] == 5
    assert run(capsys, "simulate", "--in", str(ex3_file), "--erasures", "global:6")[0] == 3
    assert run(capsys, "simulate", "--in", str(ex3_file), "--erasures", "local:9")[0] == 2
    assert run(capsys, "simulate", "--in", str(ex3_file), "--erasures", "bogus:1")[0] == 2


def test_simulate_inline_flags(capsys):
    code, out, _ = run(capsys, "simulate", *EX1, "--erasures", "local:2", "--trials", "50")
    assert code == 0 and json.loads(out)["successes"] == 50


def test_budget_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("LRC_FORGE_BUDGET", "100")
    code, _, err = run(capsys, "construct", *EX3)
    assert code == 3 and "budget" in err


def test_internal_error_exit_1(capsys, monkeypatch):
    def boom(*a, **k):
        raise RuntimeError("injected")

    monkeypatch.setattr(cli, "verify", boom)
    code, _, err = run(capsys, "construct", *EX1)
    assert code == 1 and "injected" in err


def test_missing_flags_exit_2(capsys):
    assert run(capsys, "verify", "--q", "11")[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lrcforge", "construct", *EX1],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["k"] == 2
