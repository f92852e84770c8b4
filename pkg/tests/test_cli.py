import io
import json
import subprocess
import sys

import pytest

from flexicolor.cli import from_tsv, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    text = out.getvalue()
    return code, (json.loads(text) if text.startswith("{") else text)


@pytest.fixture
def files(tmp_path):
    lists = tmp_path / "lists.txt"
    lists.write_text("".join(f"{v}: 0 1 2\n" for v in range(5)))
    req = tmp_path / "req.txt"
    req.write_text("0 0\n1 0\n2 0\n3 0\n4 0\n")
    tri = tmp_path / "tri.txt"
    tri.write_text("0: 0 1\n1: 0 1\n2: 0 1\n")
    one = tmp_path / "one.txt"
    one.write_text("0 0\n")
    return {"lists": str(lists), "req": str(req), "tri": str(tri), "one": str(one),
            "dir": tmp_path}


def test_readme_examples():
    assert call("chi-flex", "--gen", "cycle:5")[1]["chi_flex"] == 3
    code, rec = call("bounds", "join", "--n", "100", "--s", "2", "--m", "2", "--l", "50",
                     "--r", "12")
    assert code == 0 and rec["bound"] == 63
    assert call("hall-ratio", "--gen", "cycle:5")[1]["rho"] == "5/2"


def test_reports_are_self_describing():
    _, rec = call("gen", "--gen", "path:3", "--seed", "7")
    for key in ("version", "seed", "config", "runtime_s", "command"):
        assert key in rec
    assert rec["seed"] == 7 and rec["config"]["gen"] == "path:3"


def test_exit_codes(files):
    assert call("no-such-command")[0] == 2
    assert call("chi-flex", "--gen", "path:x")[0] == 2
    assert call("chi-flex", "--gen", "path:3", "--bogus")[0] == 2
    code, rec = call("epsilon", "--gen", "complete:4", "--k", "3", "--budget", "3")
    assert code == 3 and rec["error"] == "budget"
    # a false choosability claim makes the completion step impossible
    code, rec = call("color", "--gen", "complete:3", "--lists", files["tri"], "--request",
                     files["one"], "--algorithm", "square-class", "--s", "1")
    assert code == 4 and rec["error"] == "falsification-alarm"


def test_color_algorithms(files):
    for alg in ("greedy", "exact", "random-degenerate", "square-class"):
        extra = ["--s", "2"] if alg == "square-class" else []
        code, rec = call("color", "--gen", "path:5", "--lists", files["lists"], "--request",
                         files["req"], "--algorithm", alg, *extra)
        assert code == 0, rec
        assert rec["algorithm"] == alg


def test_validate_and_satisfy_max(files):
    code, rec = call("validate", "--gen", "path:5", "--lists", files["lists"], "--request",
                     files["req"])
    assert code == 0
    code, rec = call("satisfy-max", "--gen", "path:5", "--lists", files["lists"], "--request",
                     files["req"])
    assert code == 0 and rec["count"] == 3 and rec["domain"] == 5


def test_tsv_and_json_agree(files):
    base = ["flex-value", "--gen", "cycle:5", "--lists", files["lists"]]
    _, js = call(*base)
    out = io.StringIO()
    assert run(base + ["--format", "tsv"], out, io.StringIO()) == 0
    tsv = from_tsv(out.getvalue())
    for key in js:
        if key not in ("runtime_s", "config"):
            assert tsv[key] == js[key], key
    assert tsv["config"]["format"] == "tsv" and js["config"]["format"] == "json"


def test_estimate_is_deterministic():
    a = call("estimate", "--gen", "grid:2,3", "--trials", "1", "--seed", "9")[1]
    b = call("estimate", "--gen", "grid:2,3", "--trials", "1", "--seed", "9")[1]
    a.pop("runtime_s"), b.pop("runtime_s")
    assert a == b


def test_adversary_and_orient(files):
    assert call("adversary", "t0", "--l", "2")[1]["t0"] == "181"
    code, rec = call("adversary", "oddrequest", "--l", "1", "--t", "7", "--certify",
                     "--out-dir", str(files["dir"]))
    assert code == 0 and rec["satisfy_max"] == 1 and rec["half_satisfiable"] is False
    for name in ("graph.txt", "lists.txt", "request.txt"):
        assert (files["dir"] / name).exists()
    code, rec = call("orient", "--gen", "grid:3,3", "--target", "4")
    assert code == 0 and rec["out_degrees"][4] == 0


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "flexicolor.cli", "chi-flex", "--gen",
                           "path:3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["chi_flex"] == 2
