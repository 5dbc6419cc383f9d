import json
import shutil
import subprocess

import pytest

from weylweight.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_act_example(capsys):
    assert run(capsys, "act", "--expr", "d0", "--on", "t0^(1/2)") == (0, "(1/2) t0^(-1/2)", "")


def test_act_json(capsys):
    code, out, _ = run(capsys, "act", "--expr", "t0*d0", "--on", "t0^(1/3) u0^1", "--format", "json")
    assert code == 0
    assert json.loads(out)["result"] == "(1/3) t0^(1/3) u0^1 + t0^(1/3)"


def test_support_with_bruteforce(capsys):
    code, out, _ = run(capsys, "support", "--n", "1", "--nu", "0,0", "--J", "0", "--window", "3",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["bruteforce_agrees"]
    assert data["support"] == "Z<0*e0 + Z>=0*e1"


def test_block(capsys):
    code, out, _ = run(capsys, "block", "--n", "1", "--nu", "0,0", "--a", "-1")
    data = json.loads(out)
    assert code == 0
    assert data["quiver_family"] == "A''" and [s["J"] for s in data["simples"]] == [[0], [1]]


def test_localize_certified(capsys):
    code, out, _ = run(capsys, "localize", "--n", "0", "--nu", "1/3", "--functor", "dshift:0:1/2",
                       "--certify", "--window", "4")
    data = json.loads(out)
    assert code == 0
    assert data["target"]["J"] == [0] and data["target"]["nu"] == ["-1/6"]
    assert data["certificate"]["status"] == "pass"


def test_hilbert_and_koszul(capsys):
    code, out, _ = run(capsys, "hilbert", "--family", "A", "--k", "2", "--degree", "2")
    assert code == 0 and json.loads(out)["totals"] == [4, 8, 12]
    code, out, _ = run(capsys, "koszul", "--family", "B", "--k", "2", "--degree", "6")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_quiver_formats(capsys):
    code, out, _ = run(capsys, "quiver", "--family", "B", "--k", "2")
    assert code == 0 and len(json.loads(out)["arrows"]) == 8
    code, out, _ = run(capsys, "quiver", "--family", "A'", "--k", "2", "--dot")
    assert out.startswith("digraph")


def test_wild_and_tame(capsys):
    code, out, _ = run(capsys, "wild", "--family", "B'", "--k", "3")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = run(capsys, "wild", "--family", "B", "--k", "1")
    assert code == 0 and json.loads(out)["status"] == "tame"
    code, out, _ = run(capsys, "tame", "--case", "b", "--max-dim", "3", "--format", "text")
    assert code == 0 and "pass" in out


def test_failed_check_exit_code(capsys):
    # no quotient of A(2) by arrows and vertices is a wild free path algebra
    code, out, _ = run(capsys, "wild", "--family", "A", "--k", "2")
    assert code == 1 and json.loads(out)["status"] == "fail"


@pytest.mark.parametrize("argv", [
    ["support", "--n", "1", "--nu", "0"],
    ["support", "--n", "0", "--nu", "1/2", "--J", "0"],
    ["localize", "--n", "0", "--nu", "0", "--functor", "gamma:0"],
    ["hilbert", "--family", "C", "--k", "2"],
    ["bogus"],
    ["act", "--expr", "d0"],
])
def test_usage_errors(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out == ""


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "quiver", "--seed", "3")
    second = run(capsys, "verify", "quiver", "--seed", "3")
    assert first == second
    data = json.loads(first[1])
    assert first[0] == 0
    assert data["known_gaps"] == ["quiver/wild_witness"]


def test_env_default_degree(capsys, monkeypatch):
    monkeypatch.setenv("WEYLWEIGHT_MAX_DEGREE", "3")
    code, out, _ = run(capsys, "hilbert", "--family", "B", "--k", "1")
    assert code == 0 and len(json.loads(out)["totals"]) == 4
    monkeypatch.setenv("WEYLWEIGHT_MAX_DEGREE", "x")
    assert run(capsys, "hilbert", "--family", "B", "--k", "1")[0] == 2


@pytest.mark.skipif(shutil.which("weylweight") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["weylweight", "act", "--expr", "d0", "--on", "t0^(1/2)"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "(1/2) t0^(-1/2)"
