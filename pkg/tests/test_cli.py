import io
import json
from contextlib import redirect_stdout

import pytest

from s03 import cli, suites
from s03.linalg import MatK


def run(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, buf.getvalue()


def test_verify_core_exit_and_stability():
    code, a = run("verify", "core")
    _, b = run("verify", "core")
    assert code == 0
    assert a == b
    report = json.loads(a)
    assert report["counts"]["fail"] == 0
    ids = [e["id"] for e in report["checks"]]
    assert len(ids) == len(set(ids))
    assert {e["status"] for e in report["checks"]} <= {"pass", "mismatch-reported"}


def test_verify_text_and_timing():
    code, out = run("verify", "vertex", "--format", "text", "--timing", "--seed", "3")
    assert code == 0
    assert "vertex.partition.oracle  pass" in out
    assert "seed 3:" in out and "timing:" in out


def test_unknown_suite():
    code, out = run("verify", "nope")
    assert code == 2 and out == ""


def test_failure_sets_exit_code(monkeypatch):
    monkeypatch.setitem(suites.SUITES, "core", lambda seed: [("core.forced", lambda: (suites.FAIL, None))])
    code, out = run("verify", "core")
    assert code == 1
    assert json.loads(out)["ok"] is False


def test_algebra_commands():
    code, out = run("algebra", "reduce", "bc")
    assert code == 0 and json.loads(out)["normal_form"] == "(-1)*cb"
    code, out = run("algebra", "dim", "4")
    assert json.loads(out)["dimension"] == 32
    code, out = run("algebra", "rra", "1")
    m = MatK.from_json(json.loads(out)["matrices"]["L+22"])
    assert m == MatK.identity(4)


def test_reps_commands():
    code, out = run("reps", "check", "--family", "2dim-B", "--params", "lam_p=2", "mu=3", "x=1/5")
    assert code == 0 and json.loads(out)["irreducible"]
    code, _ = run("reps", "check", "--family", "2dim-B", "--params", "lam_p=0", "mu=3", "x=1")
    assert code == 2
    code, out = run("reps", "decompose", "--degree", "2")
    assert code == 0 and json.loads(out)["irreps"] == 4
    code, _ = run("reps", "decompose", "--degree", "6")
    assert code == 2


def test_chain_commands():
    code, out = run("chain", "charpoly", "--sites", "2", "--boundary", "open", "--format", "text")
    assert code == 0 and "(x^2+1)^2" in out
    code, out = run("chain", "commute", "--sites", "3", "--u", "1/2", "--v", "-3")
    assert code == 0 and json.loads(out)["commutator_zero"]
    code, _ = run("chain", "charpoly", "--sites", "7", "--boundary", "open")
    assert code == 2


def test_vertex_command():
    code, out = run("vertex", "partition", "--cols", "2", "--rows", "3", "--u", "1/9", "--oracle")
    r = json.loads(out)
    assert code == 0 and r["oracle_matches"]


def test_clifford_commands():
    code, out = run("clifford", "verify", "--sites", "3")
    assert code == 0
    code, out = run("clifford", "decompose", "--sites", "4", "--format", "text")
    assert code == 0 and "irreps          8" in out


def test_bad_rational():
    with pytest.raises(SystemExit):
        run("chain", "commute", "--sites", "3", "--u", "x", "--v", "1")


def test_verify_all_green():
    code, out = run("verify", "--all")
    assert code == 0
    assert json.loads(out)["suites"] == list(suites.SUITES)
