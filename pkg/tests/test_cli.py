import io
import json
import subprocess
import sys

import pytest

from memauto.cli import main
from memauto.corpus import fig3_hra
from memauto.serialize import dump_automaton

WORKED_QDIMACS = "p cnf 4 2\ne 1 0\na 2 3 0\ne 4 0\n1 -4 0\n-2 -3 4 0\n"


def call(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def fig3_file(tmp_path):
    p = tmp_path / "fig3.json"
    p.write_text(json.dumps(dump_automaton(fig3_hra())))
    return str(p)


def test_validate(fig3_file, tmp_path):
    assert call(["validate", fig3_file])[:2] == (0, "VALID\n")
    bad = json.loads(open(fig3_file).read())
    bad["initial"] = "nowhere"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    code, out, err = call(["validate", str(p), "--json"])
    assert code == 1 and json.loads(out)["valid"] is False


def test_run_and_certificate(fig3_file, tmp_path):
    assert call(["run", fig3_file, "--word", "a b b"])[:2] == (0, "ACCEPT\n")
    assert call(["run", fig3_file, "--word", "a b"])[:2] == (1, "REJECT\n")
    code, out, _ = call(["run", fig3_file, "--word", "a b b", "--certificate", "--json"])
    obj = json.loads(out)
    assert code == 0 and obj["accepted"] and obj["run"]
    cert = tmp_path / "run.json"
    cert.write_text(json.dumps(obj["run"]))
    assert call(["check-cert", fig3_file, "--word", "a b b", "--run", str(cert)])[:2] == (0, "VALID\n")
    code, out, _ = call(["check-cert", fig3_file, "--word", "a a b", "--run", str(cert)])
    assert code == 1 and out.startswith("INVALID")


def test_word_sources(fig3_file, tmp_path):
    wf = tmp_path / "w.txt"
    wf.write_text("a b b\n")
    assert call(["run", fig3_file, "--word", f"@{wf}"])[0] == 0
    doc = json.dumps(dump_automaton(fig3_hra()))
    assert call(["run", "-", "--word", "-"], stdin=doc + "\na b b\n")[0] == 0


def test_exit_codes(fig3_file, tmp_path):
    assert call(["run", str(tmp_path / "missing.json")])[0] == 2
    (tmp_path / "junk.json").write_text("{not json")
    code, _, err = call(["validate", str(tmp_path / "junk.json")])
    assert code == 2 and "junk.json" in err
    assert call(["frobnicate"])[0] == 64
    assert call(["run"])[0] == 64
    code, _, err = call(["empty", fig3_file])
    assert code == 64 and "ν-automata only" in err
    assert call(["encode", fig3_file, "--to", "nu"])[0] == 64


def test_encode(fig3_file):
    code, out, _ = call(["encode", fig3_file, "--word", "a b b", "--json"])
    obj = json.loads(out)
    assert code == 0 and obj["automaton"]["formalism"] == "lama"
    assert obj["word"] == "a#0 a#1 b#0 b#1 b#1 b#2"
    code, out, _ = call(["encode", fig3_file, "--dot"])
    assert code == 0 and out.startswith("digraph")


def test_empty(tmp_path):
    code, out, _ = call(["reduce-qbf", "-"], stdin=WORKED_QDIMACS)
    p = tmp_path / "q.json"
    p.write_text(out)
    code, out, err = call(["empty", str(p), "--stats"])
    assert code == 0 and out.strip() and "explored" in err
    code, out, _ = call(["empty", str(p), "--json"])
    obj = json.loads(out)
    assert obj["nonempty"] and obj["explored"] <= obj["bound"]
    code, out, _ = call(["empty", str(p), "--randomized", "--seed", "3", "--json"])
    assert json.loads(out)["one_sided"] is True


def test_reduce_sat(tmp_path):
    code, out, err = call(["reduce-sat", "-"], stdin="p cnf 3 3\n1 2 -3 0\n-1 2 3 0\n1 -1 2 0\n")
    assert code == 0 and "dropped 1" in err
    code2 = main(["run", "-", "--word", "-"], stdin=io.StringIO(out), stdout=io.StringIO(), stderr=io.StringIO())
    assert code2 == 0
    wf = tmp_path / "w.txt"
    code, out, _ = call(["reduce-sat", "-", "--word-file", str(wf)], stdin="p cnf 3 1\n1 2 3 0\n")
    assert wf.read_text() == "1 1 1 1\n"
    assert call(["reduce-sat", "-"], stdin="p cnf 3 1\n1 x 0\n")[0] == 2
    assert call(["reduce-sat", "-"], stdin="p cnf 2 1\n1 2 0\n")[0] == 64


def test_reduce_qbf_pipe():
    code, out, _ = call(["reduce-qbf", "-", "--word"], stdin=WORKED_QDIMACS)
    assert code == 0 and len(out.strip().splitlines()[-1].split()) == 37
    assert main(["run", "-", "--word", "-"], stdin=io.StringIO(out), stdout=io.StringIO(), stderr=io.StringIO()) == 0


def test_gen_example():
    code, out, _ = call(["gen-example", "double_exp(3)", "--witness"])
    assert code == 0
    assert main(["run", "-", "--word", "-"], stdin=io.StringIO(out), stdout=io.StringIO(), stderr=io.StringIO()) == 0
    code, out, _ = call(["gen-example", "double_exp(3)", "--halved"])
    assert main(["run", "-", "--word", "-"], stdin=io.StringIO(out), stdout=io.StringIO(), stderr=io.StringIO()) == 1
    assert call(["gen-example", "fig2_lp", "--witness"])[0] == 64
    assert call(["gen-example", "nope"])[0] == 64


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "memauto", "gen-example", "fig2_lp", "--dot"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "digraph" in proc.stdout
