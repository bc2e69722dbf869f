import json
import subprocess
import sys

import pytest
import z3

from kaplansky import __version__
from kaplansky.cli import main, reverify_probe_report
from kaplansky.sentence import parse_sentence


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


# probe

def test_probe_exit_codes(capsys):
    code, rep, _ = run_json(capsys, "probe", "--group", "cyclic:2", "--field", "GF(2)", "--d", "1",
                            "--support", "all")
    assert code == 0
    assert rep["result"]["outcome"] == "none-in-scope"
    assert rep["tool"] == "kaplansky" and rep["version"] == __version__
    assert reverify_probe_report(rep)
    code, rep, _ = run_json(capsys, "probe", "--group", "cyclic:2", "--field", "GF(2)", "--d", "2",
                            "--support", "all")
    assert code == 0 and rep["result"]["search_space"] == 256


def test_probe_budget_exceeded(capsys):
    code, rep, err = run_json(capsys, "probe", "--group", "cyclic:4", "--field", "GF(3)", "--d", "2",
                              "--support", "all", "--budget", "1000")
    assert code == 2
    assert rep["error"] == "budget-exceeded" and rep["required_budget"] == 3 ** 16
    assert "budget exceeded" in err


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("KAPLANSKY_BUDGET", "10")
    code, _, _ = run(capsys, "probe", "--group", "cyclic:2", "--field", "GF(2)", "--d", "2")
    assert code == 2  # 2^8 candidates


def test_input_errors(capsys):
    assert run(capsys, "probe", "--group", "cyclic:", "--field", "GF(2)")[0] == 1
    assert run(capsys, "probe", "--group", "cyclic:0", "--field", "GF(2)")[0] == 1
    assert run(capsys, "probe", "--group", "cyclic:2", "--field", "GF(4)")[0] == 1
    assert run(capsys, "probe", "--group", "cyclic:2", "--field", "GF(2)", "--support", "h")[0] == 1


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


# compile

def test_compile_stats(capsys):
    code, out, _ = run(capsys, "compile", "--group", "cyclic:2", "--property", "stable:1",
                       "--support", "all", "--backend", "stats")
    assert code == 0
    assert "variables=4" in out.splitlines()


def test_compile_text_reparses(capsys):
    for prop in ("stable:2", "unit", "zero-divisor", "idempotent"):
        code, out, _ = run(capsys, "compile", "--group", "symmetric:3", "--property", prop,
                           "--support", "e,p132", "--backend", "text")
        assert code == 0
        parse_sentence(out)


def test_compile_smtlib(capsys):
    code, out, _ = run(capsys, "compile", "--property", "idempotent", "--group", "cyclic:3",
                       "--support", "all", "--backend", "smtlib:2")
    assert code == 0
    s = z3.Solver()
    s.from_string(out)
    assert s.check() == z3.sat
    assert run(capsys, "compile", "--property", "unit", "--group", "cyclic:3",
               "--backend", "smtlib:GF(3)")[0] == 0


def test_compile_unsupported(capsys):
    assert run(capsys, "compile", "--property", "unit", "--group", "cyclic:3",
               "--backend", "smtlib:GF(2^2)")[0] == 3
    assert run(capsys, "compile", "--property", "unit", "--group", "cyclic:3",
               "--backend", "smtlib:4")[0] == 3
    assert run(capsys, "compile", "--property", "unit", "--group", "cyclic:3",
               "--backend", "latex")[0] == 3


# scan-fields

def test_scan_fields_field_case(capsys, tmp_path):
    code, out, _ = run(capsys, "compile", "--group", "cyclic:1", "--property", "stable:1",
                       "--backend", "text")
    path = tmp_path / "psi.txt"
    path.write_text(out, encoding="utf-8")
    code, rep, err = run_json(capsys, "scan-fields", "--sentence", str(path), "--primes", "2,3,5",
                              "--degrees", "1")
    assert code == 0
    rows = rep["result"]["rows"]
    assert [(r["p"], r["truth"]) for r in rows] == [(2, False), (3, False), (5, False)]
    assert "not tested" in rep["result"]["footnote"] and "not tested" in err


def test_scan_fields_idempotent(capsys):
    code, rep, _ = run_json(capsys, "scan-fields", "--group", "cyclic:3", "--property", "idempotent",
                            "--primes", "2,3", "--degrees", "1-2")
    assert code == 0
    truth = {(r["p"], r["k"]): r["truth"] for r in rep["result"]["rows"]}
    # in characteristic 3, K[C3] = K[x]/(x-1)^3 is local, so only 0 and 1 are idempotent
    assert truth == {(2, 1): True, (2, 2): True, (3, 1): False, (3, 2): False}


def test_scan_fields_empty_and_skipped(capsys):
    code, rep, _ = run_json(capsys, "scan-fields", "--group", "cyclic:2", "--property", "stable:1",
                            "--primes", "")
    assert code == 0 and rep["result"]["rows"] == []
    code, rep, _ = run_json(capsys, "scan-fields", "--group", "cyclic:2", "--property", "stable:1",
                            "--primes", "2-8", "--budget", "300")
    assert code == 0
    rows = rep["result"]["rows"]
    assert [r["p"] for r in rows] == [2, 3, 5, 7]
    assert [r["status"] for r in rows] == ["ok", "ok", "skipped", "skipped"]


# lca

def test_lca_shift(capsys, tmp_path):
    path = tmp_path / "shift.txt"
    path.write_text("entry(1,1) = g\n", encoding="utf-8")
    code, rep, _ = run_json(capsys, "lca", "--group", "cyclic:3", "--field", "GF(2)", "--matrix", str(path))
    assert code == 0
    res = rep["result"]
    assert res["injective"] and res["surjective"] and res["equivariant"]
    assert res["consistency"] == "PASS"


def test_lca_sum_on_c2(capsys, tmp_path):
    path = tmp_path / "sum.txt"
    path.write_text("entry(1,1) = e + g\n", encoding="utf-8")
    code, rep, _ = run_json(capsys, "lca", "--group", "cyclic:2", "--field", "GF(2)", "--matrix", str(path))
    res = rep["result"]
    assert (res["injective"], res["surjective"], res["consistency"]) == (False, False, "PASS")
    assert res["global_rank"] == 1


def test_lca_and_rule(capsys, tmp_path):
    path = tmp_path / "and.txt"
    path.write_text("alphabet: 0 1\nmemory: e g\n0 0 -> 0\n0 1 -> 0\n1 0 -> 0\n1 1 -> 1\n",
                    encoding="utf-8")
    code, rep, _ = run_json(capsys, "lca", "--group", "cyclic:2", "--rule", str(path))
    assert code == 0
    assert (rep["result"]["injective"], rep["result"]["surjective"]) == (False, False)


def test_lca_needs_source(capsys):
    assert run(capsys, "lca", "--group", "cyclic:2")[0] == 1


# search and crosscheck

def test_search_examples(capsys):
    code, rep, _ = run_json(capsys, "search", "--kind", "idempotents", "--group", "cyclic:3",
                            "--field", "GF(2)", "--support", "all")
    assert code == 10
    elems = [w["element"] for w in rep["result"]["witnesses"] if not w["trivial"]]
    assert [["e", 1], ["g", 1], ["g2", 1]] in elems
    code, rep, _ = run_json(capsys, "search", "--kind", "units", "--group", "cyclic:3",
                            "--field", "GF(2)", "--support", "all")
    assert code == 0 and rep["result"]["count"] == 3
    assert all(w["trivial"] for w in rep["result"]["witnesses"])
    code, _, _ = run_json(capsys, "search", "--kind", "zero-divisors", "--group", "cyclic:1",
                          "--field", "GF(3)", "--support", "all")
    assert code == 0


def test_crosscheck(capsys):
    code, rep, _ = run_json(capsys, "crosscheck", "--group", "cyclic:2", "--other", "cyclic:2",
                            "--field", "GF(2)")
    assert code == 0 and rep["result"]["consistent"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kaplansky", "compile", "--group", "cyclic:2",
                           "--property", "stable:1", "--backend", "stats"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "variables=4" in proc.stdout
