import io
import json
import shutil
import subprocess

import pytest

from cyops.cli import run


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_lambert_R1():
    code, text = invoke("lambert", "R1", "--ell", "4", "--depth", "5")
    assert code == 0
    first = text.splitlines()[0]
    assert first == "Y_1: 768, -136800, 35597568, -5313408000, -6059212935936"


def test_equiv_false():
    code, text = invoke("equiv", "quintic", "R1", "--truncation", "12")
    assert code == 0 and text.strip() == "false"
    code, _ = invoke("equiv", "quintic", "R1", "--truncation", "12", "--strict")
    assert code == 1


def test_analyze_json_deterministic():
    argv = ("analyze", "quintic", "--truncation", "20", "--depth", "40", "--json")
    c1, t1 = invoke(*argv)
    c2, t2 = invoke(*argv)
    assert c1 == c2 == 0 and t1 == t2
    doc = json.loads(t1)
    assert list(doc) == ["operator", "verdict", "normal_form", "lambert", "galois", "params",
                         "version"]
    assert doc["verdict"]["overall"] is True
    assert doc["lambert"][0]["coefficients"][0] == "575"


def test_expression_source_and_exponents():
    code, text = invoke("exponents", "T^2 - z*(T+1/2)^2")
    assert code == 0
    assert "0: exponents 0, 0" in text
    assert "infinity: exponents 1/2, 1/2" in text


def test_errors_exit_2(capsys):
    assert invoke("analyze", "T^^2")[0] == 2
    assert invoke("yinv", "E_tilde")[0] == 2
    assert invoke("flag", "no_such_operator_name")[0] == 2
    assert invoke("dual")[0] == 2
    assert "cyops: error:" in capsys.readouterr().err


def test_bad_command_is_usage_error():
    with pytest.raises(SystemExit) as e:
        run(["frobnicate", "quintic"], io.StringIO())
    assert e.value.code == 2


def test_corpus_listing():
    code, text = invoke("corpus")
    names = [line.split(":")[0] for line in text.splitlines()]
    assert {"quintic", "E", "E_tilde", "R1", "R5"} <= set(names)


def test_sympow_symroot_round_trip():
    code, text = invoke("sympow", "E_tilde", "--power", "3", "--json")
    sym = json.loads(text)["sym_power"]["theta_form"]
    code, text = invoke("symroot", sym, "--json")
    root = json.loads(text)["sym_root"]["theta_form"]
    code, text = invoke("corpus", "E_tilde", "--json")
    assert root == json.loads(text)["operator"]["theta_form"]


@pytest.mark.skipif(shutil.which("cyops") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["cyops", "qcoord", "quintic", "--truncation", "4"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "q: 0, 1, 770, 1014275"
    assert subprocess.run(["cyops", "--version"], capture_output=True).returncode == 0
