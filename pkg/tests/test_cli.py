import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from loja.cli import infer_variables, run
from loja.report import dumps, parse_exact


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_exponent_json_identity(tmp_path):
    f = tmp_path / "map.txt"
    f.write_text("# identity\nx\ny\n")
    code, out, _ = call("exponent", "-f", str(f), "--json")
    assert code == 0
    d = json.loads(out)
    assert d["exponent"] == "1" and d["proper"] is True
    assert d["degenerate_case"] == "none"
    for b in d["branches"]:
        assert {"ramification", "deg_phi", "deg_compose", "lambda"} <= set(b)


def test_json_round_trip_is_byte_identical():
    for argv in (["exponent", "-e", "y; x - y^3", "--json"],
                 ["branches", "-e", "y^2 - x^2 - 1", "--json"],
                 ["proper", "-e", "x; x*y - 1", "--json"]):
        code, out, _ = call(*argv)
        assert code == 0
        assert dumps(json.loads(out)) + "\n" == out


def test_proper_text():
    code, out, _ = call("proper", "-e", "x; x*y-1")
    assert code == 0 and out.strip() == "not proper (L_inf = -1)"
    code, out, _ = call("proper", "-e", "y; x - y^3")
    assert out.strip() == "proper (L_inf = 1/3)"


@pytest.mark.parametrize("expr", ["x; y", "x; x*y - 1", "y; x-y^3", "x; x", "2; 3", "y^2 - x^3; x"])
def test_exponent_and_proper_agree(expr):
    _, e, _ = call("exponent", "-e", expr, "--json")
    _, p, _ = call("proper", "-e", expr, "--json")
    e, p = json.loads(e), json.loads(p)
    assert e["exponent"] == p["exponent"]
    val = parse_exact(e["exponent"])
    assert p["proper"] == (isinstance(val, Fraction) and val > 0)


def test_special_values_serialized():
    _, out, _ = call("exponent", "-e", "x; x", "--json")
    assert json.loads(out)["exponent"] == "-inf"
    _, out, _ = call("exponent", "-e", "y; x - y^3", "--json")
    assert json.loads(out)["exponent"] == "1/3"


def test_vars_declaration_and_seed():
    code, out, _ = call("exponent", "-e", "vars: u v; u; u*v - 1", "--seed", "3")
    assert code == 0 and "L_inf = -1" in out


def test_text_reports():
    code, out, _ = call("exponent", "-e", "x; x*y - 1")
    assert code == 0 and "witness" in out
    code, out, _ = call("branches", "-e", "y^2 - x^3 + x", "--depth", "2")
    assert code == 0 and "p=3" in out and "transform" in out


def test_estimate_and_csv(tmp_path):
    csv = tmp_path / "m.csv"
    code, out, _ = call("estimate", "-e", "y; x - y^3", "--rmax", "1e4", "--samples", "16",
                        "--multistarts", "2", "--csv", str(csv), "--json")
    assert code == 0
    d = json.loads(out)
    assert abs(d["restricted"]["slope"] - 1 / 3) < 0.05
    assert csv.read_text().startswith("R,")


def test_check_lemma2():
    code, out, _ = call("check-lemma2", "-e", "t; t - 1")
    assert code == 0 and out.startswith("holds: yes")
    code, out, _ = call("check-lemma2", "-e", "s^3 - 2; s + 5", "--json")
    assert json.loads(out)["holds"] is True


@pytest.mark.parametrize("argv,needle", [
    (["exponent", "-e", "x +* y"], "'*'"),
    (["exponent", "-e", "x; w"], "'w'"),
    (["exponent", "-e", "z1; z2; z3"], "two variables"),
    (["exponent", "-e", "1.5*x; y"], "1.5"),
    (["exponent", "-f", "/nonexistent/file"], "cannot read"),
    (["check-lemma2", "-e", "3; 4"], "nonconstant"),
    (["estimate", "-e", "x; y", "--ratio", "-2"], ""),
    (["frobnicate"], ""),
])
def test_usage_errors_exit_2(argv, needle):
    code, _, err = call(*argv)
    assert code == 2
    assert needle in err


def test_infer_variables():
    assert infer_variables(["x + y"]) == ["x", "y"]
    assert infer_variables(["x"]) == ["x", "y"]
    assert infer_variables(["z1", "z3"]) == ["z1", "z2", "z3"]


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "loja.cli", "exponent", "-e", "x; y"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.startswith("L_inf = 1")
