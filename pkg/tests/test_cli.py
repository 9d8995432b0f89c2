import json
import subprocess
import sys

import pytest

from hyperlie.cli import parse_curve, parse_range, run
from hyperlie.hyperelliptic_ring import CurveError
from hyperlie.parsing import ParseError


def cli(*args, env=None):
    proc = subprocess.run([sys.executable, "-m", "hyperlie", *args], capture_output=True, text=True, env=env)
    return proc.returncode, proc.stdout, proc.stderr


def test_parse_curve_examples():
    c = parse_curve("t^2-2*b*t+1")
    assert (c.l, c.n, c.params()) == (0, 2, ["b"])
    c = parse_curve("t^2-2*b*t")
    assert (c.l, c.n) == (1, 1)
    with pytest.raises(CurveError, match="b_\\{n\\+l\\}=1"):
        parse_curve("2*t^2-1")


def test_parse_error_names_token_and_position():
    with pytest.raises(ParseError) as exc:
        parse_curve("t^3+a*t+1$")
    assert exc.value.position == 9 and exc.value.token == "$"
    with pytest.raises(ParseError) as exc:
        parse_curve("t^3+a*t+")
    assert exc.value.position == 7 and exc.value.token == "+"


def test_parse_range():
    assert parse_range("-4:4") == range(-4, 5)
    assert parse_range("3") == range(3, 4)


def test_cocycle_grid(tmp_path):
    out = tmp_path / "g.json"
    assert run(["cocycle", "--curve", "t^2-2*b*t+1", "--kind", "tt", "--range", "-4:4", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["basis"] == ["omega0", "t^-1", "1"]
    cell = next(e for e in data["entries"] if (e["r"], e["s"]) == (2, -2))
    assert cell["coords"]["omega0"] == "8"


def test_cocycle_csv_column_order(capsys):
    assert run(["cocycle", "--curve", "t^3+a*t+1", "--kind", "tu", "--range", "1:1", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "kind, r, s, omega0, t^-1, 1, t"
    assert lines[1] == "tu, 1, 1, 0, 0, -3/5*a, -2/5*a^2"


def test_reduce_csv_row(capsys):
    assert run(["reduce", "--curve", "t^3+a*t+1", "--power", "3", "--format", "csv"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["k, t^-1, 1, t", "3, 0, -2/5, -3/5*a"]


def test_genfun_respects_order_env(monkeypatch, capsys):
    monkeypatch.setenv("HYPERLIE_ORDER", "5")
    assert run(["genfun", "--curve", "t^3+a*t+1", "--index", "1", "--direction", "backward"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [r["coeff"] for r in rows] == ["1", "0", "0", "1/2", "-3/8*a", "5/16*a^2"]


def test_units_dump(capsys):
    assert run(["units", "--family", "b", "--order", "2", "--beta", "17/8"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[1]["ledger"] == {"mu": -1, "nu": 1, "rho": 0} and rows[1]["scaled"] == "2*t^2 - 2"


@pytest.mark.parametrize("args", [
    ["reduce", "--curve", "2*t^2-1", "--power", "1"],
    ["reduce", "--curve", "t^3+a*t+", "--power", "1"],
    ["genfun", "--curve", "t^3+a*t", "--index", "0"],
    ["cocycle", "--curve", "t^3-2*b*t^2+t", "--method", "closed"],
    ["verify", "--suite", "12"],
    ["reduce", "--curve", "t^3+a*t+1"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(args):
    code, _, err = cli(*args)
    assert code == 1
    assert err


def test_error_messages():
    _, _, err = cli("reduce", "--curve", "t^3+a*t+", "--power", "1")
    assert "position 7" in err and "'+'" in err
    _, _, err = cli("genfun", "--curve", "t^3+a*t", "--index", "0")
    assert "unsupported" in err


def test_output_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert cli("cocycle", "--curve", "t^3+a*t+1", "--range", "-2:2", "--format", "csv", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_single_suite(tmp_path):
    out = tmp_path / "cert.json"
    code, stdout, _ = cli("verify", "--suite", "1", "--seed", "7", "--out", str(out))
    assert code == 0 and "[PASS]  1" in stdout
    assert json.loads(out.read_text())["passed"] is True


def test_verify_all_certificate(tmp_path):
    """All eleven suites are listed; the one wrong published formula makes the run exit 2."""
    out1, out2 = tmp_path / "c1.json", tmp_path / "c2.json"
    code, stdout, _ = cli("verify", "--suite", "all", "--seed", "7", "--out", str(out1))
    cert = json.loads(out1.read_text())
    assert [s["suite"] for s in cert["suites"]] == list(range(1, 12))
    assert cert["seed"] == 7
    failed = [(s["suite"], c["label"]) for s in cert["suites"] for c in s["checks"] if not c["passed"]]
    assert failed == [(3, "tu printed closed form on [-8,8]^2")]
    assert code == 2
    cli("verify", "--suite", "all", "--seed", "7", "--out", str(out2))
    assert out1.read_bytes() == out2.read_bytes()
