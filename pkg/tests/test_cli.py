import subprocess
import sys

import pytest

from lamplight import cli, verify
from lamplight.verify import PropertyResult, Report


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["machine", "run", "--mod", "2", "--state", "0", "--word", "1011"], "output=1101 state=1"),
        (["machine", "run", "--state", "1", "--word", "1011"], "output=0010 state=0"),
        (["machine", "run", "--state", "0", "--word", ""], "output= state=0"),
        (["machine", "run", "--inverse", "--state", "0", "--word", "1101"], "output=1011 state=1"),
        (["machine", "run", "--mod", "3", "--state", "2", "--word", "012"], "output=202 state=2"),
        (["series", "inv", "--mod", "2", "--len", "5", "1100"], "11111"),
        (["series", "inv", "--len", "5", "--header", "1100"], "mod=2 len=5:11111"),
        (["series", "geom", "--mod", "3", "--a", "2", "--len", "4"], "1,2,1,2"),
        (["series", "add", "1011", "0110"], "1101"),
        (["series", "mul", "1111", "1111"], "1010"),
        (["series", "shift", "11111"], "11110"),
        (["series", "pow", "--exp", "-1", "--len", "6", "111111"], "110000"),
        (["series", "mul", "--mod", "3", "1,1,0,0", "1,2,1,2"], "1,0,0,0"),
        (["group", "normalform", "q", "p"], "{-1};2"),
        (["group", "normalform", "p", "q^-1"], "{0};0"),
        (["group", "normalform"], "{};0"),
        (["group", "compose", "{0};1", "{0};1"], "{-1,0};2"),
        (["group", "compose", "q p", "p^-1 q^-1"], "{};0"),
        (["group", "inv", "{0};1"], "{1};-1"),
        (["group", "act", "--word", "1000", "q", "p"], "0101"),
        (["group", "act", "--elem", "{-1};2", "--word", "1000"], "0101"),
        (["group", "act", "--elem", "{};0", "--word", "0101"], "0101"),
        (["group", "tolamp", "p"], "{0};1"),
        (["group", "tolamp", "--elem", "{-1};2"], "{-1};2"),
        (["group", "normalform", "--mod", "3", "g2", "g1"], "{-1:1,0:2};2"),
    ],
)
def test_outputs(capsys, argv, expected):
    code, out, err = run(capsys, *argv)
    assert (code, out, err) == (0, expected, "")


def test_machine_show(capsys):
    code, out, _ = run(capsys, "machine", "show")
    assert code == 0
    assert out == "mealy n=2 states=2\nstate 0: 0/0->0 1/1->1\nstate 1: 0/1->1 1/0->0"


def test_machine_invert(capsys):
    code, out, _ = run(capsys, "machine", "invert")
    assert code == 0
    assert out.splitlines()[2] == "state 1: 0/1->0 1/0->1"


@pytest.mark.parametrize(
    "argv, message",
    [
        (["series", "inv", "0100"], "not invertible: a0 not a unit"),
        (["series", "add", "102"], ""),
        (["series", "pow", "1010"], "--exp"),
        (["machine", "run", "--state", "5", "--word", "1"], "out of range"),
        (["machine", "run", "--word", "12"], ""),
        (["group", "normalform", "x"], ""),
        (["group", "inv", "{0};1", "{1};0"], "one element"),
        (["group", "act", "q"], "--word"),
        (["group", "tolamp", "--mod", "3", "g1"], "Z/2"),
        (["series", "geom", "--mod", "1"], "--mod"),
        (["series", "geom", "--len", "0"], "--len"),
    ],
)
def test_errors_exit_two(capsys, argv, message):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith("error:") and message in err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["series", "frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["machine", "show", "--bogus"])
    assert exc.value.code == 2


def test_series_length_defaults_to_longest_operand(capsys):
    assert run(capsys, "series", "add", "1", "0110")[1] == "1110"


@pytest.mark.parametrize("suite", ["axioms", "iso", "faithful"])
def test_verify_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "verify", suite, "--trials", "30")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == f"[{suite}] mod=2 len=64 seed=0"
    assert lines[-1] == "OK"
    assert all(": pass " in ln for ln in lines[1:-1])


def test_verify_mod_three(capsys):
    code, out, _ = run(capsys, "verify", "all", "--mod", "3", "--trials", "20", "--len", "32")
    assert code == 0 and out.endswith("OK")


def test_verify_failure_exits_one(capsys, monkeypatch):
    def failing(name, cfg):
        bad = PropertyResult("broken", trials=4, failures=1, reproducer="x={0};1")
        return [Report("axioms", cfg.seed, [bad])]

    monkeypatch.setattr(verify, "run_suite", failing)
    code, out, _ = run(capsys, "verify", "axioms", "--seed", "9")
    assert code == 1
    assert "broken: FAIL 3/4" in out
    assert "reproduce broken: seed=9 x={0};1" in out
    assert out.endswith("FAILED")


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "all", "--seed", "3", "--trials", "25")
    second = run(capsys, "verify", "all", "--seed", "3", "--trials", "25")
    assert first == second and first[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lamplight", "group", "normalform", "q", "p"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "{-1};2"
