import json
import subprocess
import sys

import pytest

from hornfp.cli import complex_literal, main

H2_POINT = 0.965931357118128


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_complex_literal():
    assert complex_literal("1.5") == 1.5
    assert complex_literal("-0.5,2e-1") == complex(-0.5, 0.2)
    with pytest.raises(Exception):
        complex_literal("1+2j")


def test_eval_h2_series(capsys):
    code, out, _ = run(capsys, "eval", "h2", "--params", "0.2", "0.5", "0.3", "0.4", "1.5",
                       "--x", "0.3", "--y", "0.5", "--rep", "series")
    assert code == 0
    value = float(out.split()[0].split("=")[1].split(",")[0])
    assert abs(value - H2_POINT) < 1e-13
    assert "method=series" in out


def test_eval_machine_output(capsys):
    code, out, _ = run(capsys, "eval", "2f1", "--params", "0.4", "0.6", "1.3", "--x", "-0.5",
                       "--format", "machine")
    rec = json.loads(out)
    assert code == 0
    assert abs(rec["re"] - 0.9249150106441284) < 1e-14
    assert set(rec) == {"re", "im", "err_estimate", "method", "terms_or_nodes", "status"}


def test_eval_outside_omega1(capsys):
    code, _, err = run(capsys, "eval", "h2", "--params", "0.2", "0.5", "0.3", "0.4", "1.5",
                       "--x", "2.0", "--y", "0.1", "--rep", "series")
    assert code == 1
    assert "outside Omega1" in err
    assert len(err.strip().splitlines()) == 1


def test_eval_auto_continues_h2(capsys):
    code, out, _ = run(capsys, "eval", "h2", "--params", "0.2,0.1", "0.5", "0.3", "0.4", "1.5",
                       "--x", "-2", "--y", "0.4", "--format", "machine")
    rec = json.loads(out)
    assert code == 0 and rec["method"] == "single-integral"
    assert abs(complex(rec["re"], rec["im"]) - (0.84822235067669 - 0.04286027465884908j)) < 1e-9


@pytest.mark.parametrize("argv", [
    ["eval", "h2", "--params", "1", "2", "--x", "0.1", "--y", "0.1"],
    ["eval", "2f1", "--params", "1", "2", "3", "--x", "0.1", "--rep", "H3.3"],
    ["eval", "h2", "--params", "1", "2", "3", "4", "5", "--x", "0.1"],
    ["frobnicate"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3
    assert err.startswith("hornfp: usage error")


def test_region_csv(capsys, tmp_path):
    target = tmp_path / "grid.csv"
    code, out, _ = run(capsys, "region", "--region", "Omega1", "--region", "Case1",
                       "--xlim", "-1", "1", "--ylim", "-1", "2", "--n", "3", "4", "--out", str(target))
    assert code == 0 and out == ""
    rows = target.read_text().splitlines()
    assert rows[0] == "x,y,Omega1,Case1"
    assert len(rows) == 1 + 12
    assert "0,2,false,true" in rows
    assert "0,0,true,false" in rows


def test_loop_dump(capsys):
    code, out, _ = run(capsys, "loop-dump", "--epsilon", "0.2", "--per-element", "8")
    rows = out.splitlines()
    assert code == 0 and rows[0].startswith("element,s,re_u")
    code, out, _ = run(capsys, "loop-dump", "--h2-point", "0.5", "-0.3")
    assert code == 0
    code, _, err = run(capsys, "loop-dump", "--h2-point", "0.5", "-2")
    assert code == 1 and "GeometryError" in err


def test_verify_one_identity(capsys):
    code, out, _ = run(capsys, "verify", "--id", "eq33", "--id", "2.7", "--seed", "5")
    assert code == 0
    assert out.splitlines()[0].startswith("id=eq33 samples=10")
    code, _, err = run(capsys, "verify", "--id", "nope")
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hornfp", "eval", "2f1", "--params", "2", "3", "3",
                           "--x", "0.5"], capture_output=True, text=True)
    assert proc.returncode == 0
    value = proc.stdout.split()[0].removeprefix("value=").split(",")
    assert abs(float(value[0]) - 4) < 1e-14 and float(value[1]) == 0
