import csv
import io
import json
import subprocess
import sys

import pytest

from shiftedschur.cli import EXIT_INVALID, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_multicritical_json(capsys):
    code, out, _ = run(capsys, "multicritical", "--p", "2")
    assert code == EXIT_OK
    assert out == '{"t":{"1":0.5},"a":2.0}\n'


def test_limit_shape_csv(capsys):
    code, out, _ = run(capsys, "limit-shape", "--p", "2", "--grid", "5", "--xmax", "2")
    table = rows(out)
    assert code == EXIT_OK
    assert table[0] == ["x", "omega", "density"]
    assert len(table) == 6
    assert float(table[1][1]) == pytest.approx(1.2732395, abs=1e-7)
    # floats are written with round-trip precision
    assert table[1][1] == "%.17g" % float(table[1][1])


def test_reruns_are_byte_identical(capsys):
    argv = ("airy", "--p", "4", "--xmin", "-1", "--xmax", "1", "--step", "0.5")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert rows(first)[0] == ["x", "Ai_p", "dAi_p"]


def test_json_format(capsys):
    code, out, _ = run(capsys, "gap", "--p", "2", "--interval", "1..3", "--format", "json")
    record = json.loads(out)[0]
    assert code == EXIT_OK
    assert record["interval"] == "1;2;3"


def test_t_file(tmp_path, capsys):
    path = tmp_path / "t.json"
    path.write_text('{"t":{"1":0.5},"a":2.0}')
    code, out, _ = run(capsys, "correlation", "--t-file", str(path), "--points", "1")
    assert code == EXIT_OK
    assert float(rows(out)[1][1]) == pytest.approx(0.30863070756666394, abs=1e-13)


def test_negative_list_values(capsys):
    code, out, _ = run(capsys, "kernel", "--p", "2", "--points", "-2,1")
    assert code == EXIT_OK
    assert len(rows(out)) == 5


def test_edge_converge_rows(capsys):
    code, out, _ = run(capsys, "edge-converge", "--p", "2", "--target", "j", "--eps", "0.25,0.125", "--args", "-1,0")
    table = rows(out)
    assert code == EXIT_OK
    assert table[0] == ["target", "p", "epsilon", "arg", "finite_value", "limit_value", "abs_error"]
    assert [r[2] for r in table[1:]] == ["0.25", "0.25", "0.125", "0.125"]


def test_sample_is_seeded(capsys):
    argv = ("sample", "--p", "2", "--count", "5", "--seed", "11")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    assert len(rows(a)) == 6


def test_output_file(tmp_path, capsys):
    out = tmp_path / "w.csv"
    code, text, _ = run(capsys, "weights", "--p", "2", "--max-size", "4", "--out", str(out))
    assert code == EXIT_OK and text == ""
    assert rows(out.read_text())[0][0] == "partition"


@pytest.mark.parametrize("argv", [
    ("nonsense",),
    ("airy",),
    ("airy", "--p", "2", "--step", "-1"),
    ("kernel", "--p", "2", "--points", "a,b"),
    ("multicritical", "--p", "2", "--tol", "0"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err


@pytest.mark.parametrize("argv", [
    ("multicritical", "--p", "3"),
    ("airy", "--p", "2", "--xmin", "-60", "--xmax", "-59"),
    ("tw", "--p", "2", "--smin", "11", "--smax", "12"),
    ("profile", "--p", "2", "--epsilon", "-1"),
])
def test_invalid_input(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_INVALID


def test_invalid_parameters_in_t_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"t":{"1":-0.5},"a":2.0}')
    code, _, _ = run(capsys, "limit-shape", "--t-file", str(path))
    assert code == EXIT_INVALID


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "quick")
    lines = out.strip().splitlines()
    assert code == EXIT_OK
    assert len(lines) == 6
    assert all(line.startswith("[PASS]") for line in lines)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "shiftedschur", "multicritical", "--p", "4"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["t"]["3"] == pytest.approx(-1 / 36)
