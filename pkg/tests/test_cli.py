from __future__ import annotations

import json
import subprocess
import sys

import pytest

from corona_lab.cli import GRAMMAR, main
from corona_lab.spaces import SPACE_NAMES


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spaces_lists_builtins(capsys):
    code, out, _ = run(["spaces"], capsys)
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == list(SPACE_NAMES)
    code, out, _ = run(["spaces", "--format", "json"], capsys)
    assert len(json.loads(out)) == 7


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["repro", "theorem6", "--kmax", "100"], 3),
        (["repro", "example1"], 3),
        (["repro", "example2"], 3),
        (["repro", "theorem7", "--c", "harmonic", "--t", "3/10", "--eps", "1/64", "--trials", "20"], 0),
        (["repro", "x1"], 3),
        (["repro", "x2"], 3),
        (["repro", "theorem2", "--pairs", "40"], 0),
    ],
)
def test_repro_exit_codes(argv, expected, capsys):
    code, out, _ = run(argv + ["--format", "json"], capsys)
    assert code == expected
    data = json.loads(out)
    assert all(row["ok"] for row in data["rows"])


def test_spike_repro_rows_are_exact(capsys):
    _, out, _ = run(["repro", "theorem6", "--kmax", "100"], capsys)
    rows = json.loads(out)["rows"]
    assert rows[0] == {"check": "distance(0, y_1)", "expected": "2/1", "observed": "2/1", "ok": True}
    assert rows[2 * 99]["observed"] == "101/100"


def test_probe_commands(capsys, tmp_path):
    code, out, _ = run(["probe", "wcp", "--space", "euclidean_plane", "--family", "radial", "--kmax", "10"], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "NO_VIOLATION_FOUND"
    code, out, _ = run(["probe", "wcp", "--space", "phi_sequence", "--family", "spike", "--kmax", "10"], capsys)
    assert code == 3
    dest = tmp_path / "cont.csv"
    code, _, _ = run(["probe", "continuity", "--space", "closed_punctured_x2", "--x", "0,0", "--t", "1",
                      "--direction", "left", "--format", "csv", "--output", str(dest), "--plot"], capsys)
    assert code == 3
    assert dest.read_text().startswith("eps,h")
    assert (tmp_path / "cont.svg").read_bytes().startswith(b"<?xml")
    code, out, _ = run(["estimate", "scp", "--space", "bounded_line", "--t-grid", "1/2,0.9,99/100",
                        "--eps-grid", "1/10000"], capsys)
    assert code == 3 and json.loads(out)["params"]["divergence_flag"] is True
    code, out, _ = run(["estimate", "scp", "--space", "euclidean_plane", "--t-grid", "1/2,1,2",
                        "--eps-grid", "1/10,1/100"], capsys)
    assert code == 0


def test_space_config_file(capsys, tmp_path):
    cfg = tmp_path / "space.json"
    cfg.write_text(json.dumps({"space": "discrete", "params": {"labels": 3}}))
    code, out, _ = run(["probe", "continuity", "--config", str(cfg), "--x", "2", "--t", "1",
                        "--direction", "right"], capsys)
    assert code == 0 and json.loads(out)["params"]["x"] == 2
    code, _, err = run(["probe", "wcp", "--space", "discrete", "--params", '{"labels": 1}',
                        "--family", "neighbor"], capsys)
    assert code == 2 and "BAD_PARAMS" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["probe", "wcp", "--family", "spike"],
        ["probe", "continuity", "--space", "discrete", "--t", "1", "--direction", "up"],
        ["repro", "example1", "--kmax", "4"],
        ["probe", "wcp", "--space", "phi_sequence", "--family", "spike", "--kmax", "2"],
        ["repro", "x1", "--plot"],
    ],
)
def test_usage_errors_print_grammar(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1
    assert GRAMMAR in err


@pytest.mark.parametrize(
    "argv",
    [
        ["probe", "wcp", "--space", "hilbert", "--family", "x"],
        ["probe", "wcp", "--space", "discrete", "--family", "nope"],
        ["probe", "continuity", "--space", "punctured_plane_x1", "--x", "0.5,0", "--t", "1", "--direction", "left"],
        ["repro", "example1", "--format", "svg"],
        ["repro", "theorem7", "--eps", "1/10"],
    ],
)
def test_runtime_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err.startswith("corona-lab:")


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "corona_lab.cli", "spaces"], capture_output=True, text=True)
    assert proc.returncode == 0 and "phi_sequence" in proc.stdout
