"""End-to-end CLI tests against checked-in golden files.

Regenerate the goldens with ``UPDATE_GOLDEN=1 pytest tests/test_cli.py``.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from lghodge.cli import build_parser, config_from_args, main

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
DATA = HERE / "data"
UPDATE = os.environ.get("UPDATE_GOLDEN") == "1"


@pytest.fixture(autouse=True)
def _no_color(monkeypatch):
    monkeypatch.setenv("LGHODGE_COLOR", "never")


def run_cli(args, capsys):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def check_golden(name: str, text: str) -> None:
    path = GOLDEN / name
    if UPDATE:
        path.write_text(text)
    assert path.exists(), f"missing golden {name}; run with UPDATE_GOLDEN=1"
    assert text == path.read_text()


CASES = [
    ("report_d5.txt", ["report", "--d", "5"], 0),
    ("report_d0.md", ["report", "--d", "0", "--format", "markdown"], 0),
    ("report_d9.json", ["report", "--d", "9", "--format", "json"], 0),
    ("report_all.json", ["report", "--all", "--format", "json"], 0),
    ("report_all.md", ["report", "--all", "--format", "markdown"], 0),
    ("surface_d4.txt", ["surface", "--d", "4"], 0),
    ("surface_d0.json", ["surface", "--d", "0", "--json"], 0),
    ("lattice_d6.txt", ["lattice", "--d", "6"], 0),
    ("lattice_d2.txt", ["lattice", "--d", "2"], 0),
    ("lattice_d1.txt", ["lattice", "--d", "1"], 0),
    ("lattice_d9.json", ["lattice", "--d", "9", "--json"], 0),
    ("les_relative_h2.txt", ["les", "solve", DATA / "relative_h2_d3.json"], 0),
    ("les_relative_h2.json", ["les", "solve", DATA / "relative_h2_d3.json", "--json"], 0),
    ("les_underdetermined.txt", ["les", "solve", DATA / "underdetermined.json"], 0),
    ("les_inconsistent.txt", ["les", "solve", DATA / "inconsistent.json"], 1),
    ("wf_3_1.txt", ["weight-filtration", DATA / "nilpotent_3_1.json", "--center", "2"], 0),
    ("wf_2_2.json", ["weight-filtration", DATA / "conjugated_2_2.json", "--center", "1", "--json"], 0),
    ("jordan_3_1.txt", ["jordan", DATA / "nilpotent_3_1.json"], 0),
    ("jordan_2_2.json", ["jordan", DATA / "conjugated_2_2.json", "--json"], 0),
]


@pytest.mark.parametrize("name,args,code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, args, code, capsys):
    got, out, _ = run_cli(args, capsys)
    assert got == code
    check_golden(name, out)


def test_report_all_json_has_ten_passing_records(capsys):
    code, out, _ = run_cli(["report", "--all", "--format", "json"], capsys)
    recs = json.loads(out)
    assert code == 0
    assert [r["d"] for r in recs] == list(range(10))
    assert all(r["checks"]["all_pass"] for r in recs)
    assert set(recs[3]) == {"d", "h", "f", "x", "checks"}


def test_lattice_d6_prints_det(capsys):
    _, out, _ = run_cli(["lattice", "--d", "6"], capsys)
    assert "det = -6" in out


def test_lattice_d2_flags_convention(capsys):
    _, out, _ = run_cli(["lattice", "--d", "2"], capsys)
    assert "modeling choice" in out


def test_jordan_not_nilpotent(capsys):
    code, out, err = run_cli(["jordan", DATA / "not_nilpotent.json"], capsys)
    assert code == 1 and out == ""
    assert "NotNilpotent" in err


def test_malformed_matrix_is_domain_error(capsys):
    code, _, err = run_cli(["jordan", DATA / "malformed.json"], capsys)
    assert code == 1 and "ParseError" in err


def test_missing_file(capsys):
    code, _, err = run_cli(["jordan", DATA / "nope.json"], capsys)
    assert code == 1 and "cannot read" in err


def test_center_too_small(capsys):
    code, _, err = run_cli(["weight-filtration", DATA / "nilpotent_3_1.json", "--center", "1"], capsys)
    assert code == 1 and "CenterTooSmall" in err


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["report"],
        ["report", "--d", "10"],
        ["report", "--d", "x"],
        ["report", "--d", "1", "--all"],
        ["report", "--d", "1", "--format", "yaml"],
        ["surface"],
        ["les"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(args, capsys):
    with pytest.raises(SystemExit) as exc:
        main(args)
    assert exc.value.code == 2
    capsys.readouterr()


def test_config_from_args():
    p = build_parser()
    cfg = config_from_args(p.parse_args(["report", "--all", "--format", "markdown"]))
    assert cfg.command == "report" and cfg.ds == tuple(range(10)) and cfg.fmt == "markdown"
    cfg = config_from_args(p.parse_args(["-vv", "surface", "--d", "3", "--json"]))
    assert cfg.ds == (3,) and cfg.fmt == "json" and cfg.verbosity == 2
    cfg = config_from_args(p.parse_args(["weight-filtration", "m.json", "--center", "2"]))
    assert cfg.center == 2 and cfg.path == Path("m.json")


def test_color_only_when_asked(monkeypatch, capsys):
    monkeypatch.setenv("LGHODGE_COLOR", "always")
    _, out, _ = run_cli(["report", "--d", "4"], capsys)
    assert "\033[32mpass" in out
    monkeypatch.setenv("LGHODGE_COLOR", "never")
    _, out, _ = run_cli(["report", "--d", "4"], capsys)
    assert "\033[" not in out


def test_json_is_byte_identical_across_processes():
    env = dict(os.environ, LGHODGE_COLOR="never", PYTHONHASHSEED="random")
    cmd = [sys.executable, "-m", "lghodge", "report", "--all", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, env=env, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, env=env, check=True).stdout
    assert a == b
    assert a == (GOLDEN / "report_all.json").read_bytes()


def test_subprocess_exit_codes():
    env = dict(os.environ, LGHODGE_COLOR="never")
    bad = subprocess.run(
        [sys.executable, "-m", "lghodge", "jordan", str(DATA / "not_nilpotent.json")],
        capture_output=True,
        text=True,
        env=env,
    )
    assert bad.returncode == 1 and "NotNilpotent" in bad.stderr
    usage = subprocess.run([sys.executable, "-m", "lghodge", "lattice"], capture_output=True, text=True, env=env)
    assert usage.returncode == 2
