"""
Tests for 'qcdyn interval'
"""
import io
import json

from pytest import raises

from qcdyn.cli import CommandLineError
from qcdyn.cli.interval import run_interval


def test_props_of_example31():
    out = io.StringIO()
    results = run_interval(builtin="example31", props=True, outfile=out)
    lines = out.getvalue().splitlines()
    assert lines[0] == "quasi-continuous: yes; continuous: no; discontinuity at 1/2; f²=f"
    assert lines[1] == (
        "quasi-continuous system: true (iterates repeat with preperiod 1 and period 1)"
    )
    assert results["props"]["discontinuities"] == ["1/2"]


def test_props_of_pwl_file():
    out = io.StringIO()
    results = run_interval(pwl="tests/data/non-qc-square.pwl", props=True, outfile=out)
    lines = out.getvalue().splitlines()
    assert lines[0] == "quasi-continuous: yes; continuous: no; discontinuity at 1/2, 3/4"
    assert lines[1] == "quasi-continuous system: false (f^2 fails at 0)"
    assert results["props"]["failing_iterate"] == 2


def test_hit_and_orbit():
    out = io.StringIO()
    results = run_interval(
        builtin="doubling", hit=["0", "1/8", "1/2", "1", "4"], orbit=["1/3", "2"], outfile=out
    )
    lines = out.getvalue().splitlines()
    assert lines[0] == "N+((0, 1/8), (1/2, 1)) up to 4: [3, 4]"
    assert lines[1] == "1/3 2/3 1/3"
    assert results["hits"] == [3, 4]


def test_certify(tmp_path):
    tsv = tmp_path / "hits.tsv"
    outjson = tmp_path / "results.json"
    out = io.StringIO()
    run_interval(
        builtin="tent",
        certify=[4, 8],
        returns=True,
        tsv=str(tsv),
        threads=1,
        json=str(outjson),
        outfile=out,
    )
    lines = out.getvalue().splitlines()
    assert lines == [
        "certificate: 16/16 pairs hit within horizon 8",
        "mesh intervals returning at least twice: 4/4",
    ]
    with open(tsv) as f:
        assert len(f.readlines()) == 17
    with open(outjson) as f:
        results = json.load(f)
    assert results["certificate"]["failing"] is None
    assert results["returns"]["2"][0] == 1


def test_errors():
    with raises(CommandLineError):
        run_interval(pwl="tests/data/does-not-exist.pwl", props=True)
    with raises(CommandLineError):
        run_interval(pwl="tests/data/discrete-shift.txt", props=True)
    with raises(CommandLineError):
        run_interval(builtin="tent", hit=["0", "x", "1/2", "1", "4"], outfile=io.StringIO())
    with raises(CommandLineError):
        run_interval(builtin="tent", certify=[1, 4], threads=1, outfile=io.StringIO())
