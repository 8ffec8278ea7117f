"""
Tests for 'qcdyn search'
"""
import json

from pytest import raises

from qcdyn.cli import CommandLineError
from qcdyn.cli.search import run_search
from qcdyn.fileformats import read_system


def test_search_writes_witness(tmp_path):
    output = tmp_path / "witness.txt"
    outjson = tmp_path / "witness.json"
    result = run_search(["DOp", "!TTp", "T2"], n_max=3, output=str(output), json=str(outjson))
    assert result.found
    system = read_system(output)
    assert system.f == (0, 0)
    assert system.space.is_discrete()
    with open(outjson) as f:
        data = json.load(f)
    assert data["found"]
    assert data["vector"]["DOp"] and not data["vector"]["TTp"]
    assert data["witness"]["map"]["image"] == [0, 0]


def test_search_without_witness(capsys):
    result = run_search(["perfect", "T2"], n_max=3)
    assert not result.found
    assert "No witness for perfect T2 with 1 to 3 points (800 systems checked)" in capsys.readouterr().err


def test_search_unknown_predicate():
    with raises(CommandLineError):
        run_search(["TT", "!bogus"], n_max=2)
