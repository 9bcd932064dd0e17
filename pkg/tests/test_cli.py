import json
import subprocess
import sys
from fractions import Fraction

import pytest

from k3sandwich.cli import main, run


def _strings(obj):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _strings(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _strings(v)
    elif isinstance(obj, str):
        yield obj
    else:
        # bare JSON numbers would lose exactness
        assert isinstance(obj, bool) or obj is None, obj


def test_lemma():
    code, out = run(["lemma", "--series", "1", "--max", "30"])
    assert code == 0 and out["agree"] is True and out["counterexamples"] == []


def test_verify_series3_n8():
    code, out = run(["verify", "--series", "3", "--n", "8"])
    assert code == 0 and out["pass"] is True
    stage = {s["name"]: s for s in out["stages"]}["iii_enhancement"]
    assert stage["values"]["section_height"] == "16/15"


def test_verify_with_section():
    code, out = run(["verify", "--series", "2", "--n", "4", "--alpha", "1", "--w", "0,0,1"])
    assert code == 0
    heights = {s["name"]: s["values"] for s in out["stages"]}
    assert heights["ii_height"]["height"] == "8/7"
    assert heights["vi_halving"]["height"] == "4/7"


def test_fibers_family():
    code, out = run(["fibers", "--family", "2"])
    assert code == 0 and out["euler"] == "24"
    assert {f["type"] for f in out["fibers"]} == {"I14", "I2", "I1"}


def test_height_command():
    code, out = run(["height", "--form", "extended", "--a=-1,-1,0,0,1", "--b", "0,1",
                     "--px", "1", "--py", "0,0,1"])
    assert code == 0 and out["height"] == "8/7"


def test_lattice_disc_form():
    code, out = run(["lattice", "disc-form", "--gram", "[[-4,-1],[-1,-4]]"])
    assert code == 0 and out["det"] == "15" and out["form"]["orders"] == ["15"]


@pytest.mark.parametrize("argv,code", [
    (["verify", "--series", "1", "--n", "3"], 2),
    (["bogus"], 2),
    (["fibers", "--form", "short", "--a", "0", "--b", "0"], 2),
    (["verify", "--series", "2", "--n", "5", "--alpha", "1", "--w", "0,0,1"], 1),
])
def test_exit_codes(argv, code):
    got, out = run(argv)
    assert got == code
    if code == 2:
        assert "error" in out


def test_main_prints_json(capsys):
    assert main(["lemma", "--series", "2", "--max", "20"]) == 0
    assert json.loads(capsys.readouterr().out)["command"] == "lemma"


def test_deterministic_output():
    cmd = [sys.executable, "-m", "k3sandwich.cli", "verify", "--series", "3", "--n", "8"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


@pytest.mark.parametrize("argv", [
    ["verify", "--series", "2", "--n", "4", "--alpha", "1", "--w", "0,0,1"],
    ["fibers", "--family", "3"],
    ["lattice", "disc-form", "--gram", "[[-2,-1],[-1,-4]]"],
])
def test_values_are_exact_strings(argv):
    _, out = run(argv)
    out.pop("version")
    for s in _strings(out):
        if s and s[0] in "-0123456789":
            Fraction(s)
