import json
import subprocess
import sys
from fractions import Fraction

import pytest

from gcmirror.cli import main
from gcmirror.errors import ParseError
from gcmirror.gcs import Modulus, Role
from gcmirror.serialize import dumps, parse_modulus, structure_from_json, three_form_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# --- modulus grammar ---------------------------------------------------------

@pytest.mark.parametrize(
    "text, b, a",
    [
        ("i", 0, 1),
        ("2i", 0, 2),
        ("1/2+3i", Fraction(1, 2), 3),
        ("0.5+0.5i", Fraction(1, 2), Fraction(1, 2)),
        ("1+1i", 1, 1),
        ("-1/3 + i", Fraction(-1, 3), 1),
        ("+2*i", 0, 2),
        ("0.1i", 0, Fraction(1, 10)),
    ],
)
def test_parse_modulus(text, b, a):
    assert parse_modulus(text) == Modulus.complex(b, a)


@pytest.mark.parametrize("text", ["1-2i", "-i", "0i", "3", "", "1+", "i2", "1/0+i", "abc"])
def test_parse_modulus_rejects(text):
    with pytest.raises(ParseError):
        parse_modulus(text)


def test_parse_modulus_role():
    assert parse_modulus("i", Role.SYMPLECTIC_PARAMETER).role is Role.SYMPLECTIC_PARAMETER


# --- commands ----------------------------------------------------------------

def test_mirror_tau_json(capsys):
    code, out, _ = run(capsys, "mirror", "--tau", "1+1i", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"rho": {"re": "1/2", "im": "1/2"}, "role": "symplectic"}


def test_mirror_rho_text(capsys):
    code, out, _ = run(capsys, "mirror", "--rho", "1+i")
    assert code == 0 and out.strip() == "tau = 1+2i"


def test_global_format_flag(capsys):
    code, out, _ = run(capsys, "--format", "json", "mirror", "--rho", "2i")
    assert json.loads(out)["tau"] == {"re": "0", "im": "2"}


def test_mirror_parse_error(capsys):
    code, out, err = run(capsys, "mirror", "--tau", "1-2i", "--format", "json")
    assert code == 2
    assert "imaginary part must be positive" in json.loads(out)["error"]


def test_mirror_needs_one_modulus(capsys):
    assert run(capsys, "mirror")[0] == 2
    assert run(capsys, "mirror", "--tau", "i", "--rho", "i")[0] == 2


def test_transport_complex(capsys):
    code, out, _ = run(capsys, "transport", "--structure", "complex", "--modulus", "2+i", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["transported"]["matrix"] == [["-2", "0", "0", "5"], ["0", "-2", "-5", "0"],
                                             ["0", "1", "2", "0"], ["-1", "0", "0", "2"]]
    assert data["target"] == {"re": "2/5", "im": "1/5", "role": "symplectic"}
    assert data["classification"]["kind"] == "b_symplectic"


def test_transport_symplectic_scaled(capsys):
    code, out, _ = run(capsys, "transport", "--structure", "symplectic", "--modulus", "1+i",
                       "--f", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["f"] == "2"
    assert data["classification"]["kind"] == "complex"


def test_classify_identity_fails(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 2, "matrix": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}))
    code, out, _ = run(capsys, "classify", "--matrix", str(path), "--format", "json")
    assert code == 1
    assert json.loads(out)["reason"] == "J squared is not minus identity"


def test_classify_inline(capsys):
    m = [["-1", "0", "0", "1"], ["0", "-1", "-1", "0"], ["0", "2", "1", "0"], ["-2", "0", "0", "1"]]
    code, out, _ = run(capsys, "classify", "--matrix", json.dumps({"n": 2, "matrix": m}), "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["classification"] == {"kind": "b_symplectic", "omega": [["0", "1"], ["-1", "0"]],
                                      "B": [["0", "1"], ["-1", "0"]]}
    assert data["modulus"] == {"re": "1", "im": "1", "role": "symplectic"}


def test_classify_missing_file(capsys):
    assert run(capsys, "classify", "--matrix", "/nonexistent/x.json")[0] == 2


def test_classify_bad_shape(capsys):
    assert run(capsys, "classify", "--matrix", "[[1,2,3]]")[0] == 2


def test_bracket_flux(tmp_path, capsys):
    h = tmp_path / "h.json"
    h.write_text(json.dumps({"n": 4, "components": [[1, 2, 3, "1"]]}))
    code, out, _ = run(capsys, "bracket", "--u", "1,0,0,0,0,0,0,0", "--v", "0,1,0,0,0,0,0,0",
                       "--H", str(h), "--format", "json")
    assert code == 0
    assert json.loads(out)["bracket"] == ["0", "0", "0", "0", "0", "0", "1", "0"]


def test_bracket_without_flux(capsys):
    code, out, _ = run(capsys, "bracket", "--u", "[1, 2, 3, 4]", "--v", "5,6,7,8")
    assert code == 0 and out.strip() == "[0, 0, 0, 0]"


def test_bracket_mismatch(capsys):
    assert run(capsys, "bracket", "--u", "1,2", "--v", "1,2,3,4")[0] == 2


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "negative_involutivity", "--format", "json")
    data = json.loads(out)
    assert code == 0 and [r["suite"] for r in data["reports"]] == ["negative_involutivity"]


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2


def test_verify_seed_from_env(monkeypatch, capsys):
    monkeypatch.setenv("GCG_SEED", "7")
    code, out, _ = run(capsys, "verify", "--suite", "round_trip", "--format", "json")
    assert json.loads(out)["seed"] == 7
    code, out, _ = run(capsys, "verify", "--suite", "round_trip", "--seed", "11", "--format", "json")
    assert json.loads(out)["seed"] == 11


def test_verify_bad_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("GCG_SEED", "abc")
    code, out, _ = run(capsys, "verify", "--suite", "algebra", "--format", "json")
    assert code == 2
    assert "GCG_SEED" in json.loads(out)["error"]


def test_verify_failure_exit_code(monkeypatch, capsys):
    import gcmirror.verification as ver

    def failing(rng):
        s = ver.Suite("broken")
        s.check("always false", [1], lambda x: False)
        return s.report()

    monkeypatch.setitem(ver.SUITES, "broken", failing)
    code, out, _ = run(capsys, "verify", "--suite", "broken", "--format", "json")
    data = json.loads(out)
    assert code == 1 and not data["passed"]
    assert data["reports"][0]["counterexample"] == {"case": "always false", "input": "1"}


# --- serialization -----------------------------------------------------------

def test_structure_json_checks_n():
    with pytest.raises(ParseError):
        structure_from_json({"n": 3, "matrix": [[0] * 4] * 4})
    with pytest.raises(ParseError):
        structure_from_json({"n": 2, "matrix": [[0.5, 0, 0, 0]] * 4})


def test_three_form_json_forms():
    full = three_form_from_json([[[0] * 2] * 2] * 2)
    assert full.is_zero()
    comp = three_form_from_json({"n": 3, "components": [[1, 2, 3, "2/3"]]})
    assert comp.coeffs[0][1][2] == Fraction(2, 3)


def test_dumps_canonical():
    assert dumps({"b": 1, "a": ["1/2"]}) == '{\n  "a": [\n    "1/2"\n  ],\n  "b": 1\n}'


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gcmirror", "mirror", "--tau", "1+1i", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rho"] == {"re": "1/2", "im": "1/2"}
