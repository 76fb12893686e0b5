import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from addact.cli import run

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_golden_action_text():
    code, out, _ = call("ht", "action", "--algebra", "KS:3")
    assert code == 0
    assert out.strip() == "[z0 : z1 + a1*z0 : z2 + a1*z1 + (1/2 * a1^2 + a2)*z0]"


def test_ht_ideal_from_file_with_u():
    code, out, _ = call("--format", "json", "ht", "ideal", "--algebra", str(FIXTURES / "KS3.json"), "--u", "S", "S^2")
    assert code == 0
    assert json.loads(out)["generators"] == ["S1^2 - S2", "S1*S2"]


def test_row30_equation():
    code, out, _ = call("hyp", "equation", "--pair", "hyp-no30")
    assert out.strip() == "z0^2*z5 - z0*z1*z2 - z0*z3*z4 + 1/3 * z3^3"
    code2, out2, _ = call("hyp", "equation", "--pair", str(FIXTURES / "hyp-no30.json"))
    assert code == code2 == 0 and out == out2


def test_json_output_is_deterministic():
    a = call("--format", "json", "toric", "roots", "--fan", "P2")[1]
    b = call("toric", "roots", "--fan", str(FIXTURES / "P2.json"), "--format", "json")[1]
    assert a == b
    doc = json.loads(a)
    assert len(doc["roots"]) == 6
    assert a == json.dumps(doc, sort_keys=True, indent=2) + "\n"


def test_reduce_output_roundtrips(tmp_path):
    code, out, _ = call("--format", "json", "hyp", "reduce", "--pair", "corank1-a")
    assert code == 0
    doc = json.loads(out)
    path = tmp_path / "reduced.json"
    path.write_text(json.dumps(doc["pair"]))
    code, out2, _ = call("--format", "json", "hyp", "certify", "--pair", str(path))
    assert code == 0 and json.loads(out2)["nondegenerate"] is True
    assert call("hyp", "equation", "--pair", str(path))[1].strip() == doc["equation"]


@pytest.mark.parametrize("argv,key,value", [
    (["algebra", "orbits", "--algebra", str(FIXTURES / "row4.json")], "orbits", "INFINITE"),
    (["algebra", "invariants", "--algebra", "table1:30"], "is_gorenstein", True),
    (["toric", "exists", "--fan", "dP6"], "additive_action", False),
    (["toric", "count", "--fan", "wide"], "actions", 1),
    (["toric", "unique", "--fan", "P1xP1"], "unique", True),
    (["polytope", "inscribed", "--polytope", str(FIXTURES / "hexagon.json")], "inscribed", False),
    (["polytope", "very-ample", "--polytope", "square"], "status", "verified"),
])
def test_json_commands(argv, key, value):
    code, out, _ = call("--format", "json", *argv)
    assert code == 0
    assert json.loads(out)[key] == value


def test_exit_codes():
    assert call("toric", "count", "--fan", "dP6")[0] == 1
    code, _, err = call("toric", "roots", "--fan", "nosuch")
    assert code == 2 and "UNKNOWN_FIXTURE" in err
    assert call("catalog", "show")[0] == 2
    assert call("hyp", "bogus", "--pair", "hyp-no30")[0] == 2
    assert call("hyp", "form", "--pair", "hyp-no30")[0] == 0


def test_text_output_shapes():
    code, out, _ = call("catalog", "list")
    assert code == 0 and "hexagon" in out
    code, out, _ = call("toric", "lnd", "--fan", "P2", "--second")
    assert code == 0 and "x0*d/dx2 + x2*d/dx1" in out
    code, out, _ = call("polytope", "points", "--polytope", "triangle-21")
    assert code == 0 and "[2, 0]" in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "addact", "--format", "json", "toric", "cox", "--fan", "wps:2,3,5"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["degrees"] == {"x0": [2], "x1": [3], "x2": [5]}
