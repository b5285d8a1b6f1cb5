import json
import subprocess
import sys

import pytest

from brauer_kit.algebras import matrix_algebra
from brauer_kit.cli import run
from brauer_kit.linalg import Matrix
from brauer_kit.projective import make_point, subspace_from_matrix
from brauer_kit.rings import PrimeField
from brauer_kit.severi_brauer import delta


def ok(argv):
    code, doc = run(argv)
    assert code == 0, doc
    assert doc["ok"] is True
    return doc


def test_azumaya_example():
    doc = ok(["azumaya-check", "--ring", "GF(5)", "--quaternion", "2,3"])
    assert doc["result"]["is_azumaya"] is True and doc["result"]["n"] == 1
    assert doc["verification"]["enveloping_rank"] == 16


def test_azumaya_builtins():
    assert ok(["azumaya-check", "--ring", "GF(5)", "--algebra", "builtin:M3"])["result"]["n"] == 2
    doc = ok(["azumaya-check", "--ring", "QQ", "--algebra", "builtin:Q(-1,-1)"])
    assert doc["result"]["is_azumaya"]
    doc = ok(["azumaya-check", "--ring", "GF(5)", "--algebra", "builtin:D4"])
    assert doc["result"] == {"is_azumaya": False, "n": None, "reason": "enveloping map not invertible"}


def test_param_conic_example():
    doc = ok(["param-conic", "--ring", "QQ", "--a", "1", "--b", "1", "--point", "1,1,0"])
    res = doc["result"]
    assert res["transform"] == "identity"
    assert res["pointed_conic"]["y0"] == "1" and res["pointed_conic"]["z0"] == "0"
    assert {"line": ["1", "0"], "conic": ["1", "1", "0"]} in res["table"]
    assert doc["verification"]["phi_psi_identity"] and doc["verification"]["psi_phi_identity"]


def test_param_conic_finite_is_exhaustive():
    doc = ok(["param-conic", "--ring", "GF(7)", "--a", "3", "--b", "5"])
    assert len(doc["result"]["table"]) == 8
    assert doc["verification"]["bijective"] is True


def test_delta_example():
    doc = ok(["delta", "--ring", "GF(5)", "--n", "1", "--point", "1,0"])
    F5 = PrimeField(5)
    mats = [Matrix.from_json(F5, m) for m in doc["result"]["basis_matrices"]]
    assert mats == [Matrix.unit(F5, 2, 0, 0), Matrix.unit(F5, 2, 0, 1)]
    assert doc["verification"] == {"right_ideal": True, "dim": 2, "roundtrip": True}


def test_delta_json_roundtrip_reparses():
    F5 = PrimeField(5)
    doc = ok(["delta", "--ring", "GF(5)", "--point", "1,2"])
    S = subspace_from_matrix(F5, Matrix.from_json(F5, doc["result"]["ideal"]))
    assert S == delta(F5, make_point(F5, (1, 2))).space
    back = ok(["delta-inv", "--ring", "GF(5)", "--ideal", json.dumps(doc["result"]["ideal"])])
    assert back["result"]["point"] == ["1", "2"]


def test_conjugator_and_aut_to_pgl():
    F5 = PrimeField(5)
    P0 = Matrix.of(F5, [[1, 1], [0, 1]])
    P0inv = Matrix.of(F5, [[1, 4], [0, 1]])
    fam = [(P0 @ Matrix.unit(F5, 2, i, j) @ P0inv).to_json() for i in range(2) for j in range(2)]
    doc = ok(["conjugator", "--ring", "GF(5)", "--matrix", json.dumps(fam)])
    assert Matrix.from_json(F5, doc["result"]["P"]) == P0
    sigma = Matrix.from_columns(F5, [Matrix.from_json(F5, m).flatten() for m in fam])
    doc = ok(["aut-to-pgl", "--ring", "GF(5)", "--n", "1", "--matrix", json.dumps(sigma.to_json())])
    assert Matrix.from_json(F5, doc["result"]["P"]) == P0


def test_split_and_chatelet():
    doc = ok(["split", "--ring", "GF(5)", "--algebra", "builtin:Q(1,1)"])
    assert doc["verification"] == {"hom_check": True, "bijective": True}
    doc = ok(["chatelet", "--ring", "GF(5)", "--algebra", "builtin:Q(2,3)"])
    assert doc["verification"]["bijective"] and doc["verification"]["ideals"] == 6


def test_algebra_as_json():
    text = json.dumps(matrix_algebra(PrimeField(3), 2).to_json())
    doc = ok(["find-ideal", "--ring", "GF(3)", "--algebra", text])
    assert doc["result"]["found"] is True


def test_find_ideal_unknown_over_Q():
    doc = ok(["find-ideal", "--ring", "QQ", "--algebra", "builtin:Q(-1,-1)", "--bound", "10"])
    assert doc["result"]["status"] == "unknown"


def test_conic_points():
    doc = ok(["conic-points", "--ring", "GF(7)", "--a", "3", "--b", "5"])
    assert doc["result"]["count"] == 8


def test_quat_split():
    doc = ok(["quat-split", "--ring", "GF(7)", "--b", "3"])
    assert doc["result"]["images"]["ij"]["entries"] == [["0", "3"], ["6", "0"]]
    assert doc["verification"] == {"hom_check": True, "bijective": True}


@pytest.mark.parametrize("argv,error", [
    (["azumaya-check", "--ring", "GF(4)", "--quaternion", "1,1"], "NotPrime"),
    (["delta", "--ring", "Z/9", "--point", "3,6"], "NoUnitCoordinate"),
    (["quat-split", "--ring", "GF(5)", "--b", "0"], "NotUnit"),
    (["delta-inv", "--ring", "GF(5)", "--ideal",
      '{"entries": [["1","0"],["0","0"],["0","1"],["0","0"]]}'], "NotInDeltaImage"),
    (["param-conic", "--ring", "GF(5)", "--a", "1", "--b", "1", "--point", "1,0,0"], "NotOnConic"),
    (["split", "--ring", "GF(5)", "--algebra", "builtin:D4"], "NotAzumaya"),
    (["aut-to-pgl", "--ring", "GF(5)", "--n", "1", "--matrix",
      '{"entries": [["1","0","0","0"],["0","0","1","0"],["0","1","0","0"],["0","0","0","1"]]}'],
     "NotAutomorphism"),
])
def test_domain_errors(argv, error):
    code, doc = run(argv)
    assert code == 2 and doc["ok"] is False and doc["error"] == error and doc["detail"]


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["delta", "--ring", "GF(5)"],
    ["delta", "--point", "1,0"],
    ["delta-inv", "--ring", "GF(5)", "--ideal", "{not json"],
    ["delta-inv", "--ring", "GF(5)", "--ideal", '{"rows": 2}'],
    ["aut-to-pgl", "--ring", "GF(5)", "--n", "x", "--matrix", "{}"],
])
def test_usage_errors(argv):
    code, doc = run(argv)
    assert code == 64 and doc["ok"] is False


def test_deterministic():
    argv = ["param-conic", "--ring", "QQ", "--a", "2", "--b", "-1", "--seed", "4"]
    assert run(argv) == run(argv)
    assert run(["selftest", "quick"]) == run(["selftest", "quick"])


def test_no_verify():
    doc = ok(["split", "--ring", "GF(5)", "--algebra", "builtin:M2", "--no-verify"])
    assert doc["verification"] == {}


def test_selftest_corrupted_table(tmp_path):
    obj = matrix_algebra(PrimeField(3), 2).to_json()
    obj["sc"][1][2][0] = "2"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    code, doc = run(["selftest", "quick", "--algebra", str(path)])
    assert code == 1 and doc["ok"] is False
    bad = doc["result"]["suites"][-1]
    assert not bad["passed"] and "(b1*b2)*b1" in bad["detail"]
    assert all(s["passed"] for s in doc["result"]["suites"][:-1])


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "brauer_kit", "delta", "--ring", "GF(5)",
                           "--n", "1", "--point", "1,0"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
    proc = subprocess.run([sys.executable, "-m", "brauer_kit", "delta"], capture_output=True, text=True)
    assert proc.returncode == 64


def test_extension_field_point():
    doc = ok(["delta", "--ring", "GF(2^2;1,1,1)", "--point", "[1,1],[0,1]"])
    assert doc["result"]["point"][0] == "[1,0]"
    assert doc["verification"]["roundtrip"] is True
