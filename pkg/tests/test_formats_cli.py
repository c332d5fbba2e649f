import json
from pathlib import Path

import pytest

from yangbaxter import algebras as A
from yangbaxter import coalgebra as C
from yangbaxter import racks as R
from yangbaxter import ybe as Y
from yangbaxter.cli import main
from yangbaxter.errors import InputError
from yangbaxter.formats import (
    algebra_from_json_obj,
    algebra_to_json_obj,
    coalgebra_from_json_obj,
    coalgebra_to_json_obj,
    dumps,
    load_json,
    operator_from_json_obj,
    operator_to_json_obj,
    rack_from_json_obj,
    rack_to_json_obj,
)
from yangbaxter.linalg import Mat

DATA = Path(__file__).resolve().parent.parent / "data"


def test_round_trips():
    for alg in (A.nilpotent3(), A.two_dim_leibniz(4), A.octonion_3leibniz()):
        assert algebra_from_json_obj(json.loads(dumps(algebra_to_json_obj(alg)))) == alg
    for r in (R.conjugation_rack(), R.z4_module_3rack()):
        assert rack_from_json_obj(json.loads(dumps(rack_to_json_obj(r)))) == r
    tr = C.linearize_3rack(R.z4_module_3rack())
    back = coalgebra_from_json_obj(json.loads(dumps(coalgebra_to_json_obj(tr))))
    assert back.t == tr.t and back.ttilde == tr.ttilde and back.coalg == tr.coalg
    op = Y.solution_3lei_fundamental(A.final_3leibniz_2d())
    assert operator_from_json_obj(json.loads(dumps(operator_to_json_obj(op)))) == op


def test_algebra_json_is_one_based():
    obj = algebra_to_json_obj(A.nilpotent3())
    assert {"in": [2, 3, 3], "out": [{"basis": 1, "coeff": "1"}]} in obj["brackets"]


def test_bad_inputs(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 2,\n "arity": }')
    with pytest.raises(InputError, match="line 2"):
        load_json(p)
    with pytest.raises(InputError):
        algebra_from_json_obj({"dim": 2, "arity": 2, "brackets": [{"in": [1, 3], "out": []}]})
    with pytest.raises(InputError):
        algebra_from_json_obj({"dim": 2, "arity": 2, "brackets": [{"in": [1, 1], "out": [{"basis": 1, "coeff": 0.5}]}]})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_algebra_file(capsys):
    code, out, _ = run(capsys, "verify", "--algebra", str(DATA / "nil3.json"))
    assert code == 0
    assert out.strip() == "PASS 3-Leibniz (243 tuples checked)"


def test_verify_failure_exit_1(tmp_path, capsys):
    obj = algebra_to_json_obj(A.nilpotent3())
    obj["brackets"].append({"in": [1, 3, 3], "out": [{"basis": 3, "coeff": "1"}]})
    p = tmp_path / "corrupt.json"
    p.write_text(dumps(obj))
    code, out, _ = run(capsys, "verify", "--algebra", str(p))
    assert code == 1 and out.startswith("FAIL 3-Leibniz") and "witness" in out


def test_input_errors_exit_2(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{")
    code, _, err = run(capsys, "verify", "--algebra", str(p))
    assert code == 2 and "line 1" in err
    code, _, _ = run(capsys, "verify", "--algebra", str(tmp_path / "missing.json"))
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "--bogus"])
    assert info.value.code == 2


def test_shape_mismatch_exit_2(tmp_path, capsys):
    p = tmp_path / "op.json"
    p.write_text(json.dumps({"rows": 2, "cols": 2, "entries": [["1", "0"], ["0"]]}))
    code, _, _ = run(capsys, "verify", "--operator", str(p))
    assert code == 2


def test_build_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "e3.json"
    code, _, err = run(capsys, "build", "--builder", "central-extension", "--algebra", "builtin:E3",
                       "--subst", "w12=1", "-o", str(out))
    assert code == 0 and err.startswith("PASS")
    prov = json.loads(out.read_text())["provenance"]
    assert prov["builder"] == "central-extension" and "basis_order" in prov
    code, stdout, _ = run(capsys, "verify", "--operator", str(out))
    assert code == 0 and stdout.startswith("PASS Yang-Baxter")


def test_build_non_cocycle_exit_1(capsys):
    code, _, err = run(capsys, "build", "--builder", "central-extension", "--algebra", "builtin:E2", "--subst", "w12=3")
    assert code == 1 and "cocycle" in err


def test_build_records_source_hash(tmp_path, capsys):
    out = tmp_path / "o.json"
    run(capsys, "build", "--builder", "trilinear-rack", "--rack", str(DATA / "z4_module_3rack.json"), "-o", str(out))
    prov = json.loads(out.read_text())["provenance"]
    assert len(prov["source_sha256"]) == 64


def test_slow_gate(capsys):
    code, _, err = run(capsys, "build", "--builder", "tensor-square", "--algebra", "builtin:octonion")
    assert code == 2 and "--slow" in err


def test_reproduce_and_export(tmp_path, capsys):
    code, out, _ = run(capsys, "reproduce", "matrix-4x4")
    assert code == 0 and "MATCH reference" in out
    code, out, _ = run(capsys, "reproduce", "exp3-nilpotent-table")
    assert "T(e3,e3,e3) = 1/2·e1 + e2 + e3" in out
    code, out, _ = run(capsys, "export", "matrix-4x4", "--format", "csv")
    assert out.splitlines() == ["1,0,0,1", "0,0,1,0", "0,1,0,0", "0,0,0,1"]
    p = tmp_path / "m25.json"
    run(capsys, "export", "matrix-25x25", "-o", str(p))
    obj = json.loads(p.read_text())
    assert sum(len(r) for r in obj["entries"]) == 625
    assert Mat.from_json_obj(obj) == Y.solution_3lei_fundamental(A.final_3leibniz_2d()).matrix
    code, out, _ = run(capsys, "export", "diff-25x25")
    diff = json.loads(out)
    assert isinstance(diff, list) and {d["col"] for d in diff} == {13}


def test_csv_export_round_trip(tmp_path, capsys):
    p = tmp_path / "e2.csv"
    run(capsys, "export", "matrix-9x9-E2", "--format", "csv", "-o", str(p))
    assert Mat.from_csv(p.read_text()) == main_artifact("matrix-9x9-E2")


def main_artifact(target):
    from yangbaxter.reproduce import run_target
    return run_target(target).artifact.matrix


def test_compare_against_printed(tmp_path, capsys):
    p = tmp_path / "m.json"
    run(capsys, "export", "matrix-9x9-E3", "-o", str(p))
    code, out, _ = run(capsys, "compare", str(p), "matrix-9x9-E3")
    assert code == 0 and out.strip() == "MATCH reference"
    code, out, _ = run(capsys, "compare", str(p), "matrix-9x9-E3", "--subst", "c1=11")
    assert code == 1 and out.startswith("DIFF")


def test_json_reproduce_is_parseable(capsys):
    code, out, _ = run(capsys, "reproduce", "matrix-9x9-E1", "--json")
    rec = json.loads(out)
    assert code == 0 and rec[0]["target"] == "matrix-9x9-E1" and rec[0]["diff"] == []
