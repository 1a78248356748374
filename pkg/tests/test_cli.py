import json
import os
import subprocess
import sys

import jsonschema
import pytest
from click.testing import CliRunner

from semisep.cli import main
from semisep.corpus import HERE
from semisep.schemas import SCHEMAS

DOCS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "docs", "schemas")


def fixture(name):
    return os.path.join(HERE, name)


def run(*args):
    res = CliRunner().invoke(main, list(args))
    report = json.loads(res.stdout) if res.stdout.strip().startswith("{") else None
    return res.exit_code, report, res


def test_decide_collapse_fails_with_pair():
    code, rep, _ = run("cat", "decide", "--functor", fixture("collapse.json"), "--mode", "semiseparable")
    assert code == 1 and rep["status"] == "fails"
    assert sorted(rep["result"]["identified_pair"]) == ["f", "g"]


def test_ring_ext_projection_holds_with_witness():
    code, rep, _ = run("ring-ext", "--map", fixture("proj_kxk_to_k.json"))
    assert code == 0 and rep["status"] == "holds"
    assert rep["witness"]["E"] == [[1], [0]]
    assert rep["witness"]["z"] == [1, 0]
    assert rep["verification"]["ok"]


def test_hopf_monoid_fails():
    code, rep, _ = run("hopf", "verdict", "--bialgebra", fixture("monoid_1a.json"))
    assert code == 1 and rep["status"] == "fails"
    inf = rep["result"]["infeasibility"]
    assert inf["rank_A"] < inf["rank_Ab"]


def test_subprocess_exit_codes(tmp_path):
    base = [sys.executable, "-m", "semisep.cli"]
    r = subprocess.run(base + ["hopf", "verdict", "--bialgebra", fixture("H4.json")], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["status"] == "holds"
    r = subprocess.run(base + ["ring-ext", "--map", str(tmp_path / "missing.json")], capture_output=True, text=True)
    assert r.returncode == 2


def test_reports_match_schema():
    schema = SCHEMAS["report"]
    for args in (["cat", "decide", "--functor", fixture("pick_B.json")],
                 ["coring", "--coring", fixture("ideal_coring_kxk.json")],
                 ["bimodule", "--bimodule", fixture("k_kxk_first.json")],
                 ["coalg-map", "--map", fixture("include_a_in_xy.json")]):
        code, rep, _ = run(*args)
        assert code in (0, 1)
        jsonschema.validate(rep, schema)


def test_usage_errors():
    code, _, _ = run("ring-ext", "--map", fixture("proj_kxk_to_k.json"), "--mode", "bogus")
    assert code == 2
    code, rep, _ = run("coring")
    assert code == 2 and rep["status"] == "error"
    code, rep, _ = run("ring-ext", "--map", fixture("proj_kxk_to_k.json"), "--field", "Fp:8")
    assert code == 2


def test_bound_exceeded_is_indeterminate():
    code, rep, _ = run("cat", "decide", "--functor", fixture("collapse.json"), "--bound", "2")
    assert code == 3 and rep["status"] == "indeterminate"


def test_schema_error_has_pointer(tmp_path):
    doc = json.load(open(fixture("collapse.json")))
    doc["obj_map"] = "not an object"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, rep, res = run("cat", "decide", "--functor", str(bad))
    assert code == 2
    assert rep["result"]["error"]["pointer"] == "/obj_map"


def test_semantic_error_has_pointer(tmp_path):
    doc = json.load(open(fixture("collapse.json")))
    doc["obj_map"] = {k: "nowhere" for k in doc["obj_map"]}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, rep, _ = run("cat", "decide", "--functor", str(bad))
    assert code == 2
    assert rep["result"]["error"]["pointer"] == "/obj_map/A"


def test_invalid_category_fails_validation(tmp_path):
    doc = json.load(open(fixture("split_pair.json")))
    doc["comp"].pop("p∘s")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, rep, _ = run("cat", "validate", "--category", str(bad))
    assert code == 1 and rep["status"] == "fails"
    code, rep, _ = run("cat", "validate", fixture("split_pair.json"))
    assert code == 0 and rep["options"]["kind"] == "category"


def test_verify_only_round_trip(tmp_path):
    code, rep, res = run("ring-ext", "--map", fixture("unit_kxk_via_k.json"))
    assert code == 0
    path = tmp_path / "report.json"
    path.write_text(res.stdout)
    code, out, _ = run("--verify-only", str(path))
    assert code == 0 and out["ok"] and out["status_reproduced"] and out["witness_reproduced"]
    # tamper with the witness
    rep["witness"]["E"] = [[0, 0], [0, 0]]
    path.write_text(json.dumps(rep))
    code, out, _ = run("--verify-only", str(path))
    assert code == 1 and not out["ok"]
    # flip the status
    rep = json.loads(res.stdout)
    rep["status"] = "fails"
    rep["witness"] = None
    path.write_text(json.dumps(rep))
    code, out, _ = run("--verify-only", str(path))
    assert code == 1 and not out["status_reproduced"]


def test_verify_only_malformed(tmp_path):
    path = tmp_path / "r.json"
    path.write_text("{}")
    code, _, _ = run("--verify-only", str(path))
    assert code == 2
    code, _, _ = run("--verify-only", str(tmp_path / "missing.json"))
    assert code == 2


def test_witness_out(tmp_path):
    out = tmp_path / "w.json"
    code, rep, _ = run("coalg-map", "--map", fixture("merge_ab_to_x.json"), "--witness-out", str(out))
    assert code == 0
    w = json.loads(out.read_text())
    assert w["witness"] == rep["witness"] and w["command"] == "coalg-map"


def test_field_override():
    code, rep, _ = run("ring-ext", "--map", fixture("unit_k_to_dual.json"), "--field", "Fp:5",
                       "--mode", "separable")
    assert code == 0 and rep["options"]["field"] == "Fp:5"
    code, rep, _ = run("hopf", "verdict", "--bialgebra", fixture("H4.json"), "--field", "Fp:3")
    assert code == 0


def test_sweedler_coring_command():
    code, rep, _ = run("coring", "--sweedler", fixture("unit_k_to_kxk.json"))
    assert code == 0
    code, rep, _ = run("coring", "--sweedler", fixture("unit_k_to_dual.json"))
    assert code == 1


def test_adjunction_and_triple_commands():
    code, rep, _ = run("cat", "adjunction", "--adjunction", fixture("galois_chain.json"))
    assert code == 0 and rep["witness"] is not None
    code, rep, _ = run("cat", "triple", "--triple", fixture("split_triple.json"))
    assert code == 0


def test_determinism():
    args = ["bimodule", "--bimodule", fixture("k_kxk_first.json")]
    a = CliRunner().invoke(main, args).stdout
    b = CliRunner().invoke(main, args).stdout
    assert a == b


def test_hopf_build(tmp_path):
    out = tmp_path / "c3.json"
    code, rep, _ = run("hopf", "build", "--kind", "group_algebra", "--elements", "e,a,b",
                       "--table", "[[0,1,2],[1,2,0],[2,0,1]]", "--out", str(out))
    assert code == 0
    code, rep, _ = run("hopf", "verdict", "--bialgebra", str(out))
    assert code == 0 and rep["witness"]["S"] == [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    code, _, _ = run("hopf", "build", "--kind", "group_algebra", "--out", str(out))
    assert code == 2


def test_schema_files_are_current():
    names = sorted(f for f in os.listdir(DOCS) if f.endswith(".schema.json"))
    assert names == sorted("%s.schema.json" % k for k in SCHEMAS)
    for kind, schema in SCHEMAS.items():
        with open(os.path.join(DOCS, "%s.schema.json" % kind), encoding="utf-8") as fh:
            assert json.load(fh) == schema


@pytest.mark.parametrize("name", sorted(f for f in os.listdir(HERE) if f != "manifest.json"))
def test_fixtures_match_their_schema(name):
    with open(fixture(name), encoding="utf-8") as fh:
        doc = json.load(fh)
    jsonschema.validate(doc, SCHEMAS[doc["kind"]])
