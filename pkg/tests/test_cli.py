import io
import json
import re

import pytest

from manifold_sets.cli import run
from manifold_sets.homology import builtin, descriptor_to_dict, dump_descriptor


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def sphere9(tmp_path):
    path = tmp_path / "sphere9.json"
    dump_descriptor(builtin("sphere", [9]), path)
    return path


def test_lpoly():
    code, out, _ = call("lpoly", "--k", "2")
    assert code == 0
    assert out.strip() == "L_2 = 7/45 p2 - 1/45 p1^2; c_2 = 45"


def test_lpoly_cap():
    code, _, err = call("lpoly", "--k", "20")
    assert code == 1 and "cap" in err


def test_theorem_c():
    code, out, _ = call("theorem-c", "--r", "3", "--g", "6", "--k", "1")
    assert code == 0
    assert "0 → Z → S → (Z/2)^3 → 0" in out
    assert re.search(r"true.*\n.*true", out)
    doc = json.loads(call("--format", "json", "theorem-c", "--r", "3", "--g", "6", "--k", "1")[1])
    assert doc["structure_set_infinite"] is True
    assert doc["polarized_manifold_set_size_one"] is True


def test_decide_file(sphere9):
    code, out, _ = call("decide", "--file", str(sphere9))
    assert code == 0
    assert out.startswith("FINITE (")
    assert "no nonzero H^{4i}, 0<4i<9" in out


def test_unknown_subcommand():
    assert call("frobnicate")[0] == 2


def test_mutually_exclusive_sources(sphere9):
    assert call("decide", "--file", str(sphere9), "--builtin", "sphere:9")[0] == 2
    assert call("decide")[0] == 2


def test_missing_file(tmp_path):
    code, out, err = call("decide", "--file", str(tmp_path / "nope.json"))
    assert code == 1 and out == "" and "cannot read" in err


def test_invalid_descriptor_lists_violations(tmp_path):
    doc = descriptor_to_dict(builtin("cpn", [3]))
    doc["homology"] = doc["homology"][:2]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, err = call("structure", "--file", str(path))
    assert code == 1
    assert out == ""
    assert "PoincareDuality" in err or "FundamentalClass" in err


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, out, _ = call("normal", "--file", str(path))
    assert code == 1 and out == ""


def test_domain_error_prints_nothing_on_stdout():
    assert call("theorem-e", "--r", "3", "--g", "6", "--k", "2")[0] == 2
    code, out, err = call("divspec", "--offset", "1,0,0", "--basis", "2,0;0,2", "--count", "3")
    assert code == 1 and out == "" and err
    code, out, _ = call("divspec", "--offset", "1,0", "--basis", "2,0", "--count", "3")
    assert code == 1 and out == ""


def test_bad_matrix_is_usage_error():
    assert call("divspec", "--offset", "1,x", "--basis", "2", "--count", "3")[0] == 2


def test_validate_ok():
    code, out, _ = call("validate", "--builtin", "mrg:3,6,1")
    assert code == 0 and "valid" in out


INVOCATIONS = [
    ("lpoly", "--k", "3"),
    ("lpoly", "--k", "2", "--t", "4"),
    ("divspec", "--offset", "1,0", "--basis", "2,0;0,2", "--count", "4"),
    ("lgroup", "--n", "6", "--r", "3"),
    ("lgroup", "--n", "7", "--r", "4"),
    ("lgroup", "--n", "4"),
    ("normal", "--builtin", "mrg:3,6,1"),
    ("normal", "--builtin", "cpn:4"),
    ("structure", "--builtin", "mrg:4,7,1"),
    ("structure", "--builtin", "wg:3,1"),
    ("decide", "--builtin", "cpn:5"),
    ("validate", "--builtin", "torus:4"),
    ("theorem-b", "--builtin", "wg:2,1", "--condition", "parallelizable"),
    ("theorem-b", "--builtin", "cpn:3", "--condition", "lattice-pair", "--k", "1",
     "--lattice", "2", "--superlattice", "1"),
    ("theorem-c", "--r", "4", "--g", "7", "--k", "1"),
    ("theorem-e", "--r", "4", "--g", "7", "--k", "2", "--orders", "2,3,5"),
]


def _numbers(s):
    return set(re.findall(r"\d+", s))


@pytest.mark.parametrize("argv", INVOCATIONS, ids=lambda a: "-".join(a[:2]))
def test_text_numbers_appear_in_json(argv):
    code, text, _ = call(*argv)
    assert code == 0
    jcode, raw, _ = call("--format", "json", *argv)
    assert jcode == 0
    doc = json.loads(raw)
    missing = _numbers(text) - _numbers(json.dumps(doc, ensure_ascii=False))
    assert not missing, missing


def test_json_mirrors_structure():
    doc = json.loads(call("--format", "json", "structure", "--builtin", "mrg:3,6,1")[1])
    assert doc["sub"]["free_rank"] == 1
    assert doc["quotient"]["torsion"] == [2, 2, 2]
