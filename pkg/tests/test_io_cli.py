import json

import pytest

from coxcalc import cli
from coxcalc.io import SchemaError, document_to_json, dumps, load_document, parse_document, read_json
from helpers import DATA, EXAMPLES, TABLES


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def ex(name):
    return DATA / "examples" / f"{name}.json"


@pytest.mark.parametrize("path", EXAMPLES, ids=lambda p: p.stem)
def test_round_trip_fixpoint(path):
    first = document_to_json(load_document(path))
    second = document_to_json(parse_document(json.loads(dumps(first))))
    assert dumps(first) == dumps(second)


def test_schema_errors():
    with pytest.raises(SchemaError):
        parse_document({"kind": "presentation", "variables": ["T1"]})
    with pytest.raises(SchemaError):
        parse_document({"kind": "unknown"})


def test_report_json_and_text(capsys, tmp_path):
    code, out, _ = run(capsys, "report", ex("delpezzo"))
    assert code == 0
    data = json.loads(out)
    assert data["canonical_class"] == [0, -3] and data["Pic"]["index"] == 3
    code, out, _ = run(capsys, "report", ex("delpezzo"), "--format", "text")
    assert code == 0 and "Pic" in out
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "report", ex("delpezzo"), "--out", target)
    assert code == 0 and out == "" and json.loads(target.read_text()) == data


def test_output_is_byte_identical(capsys):
    for argv in (["gitfan", ex("k6_torus3")], ["bunches", ex("delpezzo")], ["modify", ex("p2_modification")]):
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b and a


def test_gitfan_svg_is_deterministic(capsys, tmp_path):
    first, second = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(capsys, "gitfan", ex("delpezzo"), "--svg", first)[0] == 0
    assert run(capsys, "gitfan", ex("delpezzo"), "--svg", second)[0] == 0
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text().lstrip().startswith("<?xml")
    assert run(capsys, "gitfan", ex("k6_torus3"), "--svg", tmp_path / "c.svg")[0] == 0


def test_orbit_cones_and_chamber_flag(capsys):
    code, out, _ = run(capsys, "orbit-cones", ex("delpezzo"))
    assert code == 0 and len(json.loads(out)["orbit_cones"]) == 11
    code, out, _ = run(capsys, "report", ex("delpezzo"), "--chamber", "0,1")
    assert code == 0


def test_intersect_default_and_classes(capsys):
    code, out, _ = run(capsys, "intersect", ex("delpezzo"))
    assert code == 0 and json.loads(out)["value"] == 6
    code, out, _ = run(capsys, "intersect", ex("delpezzo"), "--classes", "0,3;0,3")
    assert json.loads(out)["value"] == 6


def test_modify_and_kstar(capsys):
    code, out, _ = run(capsys, "modify", ex("p2_modification"))
    data = json.loads(out)
    assert code == 0 and data["presentation"]["relations"] == ["T1*Tinf + T2^2 + T3*T4"]
    code, out, _ = run(capsys, "modify", ex("p2_modification"), "--center", "1,2", "--coefficients", "1,1")
    assert code == 2
    code, out, _ = run(capsys, "kstar", "resolve", ex("a2_delpezzo"))
    data = json.loads(out)
    assert code == 0 and data["minus_two_configuration"] == "A2"
    assert [s["modify_check"] for s in data["steps"]] == ["agrees", "agrees"]


def test_exit_code_schema(capsys, tmp_path):
    assert run(capsys, "report", tmp_path / "missing.json")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "presentation", "variables": ["T1"]}))
    assert run(capsys, "report", bad)[0] == 1
    assert run(capsys, "nonsense")[0] == 1


def test_exit_code_math(capsys):
    code, _, err = run(capsys, "report", ex("k2_hyperbolic"))
    assert code == 2 and "coxcalc:" in err


def test_exit_code_size_guard(capsys, monkeypatch):
    monkeypatch.setenv("COXCALC_SIZE_GUARD", "3")
    assert run(capsys, "bunches", ex("delpezzo"))[0] == 3


def test_verify_tables(capsys, tmp_path):
    for path in TABLES:
        code, out, _ = run(capsys, "verify", path, "--jobs", "1")
        data = json.loads(out)
        assert code == 0 and data["passed"] == data["total"]
    table = read_json(TABLES[0])
    table["rows"][0]["expected"]["anticanonical_degree"] = 9
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(table))
    code, out, _ = run(capsys, "verify", broken, "--jobs", "1", "--format", "text")
    assert code == 4
    assert out.splitlines()[0].startswith("FAIL fano3folds-1")
