import json
import math
import os
import pathlib
import subprocess

import pytest

import hirzebruch as hz

SCHEMAS = pathlib.Path(__file__).resolve().parents[2] / "docs" / "schemas"


def test_catalog_and_check():
    names = hz.catalog_names()
    assert len(names) >= 9
    doc = hz.catalog_emit("coxeter5")
    assert len(doc["lines"]) == 15
    rep = hz.check(doc)
    assert rep["pass"]
    assert rep["hirzebruch"]["n"] == 5
    assert rep["lattice"]["t_profile"] == {"2": 15, "3": 10, "5": 6}


def test_check_rejects_bad_input():
    doc = hz.catalog_emit("coxeter3")
    doc["lines"][0][0] = ["1/0"]
    with pytest.raises(hz.InputError):
        hz.check(doc)
    with pytest.raises(ValueError):
        hz.catalog_emit("nosuch")


def test_metric_angles():
    rep = hz.metric(hz.catalog_emit("coxeter4"))
    assert rep["pass"]
    (face,) = rep["face_types"]
    beta = math.pi * 2 / 3
    want = sorted([math.pi / 2] + [math.acos(math.cos(math.pi / k) / math.sin(beta / 2)) for k in (3, 4)],
                  reverse=True)
    got = [a["rad"] for a in face["angles"]]
    assert got == pytest.approx(want, abs=1e-12)


def test_consistency_and_selftest():
    rep = hz.consistency()
    assert [(s["d"], s["n"]) for s in rep["solutions"]] == [(3, 2), (4, 3), (5, 5)]
    st = hz.polygon_selftest(samples=50, seed=1)
    assert st["total_violations"] == 0


def test_search_small():
    assert hz.t_profile_solver(2) == [{2: 3, 3: 4}]
    two = hz.search(2)
    assert two["types_found"] == 1
    assert two["types"][0]["catalog_matches"] == ["coxeter3"]
    three = hz.search(3, mode="paper_pruned", jobs=2)
    assert three["types_found"] == 1
    assert "coxeter4" in three["types"][0]["catalog_matches"]


def test_sector_angle_closed_form():
    for n in range(2, 20):
        beta = math.pi * (n - 1) / n
        for k in range(3, min(2 * n, 8)):
            assert hz.sector_angle(k, n) == pytest.approx(
                math.acos(math.cos(math.pi / k) / math.sin(beta / 2)), abs=1e-12)
    with pytest.raises(ArithmeticError):
        hz.sector_angle(4, 2)


HIRZ = os.environ.get("HIRZ_EXE")


@pytest.mark.skipif(not HIRZ, reason="HIRZ_EXE not set")
@pytest.mark.parametrize(
    "schema,args",
    [
        ("catalog", ["catalog", "list"]),
        ("consistency", ["consistency"]),
        ("polygon-selftest", ["polygon", "selftest", "--samples", "20"]),
        ("search-certificate", ["search", "--n", "3", "--mode", "paper_pruned"]),
    ],
)
def test_cli_reports_match_schemas(schema, args):
    jsonschema = pytest.importorskip("jsonschema")
    out = subprocess.run([HIRZ, "--json", *args], capture_output=True, text=True, check=True).stdout
    jsonschema.validate(json.loads(out), json.loads((SCHEMAS / f"{schema}.schema.json").read_text()))


@pytest.mark.skipif(not HIRZ, reason="HIRZ_EXE not set")
def test_cli_file_reports_match_schemas(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    f = tmp_path / "c5.json"
    subprocess.run([HIRZ, "catalog", "emit", "coxeter5", "-o", str(f)], check=True, capture_output=True)
    jsonschema.validate(json.loads(f.read_text()), json.loads((SCHEMAS / "arrangement.schema.json").read_text()))
    for schema, cmd in (("check", "check"), ("metric", "metric")):
        out = subprocess.run([HIRZ, "--json", cmd, str(f)], capture_output=True, text=True, check=True).stdout
        jsonschema.validate(json.loads(out), json.loads((SCHEMAS / f"{schema}.schema.json").read_text()))
