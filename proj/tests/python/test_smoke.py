import json
from pathlib import Path

import jsonschema
import pytest

import oversamp

ROOT = Path(__file__).resolve().parents[2]
DATA = ROOT / "data"
SCHEMA = json.loads((ROOT / "schema" / "descriptor.schema.json").read_text())


def descriptor(order=3, r=4, s=5, **options):
    return {
        "specVersion": 1,
        "generator": {"kind": "bspline", "order": order},
        "system": {"kind": "identity"},
        "r": r,
        "s": s,
        "options": options,
    }


@pytest.mark.parametrize("path", sorted(DATA.glob("*.json")), ids=lambda p: p.name)
def test_data_descriptors_match_schema(path):
    jsonschema.validate(json.loads(path.read_text()), SCHEMA)


def test_analyze_reference_problem():
    rep = oversamp.analyze(DATA / "bspline3_r4_s5.json")
    assert rep["exists"] is True
    assert rep["problem"]["r"] == 4


def test_analyze_without_filters():
    assert oversamp.analyze(DATA / "zigzag_r2_s3.json")["exists"] is False


def test_invalid_problem_raises():
    with pytest.raises(oversamp.OversampError):
        oversamp.analyze(DATA / "invalid_s_le_r.json")
    with pytest.raises(ValueError):
        oversamp._oversamp.analyze("{ not json", 0)


def test_solve_reference_problem():
    out = oversamp.solve(descriptor())
    assert out["exists"] is True
    inv = out["inverse"]
    assert inv["nu"] == 1
    assert inv["residualNorm"] < 1e-10
    assert out["filters_csv"].splitlines()[0] == "channel,exponent,coefficient"


def test_solve_without_filters():
    out = oversamp.solve(DATA / "zigzag_r2_s3.json")
    assert out == {"exists": False}


def test_verify_and_scan():
    rep = oversamp.verify(descriptor(seed=3), trials=10)
    assert len(rep["perTrial"]) == 10
    assert rep["maxError"] < 1e-8
    assert oversamp.verify(descriptor(), trials=0)["perTrial"] == []
    scan = oversamp.scan(descriptor())
    assert scan["alphaHat"] > 0
    assert scan["minRank"] == 4


def test_cli_round_trip():
    code, out, err = oversamp.run_cli(["analyze", str(DATA / "bspline3_r4_s5.json")])
    assert code == 0
    assert json.loads(out)["exists"] is True
    assert err == ""
    assert oversamp.run_cli(["analyze", str(DATA / "zigzag_r2_s3.json")])[0] == 3
