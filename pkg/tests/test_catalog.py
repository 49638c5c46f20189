import json

import pytest

from fanohilbert.catalog import (
    catalog_get,
    catalog_list,
    load_polytope,
    polar_matches,
    polytope_from_json,
    verify_entry,
)
from fanohilbert.errors import DomainError, ValidationError
from fanohilbert.expansion import coefficient_gradients, span_report
from fanohilbert.polytope import validate


def test_catalog_names():
    assert catalog_list() == ["B2", "C2", "CP1", "CP1^3", "CP2xCP1", "CP3", "D2", "dP8"]


def test_unknown_entry():
    with pytest.raises(DomainError):
        catalog_get("C5")


def test_every_entry_validates_and_has_provenance(entry):
    assert validate(entry.polytope).passed
    assert entry.expected.get("provenance")


def test_expected_polar_matches(entry):
    if "polar" in entry.expected:
        assert polar_matches(entry.polar, entry.expected["polar"])


def test_polar_mismatch_is_an_error():
    data = catalog_get("dP8").to_json()
    data["polar"] = {"vertices": [[2, -1], [0, 1], [-1, 1], [-1, -2]]}
    with pytest.raises(ValidationError):
        polytope_from_json(data)


def test_dim_w_annotations():
    for entry in map(catalog_get, catalog_list()):
        if entry.dim_W is None:
            continue
        rep = span_report(coefficient_gradients(entry.polar, None, -1), range(-4, 0))
        if entry.dim_W == 0:
            assert rep.rank == 0
        elif entry.dim_W == 1:
            assert rep.rank == 1
        assert entry.expected.get("rank", rep.rank) == rep.rank


def test_verify_entry(entry):
    checks = verify_entry(entry)
    assert checks and all(checks.values()), {k: v for k, v in checks.items() if not v}


def test_load_polytope_from_file(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"name": "t", "dim": 2, "vertices": [[1, 0], [0, 1], [-1, -1]]}))
    P, entry = load_polytope(str(path))
    assert entry is None and P.m == 2
    with pytest.raises(DomainError):
        load_polytope(str(tmp_path / "missing.json"))
