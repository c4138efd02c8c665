import json

import pytest

from curvstruct.checks import all_passed
from curvstruct.corpus import CORPUS, load_corpus
from curvstruct.report import analyze, component_table, report_document, report_json, verify_suite


@pytest.mark.parametrize("name", [n if n != "random_n4" else pytest.param(n, marks=pytest.mark.slow)
                                  for n in CORPUS])
def test_corpus_passes_verify_suite(name):
    checks = verify_suite(load_corpus(name))
    assert all_passed(checks), [c.name for c in checks if not c.passed]


def test_component_table_keeps_one_representative(example):
    table = component_table(example.R.comps, "curvature")
    assert sorted(table) == ["1,2,1,2", "3,4,3,4"]
    assert component_table(example.S.comps, "symmetric") == {
        f"{i},{i}": str(example.S[i - 1, i - 1]) for i in range(1, 5)}


def test_report_document_for_example():
    analysis = analyze(load_corpus("paper_example"), numeric=False)
    doc = report_document(analysis)
    assert doc["numeric_checks"] == {"skipped": True}
    assert doc["manifest"]["metric"]["1,1"] == "x2"
    assert "x1 + x2" in doc["excluded_loci"] and "x1" in doc["excluded_loci"]
    names = {t["name"] for t in doc["theorems"]}
    assert "W-SGK transfer" in names and "P-SGK transfer" in names
    for key in ("HGK", "WGK", "S-K", "einstein", "quasi_einstein"):
        assert doc["structures"][key]["verdict"] == "fails"
    for key in ("SGK", "S-GK", "roter", "ein2", "semisymmetry"):
        assert doc["structures"][key]["verdict"] == "holds"
    assert json.loads(report_json(analysis)) == json.loads(json.dumps(doc))


def test_report_floats_use_fixed_format():
    analysis = analyze(load_corpus("flat4"), structures=["k"])
    numeric = report_document(analysis)["numeric_checks"]
    assert numeric["step"] == "1.000e-04" and numeric["tolerance"] == "1.000e-06"
    assert set(numeric["max_relative_error"].values()) == {"0.000e+00"}


def test_parameter_naming_with_several_generators():
    # R = 0 on flat space, so the Roter coefficients form a 2-parameter family
    doc = report_document(analyze(load_corpus("flat4"), structures=["roter"], numeric=False))
    family = doc["structures"]["roter"]["family"]
    assert family["directions"][0]["parameters"] == ["theta_1", "theta_2"]
    assert family["null_dimensions"] == [2]
