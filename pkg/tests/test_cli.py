import json

import pytest

from curvstruct.cli import main
from curvstruct.corpus import corpus_text


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_values(capsys):
    code, out, _ = run(capsys, "eval", "corpus:paper_example", "--tensor", "riemann", "--point", "(1,1,1,1)")
    assert code == 0 and "1,2,1,2 = 1/2" in out.splitlines()
    code, out, _ = run(capsys, "eval", "corpus:paper_example", "--tensor", "ricci", "--point", "1,1,1,1")
    assert "1,1 = -1/2" in out.splitlines()
    code, out, _ = run(capsys, "eval", "corpus:paper_example", "--tensor", "scalar", "--point", "1,1,1,1")
    assert out.strip() == "-2"


def test_eval_errors(capsys):
    assert run(capsys, "eval", "corpus:paper_example", "--tensor", "nope", "--point", "1,1,1,1")[0] == 1
    assert run(capsys, "eval", "corpus:paper_example", "--tensor", "ricci", "--point", "0,1,1,1")[0] == 3
    assert run(capsys, "eval", "corpus:paper_example", "--point", "1,1")[0] == 1


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "corpus:paper_example")
    assert code == 0 and "all checks passed" in out
    code, out, _ = run(capsys, "verify", "corpus:paper_example", "--flip-riemann-sign")
    assert code == 2 and "FAIL" in out


def test_corrupted_manifests(tmp_path, capsys):
    bad = tmp_path / "bad.tomlish"
    bad.write_text(corpus_text("paper_example").replace('g22 = "x1"', 'g22 = "x1 *"'))
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 1 and "bad.tomlish:" in err
    assert run(capsys, "verify", str(tmp_path / "missing.tomlish"))[0] == 1
    degenerate = tmp_path / "degenerate.tomlish"
    degenerate.write_text('[chart]\ncoordinates = "x, y, z"\n[metric]\ng11 = "x"\ng12 = "x"\ng22 = "x"\ng33 = "1"\n')
    assert run(capsys, "analyze", str(degenerate))[0] == 3
    assert run(capsys, "analyze", "corpus:nothing")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "corpus:flat4", "--points", "5", "--seed", "3")
    assert code == 0 and out.count("point ") == 5
    assert run(capsys, "crosscheck", "corpus:paper_example", "--point", "0,1,1,1")[0] == 3
    code, out, _ = run(capsys, "crosscheck", "corpus:paper_example", "--points", "1", "--tol", "1e-14")
    assert code == 2


def test_corpus_commands(capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0 and "paper_example" in out
    code, out, _ = run(capsys, "corpus", "show", "flat4")
    assert code == 0 and "[metric]" in out
    assert run(capsys, "corpus", "show", "nothing")[0] == 1


def test_analyze_json_is_deterministic(tmp_path, capsys):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "analyze", "corpus:paper_example", "--json", str(first))[0] == 0
    assert run(capsys, "analyze", "corpus:paper_example", "--json", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()
    doc = json.loads(first.read_text())
    assert sorted(doc) == ["curvature", "excluded_loci", "manifest", "numeric_checks", "structures", "theorems"]
    sgk = doc["structures"]["SGK"]
    assert sgk["verdict"] == "holds"
    direction = sgk["family"]["directions"][0]
    assert direction["parameters"] == ["theta_1"]
    assert "theta_1*(" in direction["general"]["Pi"]
    assert doc["curvature"]["riemann"]["1,2,1,2"] == "(x1 + x2)/(4*x1*x2)"
    assert doc["numeric_checks"]["passed"]
    assert all(t["outcome"] != "fail" for t in doc["theorems"])


def test_analyze_selection_and_tensor(capsys):
    code, out, _ = run(capsys, "analyze", "corpus:paper_example", "--structures", "hgk,wgk",
                       "--tensor", "w", "--no-numeric")
    assert code == 0
    assert "HGK" in out and "SGK " not in out
    assert run(capsys, "analyze", "corpus:paper_example", "--structures", "bogus")[0] == 1


@pytest.mark.parametrize("name", ["flat4", "conformal4"])
def test_analyze_space_forms(capsys, name):
    code, out, _ = run(capsys, "analyze", f"corpus:{name}", "--json", "-")
    doc = json.loads(out)
    assert doc["structures"]["SGK"]["verdict"] == "degenerate"
    assert doc["structures"]["einstein"]["verdict"] == "holds"
    assert doc["structures"]["roter"]["flags"]["proper"] is False
