import json
import shutil
import subprocess
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from conceptory.cli import main

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
PROOFS = CORPUS / "proofs"
GOLDEN = ROOT / "tests" / "golden"
TCC = str(CORPUS / "thing_class_classification.cno")

SCHEMA = json.loads(resources.files("conceptory").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_laws_text(capsys):
    code, out, _ = run(capsys, "laws", "--size", "1")
    assert code == 0
    assert "interchange" in out and out.rstrip().endswith("all asserted laws hold")


def test_laws_json_is_deterministic(capsys):
    argv = ("laws", "--size", "3", "--mode", "random", "--samples", "200", "--seed", "7",
            "--format", "json")
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a == b and a[0] == 0
    doc = json.loads(a[1])
    jsonschema.validate(doc, SCHEMA)
    assert "elapsed" not in a[1]


def test_laws_single_law_json(capsys):
    code, doc = run_json(capsys, "laws", "--size", "2", "--law", "prop3_literal")
    assert code == 0  # reported, not asserted
    (r,) = doc["laws"]
    assert r["law"] == "prop3_literal" and r["violation_count"] == 12 and not r["asserted"]


def test_laws_bad_config(capsys):
    code, _, err = run(capsys, "laws", "--size", "5")
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["laws", "--law", "nope"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2


def test_check_text_matches_golden(capsys):
    code, out, _ = run(capsys, "check", TCC)
    assert code == 0
    assert out == (GOLDEN / "thing_class_classification.judgments.txt").read_text()


def test_check_json(capsys):
    code, doc = run_json(capsys, "check", TCC)
    assert code == 0 and len(doc["judgments"]) == 23
    assert doc["rels"]["UpperBoundOfNumberRange.classified"] == [
        "UpperBoundOfNumberRange", "ArithmeticNumber"]


def test_check_undeclared_class(tmp_path, capsys):
    f = tmp_path / "bad.cno"
    f.write_text("class A\nrel f : A -> Missing\n")
    code, _, err = run(capsys, "check", f)
    assert code == 2 and "line 2" in err and "Missing" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "check", "/nonexistent/x.cno")
    assert code == 2 and "error" in err


def test_model_and_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "m.json"
    code, _, _ = run(capsys, "model", TCC, "--max", "6", "--nonempty", "--out", out)
    assert code == 0
    assert out.read_text() == (GOLDEN / "thing_class_classification.model.json").read_text()
    code, text, _ = run(capsys, "verify", TCC, out)
    assert code == 0 and "PASS: 23/23" in text
    code, doc = run_json(capsys, "verify", TCC, out)
    assert code == 0 and doc["passed"] and all(r["value"] for r in doc["judgments"])


def test_model_json(capsys):
    code, doc = run_json(capsys, "model", CORPUS / "shapes_oneof_abstract.cno", "--nonempty")
    assert code == 0 and doc["found"]


def test_model_unsat(capsys):
    path = CORPUS / "unsat_disjoint_subclass.cno"
    code, out, _ = run(capsys, "model", path, "--max", "3", "--nonempty")
    assert code == 1 and "UNSAT up to n=3" in out
    code, doc = run_json(capsys, "model", path, "--max", "3", "--nonempty")
    assert code == 1 and doc["found"] is False


def test_model_bound_too_large(capsys):
    code, _, err = run(capsys, "model", TCC, "--max", "40")
    assert code == 2


def test_verify_broken_model(tmp_path, capsys):
    data = json.loads((GOLDEN / "thing_class_classification.model.json").read_text())
    data["rels"]["classified"]["pairs"] = []
    f = tmp_path / "m.json"
    f.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", TCC, f)
    assert code == 1 and "FALSE" in out


def test_verify_malformed_model(tmp_path, capsys):
    f = tmp_path / "m.json"
    f.write_text("{not json")
    code, _, err = run(capsys, "verify", TCC, f)
    assert code == 2 and "line 1" in err


def test_prove_passes_with_soundness(capsys):
    code, out, _ = run(capsys, "prove", PROOFS / "unit_down.cpf", "--soundness", "2")
    assert code == 0 and "0 violations" in out
    code, doc = run_json(capsys, "prove", PROOFS / "semidist_down.cpf", "--soundness", "1")
    assert code == 0 and doc["passed"] and doc["soundness"]["violations"] == []


def test_prove_forged_step(capsys):
    code, out, _ = run(capsys, "prove", PROOFS / "mutations" / "m03_forged_star.cpf")
    assert code == 1
    code, doc = run_json(capsys, "prove", PROOFS / "mutations" / "m03_forged_star.cpf")
    assert code == 1 and doc["failed_step"] is not None and doc["reason"]


def test_prove_missing_theory(capsys):
    code, _, err = run(capsys, "prove", PROOFS / "unit_down.cpf", "--theory", "/nope.cno")
    assert code == 2


def test_prove_with_theory_hypotheses(tmp_path, capsys):
    script = tmp_path / "p.cpf"
    script.write_text("1. Classification => Relationship [hyp]\n"
                      "2. id(Classification) => id(Relationship) [id_imp_inv 1]\n")
    code, _, _ = run(capsys, "prove", script, "--theory", TCC)
    assert code == 0
    script.write_text("1. Relationship => Classification [hyp]\n")
    code, _, _ = run(capsys, "prove", script, "--theory", TCC)
    assert code == 1


def test_prove_parse_error(tmp_path, capsys):
    script = tmp_path / "p.cpf"
    script.write_text("1. A => [hyp]\n")
    code, _, err = run(capsys, "prove", script)
    assert code == 2 and "line 1" in err


@pytest.mark.skipif(shutil.which("conceptory") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["conceptory", "laws", "--size", "1", "--law", "interchange"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "interchange" in p.stdout
