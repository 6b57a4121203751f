"""Acceptance criteria 1-9.

Each check returns ``(ok, detail)``.  Under pytest every criterion is its own
test and a PASS/FAIL line per criterion is printed in the terminal summary;
run as a script (``python tests/test_acceptance.py``) it prints the same lines
and exits non-zero if any criterion fails.
"""

import contextlib
import io
import json
import random
import re
import sys
import time
from pathlib import Path

import pytest

from conceptory import laws as L
from conceptory.cli import main as cli_main
from conceptory.core import Cell1, Universe, all_cells, restrict
from conceptory.kernel import (
    LEMMAS, ModelAssignment, check_derivation, eval_judgment, parse_judgment, parse_script,
    rule_soundness,
)
from conceptory.kernel.semantics import all_rules
from conceptory.ontology import dump_model, find_model, load_theory, oracle_find_model, verify_model

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
PROOFS = CORPUS / "proofs"
GOLDEN = ROOT / "tests" / "golden"

RESULTS: dict[int, tuple[bool, str]] = {}


def criterion_1():
    t = time.perf_counter()
    reports = L.run_suite(L.LawSuiteConfig(2, "exhaustive"))
    elapsed = time.perf_counter() - t
    asserted = [r for r in reports if r.asserted]
    bad = [r.name for r in asserted if not r.passed]
    cases = sum(r.cases_checked for r in asserted)
    ok = not bad and elapsed < 30 and len(all_cells(Universe(2))) == 47
    return ok, f"{len(asserted)} laws, {cases} cases, violations in {bad or 'none'}, {elapsed:.1f}s"


def _cli_bytes(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()


def criterion_2():
    argv = ["laws", "--size", "4", "--mode", "random", "--samples", "10000", "--seed", "0",
            "--format", "json"]
    code_a, a = _cli_bytes(argv)
    code_b, b = _cli_bytes(argv)
    doc = json.loads(a)
    asserted = [r for r in doc["laws"] if r["asserted"]]
    bad = [r["law"] for r in asserted if r["violation_count"]]
    few = [r["law"] for r in asserted if r["cases"] < 10_000]
    ok = code_a == code_b == 0 and a == b and not bad and not few
    return ok, (f"{len(asserted)} laws, identical={a == b}, violations in {bad or 'none'}, "
                f"under 10^4 cases: {few or 'none'}")


def _sample_cells(u: Universe, k: int, rng: random.Random) -> list[Cell1]:
    out = []
    n = u.size
    for _ in range(k):
        dom = u.subset([i for i in range(n) if rng.random() < 0.5])
        cod = u.subset([i for i in range(n) if rng.random() < 0.5])
        if rng.random() < 0.5 and len(cod):
            targets = list(cod)
            out.append(Cell1.of(dom, cod, [(a, rng.choice(targets)) for a in dom]))
        else:
            out.append(Cell1.of(dom, cod, [(a, b) for a in dom for b in cod if rng.random() < 0.5]))
    return out


def criterion_3():
    exhaustive = L.map_characterisation_mismatches(all_cells(Universe(2)))
    sampled = _sample_cells(Universe(4), 2000, random.Random("0/maps"))
    bad = L.map_characterisation_mismatches(sampled)
    maps = sum(L.is_map(c) for c in sampled)
    ok = not exhaustive and not bad
    return ok, f"n=2: 47 cells, n=4: {len(sampled)} samples ({maps} maps), mismatches {len(exhaustive) + len(bad)}"


ENCODINGS = {
    "id(A) => ~f o f": lambda f: all(any(p[0] == a for p in f.pairs) for a in f.dom),
    "f o ~f => id(B)": lambda f: all(sum(p[0] == a for p in f.pairs) <= 1 for a in f.dom),
    "~f o f => id(A)": lambda f: all(sum(p[1] == b for p in f.pairs) <= 1 for b in f.cod),
}


def criterion_4():
    u = Universe(2)
    bad = 0
    checked = 0
    for text, direct in ENCODINGS.items():
        j = parse_judgment(text)
        for f in all_cells(u):
            m = ModelAssignment(u, {"A": f.dom, "B": f.cod}, {"f": f})
            checked += 1
            bad += eval_judgment(j, m) != direct(f)
    return bad == 0, f"3 encodings x 47 cells, {checked} checks, {bad} disagreements"


def criterion_5():
    cases, bad = L.pullback_violations(Universe(3))
    return not bad, f"{cases} codomain-sharing pairs at n=3, {len(bad)} violations"


def criterion_6():
    text = (CORPUS / "thing_class_classification.cno").read_text()
    t = load_theory(text)
    golden = t.listing() == (GOLDEN / "thing_class_classification.judgments.txt").read_text()
    found = []
    for nonempty in (True, False):
        for bound in range(1, 7):
            m = find_model(t, bound, nonempty)
            if m is not None:
                found.append((nonempty, m))
    witness = next((m for ne, m in found if ne), None)
    agree = all(
        m.rels["UpperBoundOfNumberRange.classified"]
        == restrict(m.rels["classified"], m.classes["UpperBoundOfNumberRange"],
                    m.classes["ArithmeticNumber"])
        and verify_model(t, m).passed
        for _, m in found)
    ok = golden and witness is not None and agree
    size = witness.universe.size if witness else None
    return ok, f"golden listing {golden}, nonempty model at n={size}, redeclare agrees in {len(found)} models: {agree}"


def criterion_7():
    scripts = sorted(PROOFS.glob("*.cpf"))
    ok_scripts = [p.stem for p in scripts if check_derivation(parse_script(p.read_text())).ok
                  and p.stem in LEMMAS]
    mutants = sorted((PROOFS / "mutations").glob("*.cpf"))
    rejected = 0
    for p in mutants:
        src = p.read_text()
        want = int(re.search(r"expect-fail:\s*(\d+)", src).group(1))
        r = check_derivation(parse_script(src))
        rejected += (not r.ok) and r.failed_step == want
    violations = 0
    rules = all_rules()
    for rule in rules:
        violations += len(rule_soundness(rule, 2).violations)
    ok = len(ok_scripts) == 6 and len(mutants) == 10 and rejected == 10 and violations == 0
    return ok, (f"{len(ok_scripts)}/6 theorems check, {rejected}/{len(mutants)} mutations rejected "
                f"at the intended step, {len(rules)} rules sound at n=2 ({violations} violations)")


def criterion_8():
    files = sorted(CORPUS.glob("*.cno"))
    disagree = []
    for p in files:
        t = load_theory(p.read_text())
        for nonempty in (False, True):
            a, b = find_model(t, 2, nonempty), oracle_find_model(t, 2, nonempty)
            same = (a is None and b is None) or (
                a is not None and b is not None and dump_model(a) == dump_model(b))
            if not same:
                disagree.append(f"{p.stem}/{nonempty}")
    return not disagree, f"{len(files)} theories x 2 modes, disagreements: {disagree or 'none'}"


def criterion_9():
    cfg = L.LawSuiteConfig(2, "exhaustive")
    a = json.dumps(L.search_hypothesis(cfg).to_dict(), sort_keys=True)
    b = json.dumps(L.search_hypothesis(cfg).to_dict(), sort_keys=True)
    doc = json.loads(a)
    ok = a == b and doc["asserted"] is False
    return ok, f"{doc['cases']} cases, stable={a == b}, reported without a verdict"


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


def line(k: int, ok: bool, detail: str) -> str:
    return f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, detail = CRITERIA[k]()
    RESULTS[k] = (ok, detail)
    print(line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(line(k, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
