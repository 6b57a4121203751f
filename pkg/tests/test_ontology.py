import json
from pathlib import Path

import pytest

from conceptory.core import restrict
from conceptory.kernel import holds, parse_judgment, show
from conceptory.ontology import (
    Abstract, BoundTooLarge, Card, ClassDecl, DuplicateName, ModelFormatError, OneOf,
    OntologySyntaxError, Redeclare, RedeclareNotSubclass, CardOnUnknownRel, UseBeforeDecl,
    dump_model, find_model, load_model, load_theory, oracle_find_model, parse, verify_model,
)

ROOT = Path(__file__).resolve().parent.parent
CORPUS = sorted((ROOT / "corpus").glob("*.cno"))
GOLDEN = ROOT / "tests" / "golden"
TCC = ROOT / "corpus" / "thing_class_classification.cno"


def theory(name):
    return load_theory((ROOT / "corpus" / f"{name}.cno").read_text())


def test_parse_declarations():
    src = parse("class A\nclass B <= A\n// note\nrel f : B -> A\nabstract A => B\n"
                "oneof (A, B)\ncard B.f [0,*]\n")
    kinds = [type(d) for d in src.decls]
    assert kinds == [ClassDecl, ClassDecl, type(src.decls[2]), Abstract, OneOf, Card]
    assert src.decls[1].line == 2 and src.decls[2].line == 4
    assert src.decls[-1] == Card("B", "f", 0, None, 7)


@pytest.mark.parametrize("text, exc, line, col", [
    ("class A\nrel f : A -> B\n", UseBeforeDecl, 2, 14),
    ("class A\nclass A\n", DuplicateName, 2, 7),
    ("class A\nrel f : A -> A\nrel f : A -> A\n", DuplicateName, 3, 5),
    ("class a\n", OntologySyntaxError, 1, 7),
    ("class A\ncard A.f [2,*]\n", OntologySyntaxError, 2, 11),
    ("class A\nwidget A\n", OntologySyntaxError, 2, 1),
    ("class A\naxiom g => g\n", UseBeforeDecl, 2, 7),
    ("class A\noneof (A)\n", OntologySyntaxError, 2, 1),
])
def test_parse_errors(text, exc, line, col):
    with pytest.raises(exc) as e:
        parse(text)
    assert (e.value.line, e.value.column) == (line, col)


def test_compile_forms():
    t = load_theory("class A\nclass B <= A\nclass C <= A\nrel f : A -> B\n"
                    "abstract A => B | C\noneof (A, B, C)\ncard A.f [1,1]\nunique A.f\n")
    assert t.listing().splitlines() == [
        "B => A",
        "C => A",
        "f : A -> B",
        "A => B | C",
        "!(A & (B | C))",
        "!(B & C)",
        "id(A) => ~f o f",
        "f o ~f => id(B)",
        "~f o f => id(A)",
    ]
    assert t.origins == [2, 3, 4, 5, 6, 6, 7, 7, 8]


def test_inherited_card_uses_path():
    t = load_theory("class A\nclass B <= A\nrel f : A -> A\ncard B.f [1,*]\n")
    assert show(t.judgments[-1]) == "id(B) => ~B.f o B.f"


def test_compile_errors():
    with pytest.raises(RedeclareNotSubclass):
        load_theory("class A\nclass B\nrel f : A -> A\nredeclare B.f : A\n")
    with pytest.raises(CardOnUnknownRel):
        load_theory("class A\nclass B\nrel f : A -> A\ncard B.f [1,1]\n")


def test_golden_listing():
    assert load_theory(TCC.read_text()).listing() == (
        GOLDEN / "thing_class_classification.judgments.txt").read_text()


def test_golden_listing_has_the_expected_forms():
    t = load_theory(TCC.read_text())
    text = t.listing()
    assert "Classification => Relationship" in text
    assert "Thing => AbstractObject | PossibleIndividual" in text
    assert "!(AbstractObject & PossibleIndividual)" in text
    assert "id(Classification) => ~classified o classified" in text
    assert "classified o ~classified => id(Thing)" in text
    assert ("UpperBoundOfNumberRange.classified => "
            "down(classified, UpperBoundOfNumberRange, ArithmeticNumber)") in text


def _redeclare_agrees(m):
    f = m.rels["classified"]
    r = m.rels["UpperBoundOfNumberRange.classified"]
    expect = restrict(f, m.classes["UpperBoundOfNumberRange"], m.classes["ArithmeticNumber"])
    return r == expect


def test_tcc_model_nonempty_within_six():
    t = load_theory(TCC.read_text())
    m = find_model(t, 6, nonempty=True)
    assert m is not None and m.universe.size <= 6
    assert all(len(s) > 0 for s in m.classes.values())
    assert verify_model(t, m).passed
    assert _redeclare_agrees(m)
    assert m.rels["UpperBoundOfNumberRange.classified"].pairs


@pytest.mark.parametrize("nonempty", [False, True])
def test_redeclare_holds_in_every_found_model(nonempty):
    t = load_theory(TCC.read_text())
    for bound in range(1, 7):
        m = find_model(t, bound, nonempty)
        if m is not None:
            assert _redeclare_agrees(m)


def test_redeclared_path_must_equal_restriction():
    t = load_theory(TCC.read_text())
    data = json.loads((GOLDEN / "thing_class_classification.model.json").read_text())
    data["rels"]["UpperBoundOfNumberRange.classified"]["pairs"] = []
    report = verify_model(t, load_model(json.dumps(data)))
    assert not report.passed


def test_golden_model_verifies_and_matches_search():
    t = load_theory(TCC.read_text())
    text = (GOLDEN / "thing_class_classification.model.json").read_text()
    assert verify_model(t, load_model(text)).passed
    assert dump_model(find_model(t, 6, nonempty=True)) == text


@pytest.mark.parametrize("name", ["shapes_oneof_abstract", "passports_unique_card"])
def test_other_golden_models(name):
    t = theory(name)
    text = (GOLDEN / f"{name}.model.json").read_text()
    assert dump_model(find_model(t, 4, nonempty=True)) == text


def test_removing_a_pair_breaks_totality():
    t = load_theory(TCC.read_text())
    data = json.loads((GOLDEN / "thing_class_classification.model.json").read_text())
    data["rels"]["classified"]["pairs"] = []
    report = verify_model(t, load_model(json.dumps(data)))
    assert not report.passed
    failed = [show(r.judgment) for r in report.rows if r.value is not True]
    assert "id(Classification) => ~classified o classified" in failed


def test_unsat_within_bound():
    t = theory("unsat_disjoint_subclass")
    assert find_model(t, 4, nonempty=True) is None
    assert find_model(t, 1) is not None  # empty classes satisfy it


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
@pytest.mark.parametrize("nonempty", [False, True])
def test_search_agrees_with_oracle(path, nonempty):
    t = load_theory(path.read_text())
    fast = find_model(t, 2, nonempty)
    slow = oracle_find_model(t, 2, nonempty)
    if slow is None:
        assert fast is None
    else:
        assert fast is not None
        assert dump_model(fast) == dump_model(slow)


def test_search_finds_only_models():
    for path in CORPUS:
        t = load_theory(path.read_text())
        m = find_model(t, 3)
        assert m is not None and all(holds(j, m) for j in t.judgments)


def test_model_json_round_trip():
    t = theory("passports_unique_card")
    m = find_model(t, 4, nonempty=True)
    again = load_model(dump_model(m))
    assert dump_model(again) == dump_model(m)
    assert again.rels == m.rels and again.classes == m.classes


@pytest.mark.parametrize("text", [
    "{",
    '{"universe": 2}',
    '{"universe": 2, "classes": {"A": [5]}, "rels": {}}',
    '{"universe": 2, "classes": {"A": [0]}, "rels": {"f": {"dom": "A", "cod": "B", "pairs": []}}}',
    '{"universe": 2, "classes": {"A": [0]}, "rels": {"f": {"dom": "A", "cod": "A", "pairs": [[1, 1]]}}}',
])
def test_bad_model_files(text):
    with pytest.raises(ModelFormatError):
        load_model(text)


def test_bound_checked():
    t = theory("shapes_oneof_abstract")
    with pytest.raises(BoundTooLarge):
        find_model(t, 0)
    with pytest.raises(BoundTooLarge):
        find_model(t, 17)


def test_axiom_judgments_pass_through():
    t = load_theory("class A\nclass B\nrel f : A -> B\naxiom f o ~f => id(B)\n")
    assert t.judgments[-1] == parse_judgment("f o ~f => id(B)")


def test_redeclare_decl():
    src = parse("class A\nclass B <= A\nrel f : A -> A\nredeclare B.f : B\n")
    assert src.decls[-1] == Redeclare("B", "f", "B", 4)
