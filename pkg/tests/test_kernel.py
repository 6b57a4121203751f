import itertools
import re
from pathlib import Path

import pytest

from conceptory.core import Universe, all_cells, restrict_dom
from conceptory.kernel import (
    BASE_RULES, LEMMAS, CName, ClassImpl, Comp, Conv, Defined, Down, Id, LDown, ModelAssignment,
    ParseError, RName, RPath, RelImpl, Rule, Schema, SchemaMismatch, Typing, UnboundName, apply_rule,
    check_derivation, eval_judgment, eval_rel, parse_judgment, parse_script, parse_term, rule_soundness,
    show, show_script, soundness_sample,
)

ROOT = Path(__file__).resolve().parent.parent
PROOFS = ROOT / "corpus" / "proofs"
THEOREMS = sorted(PROOFS.glob("*.cpf"))
MUTATIONS = sorted((PROOFS / "mutations").glob("*.cpf"))

J = parse_judgment


def test_parse_shapes():
    assert J("f : A -> B") == Typing(RName("f"), CName("A"), CName("B"))
    assert J("A.f : B") == Typing(RName("f"), CName("A"), CName("B"))
    assert J("id(A) => ~f o f") == RelImpl(Id(CName("A")), Comp(Conv(RName("f")), RName("f")))
    assert J("def(A, B, down(f, A2, B2))") == Defined(
        CName("A"), CName("B"), Down(RName("f"), CName("A2"), CName("B2")))
    assert J("!(A & B)") == ClassImpl(parse_term("Top"), parse_term("!(A & B)"))
    assert parse_term("C.f") == RPath("C", "f")


@pytest.mark.parametrize("text", [
    "f o g o h => f o (g o h)",
    "~(f o g) => ~g o ~f",
    "!(A & (B | C))",
    "A => B | C | D",
    "A & (B | C) => A & B | A & C",
    "ldown(f, C) o rup(g, B) => lup(rdown(f & g, A), B)",
    "imp(A, B) & A => B",
    "top & !f => bot | f",
    "id(C) => ~C.f o C.f",
    "def(A, B, up(f, A2, B2))",
])
def test_printer_round_trip(text):
    j = J(text)
    assert J(show(j)) == j
    assert show(J(show(j))) == show(j)


@pytest.mark.parametrize("text, line, col", [
    ("f => A", 1, 3),
    ("f :", 1, 4),
    ("A o B => C", 1, 3),
    ("f => g $", 1, 8),
    ("down(f, A) => f", 1, 10),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as e:
        J(text)
    assert (e.value.line, e.value.column) == (line, col)


def test_script_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_script("1. A => B [hyp]\n2. A => [trans 1 1]\n")
    assert e.value.line == 2


def test_apply_rule_examples():
    assert apply_rule("id_imp", [J("id(A) => id(B)")]) == J("A => B")
    assert apply_rule("star", [J("f1 => g1"), J("f2 => g2")]) == J("f2 o f1 => g2 o g1")
    assert apply_rule("down", [J("def(A, B, down(f, A2, B2))")]) == J("down(f, A2, B2) => f")
    # metavariables bind to arbitrary terms
    out = apply_rule("star", [J("h o k => top"), J("id(C) => x")])
    assert out == J("id(C) o (h o k) => x o top")


def test_apply_rule_mismatch_names_premise():
    with pytest.raises(SchemaMismatch, match="premise 1"):
        apply_rule("down", [J("f : A -> B")])
    with pytest.raises(SchemaMismatch, match="takes 2"):
        apply_rule("star", [J("f => g")])
    with pytest.raises(SchemaMismatch, match="not determined"):
        apply_rule("distrib_down", [])


def test_apply_rule_with_stated_conclusion():
    c = J("rdown(f, B) o ldown(g, A) => down(f o g, A, B)")
    assert apply_rule("distrib_down", [], c) == c
    rev = J("down(f o g, A, B) => rdown(f, B) o ldown(g, A)")
    assert apply_rule("distrib_down", [], rev) == rev


def test_five_step_derivation():
    d = parse_script(
        "1. f : A -> B [hyp]\n2. A2 => A [hyp]\n3. B2 => B [hyp]\n"
        "4. def(A, B, down(f, A2, B2)) [def_down 1 2 3]\n"
        "5. down(f, A2, B2) => f [down 4]\n")
    assert check_derivation(d).ok
    swapped = parse_script(
        "1. f : A -> B [hyp]\n2. A2 => A [hyp]\n3. B2 => B [hyp]\n"
        "4. down(f, A2, B2) => f [down 5]\n"
        "5. def(A, B, down(f, A2, B2)) [def_down 1 2 3]\n")
    r = check_derivation(swapped)
    assert not r.ok and r.failed_step == 4


def test_hypotheses_restricted_by_theory():
    d = parse_script("1. A => B [hyp]\n2. id(A) => id(B) [id_imp_inv 1]\n")
    assert check_derivation(d, [J("A => B")]).ok
    r = check_derivation(d, [J("B => A")])
    assert not r.ok and r.failed_step == 1


@pytest.mark.parametrize("path", THEOREMS, ids=lambda p: p.stem)
def test_theorem_scripts_check(path):
    d = parse_script(path.read_text())
    r = check_derivation(d)
    assert r.ok, r.describe()
    assert show_script(parse_script(show_script(d))) == show_script(d)


@pytest.mark.parametrize("path", THEOREMS, ids=lambda p: p.stem)
def test_theorem_scripts_prove_their_lemma(path):
    d = parse_script(path.read_text())
    lemma = LEMMAS[path.stem].variants[0]
    assert tuple(d.hypotheses) == lemma.premises
    assert d.conclusion == lemma.conclusion


def test_six_theorems_shipped():
    assert sorted(p.stem for p in THEOREMS) == sorted(LEMMAS)
    assert len(THEOREMS) == 6


@pytest.mark.parametrize("path", MUTATIONS, ids=lambda p: p.stem)
def test_mutations_rejected_at_intended_step(path):
    text = path.read_text()
    expected = int(re.search(r"expect-fail:\s*(\d+)", text).group(1))
    r = check_derivation(parse_script(text))
    assert not r.ok
    assert r.failed_step == expected, r.describe()


def test_ten_mutations():
    assert len(MUTATIONS) == 10


def test_lemma_steps():
    d = parse_script(
        "1. A2 => A [hyp]\n"
        "2. id(A2) => down(id(A), A2, A2) [lemma unit_down 1]\n")
    assert check_derivation(d).ok
    bad = parse_script("1. A2 => A [hyp]\n2. A2 => A [lemma nope 1]\n")
    assert "unknown lemma" in check_derivation(bad).reason


# -- semantics ---------------------------------------------------------------------

U2 = Universe(2)
CELLS2 = all_cells(U2)


def model(classes=None, rels=None):
    return ModelAssignment(U2, dict(classes or {}), dict(rels or {}))


def test_id_implication_is_inclusion():
    for a, b in itertools.product(U2.subsets(), repeat=2):
        m = model({"A": a, "B": b})
        assert eval_judgment(J("id(A) => id(B)"), m) == (a <= b)


def test_typing_is_exact():
    f = CELLS2[20]
    m = model({"A": f.dom, "B": f.cod, "X": U2.full}, {"f": f})
    assert eval_judgment(J("f : A -> B"), m)
    if f.dom != U2.full:
        assert not eval_judgment(J("f : X -> B"), m)


def test_unbound_name():
    with pytest.raises(UnboundName):
        eval_judgment(J("A => B"), model({"A": U2.full}))


def test_cardinality_encodings_match_counting():
    for f in CELLS2:
        m = model({"A": f.dom, "B": f.cod}, {"f": f})
        total = all(any(p[0] == a for p in f.pairs) for a in f.dom)
        single = all(len([p for p in f.pairs if p[0] == a]) <= 1 for a in f.dom)
        injective = all(len([p for p in f.pairs if p[1] == b]) <= 1 for b in f.cod)
        assert eval_judgment(J("id(A) => ~f o f"), m) == total
        assert eval_judgment(J("f o ~f => id(B)"), m) == single
        assert eval_judgment(J("~f o f => id(A)"), m) == injective


def test_path_sugar_is_domain_restriction():
    f = CELLS2[-1]
    for c in f.dom.subsets():
        m = model({"C": c}, {"f": f})
        assert eval_rel(parse_term("C.f"), m) == restrict_dom(f, c)
        assert eval_rel(parse_term("C.f"), m) == eval_rel(LDown(RName("f"), CName("C")), m)


def test_distrib_instances_hold_where_defined():
    j = J("rdown(f, B) o ldown(g, A) => down(f o g, A, B)")
    for f in CELLS2:
        for g in CELLS2:
            if f.dom != g.cod:
                continue
            for a in g.dom.subsets():
                for b in f.cod.subsets():
                    assert eval_judgment(j, model({"A": a, "B": b}, {"f": f, "g": g}))


@pytest.mark.parametrize("name", sorted(set(BASE_RULES) - {"star"}) + sorted(LEMMAS))
def test_rule_soundness_n2(name):
    rule = BASE_RULES.get(name) or LEMMAS[name]
    rep = rule_soundness(rule, 2)
    assert rep.ok, rep.violations[:2]


def test_star_soundness_n2():
    rep = rule_soundness(BASE_RULES["star"], 2)
    assert rep.ok and rep.models > 0


@pytest.mark.parametrize("path", THEOREMS, ids=lambda p: p.stem)
def test_theorem_soundness_n2(path):
    rep = soundness_sample(parse_script(path.read_text()), 2)
    assert rep.ok and not rep.vacuous


def test_soundness_random_mode():
    d = parse_script((PROOFS / "semidist_down.cpf").read_text())
    a = soundness_sample(d, 3, "random", 300, seed=5)
    b = soundness_sample(d, 3, "random", 300, seed=5)
    assert a.ok and a.to_dict() == b.to_dict()


def test_vacuous_soundness_flagged():
    d = parse_script("1. Top => A [hyp]\n2. A => Bot [hyp]\n3. Top => Bot [trans 1 2]\n")
    assert check_derivation(d).ok
    rep = soundness_sample(d, 1)
    assert rep.vacuous and rep.ok


def test_empty_hypothesis_down_instance():
    d = parse_script("1. down(f o g, A, B) => rdown(f, B) o ldown(g, A) [distrib_down]\n")
    rep = soundness_sample(d, 1)
    assert rep.ok


def test_unsound_rule_would_be_caught():
    fake = Rule("bogus", (Schema.of(["f => g"], "g => f"),))
    rep = rule_soundness(fake, 1)
    assert not rep.ok
