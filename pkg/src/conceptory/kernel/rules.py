"""Inference rules as schemas, matched by first-order syntactic unification.

A schema is written in the ordinary judgment syntax; every name in it is a
metavariable of its sort (class names upper-case, relation names lower-case).
Constants such as ``Top``, ``bot`` and the operators must match literally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .syntax import parse_judgment, show
from .terms import CName, RName, RPath, children


class SchemaMismatch(ValueError):
    pass


class UnknownRule(KeyError):
    pass


@dataclass(frozen=True)
class Schema:
    premises: tuple
    conclusion: object

    @classmethod
    def of(cls, premises: Sequence[str], conclusion: str) -> Schema:
        return cls(tuple(parse_judgment(p) for p in premises), parse_judgment(conclusion))


@dataclass(frozen=True)
class Rule:
    name: str
    variants: tuple[Schema, ...]
    doc: str = ""

    @property
    def arity(self) -> int:
        return len(self.variants[0].premises)


Subst = dict


def match(pattern, term, subst: Subst) -> bool:
    """Extend ``subst`` so that ``pattern`` instantiates to ``term``."""
    if isinstance(pattern, (CName, RName)):
        key = (type(pattern), pattern.name)
        if key in subst:
            return subst[key] == term
        subst[key] = term
        return True
    if isinstance(pattern, RPath):
        return pattern == term
    if type(pattern) is not type(term):
        return False
    for a, b in zip(children(pattern), children(term)):
        if not match(a, b, subst):
            return False
    return True


def instantiate(pattern, subst: Subst):
    if isinstance(pattern, (CName, RName)):
        key = (type(pattern), pattern.name)
        if key not in subst:
            raise SchemaMismatch(f"metavariable {pattern.name} is not determined by the premises")
        return subst[key]
    kids = children(pattern)
    if not kids:
        return pattern
    return type(pattern)(*[instantiate(k, subst) for k in kids])


def _try_variant(schema: Schema, premises: Sequence, conclusion) -> tuple[Optional[object], str]:
    subst: Subst = {}
    for k, (pat, prem) in enumerate(zip(schema.premises, premises), start=1):
        if not match(pat, prem, subst):
            return None, f"premise {k} ({show(prem)}) does not have the shape {show(pat)}"
    if conclusion is not None:
        if not match(schema.conclusion, conclusion, subst):
            return None, f"conclusion does not have the shape {show(schema.conclusion)}"
        return conclusion, ""
    try:
        return instantiate(schema.conclusion, subst), ""
    except SchemaMismatch as e:
        return None, str(e)


def apply_rule(rule: str | Rule, premises: Sequence, conclusion=None):
    """Instantiate a rule from its premises.

    When ``conclusion`` is given it is matched too, which is how rules
    without premises (or with metavariables only in the conclusion) are
    applied.  Raises :class:`SchemaMismatch` naming the first failing premise.
    """
    r = rule if isinstance(rule, Rule) else get_rule(rule)
    if len(premises) != r.arity:
        raise SchemaMismatch(f"rule {r.name} takes {r.arity} premise(s), got {len(premises)}")
    first_reason = ""
    for schema in r.variants:
        out, reason = _try_variant(schema, premises, conclusion)
        if out is not None:
            return out
        first_reason = first_reason or reason
    raise SchemaMismatch(f"rule {r.name}: {first_reason}")


def _rule(name: str, *variants: tuple[Sequence[str], str], doc: str = "") -> Rule:
    return Rule(name, tuple(Schema.of(p, c) for p, c in variants), doc)


def _both_sorts(name: str, premises: Sequence[str], conclusion: str) -> Rule:
    """A Boolean-algebra rule stated for classes and, renamed, for relations."""
    table = str.maketrans({"A": "f", "B": "g", "C": "h"})

    def rel(s: str) -> str:
        return s.replace("Top", "top").replace("Bot", "bot").translate(table)

    return _rule(name, (premises, conclusion), ([rel(p) for p in premises], rel(conclusion)))


BASE_RULES: dict[str, Rule] = {r.name: r for r in (
    _rule("id_imp", (["id(A) => id(B)"], "A => B")),
    _rule("id_imp_inv", (["A => B"], "id(A) => id(B)")),
    _rule("def_down", (["f : A -> B", "A2 => A", "B2 => B"], "def(A, B, down(f, A2, B2))")),
    _rule("def_up", (["f : A -> B", "A => A2", "B => B2"], "def(A, B, up(f, A2, B2))")),
    _rule("star", (["f1 => g1", "f2 => g2"], "f2 o f1 => g2 o g1")),
    _rule("down", (["def(A, B, down(f, A2, B2))"], "down(f, A2, B2) => f")),
    _rule("univ_down", (["def(A, B, down(f, A2, B2))", "g2 : A2 -> B2", "g2 => f"],
                        "g2 => down(f, A2, B2)")),
    _rule("up", (["def(A, B, up(f, A2, B2))"], "f => up(f, A2, B2)")),
    _rule("univ_up", (["def(A, B, up(f, A2, B2))", "g2 : A2 -> B2", "f => g2"],
                      "up(f, A2, B2) => g2")),
    _rule("distrib_down", ([], "rdown(f, B) o ldown(g, A) => down(f o g, A, B)"),
          ([], "down(f o g, A, B) => rdown(f, B) o ldown(g, A)")),
    _rule("distrib_up", ([], "rup(f, B) o lup(g, A) => up(f o g, A, B)"),
          ([], "up(f o g, A, B) => rup(f, B) o lup(g, A)")),
    _rule("bounds_and", (["f : A -> B", "g : C -> D"], "f & g : A & C -> B & D")),
    _rule("bounds_or", (["f : A -> B", "g : C -> D"], "f | g : A | C -> B | D")),
    # typing of the term constructors
    _rule("type_id", ([], "id(A) : A -> A")),
    _rule("type_comp", (["f : A -> B", "g : B -> C"], "g o f : A -> C")),
    _rule("type_conv", (["f : A -> B"], "~f : B -> A")),
    _rule("type_down", (["def(A, B, down(f, A2, B2))"], "down(f, A2, B2) : A2 -> B2")),
    _rule("type_up", (["def(A, B, up(f, A2, B2))"], "up(f, A2, B2) : A2 -> B2")),
    # Boolean algebra, for either sort
    _both_sorts("refl", [], "A => A"),
    _both_sorts("trans", ["A => B", "B => C"], "A => C"),
    _both_sorts("and_l", [], "A & B => A"),
    _both_sorts("and_r", [], "A & B => B"),
    _both_sorts("and_intro", ["C => A", "C => B"], "C => A & B"),
    _both_sorts("or_l", [], "A => A | B"),
    _both_sorts("or_r", [], "B => A | B"),
    _both_sorts("or_elim", ["A => C", "B => C"], "A | B => C"),
    _both_sorts("top", [], "A => Top"),
    _both_sorts("bot", [], "Bot => A"),
    _both_sorts("distrib", [], "A & (B | C) => A & B | A & C"),
    _both_sorts("compl_meet", [], "A & !A => Bot"),
    _both_sorts("compl_join", [], "Top => A | !A"),
    _rule("impl_intro", (["C & A => B"], "C => imp(A, B)")),
    _rule("impl_elim", ([], "imp(A, B) & A => B")),
)}


# Derived rules.  Each ships with a derivation from the base rules (see
# ``conceptory.kernel.theorems``) and may be cited as ``[lemma NAME ...]``.
LEMMAS: dict[str, Rule] = {r.name: r for r in (
    _rule("semidist_down", (["f : A -> B", "g : B -> C", "A2 => A", "B2 => B", "C2 => C"],
                            "down(g, B2, C2) o down(f, A2, B2) => down(g o f, A2, C2)")),
    _rule("semidist_up", (["f : A -> B", "g : B -> C", "A => A2", "B => B2", "C => C2"],
                          "up(g o f, A2, C2) => up(g, B2, C2) o up(f, A2, B2)")),
    _rule("monotone_down", (["f : A -> B", "g : A -> B", "A2 => A", "B2 => B", "f => g"],
                            "down(f, A2, B2) => down(g, A2, B2)")),
    _rule("monotone_up", (["f : A -> B", "g : A -> B", "A => A2", "B => B2", "f => g"],
                          "up(f, A2, B2) => up(g, A2, B2)")),
    _rule("unit_down", (["A2 => A"], "id(A2) => down(id(A), A2, A2)")),
    _rule("counit_up", (["A2 => A"], "up(id(A2), A, A) => id(A)")),
)}


def get_rule(name: str, lemma: bool = False) -> Rule:
    table = LEMMAS if lemma else BASE_RULES
    if name not in table:
        raise UnknownRule(name)
    return table[name]
