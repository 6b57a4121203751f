"""Evaluation of terms and judgments in a finite relational model."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from ..core import (
    Cell1, CellError, Subset, Universe, _rect, all_cells, bottom, cells_between, complement,
    compose, extend, extend_cod, extend_dom, identity, join, leq, meet, restrict, restrict_cod,
    restrict_dom, top, transpose,
)
from .rules import BASE_RULES, LEMMAS, Rule
from .syntax import Derivation, show
from .terms import (
    CAnd, CBot, CImpl, CName, CNot, COr, CTop, ClassImpl, Comp, Conv, Defined, Down, Id, LDown,
    LUp, RAnd, RBot, RDown, RName, RNot, ROr, RPath, RTop, RUp, RelImpl, Typing, Up,
    class_names, rel_names,
)


class UnboundName(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unbound name {self.name!r}"


@dataclass
class ModelAssignment:
    universe: Universe
    classes: dict[str, Subset] = field(default_factory=dict)
    rels: dict[str, Cell1] = field(default_factory=dict)
    # declared (dom class, cod class) per relation, used for serialisation
    rel_types: dict[str, tuple[str, str]] = field(default_factory=dict)

    def cls(self, name: str) -> Subset:
        try:
            return self.classes[name]
        except KeyError:
            raise UnboundName(name) from None

    def rel(self, name: str) -> Cell1:
        try:
            return self.rels[name]
        except KeyError:
            raise UnboundName(name) from None


def eval_class(t, m: ModelAssignment) -> Subset:
    u = m.universe
    if isinstance(t, CName):
        return m.cls(t.name)
    if isinstance(t, CTop):
        return u.full
    if isinstance(t, CBot):
        return u.empty
    if isinstance(t, CAnd):
        return eval_class(t.left, m) & eval_class(t.right, m)
    if isinstance(t, COr):
        return eval_class(t.left, m) | eval_class(t.right, m)
    if isinstance(t, CNot):
        return eval_class(t.arg, m).complement()
    if isinstance(t, CImpl):
        return eval_class(t.left, m).complement() | eval_class(t.right, m)
    raise TypeError(f"not a class term: {t!r}")


def eval_rel(t, m: ModelAssignment) -> Cell1:
    """Evaluate a relation term; ill-formed composites raise a CellError."""
    if isinstance(t, RName):
        return m.rel(t.name)
    if isinstance(t, RPath):
        path = f"{t.cls}.{t.rel}"
        if path in m.rels:
            return m.rels[path]
        return restrict_dom(m.rel(t.rel), m.cls(t.cls))
    if isinstance(t, Id):
        return identity(eval_class(t.cls, m))
    if isinstance(t, Comp):
        return compose(eval_rel(t.left, m), eval_rel(t.right, m))
    if isinstance(t, Conv):
        return transpose(eval_rel(t.arg, m))
    if isinstance(t, Down):
        return restrict(eval_rel(t.rel, m), eval_class(t.dom, m), eval_class(t.cod, m))
    if isinstance(t, Up):
        return extend(eval_rel(t.rel, m), eval_class(t.dom, m), eval_class(t.cod, m))
    if isinstance(t, LDown):
        return restrict_dom(eval_rel(t.rel, m), eval_class(t.dom, m))
    if isinstance(t, RDown):
        return restrict_cod(eval_rel(t.rel, m), eval_class(t.cod, m))
    if isinstance(t, LUp):
        return extend_dom(eval_rel(t.rel, m), eval_class(t.dom, m))
    if isinstance(t, RUp):
        return extend_cod(eval_rel(t.rel, m), eval_class(t.cod, m))
    if isinstance(t, RAnd):
        return meet(eval_rel(t.left, m), eval_rel(t.right, m))
    if isinstance(t, ROr):
        return join(eval_rel(t.left, m), eval_rel(t.right, m))
    if isinstance(t, RNot):
        return complement(eval_rel(t.arg, m))
    if isinstance(t, RTop):
        return top(m.universe)
    if isinstance(t, RBot):
        return bottom(m.universe)
    raise TypeError(f"not a relation term: {t!r}")


def eval_judgment(j, m: ModelAssignment) -> bool:
    """Truth of a judgment in ``m``.

    Typing demands exact boundaries: ``f : A -> B`` holds iff the cell
    denoted by ``f`` has domain S(A) and codomain S(B).
    """
    if isinstance(j, ClassImpl):
        return eval_class(j.left, m) <= eval_class(j.right, m)
    if isinstance(j, RelImpl):
        return leq(eval_rel(j.left, m), eval_rel(j.right, m))
    if isinstance(j, Typing):
        c = eval_rel(j.rel, m)
        return c.dom == eval_class(j.dom, m) and c.cod == eval_class(j.cod, m)
    if isinstance(j, Defined):
        f = eval_rel(j.term.rel, m)
        a, b = eval_class(j.dom, m), eval_class(j.cod, m)
        a2, b2 = eval_class(j.term.dom, m), eval_class(j.term.cod, m)
        if f.dom != a or f.cod != b:
            return False
        if isinstance(j.term, Down):
            return a2 <= a and b2 <= b
        return a <= a2 and b <= b2
    raise TypeError(f"not a judgment: {j!r}")


def holds(j, m: ModelAssignment) -> bool:
    """Like :func:`eval_judgment` but an undefined term makes it false."""
    try:
        return eval_judgment(j, m)
    except CellError:
        return False


def try_eval(j, m: ModelAssignment) -> Optional[bool]:
    """``None`` when some term of ``j`` is undefined in ``m``."""
    try:
        return eval_judgment(j, m)
    except CellError:
        return None


# model enumeration -------------------------------------------------------------


def _signature(judgments: Iterable) -> tuple[list[str], list[str]]:
    cls: list[str] = []
    rel: list[str] = []
    for j in judgments:
        class_names(j, cls)
        rel_names(j, rel)
    return cls, rel


def _typing_hint(j, name: str) -> Optional[tuple[str, str]]:
    if (isinstance(j, Typing) and isinstance(j.rel, RName) and j.rel.name == name
            and isinstance(j.dom, CName) and isinstance(j.cod, CName)):
        return j.dom.name, j.cod.name
    return None


def enumerate_models(judgments: list, u: Universe) -> Iterator[ModelAssignment]:
    """All assignments to the names of ``judgments`` making every one true.

    Classes are bound first, then relations, each in first-occurrence order;
    a judgment is tested as soon as its names are bound.  A relation with a
    plain typing judgment only ranges over cells with those boundaries.
    """
    cls, rel = _signature(judgments)
    order = [("c", n) for n in cls] + [("r", n) for n in rel]
    needs = []
    for j in judgments:
        jc, jr = _signature([j])
        needs.append(({("c", n) for n in jc} | {("r", n) for n in jr}, j))
    ready_at: list[list] = [[] for _ in order]
    pos = {v: i for i, v in enumerate(order)}
    for vars_, j in needs:
        k = max((pos[v] for v in vars_), default=-1)
        if k < 0:
            ready_at.append([j])  # closed judgment; checked below
        else:
            ready_at[k].append(j)
    closed = [j for vars_, j in needs if not vars_]
    m = ModelAssignment(u)
    if not all(holds(j, m) for j in closed):
        return
    subsets = u.subsets()
    every_cell = all_cells(u)

    def candidates(kind: str, name: str):
        if kind == "c":
            return subsets
        for j in judgments:
            hint = _typing_hint(j, name)
            if hint is not None:
                return cells_between(m.classes[hint[0]], m.classes[hint[1]])
        return every_cell

    def go(k: int) -> Iterator[ModelAssignment]:
        if k == len(order):
            yield ModelAssignment(u, dict(m.classes), dict(m.rels))
            return
        kind, name = order[k]
        table = m.classes if kind == "c" else m.rels
        for value in candidates(kind, name):
            table[name] = value
            if all(holds(j, m) for j in ready_at[k]):
                yield from go(k + 1)
        table.pop(name, None)

    yield from go(0)


def random_model(names: tuple[list[str], list[str]], u: Universe,
                 rng: random.Random) -> ModelAssignment:
    cls, rel = names
    m = ModelAssignment(u)
    n = u.size
    for c in cls:
        m.classes[c] = Subset(u, rng.getrandbits(n))
    for r in rel:
        d, c = Subset(u, rng.getrandbits(n)), Subset(u, rng.getrandbits(n))
        m.rels[r] = Cell1(d, c, rng.getrandbits(n * n) & _rect(n, d.bits, c.bits))
    return m


# soundness ------------------------------------------------------------------------


@dataclass
class SoundnessReport:
    subject: str
    models: int = 0            # assignments satisfying every hypothesis
    undefined: int = 0         # conclusion undefined in such a model
    violations: list[str] = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return self.models == 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"subject": self.subject, "models": self.models, "undefined": self.undefined,
                "vacuous": self.vacuous, "violations": self.violations}


def _describe(m: ModelAssignment) -> str:
    parts = [f"{k}={list(v)}" for k, v in m.classes.items()]
    parts += [f"{k}={v!r}" for k, v in m.rels.items()]
    return ", ".join(parts)


def _check_entailment(subject: str, hyps: list, conclusions: list, models: Iterable[ModelAssignment],
                      filter_hyps: bool) -> SoundnessReport:
    rep = SoundnessReport(subject)
    for m in models:
        if filter_hyps and not all(holds(h, m) for h in hyps):
            continue
        rep.models += 1
        for c in conclusions:
            v = try_eval(c, m)
            if v is None:
                rep.undefined += 1
            elif not v:
                if len(rep.violations) < 10:
                    rep.violations.append(f"{show(c)} false under {_describe(m)}")
                break
    return rep


def soundness_sample(d: Derivation, size: int = 2, mode: str = "exhaustive",
                     samples: int = 2000, seed: int = 0) -> SoundnessReport:
    """Every model of the hypotheses must satisfy every step of ``d``.

    Undefined steps (possible only for rules without side conditions) are
    counted, not treated as failures.
    """
    u = Universe(size)
    hyps = d.hypotheses
    steps = [s.judgment for s in d.steps if s.rule != "hyp"]
    names = _signature([s.judgment for s in d.steps])
    if mode == "exhaustive":
        models = (x for m in enumerate_models(hyps, u)
                  for x in _extend(m, [n for n in names[0] if n not in m.classes],
                                   [n for n in names[1] if n not in m.rels], u))
        return _check_entailment("derivation", hyps, steps, models, False)
    rng = random.Random(f"{seed}/soundness")
    models = (random_model(names, u, rng) for _ in range(samples))
    return _check_entailment("derivation", hyps, steps, models, True)


def rule_soundness(rule: Rule, size: int = 2) -> SoundnessReport:
    """Exhaustive semantic check of every variant of one rule."""
    u = Universe(size)
    total = SoundnessReport(rule.name)
    for schema in rule.variants:
        rep = _check_entailment(rule.name, list(schema.premises), [schema.conclusion],
                                _models_for(schema, u), False)
        total.models += rep.models
        total.undefined += rep.undefined
        total.violations += rep.violations
    return total


def _models_for(schema, u: Universe) -> Iterator[ModelAssignment]:
    # names that occur only in the conclusion are enumerated too
    premises = list(schema.premises)
    cls, rel = _signature(premises + [schema.conclusion])
    for m in enumerate_models(premises, u):
        yield from _extend(m, [n for n in cls if n not in m.classes],
                           [n for n in rel if n not in m.rels], u)


def _extend(m: ModelAssignment, cls: list[str], rel: list[str], u: Universe):
    if cls:
        for s in u.subsets():
            m.classes[cls[0]] = s
            yield from _extend(m, cls[1:], rel, u)
        del m.classes[cls[0]]
    elif rel:
        for c in all_cells(u):
            m.rels[rel[0]] = c
            yield from _extend(m, cls, rel[1:], u)
        del m.rels[rel[0]]
    else:
        yield m


def all_rules() -> list[Rule]:
    return list(BASE_RULES.values()) + list(LEMMAS.values())
