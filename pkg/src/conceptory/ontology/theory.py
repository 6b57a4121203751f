from __future__ import annotations

from dataclasses import dataclass, field

from ..kernel.syntax import show
from ..kernel.terms import (
    CAnd, CName, CNot, CTop, ClassImpl, Comp, Conv, Down, Id, RName, RPath, RelImpl, Typing,
    or_chain,
)
from .dsl import (
    Abstract, Axiom, Card, ClassDecl, OneOf, OntologyError, OntologySource, Redeclare, RelDecl,
    Unique,
)


class RedeclareNotSubclass(OntologyError):
    pass


class CardOnUnknownRel(OntologyError):
    pass


@dataclass
class Theory:
    classes: list[str] = field(default_factory=list)
    # relation symbol -> (dom class, cod class); redeclared paths are keyed "C.f"
    rels: dict[str, tuple[str, str]] = field(default_factory=dict)
    judgments: list = field(default_factory=list)
    # judgment index -> source line
    origins: list[int] = field(default_factory=list)

    def listing(self) -> str:
        return "".join(f"{show(j)}\n" for j in self.judgments)

    @property
    def paths(self) -> set[str]:
        return {r for r in self.rels if "." in r}


def _supers(expr) -> list[str]:
    if isinstance(expr, CName):
        return [expr.name]
    if isinstance(expr, CAnd):
        return _supers(expr.left) + _supers(expr.right)
    return []


def compile_source(src: OntologySource) -> Theory:
    t = Theory()
    parents: dict[str, set[str]] = {}
    declared_at: dict[str, str] = {}  # relation name -> its domain class

    def ancestors(c: str) -> set[str]:
        seen: set[str] = set()
        todo = list(parents.get(c, ()))
        while todo:
            x = todo.pop()
            if x not in seen:
                seen.add(x)
                todo.extend(parents.get(x, ()))
        return seen

    def emit(j, line: int) -> None:
        t.judgments.append(j)
        t.origins.append(line)

    def path_term(c: str, r: str, line: int):
        """Term for ``c.r`` and the class its values live in."""
        if r not in declared_at:
            raise CardOnUnknownRel(f"relation {r!r} is not declared", line)
        key = f"{c}.{r}"
        if key in t.rels:
            return RPath(c, r), t.rels[key][1]
        home = declared_at[r]
        if c == home:
            return RName(r), t.rels[r][1]
        if home not in ancestors(c):
            raise CardOnUnknownRel(f"{key}: {c} is not a subclass of {home}", line)
        return RPath(c, r), t.rels[r][1]

    for d in src.decls:
        if isinstance(d, ClassDecl):
            t.classes.append(d.name)
            parents[d.name] = set(_supers(d.supertype)) if d.supertype is not None else set()
            if d.supertype is not None:
                emit(ClassImpl(CName(d.name), d.supertype), d.line)
        elif isinstance(d, RelDecl):
            t.rels[d.name] = (d.dom, d.cod)
            declared_at[d.name] = d.dom
            emit(Typing(RName(d.name), CName(d.dom), CName(d.cod)), d.line)
        elif isinstance(d, Abstract):
            emit(ClassImpl(CName(d.name), or_chain([CName(s) for s in d.subtypes])), d.line)
        elif isinstance(d, OneOf):
            names = [CName(n) for n in d.names]
            for i in range(len(names) - 1):
                emit(ClassImpl(CTop(), CNot(CAnd(names[i], or_chain(names[i + 1:])))), d.line)
        elif isinstance(d, Redeclare):
            home = declared_at[d.rel]
            if home not in ancestors(d.cls):
                raise RedeclareNotSubclass(
                    f"{d.cls} is not a declared subclass of {home}, the domain of {d.rel}", d.line)
            t.rels[f"{d.cls}.{d.rel}"] = (d.cls, d.cod)
            path = RPath(d.cls, d.rel)
            restricted = Down(RName(d.rel), CName(d.cls), CName(d.cod))
            emit(Typing(path, CName(d.cls), CName(d.cod)), d.line)
            emit(RelImpl(path, restricted), d.line)
            emit(RelImpl(restricted, path), d.line)
        elif isinstance(d, Card):
            p, cod = path_term(d.cls, d.rel, d.line)
            if d.lo == 1:
                emit(RelImpl(Id(CName(d.cls)), Comp(Conv(p), p)), d.line)
            if d.hi == 1:
                emit(RelImpl(Comp(p, Conv(p)), Id(CName(cod))), d.line)
        elif isinstance(d, Unique):
            p, _ = path_term(d.cls, d.rel, d.line)
            emit(RelImpl(Comp(Conv(p), p), Id(CName(d.cls))), d.line)
        elif isinstance(d, Axiom):
            emit(d.judgment, d.line)
    return t


def load_theory(text: str) -> Theory:
    from .dsl import parse
    return compile_source(parse(text))
