"""Parser for ``.cno`` ontology files, one declaration per line."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..kernel.syntax import ParseError, Parser, tokenize
from ..kernel.terms import RPath, class_names, is_class_term, rel_names


class OntologyError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.message = message
        self.line = line
        self.column = column


class OntologySyntaxError(OntologyError):
    pass


class DuplicateName(OntologyError):
    pass


class UseBeforeDecl(OntologyError):
    pass


@dataclass(frozen=True)
class ClassDecl:
    name: str
    supertype: Optional[object] = None
    line: int = 0


@dataclass(frozen=True)
class RelDecl:
    name: str
    dom: str
    cod: str
    line: int = 0


@dataclass(frozen=True)
class Abstract:
    name: str
    subtypes: tuple[str, ...]
    line: int = 0


@dataclass(frozen=True)
class OneOf:
    names: tuple[str, ...]
    line: int = 0


@dataclass(frozen=True)
class Redeclare:
    cls: str
    rel: str
    cod: str
    line: int = 0


@dataclass(frozen=True)
class Card:
    cls: str
    rel: str
    lo: int
    hi: Optional[int]  # None for '*'
    line: int = 0


@dataclass(frozen=True)
class Unique:
    cls: str
    rel: str
    line: int = 0


@dataclass(frozen=True)
class Axiom:
    judgment: object
    line: int = 0


Decl = Union[ClassDecl, RelDecl, Abstract, OneOf, Redeclare, Card, Unique, Axiom]


@dataclass(frozen=True)
class OntologySource:
    decls: tuple[Decl, ...] = ()

    def __len__(self) -> int:
        return len(self.decls)


class _LineParser(Parser):
    def name(self, upper: bool) -> str:
        t = self.ident()
        if t.text[0].isupper() != upper or t.text in ("o", "Top", "Bot", "top", "bot"):
            kind = "class" if upper else "relation"
            case = "an upper" if upper else "a lower"
            raise OntologySyntaxError(f"{kind} names start with {case}-case letter, got {t.text!r}",
                                      t.line, t.column)
        return t.text

    def path(self) -> tuple[str, str, object]:
        t = self.tok
        c = self.name(True)
        self.expect(".")
        return c, self.name(False), t


class _Scope:
    def __init__(self) -> None:
        self.classes: dict[str, int] = {}
        self.rels: dict[str, int] = {}
        self.paths: set[str] = set()

    def need_class(self, name: str, tok) -> None:
        if name not in self.classes:
            raise UseBeforeDecl(f"class {name!r} is not declared", tok.line, tok.column)

    def need_rel(self, name: str, tok) -> None:
        if name not in self.rels and name not in self.paths:
            raise UseBeforeDecl(f"relation {name!r} is not declared", tok.line, tok.column)


def parse(text: str) -> OntologySource:
    decls: list[Decl] = []
    scope = _Scope()
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0]
        if not line.strip():
            continue
        try:
            decls.append(_decl(_LineParser(tokenize(line, ln, 1)), scope, ln))
        except ParseError as e:
            raise OntologySyntaxError(e.message, e.line, e.column) from None
    return OntologySource(tuple(decls))


def _declare_class(scope: _Scope, name: str, tok) -> None:
    if name in scope.classes:
        raise DuplicateName(f"class {name!r} declared twice", tok.line, tok.column)
    scope.classes[name] = tok.line


def _decl(p: _LineParser, scope: _Scope, ln: int) -> Decl:
    kw = p.ident()
    if kw.text == "class":
        t = p.tok
        name = p.name(True)
        sup = None
        if p.at("<="):
            p.expect("<=")
            st = p.tok
            sup = p.expr()
            if not is_class_term(sup):
                raise OntologySyntaxError("expected a class expression", st.line, st.column)
            for n in class_names(sup):
                scope.need_class(n, st)
        p.done()
        _declare_class(scope, name, t)
        return ClassDecl(name, sup, ln)
    if kw.text == "abstract":
        t = p.tok
        name = p.name(True)
        scope.need_class(name, t)
        p.expect("=>")
        subs = []
        while True:
            st = p.tok
            subs.append(p.name(True))
            scope.need_class(subs[-1], st)
            if not p.at("|"):
                break
            p.expect("|")
        p.done()
        return Abstract(name, tuple(subs), ln)
    if kw.text == "rel":
        t = p.tok
        name = p.name(False)
        p.expect(":")
        dt = p.tok
        dom = p.name(True)
        scope.need_class(dom, dt)
        p.expect("->")
        ct = p.tok
        cod = p.name(True)
        scope.need_class(cod, ct)
        p.done()
        if name in scope.rels:
            raise DuplicateName(f"relation {name!r} declared twice", t.line, t.column)
        scope.rels[name] = ln
        return RelDecl(name, dom, cod, ln)
    if kw.text == "oneof":
        p.expect("(")
        names = []
        while True:
            st = p.tok
            names.append(p.name(True))
            scope.need_class(names[-1], st)
            if p.at(")"):
                break
            p.expect(",")
        p.expect(")")
        p.done()
        if len(names) < 2:
            raise OntologySyntaxError("oneof needs at least two classes", kw.line, kw.column)
        return OneOf(tuple(names), ln)
    if kw.text == "redeclare":
        c, r, t = p.path()
        scope.need_class(c, t)
        if r not in scope.rels:
            raise UseBeforeDecl(f"relation {r!r} is not declared", t.line, t.column)
        p.expect(":")
        ct = p.tok
        cod = p.name(True)
        scope.need_class(cod, ct)
        p.done()
        key = f"{c}.{r}"
        if key in scope.paths:
            raise DuplicateName(f"{key} redeclared twice", t.line, t.column)
        scope.paths.add(key)
        return Redeclare(c, r, cod, ln)
    if kw.text in ("card", "unique"):
        c, r, t = p.path()
        scope.need_class(c, t)
        if kw.text == "unique":
            p.done()
            return Unique(c, r, ln)
        p.expect("[")
        lo_t = p.tok
        if lo_t.text not in ("0", "1"):
            raise OntologySyntaxError("lower bound must be 0 or 1", lo_t.line, lo_t.column)
        p.i += 1
        p.expect(",")
        hi_t = p.tok
        if hi_t.text not in ("1", "*"):
            raise OntologySyntaxError("upper bound must be 1 or *", hi_t.line, hi_t.column)
        p.i += 1
        p.expect("]")
        p.done()
        return Card(c, r, int(lo_t.text), None if hi_t.text == "*" else 1, ln)
    if kw.text == "axiom":
        st = p.tok
        j = p.judgment()
        p.done()
        for n in class_names(j):
            scope.need_class(n, st)
        for n in rel_names(j):
            scope.need_rel(n, st)
        return Axiom(j, ln)
    raise OntologySyntaxError(f"unknown declaration {kw.text!r}", kw.line, kw.column)
