"""ASCII syntax for terms, judgments and proof scripts.

Names starting with an upper-case letter are classes, lower-case names are
relations.  ``C.f`` is the relation ``f`` seen from class ``C``.  Binary
operators bind ``o`` tighter than ``&`` tighter than ``|``; all are left
associative.  ``!`` and ``~`` are prefix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .terms import (
    CAnd, CBot, CImpl, CName, CNot, COr, CTop, ClassImpl, Comp, Conv, Defined, Down, Id,
    LDown, LUp, RAnd, RBot, RDown, RName, RNot, ROr, RPath, RTop, RUp, RelImpl, Typing, Up,
    is_class_term, is_rel_term,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # 'id', 'int', 'op', 'eof'
    text: str
    line: int
    column: int


_TOKEN = re.compile(r"\s+|(?P<id>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>\d+)"
                    r"|(?P<op><=>|=>|->|<=|[()\[\],.:&|!~*])")


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    out = []
    pos = 0
    ln, col0 = line, column - 1  # col0: column offset of text[0] minus one
    line_start = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", ln, pos - line_start + 1 + col0)
        if m.lastgroup:
            out.append(Token(m.lastgroup, m.group(), ln, pos - line_start + 1 + col0))
        else:
            chunk = m.group()
            if "\n" in chunk:
                ln += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
                col0 = 0
        pos = m.end()
    out.append(Token("eof", "", ln, pos - line_start + 1 + col0))
    return out


CLASS_FUNCS = {"imp"}
REL_FUNCS = {"id", "down", "up", "ldown", "rdown", "lup", "rup"}


class Parser:
    """Recursive-descent parser over a token list."""

    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        t = tok or self.tok
        return ParseError(msg, t.line, t.column)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "id") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> Token:
        if self.tok.kind != "id":
            raise self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t

    def done(self) -> None:
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")

    # expressions

    def expr(self):
        left = self.and_expr()
        while self.at("|"):
            t = self.expect("|")
            left = self._binary(COr, ROr, left, self.and_expr(), t)
        return left

    def and_expr(self):
        left = self.comp_expr()
        while self.at("&"):
            t = self.expect("&")
            left = self._binary(CAnd, RAnd, left, self.comp_expr(), t)
        return left

    def comp_expr(self):
        left = self.unary()
        while self.at("o"):
            t = self.expect("o")
            right = self.unary()
            if not (is_rel_term(left) and is_rel_term(right)):
                raise self.error("'o' composes relations only", t)
            left = Comp(left, right)
        return left

    def unary(self):
        if self.at("!"):
            self.expect("!")
            arg = self.unary()
            return CNot(arg) if is_class_term(arg) else RNot(arg)
        if self.at("~"):
            t = self.expect("~")
            arg = self.unary()
            if not is_rel_term(arg):
                raise self.error("'~' applies to relations only", t)
            return Conv(arg)
        return self.atom()

    def _binary(self, cls_op, rel_op, left, right, tok: Token):
        if is_class_term(left) and is_class_term(right):
            return cls_op(left, right)
        if is_rel_term(left) and is_rel_term(right):
            return rel_op(left, right)
        raise self.error(f"operands of {tok.text!r} mix classes and relations", tok)

    def atom(self):
        if self.at("("):
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return e
        t = self.ident()
        name = t.text
        if name == "Top":
            return CTop()
        if name == "Bot":
            return CBot()
        if name == "top":
            return RTop()
        if name == "bot":
            return RBot()
        if name == "o":
            raise self.error("'o' is the composition operator", t)
        if self.at("(") and (name in REL_FUNCS or name in CLASS_FUNCS):
            return self.call(name)
        if name[0].isupper():
            if self.at(".") and self.peek().kind == "id":
                self.expect(".")
                r = self.ident()
                if not r.text[0].islower():
                    raise self.error("relation names start with a lower-case letter", r)
                return RPath(name, r.text)
            return CName(name)
        if name[0].islower() or name[0] == "_":
            return RName(name)
        raise self.error(f"bad name {name!r}", t)

    def cterm(self):
        t = self.tok
        e = self.expr()
        if not is_class_term(e):
            raise self.error("expected a class term", t)
        return e

    def rterm(self):
        t = self.tok
        e = self.expr()
        if not is_rel_term(e):
            raise self.error("expected a relation term", t)
        return e

    def call(self, name: str):
        self.expect("(")
        if name == "imp":
            a = self.cterm()
            self.expect(",")
            b = self.cterm()
            out = CImpl(a, b)
        elif name == "id":
            out = Id(self.cterm())
        else:
            f = self.rterm()
            self.expect(",")
            a = self.cterm()
            if name in ("down", "up"):
                self.expect(",")
                b = self.cterm()
                out = (Down if name == "down" else Up)(f, a, b)
            else:
                out = {"ldown": LDown, "rdown": RDown, "lup": LUp, "rup": RUp}[name](f, a)
        self.expect(")")
        return out

    # judgments

    def judgment(self):
        if self.at("def") and self.peek().text == "(":
            self.expect("def")
            self.expect("(")
            a = self.cterm()
            self.expect(",")
            b = self.cterm()
            self.expect(",")
            t = self.tok
            term = self.rterm()
            if not isinstance(term, (Down, Up)):
                raise self.error("def(...) wraps a down(...) or up(...) term", t)
            self.expect(")")
            return Defined(a, b, term)
        start = self.tok
        e = self.expr()
        if self.at(":"):
            self.expect(":")
            if not is_rel_term(e):
                raise self.error("only relations have a typing", start)
            cod_or_dom = self.cterm()
            if self.at("->"):
                self.expect("->")
                return Typing(e, cod_or_dom, self.cterm())
            if isinstance(e, RPath):
                return Typing(RName(e.rel), CName(e.cls), cod_or_dom)
            raise self.error("expected '->'")
        if self.at("=>"):
            t = self.expect("=>")
            right = self.expr()
            if is_class_term(e) and is_class_term(right):
                return ClassImpl(e, right)
            if is_rel_term(e) and is_rel_term(right):
                return RelImpl(e, right)
            raise self.error("'=>' between a class and a relation", t)
        if is_class_term(e):
            return ClassImpl(CTop(), e)
        raise self.error("a bare relation is not a judgment", start)


def parse_term(text: str, line: int = 1, column: int = 1):
    p = Parser(tokenize(text, line, column))
    e = p.expr()
    p.done()
    return e


def parse_judgment(text: str, line: int = 1, column: int = 1):
    p = Parser(tokenize(text, line, column))
    j = p.judgment()
    p.done()
    return j


# printing

_LEVEL = {COr: 1, ROr: 1, CAnd: 2, RAnd: 2, Comp: 3}
_SYMBOL = {COr: "|", ROr: "|", CAnd: "&", RAnd: "&", Comp: "o"}


def _level(t) -> int:
    if type(t) in _LEVEL:
        return _LEVEL[type(t)]
    if isinstance(t, (CNot, RNot, Conv)):
        return 4
    return 5


def show(t) -> str:
    """Canonical text of a term or judgment; parses back to the same tree."""
    if isinstance(t, Typing):
        return f"{show(t.rel)} : {show(t.dom)} -> {show(t.cod)}"
    if isinstance(t, RelImpl):
        return f"{show(t.left)} => {show(t.right)}"
    if isinstance(t, ClassImpl):
        if isinstance(t.left, CTop):
            return show(t.right)
        return f"{show(t.left)} => {show(t.right)}"
    if isinstance(t, Defined):
        return f"def({show(t.dom)}, {show(t.cod)}, {show(t.term)})"
    kind = type(t)
    if kind in _LEVEL:
        lvl = _LEVEL[kind]
        left, right = show(t.left), show(t.right)
        if _level(t.left) < lvl:
            left = f"({left})"
        if _level(t.right) <= lvl:
            right = f"({right})"
        return f"{left} {_SYMBOL[kind]} {right}"
    if isinstance(t, (CNot, RNot, Conv)):
        inner = show(t.arg)
        if _level(t.arg) < 4:
            inner = f"({inner})"
        return ("~" if isinstance(t, Conv) else "!") + inner
    if isinstance(t, (CName, RName)):
        return t.name
    if isinstance(t, RPath):
        return f"{t.cls}.{t.rel}"
    if isinstance(t, CTop):
        return "Top"
    if isinstance(t, CBot):
        return "Bot"
    if isinstance(t, RTop):
        return "top"
    if isinstance(t, RBot):
        return "bot"
    if isinstance(t, CImpl):
        return f"imp({show(t.left)}, {show(t.right)})"
    if isinstance(t, Id):
        return f"id({show(t.cls)})"
    if isinstance(t, (Down, Up)):
        name = "down" if isinstance(t, Down) else "up"
        return f"{name}({show(t.rel)}, {show(t.dom)}, {show(t.cod)})"
    if isinstance(t, (LDown, LUp)):
        name = "ldown" if isinstance(t, LDown) else "lup"
        return f"{name}({show(t.rel)}, {show(t.dom)})"
    if isinstance(t, (RDown, RUp)):
        name = "rdown" if isinstance(t, RDown) else "rup"
        return f"{name}({show(t.rel)}, {show(t.cod)})"
    raise TypeError(f"not a term: {t!r}")


# proof scripts


@dataclass(frozen=True)
class Step:
    index: int
    judgment: object
    rule: str                       # rule name, "hyp" or "lemma"
    premises: tuple[int, ...] = ()
    lemma: Optional[str] = None
    line: int = 0

    def justification(self) -> str:
        parts = [self.rule] + ([self.lemma] if self.lemma else []) + [str(p) for p in self.premises]
        return " ".join(parts)


@dataclass(frozen=True)
class Derivation:
    steps: tuple[Step, ...]

    @property
    def conclusion(self):
        return self.steps[-1].judgment if self.steps else None

    @property
    def hypotheses(self) -> list:
        return [s.judgment for s in self.steps if s.rule == "hyp"]


_STEP = re.compile(r"\s*(\d+)\s*\.")
_JUST = re.compile(r"\[([^\[\]]*)\]\s*$")


def parse_script(text: str) -> Derivation:
    steps = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _STEP.match(line)
        if m is None:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected a step number like '3.'", ln, col)
        index = int(m.group(1))
        j = _JUST.search(line)
        if j is None or j.start() < m.end():
            raise ParseError("missing justification '[rule premises]'", ln, len(line) + 1)
        body = line[m.end():j.start()]
        judgment = parse_judgment(body, ln, m.end() + 1)
        words = j.group(1).split()
        just_col = j.start() + 2
        if not words:
            raise ParseError("empty justification", ln, just_col)
        rule, rest = words[0], words[1:]
        lemma = None
        if rule == "lemma":
            if not rest:
                raise ParseError("lemma needs a name", ln, just_col)
            lemma, rest = rest[0], rest[1:]
        try:
            premises = tuple(int(w) for w in rest)
        except ValueError:
            raise ParseError("premises must be step numbers", ln, just_col) from None
        steps.append(Step(index, judgment, rule, premises, lemma, ln))
    return Derivation(tuple(steps))


def show_script(d: Derivation) -> str:
    return "".join(f"{s.index}. {show(s.judgment)} [{s.justification()}]\n" for s in d.steps)
