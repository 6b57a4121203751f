"""Term and judgment trees of the class/relationship language."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


# class terms


@dataclass(frozen=True)
class CName:
    name: str


@dataclass(frozen=True)
class CTop:
    pass


@dataclass(frozen=True)
class CBot:
    pass


@dataclass(frozen=True)
class CAnd:
    left: "ClassTerm"
    right: "ClassTerm"


@dataclass(frozen=True)
class COr:
    left: "ClassTerm"
    right: "ClassTerm"


@dataclass(frozen=True)
class CNot:
    arg: "ClassTerm"


@dataclass(frozen=True)
class CImpl:
    left: "ClassTerm"
    right: "ClassTerm"


ClassTerm = Union[CName, CTop, CBot, CAnd, COr, CNot, CImpl]
CLASS_TYPES = (CName, CTop, CBot, CAnd, COr, CNot, CImpl)


# relation terms


@dataclass(frozen=True)
class RName:
    name: str


@dataclass(frozen=True)
class RPath:
    """``C.f``: the relation ``f`` seen from class ``C``."""
    cls: str
    rel: str


@dataclass(frozen=True)
class Id:
    cls: ClassTerm


@dataclass(frozen=True)
class Comp:
    """``f o g``: apply ``g`` first, then ``f``."""
    left: "RelTerm"
    right: "RelTerm"


@dataclass(frozen=True)
class Conv:
    arg: "RelTerm"


@dataclass(frozen=True)
class Down:
    rel: "RelTerm"
    dom: ClassTerm
    cod: ClassTerm


@dataclass(frozen=True)
class Up:
    rel: "RelTerm"
    dom: ClassTerm
    cod: ClassTerm


@dataclass(frozen=True)
class LDown:
    rel: "RelTerm"
    dom: ClassTerm


@dataclass(frozen=True)
class RDown:
    rel: "RelTerm"
    cod: ClassTerm


@dataclass(frozen=True)
class LUp:
    rel: "RelTerm"
    dom: ClassTerm


@dataclass(frozen=True)
class RUp:
    rel: "RelTerm"
    cod: ClassTerm


@dataclass(frozen=True)
class RAnd:
    left: "RelTerm"
    right: "RelTerm"


@dataclass(frozen=True)
class ROr:
    left: "RelTerm"
    right: "RelTerm"


@dataclass(frozen=True)
class RNot:
    arg: "RelTerm"


@dataclass(frozen=True)
class RTop:
    pass


@dataclass(frozen=True)
class RBot:
    pass


RelTerm = Union[RName, RPath, Id, Comp, Conv, Down, Up, LDown, RDown, LUp, RUp,
                RAnd, ROr, RNot, RTop, RBot]
REL_TYPES = (RName, RPath, Id, Comp, Conv, Down, Up, LDown, RDown, LUp, RUp,
             RAnd, ROr, RNot, RTop, RBot)


# judgments


@dataclass(frozen=True)
class Typing:
    rel: RelTerm
    dom: ClassTerm
    cod: ClassTerm


@dataclass(frozen=True)
class RelImpl:
    left: RelTerm
    right: RelTerm


@dataclass(frozen=True)
class ClassImpl:
    left: ClassTerm
    right: ClassTerm


@dataclass(frozen=True)
class Defined:
    """``def(A, B, down(f, A2, B2))`` or the ``up`` form."""
    dom: ClassTerm
    cod: ClassTerm
    term: Union[Down, Up]


Judgment = Union[Typing, RelImpl, ClassImpl, Defined]
JUDGMENT_TYPES = (Typing, RelImpl, ClassImpl, Defined)


def is_class_term(t: object) -> bool:
    return isinstance(t, CLASS_TYPES)


def is_rel_term(t: object) -> bool:
    return isinstance(t, REL_TYPES)


def children(t: object) -> tuple:
    """Immediate sub-terms in field order."""
    return tuple(getattr(t, f) for f in t.__dataclass_fields__
                 if not isinstance(getattr(t, f), str))


def class_names(t: object, out: list | None = None) -> list[str]:
    """Class names occurring in a term or judgment, first occurrence order."""
    if out is None:
        out = []
    if isinstance(t, CName):
        if t.name not in out:
            out.append(t.name)
    elif isinstance(t, RPath):
        if t.cls not in out:
            out.append(t.cls)
    else:
        for c in children(t):
            class_names(c, out)
    return out


def rel_names(t: object, out: list | None = None) -> list[str]:
    if out is None:
        out = []
    if isinstance(t, RName):
        if t.name not in out:
            out.append(t.name)
    elif isinstance(t, RPath):
        if t.rel not in out:
            out.append(t.rel)
    else:
        for c in children(t):
            rel_names(c, out)
    return out


def or_chain(terms: list) -> object:
    """Left-nested disjunction ``((a | b) | c) ...`` of one or more terms."""
    out = terms[0]
    for t in terms[1:]:
        out = COr(out, t) if is_class_term(out) else ROr(out, t)
    return out
