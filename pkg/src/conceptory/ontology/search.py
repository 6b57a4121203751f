"""Bounded model finding for compiled theories."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator, Optional

from ..core import Cell1, CellError, Subset, Universe, _rect, _submasks_ascending
from ..kernel.semantics import ModelAssignment, UnboundName, holds, try_eval
from ..kernel.syntax import show
from ..kernel.terms import CName, RName, RPath, children
from .theory import Theory

MAX_UNIVERSE = 16


class BoundTooLarge(ValueError):
    pass


def _deps(t, paths: set[str], out: set[tuple[str, str]]) -> None:
    if isinstance(t, CName):
        out.add(("c", t.name))
    elif isinstance(t, RName):
        out.add(("r", t.name))
    elif isinstance(t, RPath):
        key = f"{t.cls}.{t.rel}"
        if key in paths:
            out.add(("r", key))
        else:
            out.add(("c", t.cls))
            out.add(("r", t.rel))
    else:
        for c in children(t):
            _deps(c, paths, out)


def _variables(t: Theory) -> list[tuple[str, str]]:
    return [("c", c) for c in t.classes] + [("r", r) for r in t.rels]


def _schedule(t: Theory, order: list[tuple[str, str]]) -> tuple[list[list], list]:
    """Attach each judgment to the position of its last-bound name."""
    pos = {v: i for i, v in enumerate(order)}
    paths = t.paths
    at: list[list] = [[] for _ in order]
    closed = []
    for j in t.judgments:
        deps: set[tuple[str, str]] = set()
        _deps(j, paths, deps)
        missing = [name for v in deps if v not in pos for name in [v[1]]]
        if missing:
            raise UnboundName(sorted(missing)[0])
        if deps:
            at[max(pos[v] for v in deps)].append(j)
        else:
            closed.append(j)
    return at, closed


def _class_candidates(u: Universe, nonempty: bool) -> list[Subset]:
    subs = u.subsets()
    return subs[1:] if nonempty else subs


def _rel_candidates(m: ModelAssignment, t: Theory, name: str) -> Iterator[Cell1]:
    dom_name, cod_name = t.rels[name]
    dom, cod = m.classes[dom_name], m.classes[cod_name]
    n = m.universe.size
    for bits in _submasks_ascending(_rect(n, dom.bits, cod.bits)):
        yield Cell1(dom, cod, bits)


def _search_at(t: Theory, u: Universe, nonempty: bool) -> Optional[ModelAssignment]:
    order = _variables(t)
    at, closed = _schedule(t, order)
    m = ModelAssignment(u, rel_types=dict(t.rels))
    if not all(holds(j, m) for j in closed):
        return None
    class_cands = _class_candidates(u, nonempty)

    def go(k: int) -> bool:
        if k == len(order):
            return True
        kind, name = order[k]
        if kind == "c":
            cands = class_cands
            table = m.classes
        else:
            cands = _rel_candidates(m, t, name)
            table = m.rels
        for value in cands:
            table[name] = value
            if all(holds(j, m) for j in at[k]) and go(k + 1):
                return True
        table.pop(name, None)
        return False

    return m if go(0) else None


def _check_bound(max_universe: int) -> None:
    if not 1 <= max_universe <= MAX_UNIVERSE:
        raise BoundTooLarge(f"universe bound must be in 1..{MAX_UNIVERSE}, got {max_universe}")


def find_model(t: Theory, max_universe: int, nonempty: bool = False) -> Optional[ModelAssignment]:
    """First model in canonical order over universe sizes ``1..max_universe``.

    ``None`` means there is no model up to the bound, not that the theory is
    inconsistent.
    """
    _check_bound(max_universe)
    for n in range(1, max_universe + 1):
        m = _search_at(t, Universe(n), nonempty)
        if m is not None:
            return m
    return None


def oracle_find_model(t: Theory, max_universe: int, nonempty: bool = False) -> Optional[ModelAssignment]:
    """Reference search: the plain product of all assignments, tested whole.

    Classes vary slowest-first in declaration order, then relations; the
    first satisfying assignment is therefore the canonical first model.
    """
    _check_bound(max_universe)
    for n in range(1, max_universe + 1):
        u = Universe(n)
        cands = _class_candidates(u, nonempty)
        for choice in itertools.product(cands, repeat=len(t.classes)):
            classes = dict(zip(t.classes, choice))
            m = ModelAssignment(u, classes, {}, dict(t.rels))
            rel_lists = [list(_rel_candidates(m, t, r)) for r in t.rels]
            for cells in itertools.product(*rel_lists):
                m.rels = dict(zip(t.rels, cells))
                if all(holds(j, m) for j in t.judgments):
                    return m
    return None


# verification ------------------------------------------------------------------


@dataclass(frozen=True)
class VerifyRow:
    judgment: object
    value: Optional[bool]  # None when a term is undefined in the model
    line: int

    def describe(self) -> str:
        mark = {True: "true", False: "FALSE", None: "UNDEFINED"}[self.value]
        return f"{mark:9} {show(self.judgment)}"


@dataclass(frozen=True)
class VerifyReport:
    rows: tuple[VerifyRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.value is True for r in self.rows)

    def describe(self) -> str:
        body = "".join(r.describe() + "\n" for r in self.rows)
        verdict = "PASS" if self.passed else "FAIL"
        bad = sum(r.value is not True for r in self.rows)
        return body + f"{verdict}: {len(self.rows) - bad}/{len(self.rows)} judgments hold\n"


def verify_model(t: Theory, m: ModelAssignment) -> VerifyReport:
    for c in t.classes:
        m.cls(c)
    for r in t.rels:
        m.rel(r)
    rows = tuple(VerifyRow(j, try_eval(j, m), line) for j, line in zip(t.judgments, t.origins))
    return VerifyReport(rows)


# model files -----------------------------------------------------------------------


class ModelFormatError(ValueError):
    pass


def model_to_json(m: ModelAssignment) -> dict:
    rels = {}
    for name, cell in m.rels.items():
        dom, cod = m.rel_types[name]
        rels[name] = {"dom": dom, "cod": cod, "pairs": [list(p) for p in sorted(cell.pairs)]}
    return {
        "universe": m.universe.size,
        "classes": {name: list(s) for name, s in m.classes.items()},
        "rels": rels,
    }


def dump_model(m: ModelAssignment) -> str:
    return json.dumps(model_to_json(m), indent=2) + "\n"


def model_from_json(data: dict) -> ModelAssignment:
    try:
        u = Universe(int(data["universe"]))
        classes = {}
        for name, elems in data["classes"].items():
            if any(not 0 <= e < u.size for e in elems):
                raise ModelFormatError(f"class {name}: element outside 0..{u.size - 1}")
            classes[name] = u.subset(elems)
        m = ModelAssignment(u, classes)
        for name, spec in data["rels"].items():
            dom, cod = spec["dom"], spec["cod"]
            if dom not in classes or cod not in classes:
                raise ModelFormatError(f"relation {name}: unknown boundary class")
            m.rels[name] = Cell1.of(classes[dom], classes[cod], [tuple(p) for p in spec["pairs"]])
            m.rel_types[name] = (dom, cod)
        return m
    except (KeyError, TypeError) as e:
        raise ModelFormatError(f"malformed model document: {e}") from None
    except CellError as e:
        raise ModelFormatError(str(e)) from None


def load_model(text: str) -> ModelAssignment:
    try:
        return model_from_json(json.loads(text))
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
