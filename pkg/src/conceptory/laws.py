"""Machine checks for the laws of the relational model.

Every law is a set of *claims*.  A claim is a plain predicate over concrete
cells and subsets, so a recorded violation can be fed straight back through
:func:`replay`.  Laws run either exhaustively over a small universe (in the
canonical cell order) or on seeded random samples.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional

from .core import (
    Cell1, CellError, Subset, TwoCell, Universe, _iter_bits, _rect, _submasks_ascending,
    all_cells, big_join, bottom, cells_between, complement, compose, equivalent, extend,
    extend_cod, extend_dom, hcompose, hybrid_post, hybrid_pre, identity, identity2, impl,
    injection, is_functional, is_map, is_total, join, leq, logical_pullback, meet,
    projection, restrict, restrict_cod, restrict_dom, right_adjoint, search_right_adjoint,
    top, transpose, vcompose,
)

MAX_EXHAUSTIVE = 3
MAX_RANDOM = 8
MAX_RECORDED = 25


@dataclass(frozen=True)
class LawSuiteConfig:
    universe_size: int = 2
    mode: str = "exhaustive"
    samples: int = 10_000
    seed: int = 0
    laws: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"mode must be 'exhaustive' or 'random', not {self.mode!r}")
        if self.universe_size < 1:
            raise ValueError("universe_size must be positive")
        if self.mode == "exhaustive" and self.universe_size > MAX_EXHAUSTIVE:
            raise ValueError(f"exhaustive mode needs universe_size <= {MAX_EXHAUSTIVE}")
        if self.mode == "random" and self.universe_size > MAX_RANDOM:
            raise ValueError(f"random mode needs universe_size <= {MAX_RANDOM}")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.laws is not None:
            unknown = [n for n in self.laws if n not in LAWS]
            if unknown:
                raise ValueError(f"unknown laws: {', '.join(unknown)}")


@dataclass(frozen=True)
class Violation:
    claim: str
    args: tuple

    def to_dict(self) -> dict:
        return {"claim": self.claim, "args": [_encode(a) for a in self.args]}

    @classmethod
    def from_dict(cls, data: dict, universe: Universe) -> Violation:
        return cls(data["claim"], tuple(_decode(a, universe) for a in data["args"]))


@dataclass
class LawReport:
    name: str
    asserted: bool = True
    cases_checked: int = 0
    violation_count: int = 0
    violations: list[Violation] = field(default_factory=list)
    elapsed: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def record(self, claim: str, args: tuple, ok: bool) -> None:
        self.cases_checked += 1
        if not ok:
            self.violation_count += 1
            if len(self.violations) < MAX_RECORDED:
                self.violations.append(Violation(claim, args))

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "law": self.name,
            "asserted": self.asserted,
            "passed": self.passed,
            "cases": self.cases_checked,
            "violation_count": self.violation_count,
            "violations": [v.to_dict() for v in self.violations],
            "notes": self.notes,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


# -- (de)serialisation of claim arguments ------------------------------------


def cell_to_json(c: Cell1) -> dict:
    return {"dom": list(c.dom), "cod": list(c.cod), "pairs": [list(p) for p in sorted(c.pairs)]}


def cell_from_json(d: dict, u: Universe) -> Cell1:
    return Cell1.of(u.subset(d["dom"]), u.subset(d["cod"]), [tuple(p) for p in d["pairs"]])


def _encode(x: Any) -> dict:
    if isinstance(x, Cell1):
        return {"cell": cell_to_json(x)}
    if isinstance(x, Subset):
        return {"subset": list(x)}
    if isinstance(x, tuple):
        return {"tuple": [_encode(y) for y in x]}
    if isinstance(x, (str, int)):
        return {"value": x}
    raise TypeError(f"cannot encode {x!r}")


def _decode(d: dict, u: Universe) -> Any:
    if "cell" in d:
        return cell_from_json(d["cell"], u)
    if "subset" in d:
        return u.subset(d["subset"])
    if "tuple" in d:
        return tuple(_decode(y, u) for y in d["tuple"])
    return d["value"]


# -- exhaustive enumeration space ----------------------------------------------


class Space:
    """All cells of a universe plus the indexes the generators need."""

    _cache: dict[int, Space] = {}

    def __init__(self, u: Universe):
        self.universe = u
        self.subsets = u.subsets()
        self.cells = all_cells(u)
        self.hom: dict[tuple[int, int], list[Cell1]] = {}
        for c in self.cells:
            self.hom.setdefault((c.dom.bits, c.cod.bits), []).append(c)
        self.by_dom: dict[int, list[Cell1]] = {}
        for c in self.cells:
            self.by_dom.setdefault(c.dom.bits, []).append(c)

    @classmethod
    def of(cls, u: Universe) -> Space:
        if u.size not in cls._cache:
            cls._cache[u.size] = cls(u)
        return cls._cache[u.size]

    def homs(self) -> Iterator[tuple[Subset, Subset, list[Cell1]]]:
        for a in self.subsets:
            for b in self.subsets:
                yield a, b, self.hom[(a.bits, b.bits)]

    def composable(self) -> Iterator[tuple[Cell1, Cell1]]:
        """Pairs ``(f, g)`` with ``f o g`` defined, in canonical order."""
        for g in self.cells:
            for f in self.by_dom[g.cod.bits]:
                yield f, g

    def endos(self) -> Iterator[tuple[Subset, list[Cell1]]]:
        for a in self.subsets:
            yield a, self.hom[(a.bits, a.bits)]

    def supersets(self, s: Subset) -> list[Subset]:
        return [t for t in self.subsets if s <= t]

    def parallel_chains(self, length: int) -> Iterator[tuple[Cell1, ...]]:
        for _, _, hom in self.homs():
            yield from _chains(hom, length)


def _chains(cells: list[Cell1], length: int) -> Iterator[tuple[Cell1, ...]]:
    if length == 1:
        for c in cells:
            yield (c,)
        return
    for head in _chains(cells, length - 1):
        for c in cells:
            if leq(head[-1], c):
                yield head + (c,)


# -- random sampling helpers ---------------------------------------------------


def _rsubset(rng: random.Random, u: Universe) -> Subset:
    return Subset(u, rng.getrandbits(u.size))


def _rsub(rng: random.Random, s: Subset) -> Subset:
    return Subset(s.universe, rng.getrandbits(s.universe.size) & s.bits)


def _rsup(rng: random.Random, s: Subset) -> Subset:
    return Subset(s.universe, rng.getrandbits(s.universe.size) | s.bits)


def _rcell(rng: random.Random, dom: Subset, cod: Subset) -> Cell1:
    n = dom.universe.size
    return Cell1(dom, cod, rng.getrandbits(n * n) & _rect(n, dom.bits, cod.bits))


def _rany(rng: random.Random, u: Universe) -> Cell1:
    return _rcell(rng, _rsubset(rng, u), _rsubset(rng, u))


def _rbelow(rng: random.Random, g: Cell1, dom: Subset, cod: Subset) -> Cell1:
    """A cell on ``dom x cod`` whose pairs lie inside ``g``."""
    n = g.universe.size
    return Cell1(dom, cod, rng.getrandbits(n * n) & g.bits & _rect(n, dom.bits, cod.bits))


def _rabove(rng: random.Random, g: Cell1, dom: Subset, cod: Subset) -> Cell1:
    """A cell on ``dom x cod`` containing ``g``; needs ``g`` to fit the boundary."""
    n = g.universe.size
    return Cell1(dom, cod, g.bits | (rng.getrandbits(n * n) & _rect(n, dom.bits, cod.bits)))


def _rendo_pair(rng: random.Random, u: Universe) -> tuple[Subset, Cell1, Cell1]:
    a = _rsubset(rng, u)
    return a, _rcell(rng, a, a), _rcell(rng, a, a)


# -- claims ----------------------------------------------------------------------

CLAIMS: dict[str, Callable[..., bool]] = {}


def claim(fn: Callable[..., bool]) -> Callable[..., bool]:
    CLAIMS[fn.__name__] = fn
    return fn


def _holds(thunk: Callable[[], bool]) -> bool:
    # An undefined construction inside a claim counts as a failure.
    try:
        return bool(thunk())
    except CellError:
        return False


def replay(v: Violation) -> bool:
    """Re-run the claim behind a violation; ``False`` reproduces the failure."""
    return CLAIMS[v.claim](*v.args)


@dataclass(frozen=True)
class Claim:
    name: str
    exhaustive: Callable[[Space], Iterable[tuple]]
    sample: Callable[[random.Random, Universe], tuple]
    # optional batched exhaustive checker returning (cases, violations)
    batched: Optional[Callable[[Space], tuple[int, list[tuple]]]] = None

    @property
    def check(self) -> Callable[..., bool]:
        return CLAIMS[self.name]


@dataclass(frozen=True)
class Law:
    name: str
    claims: tuple[Claim, ...]
    asserted: bool = True
    annotate: Optional[Callable[[LawReport, LawSuiteConfig], None]] = None


# interchange -------------------------------------------------------------------


@claim
def interchange(f1: Cell1, g1: Cell1, h1: Cell1, f2: Cell1, g2: Cell1, h2: Cell1) -> bool:
    def go() -> bool:
        a1, a2 = TwoCell(f1, g1), TwoCell(g1, h1)
        b1, b2 = TwoCell(f2, g2), TwoCell(g2, h2)
        stacked_after = vcompose(hcompose(b2, a2), hcompose(b1, a1))
        stacked_first = hcompose(vcompose(b2, b1), vcompose(a2, a1))
        return stacked_after == stacked_first
    return _holds(go)


def _interchange_batched(space: Space) -> tuple[int, list[tuple]]:
    # Group six-tuples by their middle pair (g1, g2).  For a fixed middle the
    # claim reduces to: every lower composite sits under the middle composite,
    # every upper composite sits over it, and every lower composite sits under
    # every upper one -- the last is exactly union(lower) <= meet(upper).
    cells = space.cells
    below = {c: [d for d in cells if leq(d, c)] for c in cells}
    above = {c: [d for d in cells if leq(c, d)] for c in cells}
    count = 0
    bad: list[tuple] = []
    for g2, g1 in space.composable():
        mid = compose(g2, g1).bits
        lows = [(f1, f2, compose(f2, f1).bits) for f1 in below[g1]
                for f2 in below[g2] if f2.dom == f1.cod]
        highs = [(h1, h2, compose(h2, h1).bits) for h1 in above[g1]
                 for h2 in above[g2] if h2.dom == h1.cod]
        count += len(lows) * len(highs)
        union = 0
        for _, _, b in lows:
            union |= b
        inter = -1
        for _, _, b in highs:
            inter &= b
        fine = (union & ~mid == 0 and mid & ~inter == 0)
        if not fine:
            for f1, f2, _ in lows:
                for h1, h2, _ in highs:
                    args = (f1, g1, h1, f2, g2, h2)
                    if not interchange(*args):
                        bad.append(args)
    return count, bad


def _interchange_sample(rng: random.Random, u: Universe) -> tuple:
    a, b, c = _rsubset(rng, u), _rsubset(rng, u), _rsubset(rng, u)
    g1, g2 = _rcell(rng, a, b), _rcell(rng, b, c)
    a1, b1, c1 = _rsubset(rng, u), _rsubset(rng, u), _rsubset(rng, u)
    f1, f2 = _rbelow(rng, g1, a1, b1), _rbelow(rng, g2, b1, c1)
    a2, b2, c2 = _rsup(rng, a), _rsup(rng, b), _rsup(rng, c)
    h1, h2 = _rabove(rng, g1, a2, b2), _rabove(rng, g2, b2, c2)
    return f1, g1, h1, f2, g2, h2


def _interchange_exhaustive(space: Space) -> Iterator[tuple]:
    cells = space.cells
    for g2, g1 in space.composable():
        for f1 in cells:
            if not leq(f1, g1):
                continue
            for f2 in space.by_dom[f1.cod.bits]:
                if not leq(f2, g2):
                    continue
                for h1 in cells:
                    if not leq(g1, h1):
                        continue
                    for h2 in space.by_dom[h1.cod.bits]:
                        if leq(g2, h2):
                            yield f1, g1, h1, f2, g2, h2


# universality of restriction and extension -----------------------------------


@claim
def nabla_universality(f: Cell1, dom: Subset, cod: Subset, g: Cell1) -> bool:
    def go() -> bool:
        r = restrict(f, dom, cod)
        if (g.dom, g.cod) != (dom, cod) or not leq(r, f):
            return False
        return not leq(g, f) or leq(g, r)
    return _holds(go)


@claim
def triangle_universality(f: Cell1, dom: Subset, cod: Subset, g: Cell1) -> bool:
    def go() -> bool:
        e = extend(f, dom, cod)
        if (g.dom, g.cod) != (dom, cod) or not leq(f, e):
            return False
        return not leq(f, g) or leq(e, g)
    return _holds(go)


def _nabla_exhaustive(space: Space) -> Iterator[tuple]:
    for f in space.cells:
        for d in f.dom.subsets():
            for c in f.cod.subsets():
                for g in space.hom[(d.bits, c.bits)]:
                    yield f, d, c, g


def _nabla_sample(rng: random.Random, u: Universe) -> tuple:
    f = _rany(rng, u)
    d, c = _rsub(rng, f.dom), _rsub(rng, f.cod)
    g = _rbelow(rng, f, d, c) if rng.random() < 0.5 else _rcell(rng, d, c)
    return f, d, c, g


def _triangle_exhaustive(space: Space) -> Iterator[tuple]:
    for f in space.cells:
        for d in space.supersets(f.dom):
            for c in space.supersets(f.cod):
                for g in space.hom[(d.bits, c.bits)]:
                    yield f, d, c, g


def _triangle_sample(rng: random.Random, u: Universe) -> tuple:
    f = _rany(rng, u)
    d, c = _rsup(rng, f.dom), _rsup(rng, f.cod)
    g = _rabove(rng, f, d, c) if rng.random() < 0.5 else _rcell(rng, d, c)
    return f, d, c, g


# distributivity --------------------------------------------------------------------


@claim
def distrib_down(f: Cell1, g: Cell1, dom: Subset, cod: Subset) -> bool:
    return _holds(lambda: compose(restrict_cod(f, cod), restrict_dom(g, dom))
                  == restrict(compose(f, g), dom, cod))


@claim
def distrib_up(f: Cell1, g: Cell1, dom: Subset, cod: Subset) -> bool:
    return _holds(lambda: compose(extend_cod(f, cod), extend_dom(g, dom))
                  == extend(compose(f, g), dom, cod))


def _distrib_down_exhaustive(space: Space) -> Iterator[tuple]:
    for f, g in space.composable():
        for d in g.dom.subsets():
            for c in f.cod.subsets():
                yield f, g, d, c


def _distrib_up_exhaustive(space: Space) -> Iterator[tuple]:
    for f, g in space.composable():
        for d in space.supersets(g.dom):
            for c in space.supersets(f.cod):
                yield f, g, d, c


def _composable_sample(rng: random.Random, u: Universe) -> tuple[Cell1, Cell1]:
    a, b, c = _rsubset(rng, u), _rsubset(rng, u), _rsubset(rng, u)
    return _rcell(rng, b, c), _rcell(rng, a, b)


def _distrib_down_sample(rng: random.Random, u: Universe) -> tuple:
    f, g = _composable_sample(rng, u)
    return f, g, _rsub(rng, g.dom), _rsub(rng, f.cod)


def _distrib_up_sample(rng: random.Random, u: Universe) -> tuple:
    f, g = _composable_sample(rng, u)
    return f, g, _rsup(rng, g.dom), _rsup(rng, f.cod)


# semidistributivity ---------------------------------------------------------------


@claim
def prop1_down(f: Cell1, g: Cell1, a: Subset, b: Subset, c: Subset) -> bool:
    """``g|(b,c) o f|(a,b) <= (g o f)|(a,c)`` for ``f: A -> B``, ``g: B -> C``."""
    return _holds(lambda: leq(compose(restrict(g, b, c), restrict(f, a, b)),
                              restrict(compose(g, f), a, c)))


@claim
def prop1_up(f: Cell1, g: Cell1, a: Subset, b: Subset, c: Subset) -> bool:
    return _holds(lambda: leq(extend(compose(g, f), a, c),
                              compose(extend(g, b, c), extend(f, a, b))))


def _prop1_down_exhaustive(space: Space) -> Iterator[tuple]:
    for g, f in space.composable():
        for a in f.dom.subsets():
            for b in f.cod.subsets():
                for c in g.cod.subsets():
                    yield f, g, a, b, c


def _prop1_up_exhaustive(space: Space) -> Iterator[tuple]:
    for g, f in space.composable():
        for a in space.supersets(f.dom):
            for b in space.supersets(f.cod):
                for c in space.supersets(g.cod):
                    yield f, g, a, b, c


def _prop1_down_sample(rng: random.Random, u: Universe) -> tuple:
    g, f = _composable_sample(rng, u)
    return f, g, _rsub(rng, f.dom), _rsub(rng, f.cod), _rsub(rng, g.cod)


def _prop1_up_sample(rng: random.Random, u: Universe) -> tuple:
    g, f = _composable_sample(rng, u)
    return f, g, _rsup(rng, f.dom), _rsup(rng, f.cod), _rsup(rng, g.cod)


def _strict_prop1_witness(u: Universe) -> Optional[tuple]:
    space = Space.of(u)
    for args in _prop1_down_exhaustive(space):
        f, g, a, b, c = args
        lhs = compose(restrict(g, b, c), restrict(f, a, b))
        rhs = restrict(compose(g, f), a, c)
        if leq(lhs, rhs) and not leq(rhs, lhs):
            return args
    return None


def _annotate_prop1(report: LawReport, cfg: LawSuiteConfig) -> None:
    if cfg.mode == "exhaustive":
        w = _strict_prop1_witness(Universe(cfg.universe_size))
        report.notes["strict_inclusion_witness"] = None if w is None else [_encode(x) for x in w]


# functoriality --------------------------------------------------------------------


@claim
def restrict_monotone(f: Cell1, g: Cell1, a: Subset, b: Subset) -> bool:
    return _holds(lambda: not leq(f, g) or leq(restrict(f, a, b), restrict(g, a, b)))


@claim
def extend_monotone(f: Cell1, g: Cell1, a: Subset, b: Subset) -> bool:
    return _holds(lambda: not leq(f, g) or leq(extend(f, a, b), extend(g, a, b)))


@claim
def monoidal_unit(a: Subset, sub: Subset) -> bool:
    return _holds(lambda: leq(identity(sub), restrict(identity(a), sub, sub)))


@claim
def comonoidal_counit(a: Subset, sup: Subset) -> bool:
    return _holds(lambda: leq(extend(identity(a), sup, sup), identity(sup)))


@claim
def monoidal_mult(f: Cell1, g: Cell1, sub: Subset) -> bool:
    return _holds(lambda: leq(compose(restrict(f, sub, sub), restrict(g, sub, sub)),
                              restrict(compose(f, g), sub, sub)))


@claim
def comonoidal_comult(f: Cell1, g: Cell1, sup: Subset) -> bool:
    return _holds(lambda: leq(extend(compose(f, g), sup, sup),
                              compose(extend(f, sup, sup), extend(g, sup, sup))))


def _parallel_sub_exhaustive(space: Space) -> Iterator[tuple]:
    for f, g in space.parallel_chains(2):
        for a in f.dom.subsets():
            for b in f.cod.subsets():
                yield f, g, a, b


def _parallel_sup_exhaustive(space: Space) -> Iterator[tuple]:
    for f, g in space.parallel_chains(2):
        for a in space.supersets(f.dom):
            for b in space.supersets(f.cod):
                yield f, g, a, b


def _parallel_leq(rng: random.Random, u: Universe) -> tuple[Cell1, Cell1]:
    a, b = _rsubset(rng, u), _rsubset(rng, u)
    g = _rcell(rng, a, b)
    return _rbelow(rng, g, a, b), g


def _parallel_sub_sample(rng: random.Random, u: Universe) -> tuple:
    f, g = _parallel_leq(rng, u)
    return f, g, _rsub(rng, f.dom), _rsub(rng, f.cod)


def _parallel_sup_sample(rng: random.Random, u: Universe) -> tuple:
    f, g = _parallel_leq(rng, u)
    return f, g, _rsup(rng, f.dom), _rsup(rng, f.cod)


def _subset_sub_exhaustive(space: Space) -> Iterator[tuple]:
    for a in space.subsets:
        for s in a.subsets():
            yield a, s


def _subset_sup_exhaustive(space: Space) -> Iterator[tuple]:
    for a in space.subsets:
        for s in space.supersets(a):
            yield a, s


def _subset_sub_sample(rng: random.Random, u: Universe) -> tuple:
    a = _rsubset(rng, u)
    return a, _rsub(rng, a)


def _subset_sup_sample(rng: random.Random, u: Universe) -> tuple:
    a = _rsubset(rng, u)
    return a, _rsup(rng, a)


def _endo_pair_sub_exhaustive(space: Space) -> Iterator[tuple]:
    for a, hom in space.endos():
        for f in hom:
            for g in hom:
                for s in a.subsets():
                    yield f, g, s


def _endo_pair_sup_exhaustive(space: Space) -> Iterator[tuple]:
    for a, hom in space.endos():
        for f in hom:
            for g in hom:
                for s in space.supersets(a):
                    yield f, g, s


def _endo_pair_sub_sample(rng: random.Random, u: Universe) -> tuple:
    a, f, g = _rendo_pair(rng, u)
    return f, g, _rsub(rng, a)


def _endo_pair_sup_sample(rng: random.Random, u: Universe) -> tuple:
    a, f, g = _rendo_pair(rng, u)
    return f, g, _rsup(rng, a)


# the witness equations behind functoriality -----------------------------------


def _down2(gamma: TwoCell, a: Subset, b: Subset) -> TwoCell:
    return TwoCell(restrict(gamma.src, a, b), restrict(gamma.dst, a, b))


def _up2(gamma: TwoCell, a: Subset, b: Subset) -> TwoCell:
    return TwoCell(extend(gamma.src, a, b), extend(gamma.dst, a, b))


def _nabla2(f: Cell1, a: Subset, b: Subset) -> TwoCell:
    return TwoCell(restrict(f, a, b), f)


def _triangle2(f: Cell1, a: Subset, b: Subset) -> TwoCell:
    return TwoCell(f, extend(f, a, b))


def _phi(g: Cell1, f: Cell1, s: Subset) -> TwoCell:
    """Multiplication witness ``f| o g| -> (f o g)|`` on the sub-object ``s``."""
    return TwoCell(compose(restrict(f, s, s), restrict(g, s, s)), restrict(compose(f, g), s, s))


def _phi0(a: Subset, s: Subset) -> TwoCell:
    return TwoCell(identity(s), restrict(identity(a), s, s))


@claim
def functor_def_down(f: Cell1, g: Cell1, a: Subset, b: Subset) -> bool:
    def go() -> bool:
        gamma = TwoCell(f, g)
        gamma_ = _down2(gamma, a, b)
        return vcompose(_nabla2(g, a, b), gamma_) == vcompose(gamma, _nabla2(f, a, b))
    return _holds(go)


@claim
def functor_comp_down(f: Cell1, g: Cell1, h: Cell1, a: Subset, b: Subset) -> bool:
    def go() -> bool:
        g2, g1 = TwoCell(f, g), TwoCell(g, h)
        ident = _down2(identity2(f), a, b) == identity2(restrict(f, a, b))
        comp = _down2(vcompose(g1, g2), a, b) == vcompose(_down2(g1, a, b), _down2(g2, a, b))
        return ident and comp
    return _holds(go)


@claim
def functor_def_up(f: Cell1, g: Cell1, a: Subset, b: Subset) -> bool:
    def go() -> bool:
        gamma = TwoCell(f, g)
        gamma_ = _up2(gamma, a, b)
        return vcompose(gamma_, _triangle2(f, a, b)) == vcompose(_triangle2(g, a, b), gamma)
    return _holds(go)


@claim
def functor_comp_up(f: Cell1, g: Cell1, h: Cell1, a: Subset, b: Subset) -> bool:
    def go() -> bool:
        g2, g1 = TwoCell(f, g), TwoCell(g, h)
        ident = _up2(identity2(f), a, b) == identity2(extend(f, a, b))
        comp = _up2(vcompose(g1, g2), a, b) == vcompose(_up2(g1, a, b), _up2(g2, a, b))
        return ident and comp
    return _holds(go)


@claim
def unit_witness(a: Subset, s: Subset) -> bool:
    def go() -> bool:
        alpha = TwoCell(identity(s), identity(a))
        return alpha == vcompose(_nabla2(identity(a), s, s), _phi0(a, s))
    return _holds(go)


@claim
def mult_witness(f: Cell1, g: Cell1, s: Subset) -> bool:
    def go() -> bool:
        lhs = vcompose(_nabla2(compose(f, g), s, s), _phi(g, f, s))
        return lhs == hcompose(_nabla2(f, s, s), _nabla2(g, s, s))
    return _holds(go)


@claim
def naturality(f: Cell1, g: Cell1, h: Cell1, s: Subset) -> bool:
    """Naturality of the multiplication witness in its first argument."""
    def go() -> bool:
        beta = TwoCell(h, g)
        lhs = vcompose(_phi(g, f, s), hcompose(_down2(identity2(f), s, s), _down2(beta, s, s)))
        rhs = vcompose(_down2(hcompose(identity2(f), beta), s, s), _phi(h, f, s))
        return lhs == rhs
    return _holds(go)


@claim
def associativity(f: Cell1, g: Cell1, h: Cell1, s: Subset) -> bool:
    def go() -> bool:
        fd, hd = restrict(f, s, s), restrict(h, s, s)
        lhs = vcompose(_phi(compose(g, h), f, s), hcompose(identity2(fd), _phi(h, g, s)))
        rhs = vcompose(_phi(h, compose(f, g), s), hcompose(_phi(g, f, s), identity2(hd)))
        return lhs == rhs
    return _holds(go)


@claim
def unit_laws(f: Cell1, s: Subset) -> bool:
    def go() -> bool:
        a = f.dom
        ida, fd = identity(a), restrict(f, s, s)
        right = vcompose(_phi(ida, f, s), hcompose(identity2(fd), _phi0(a, s)))
        left = vcompose(_phi(f, ida, s), hcompose(_phi0(a, s), identity2(fd)))
        return right == identity2(fd) and left == identity2(fd)
    return _holds(go)


@claim
def counit_witness(a: Subset, s: Subset) -> bool:
    def go() -> bool:
        alpha = TwoCell(identity(a), identity(s))
        counit = TwoCell(extend(identity(a), s, s), identity(s))
        return alpha == vcompose(counit, _triangle2(identity(a), s, s))
    return _holds(go)


@claim
def comult_witness(f: Cell1, g: Cell1, s: Subset) -> bool:
    def go() -> bool:
        comult = TwoCell(extend(compose(f, g), s, s), compose(extend(f, s, s), extend(g, s, s)))
        lhs = vcompose(comult, _triangle2(compose(f, g), s, s))
        return lhs == hcompose(_triangle2(f, s, s), _triangle2(g, s, s))
    return _holds(go)


def _chain3_sub_exhaustive(space: Space) -> Iterator[tuple]:
    for f, g, h in space.parallel_chains(3):
        for a in f.dom.subsets():
            for b in f.cod.subsets():
                yield f, g, h, a, b


def _chain3_sup_exhaustive(space: Space) -> Iterator[tuple]:
    for f, g, h in space.parallel_chains(3):
        for a in space.supersets(f.dom):
            for b in space.supersets(f.cod):
                yield f, g, h, a, b


def _chain3(rng: random.Random, u: Universe) -> tuple[Cell1, Cell1, Cell1]:
    a, b = _rsubset(rng, u), _rsubset(rng, u)
    h = _rcell(rng, a, b)
    g = _rbelow(rng, h, a, b)
    return _rbelow(rng, g, a, b), g, h


def _chain3_sub_sample(rng: random.Random, u: Universe) -> tuple:
    f, g, h = _chain3(rng, u)
    return f, g, h, _rsub(rng, f.dom), _rsub(rng, f.cod)


def _chain3_sup_sample(rng: random.Random, u: Universe) -> tuple:
    f, g, h = _chain3(rng, u)
    return f, g, h, _rsup(rng, f.dom), _rsup(rng, f.cod)


def _naturality_exhaustive(space: Space) -> Iterator[tuple]:
    for a, hom in space.endos():
        for f in hom:
            for h in hom:
                for g in hom:
                    if leq(h, g):
                        for s in a.subsets():
                            yield f, g, h, s


def _naturality_sample(rng: random.Random, u: Universe) -> tuple:
    a, f, g = _rendo_pair(rng, u)
    return f, g, _rbelow(rng, g, a, a), _rsub(rng, a)


def _endo_triple_exhaustive(space: Space) -> Iterator[tuple]:
    for a, hom in space.endos():
        for f, g, h in itertools.product(hom, repeat=3):
            for s in a.subsets():
                yield f, g, h, s


def _endo_triple_sample(rng: random.Random, u: Universe) -> tuple:
    a, f, g = _rendo_pair(rng, u)
    return f, g, _rcell(rng, a, a), _rsub(rng, a)


def _endo_sub_exhaustive(space: Space) -> Iterator[tuple]:
    for a, hom in space.endos():
        for f in hom:
            for s in a.subsets():
                yield f, s


def _endo_sub_sample(rng: random.Random, u: Universe) -> tuple:
    a = _rsubset(rng, u)
    return _rcell(rng, a, a), _rsub(rng, a)


# stability of the adjunction predicates ------------------------------------------

PREDICATES = (1, 2, 3, 4)
CONVENTIONS = ("unit-counit", "paper-literal")


def _g_max_split(f: Cell1) -> int:
    """Union of all single pairs ``(b, a)`` with ``f o {(b, a)} o f <= f``."""
    n = f.universe.size
    out = 0
    for b in f.cod:
        sources = [x for x in f.dom if f.row(x) >> b & 1]
        for a in f.dom:
            ra = f.row(a)
            if all(ra & ~f.row(x) == 0 for x in sources):
                out |= 1 << (b * n + a)
    return out


def _pred_at(which: int, convention: str, f: Cell1, g: Cell1) -> bool:
    a, b = f.dom, f.cod
    id_a, id_b = identity(a), identity(b)
    try:
        if convention == "unit-counit":
            if which == 1:
                return leq(id_a, compose(g, f))
            if which == 2:
                return leq(compose(f, g), id_b)
            if which == 3:
                return leq(id_a, compose(g, f)) and compose(f, compose(g, f)) == f
            return leq(compose(f, g), id_b) and compose(g, compose(f, g)) == g
        if which == 1:
            return leq(id_a, compose(f, g))
        if which == 2:
            return leq(compose(g, f), id_b)
        if which == 3:
            return leq(id_a, compose(f, g)) and compose(f, compose(g, f)) == f
        return leq(compose(g, f), id_b) and compose(g, compose(f, g)) == g
    except CellError:
        return False


def _pred_candidates(which: int, convention: str, f: Cell1) -> Iterator[Cell1]:
    """Every ``g`` for which the predicate's composites are defined."""
    u = f.universe
    if convention == "paper-literal" and which == 1:
        for d in u.subsets():
            yield from cells_between(d, f.dom)
    elif convention == "paper-literal" and which == 2:
        for c in u.subsets():
            yield from cells_between(f.cod, c)
    else:
        yield from cells_between(f.cod, f.dom)


def prop3_search(which: int, convention: str, f: Cell1) -> bool:
    """Decide the predicate by trying every candidate ``g``."""
    return any(_pred_at(which, convention, f, g) for g in _pred_candidates(which, convention, f))


def prop3_holds(which: int, convention: str, f: Cell1) -> bool:
    """Decide the predicate from a single extremal candidate.

    Predicates 2 and 4 are satisfied by the empty relation whenever they are
    satisfiable at all.  Predicate 1 is upward closed in ``g``, so the full
    relation decides it.  For predicate 3 the constraint ``f o g o f <= f`` is
    closed under unions and subsets while the rest is upward closed, so the
    union of all admissible single pairs decides it.
    """
    u = f.universe
    n = u.size
    if which in (2, 4):
        dom, cod = f.cod, (f.dom if which == 4 or convention == "unit-counit" else u.empty)
        return _pred_at(which, convention, f, Cell1(dom, cod, 0))
    if which == 1:
        dom = f.cod if convention == "unit-counit" else u.full
        return _pred_at(1, convention, f, Cell1(dom, f.dom, _rect(n, dom.bits, f.dom.bits)))
    return _pred_at(3, convention, f, Cell1(f.cod, f.dom, _g_max_split(f)))


def _make_prop3_claim(which: int, convention: str, op: str) -> str:
    name = f"prop3_{'literal' if convention == 'paper-literal' else 'uc'}_p{which}_{op}"

    def check(f: Cell1, s: Subset) -> bool:
        def go() -> bool:
            if not prop3_holds(which, convention, f):
                return True
            moved = restrict_dom(f, s) if op == "restrict_dom" else extend_cod(f, s)
            return prop3_holds(which, convention, moved)
        return _holds(go)

    check.__name__ = name
    CLAIMS[name] = check
    return name


def _prop3_restrict_exhaustive(space: Space) -> Iterator[tuple]:
    for f in space.cells:
        for s in f.dom.subsets():
            yield f, s


def _prop3_extend_exhaustive(space: Space) -> Iterator[tuple]:
    for f in space.cells:
        for s in space.supersets(f.cod):
            yield f, s


def _prop3_restrict_sample(rng: random.Random, u: Universe) -> tuple:
    f = _rany(rng, u)
    return f, _rsub(rng, f.dom)


def _prop3_extend_sample(rng: random.Random, u: Universe) -> tuple:
    f = _rany(rng, u)
    return f, _rsup(rng, f.cod)


def _prop3_claims(convention: str) -> tuple[Claim, ...]:
    out = []
    for which in PREDICATES:
        out.append(Claim(_make_prop3_claim(which, convention, "restrict_dom"),
                         _prop3_restrict_exhaustive, _prop3_restrict_sample))
        out.append(Claim(_make_prop3_claim(which, convention, "extend_cod"),
                         _prop3_extend_exhaustive, _prop3_extend_sample))
    return tuple(out)


def _annotate_prop3(report: LawReport, cfg: LawSuiteConfig) -> None:
    by_claim: dict[str, int] = {}
    for v in report.violations:
        by_claim[v.claim] = by_claim.get(v.claim, 0) + 1
    report.notes["recorded_violations_by_claim"] = dict(sorted(by_claim.items()))


# maps ----------------------------------------------------------------------------------


@claim
def map_stable_restrict(f: Cell1, s: Subset) -> bool:
    return _holds(lambda: not is_map(f) or is_map(restrict_dom(f, s)))


@claim
def map_stable_extend(f: Cell1, s: Subset) -> bool:
    return _holds(lambda: not is_map(f) or is_map(extend_cod(f, s)))


@claim
def extend_reflects_maps(f: Cell1, s: Subset) -> bool:
    return _holds(lambda: is_map(extend_cod(f, s)) == is_map(f))


@claim
def id_up_is_map(a: Subset, b: Subset) -> bool:
    return _holds(lambda: is_map(extend_cod(identity(a), b)))


@claim
def id_down_is_map(a: Subset, b: Subset) -> bool:
    return _holds(lambda: is_map(restrict_dom(identity(b), a)))


@claim
def projection_is_map(a: Subset, b: Subset, side: str) -> bool:
    return _holds(lambda: is_map(projection(a, b, side)))


@claim
def injection_is_map(a: Subset, b: Subset, side: str) -> bool:
    return _holds(lambda: is_map(injection(a, b, side)))


@claim
def hybrid_pre_map(f: Cell1, s: Subset) -> bool:
    return _holds(lambda: not is_map(f) or is_map(hybrid_pre(f, s)))


@claim
def hybrid_post_map(f: Cell1, s: Subset) -> bool:
    return _holds(lambda: not is_map(f) or is_map(hybrid_post(f, s)))


def _sub_pair_exhaustive(space: Space) -> Iterator[tuple]:
    for b in space.subsets:
        for a in b.subsets():
            yield a, b


def _sub_pair_sample(rng: random.Random, u: Universe) -> tuple:
    b = _rsubset(rng, u)
    return _rsub(rng, b), b


def _sides_exhaustive(space: Space) -> Iterator[tuple]:
    for a in space.subsets:
        for b in space.subsets:
            for side in ("left", "right"):
                yield a, b, side


def _sides_sample(rng: random.Random, u: Universe) -> tuple:
    return _rsubset(rng, u), _rsubset(rng, u), rng.choice(("left", "right"))


def _annotate_corollaries(report: LawReport, cfg: LawSuiteConfig) -> None:
    if cfg.mode != "exhaustive":
        return
    space = Space.of(Universe(cfg.universe_size))
    total = failing = 0
    for a, b in _sub_pair_exhaustive(space):
        total += 1
        failing += not is_map(extend(identity(a), b, b))
    report.notes["double_boundary_id_up"] = {"pairs": total, "not_a_map": failing}


# involution -------------------------------------------------------------------------------


@claim
def involutive(f: Cell1) -> bool:
    return transpose(transpose(f)) == f


@claim
def transpose_identity(a: Subset) -> bool:
    return transpose(identity(a)) == identity(a)


@claim
def contravariant(f: Cell1, g: Cell1) -> bool:
    return _holds(lambda: transpose(compose(f, g)) == compose(transpose(g), transpose(f)))


@claim
def modular_law(f: Cell1, g: Cell1, h: Cell1) -> bool:
    """``(f o g) & h <= (f & (h o g~)) o g`` with ``h`` parallel to ``f o g``."""
    return _holds(lambda: leq(meet(compose(f, g), h),
                              compose(meet(f, compose(h, transpose(g))), g)))


@claim
def adjoint_is_transpose(f: Cell1) -> bool:
    def go() -> bool:
        found = search_right_adjoint(f)
        if (found is not None) != is_map(f):
            return False
        if found is None:
            return right_adjoint(f) is None
        return found.bits == transpose(f).bits and right_adjoint(f) == transpose(f)
    return _holds(go)


def _cells_exhaustive(space: Space) -> Iterator[tuple]:
    for f in space.cells:
        yield (f,)


def _cells_sample(rng: random.Random, u: Universe) -> tuple:
    return (_rany(rng, u),)


def _subsets_exhaustive(space: Space) -> Iterator[tuple]:
    for a in space.subsets:
        yield (a,)


def _subsets_sample(rng: random.Random, u: Universe) -> tuple:
    return (_rsubset(rng, u),)


def _composable_exhaustive(space: Space) -> Iterator[tuple]:
    yield from space.composable()


def _modular_exhaustive(space: Space) -> Iterator[tuple]:
    for f, g in space.composable():
        for h in space.hom[(g.dom.bits, f.cod.bits)]:
            yield f, g, h


def _modular_sample(rng: random.Random, u: Universe) -> tuple:
    f, g = _composable_sample(rng, u)
    return f, g, _rcell(rng, g.dom, f.cod)


def _small_cell_sample(rng: random.Random, u: Universe) -> tuple:
    # keeps the brute-force adjoint search to at most 2**6 candidates
    while True:
        a, b = _rsubset(rng, u), _rsubset(rng, u)
        if len(a) * len(b) <= 6:
            return (_rcell(rng, a, b),)


def _annotate_involution(report: LawReport, cfg: LawSuiteConfig) -> None:
    if cfg.mode != "exhaustive":
        return
    space = Space.of(Universe(cfg.universe_size))
    for f, g, h in _modular_exhaustive(space):
        lhs = meet(compose(f, g), h)
        rhs = compose(meet(f, compose(h, transpose(g))), g)
        if not leq(rhs, lhs):
            report.notes["strict_modular_witness"] = [_encode(x) for x in (f, g, h)]
            return
    report.notes["strict_modular_witness"] = None


# lattice and Boolean structure --------------------------------------------------------


@claim
def flatt_identities(f: Cell1, g: Cell1) -> bool:
    j, m = join(f, g), meet(f, g)
    return (identity(j.dom) == join(identity(f.dom), identity(g.dom))
            and identity(j.cod) == join(identity(f.cod), identity(g.cod))
            and identity(m.dom) == meet(identity(f.dom), identity(g.dom))
            and identity(m.cod) == meet(identity(f.cod), identity(g.cod)))


@claim
def meet_is_glb(f: Cell1, g: Cell1, h: Cell1) -> bool:
    m = meet(f, g)
    if not (leq(m, f) and leq(m, g)):
        return False
    return not (leq(h, f) and leq(h, g)) or leq(h, m)


@claim
def join_is_lub(f: Cell1, g: Cell1, h: Cell1) -> bool:
    j = join(f, g)
    if not (leq(f, j) and leq(g, j)):
        return False
    return not (leq(f, h) and leq(g, h)) or leq(j, h)


@claim
def idempotence(f: Cell1) -> bool:
    return meet(f, f) == f and join(f, f) == f


@claim
def lattice_bounds(f: Cell1) -> bool:
    u = f.universe
    return (leq(f, top(u)) and leq(bottom(u), f) and join(f, bottom(u)) == f
            and equivalent(meet(f, top(u)), f))


@claim
def boolean_complement(f: Cell1) -> bool:
    u, nf = f.universe, complement(f)
    return (leq(meet(f, nf), bottom(u)) and leq(top(u), join(f, nf))
            and equivalent(complement(nf), f))


@claim
def de_morgan(f: Cell1, g: Cell1) -> bool:
    return (equivalent(complement(meet(f, g)), join(complement(f), complement(g)))
            and equivalent(complement(join(f, g)), meet(complement(f), complement(g))))


@claim
def distributive(f: Cell1, g: Cell1, h: Cell1) -> bool:
    return (equivalent(meet(f, join(g, h)), join(meet(f, g), meet(f, h)))
            and equivalent(join(f, meet(g, h)), meet(join(f, g), join(f, h))))


@claim
def residuation(f: Cell1, g: Cell1, h: Cell1) -> bool:
    i = impl(f, g)
    return leq(meet(i, f), g) and leq(meet(h, f), g) == leq(h, i)


@claim
def frame_distributivity(f: Cell1, family: tuple) -> bool:
    u = f.universe
    lhs = meet(f, big_join(family, u))
    rhs = big_join([meet(f, s) for s in family], u)
    return equivalent(lhs, rhs)


def _pairs_exhaustive(space: Space) -> Iterator[tuple]:
    for f in space.cells:
        for g in space.cells:
            yield f, g


def _pairs_sample(rng: random.Random, u: Universe) -> tuple:
    return _rany(rng, u), _rany(rng, u)


def _triples_exhaustive(space: Space) -> Iterator[tuple]:
    cells = space.cells
    for f in cells:
        for g in cells:
            for h in cells:
                yield f, g, h


def _triples_sample(rng: random.Random, u: Universe) -> tuple:
    return _rany(rng, u), _rany(rng, u), _rany(rng, u)


def _frame_exhaustive(space: Space) -> Iterator[tuple]:
    # families drawn from one representative per pair set; up to three members
    u = space.universe
    full = u.full
    reps = [c for c in space.cells if c.dom == full and c.cod == full]
    for f in space.cells:
        for k in range(4):
            for family in itertools.combinations(reps, k):
                yield f, family


def _frame_sample(rng: random.Random, u: Universe) -> tuple:
    k = rng.randrange(0, 5)
    return _rany(rng, u), tuple(_rany(rng, u) for _ in range(k))


# theorems of the formal system -------------------------------------------------------


@claim
def thm_semidist_down(f: Cell1, g: Cell1, a: Subset, b: Subset, c: Subset) -> bool:
    return prop1_down(f, g, a, b, c)


@claim
def thm_semidist_up(f: Cell1, g: Cell1, a: Subset, b: Subset, c: Subset) -> bool:
    return prop1_up(f, g, a, b, c)


@claim
def thm_monotone_down(f: Cell1, g: Cell1, a: Subset, b: Subset) -> bool:
    return _holds(lambda: not leq(f, g) or leq(restrict(f, a, b), restrict(g, a, b)))


@claim
def thm_monotone_up(f: Cell1, g: Cell1, a: Subset, b: Subset) -> bool:
    return _holds(lambda: not leq(f, g) or leq(extend(f, a, b), extend(g, a, b)))


@claim
def thm_unit_down(a: Subset, s: Subset) -> bool:
    return _holds(lambda: leq(identity(s), restrict(identity(a), s, s)))


@claim
def thm_counit_up(a: Subset, s: Subset) -> bool:
    """``(id_s) extended to (a, a) <= id_a`` for ``s <= a``."""
    return _holds(lambda: leq(extend(identity(s), a, a), identity(a)))


def _leq_bounded_exhaustive(space: Space, grow: bool) -> Iterator[tuple]:
    # f <= g with independent boundaries; the new boundary must be defined for both
    cells = space.cells
    for f in cells:
        for g in cells:
            if not leq(f, g):
                continue
            if grow:
                for a in space.supersets(f.dom | g.dom):
                    for b in space.supersets(f.cod | g.cod):
                        yield f, g, a, b
            else:
                for a in (f.dom & g.dom).subsets():
                    for b in (f.cod & g.cod).subsets():
                        yield f, g, a, b


def _leq_bounded_sample(rng: random.Random, u: Universe, grow: bool) -> tuple:
    g = _rany(rng, u)
    f = _rbelow(rng, g, _rsubset(rng, u), _rsubset(rng, u))
    if grow:
        return f, g, _rsup(rng, f.dom | g.dom), _rsup(rng, f.cod | g.cod)
    return f, g, _rsub(rng, f.dom & g.dom), _rsub(rng, f.cod & g.cod)


# hypothesis search -----------------------------------------------------------------------


def _xi_apply(f: Cell1, xd: Subset, xc: Subset) -> Cell1:
    return restrict(f, xd, xc)


@claim
def hyp_identity(a: Subset, xa: Subset) -> bool:
    return _holds(lambda: leq(identity(xa), _xi_apply(identity(a), xa, xa)))


@claim
def hyp_composition(f: Cell1, g: Cell1, xa: Subset, xb: Subset, xc: Subset) -> bool:
    """``F(f) o F(g) <= F(f o g)`` for ``g: A -> B``, ``f: B -> C``."""
    return _holds(lambda: leq(compose(_xi_apply(f, xb, xc), _xi_apply(g, xa, xb)),
                              _xi_apply(compose(f, g), xa, xc)))


@claim
def hyp_two_cells(f: Cell1, g: Cell1, xa: Subset, xb: Subset) -> bool:
    return _holds(lambda: not leq(f, g) or leq(_xi_apply(f, xa, xb), _xi_apply(g, xa, xb)))


def _hyp_identity_exhaustive(space: Space) -> Iterator[tuple]:
    for a in space.subsets:
        for xa in a.subsets():
            yield a, xa


def _hyp_composition_exhaustive(space: Space) -> Iterator[tuple]:
    for f, g in space.composable():
        for xa in g.dom.subsets():
            for xb in g.cod.subsets():
                for xc in f.cod.subsets():
                    yield f, g, xa, xb, xc


def _hyp_composition_sample(rng: random.Random, u: Universe) -> tuple:
    f, g = _composable_sample(rng, u)
    return f, g, _rsub(rng, g.dom), _rsub(rng, g.cod), _rsub(rng, f.cod)


def _hyp_two_cells_exhaustive(space: Space) -> Iterator[tuple]:
    for f, g in space.parallel_chains(2):
        for xa in f.dom.subsets():
            for xb in f.cod.subsets():
                yield f, g, xa, xb


def _hyp_two_cells_sample(rng: random.Random, u: Universe) -> tuple:
    f, g = _parallel_leq(rng, u)
    return f, g, _rsub(rng, f.dom), _rsub(rng, f.cod)


def iter_xi(u: Universe) -> Iterator[dict[int, Subset]]:
    """Every choice of a sub-object ``xi(A) <= A`` for all subsets ``A``."""
    subs = u.subsets()
    for choice in itertools.product(*[a.subsets() for a in subs]):
        yield {a.bits: x for a, x in zip(subs, choice)}


def _annotate_hypothesis(report: LawReport, cfg: LawSuiteConfig) -> None:
    report.notes["claim"] = "none; exploratory search only"
    if cfg.mode != "exhaustive" or cfg.universe_size > 2:
        return
    u = Universe(cfg.universe_size)
    space = Space.of(u)
    summary = []
    for xi in iter_xi(u):
        strict_id = all(identity(xi[a.bits]) == restrict(identity(a), xi[a.bits], xi[a.bits])
                        for a in space.subsets)
        strict_comp = True
        lax_failures = 0
        for f, g in space.composable():
            xa, xb, xc = xi[g.dom.bits], xi[g.cod.bits], xi[f.cod.bits]
            lhs = compose(restrict(f, xb, xc), restrict(g, xa, xb))
            rhs = restrict(compose(f, g), xa, xc)
            if lhs != rhs:
                strict_comp = False
            if not leq(lhs, rhs):
                lax_failures += 1
        summary.append({
            "xi": [[list(Subset(u, a)), list(x)] for a, x in sorted(xi.items())],
            "strict_identities": strict_id,
            "strict_composition": strict_comp,
            "lax_composition_failures": lax_failures,
        })
    report.notes["per_xi"] = summary


# law table -----------------------------------------------------------------------------


def _theorem_claims() -> tuple[Claim, ...]:
    return (
        Claim("thm_semidist_down", _prop1_down_exhaustive, _prop1_down_sample),
        Claim("thm_semidist_up", _prop1_up_exhaustive, _prop1_up_sample),
        Claim("thm_monotone_down", lambda s: _leq_bounded_exhaustive(s, False),
              lambda r, u: _leq_bounded_sample(r, u, False)),
        Claim("thm_monotone_up", lambda s: _leq_bounded_exhaustive(s, True),
              lambda r, u: _leq_bounded_sample(r, u, True)),
        Claim("thm_unit_down", _subset_sub_exhaustive, _subset_sub_sample),
        Claim("thm_counit_up", _subset_sub_exhaustive, _subset_sub_sample),
    )


LAWS: dict[str, Law] = {law.name: law for law in (
    Law("interchange", (
        Claim("interchange", _interchange_exhaustive, _interchange_sample, _interchange_batched),
    )),
    Law("nabla_universality", (
        Claim("nabla_universality", _nabla_exhaustive, _nabla_sample),
    )),
    Law("triangle_universality", (
        Claim("triangle_universality", _triangle_exhaustive, _triangle_sample),
    )),
    Law("distrib", (
        Claim("distrib_down", _distrib_down_exhaustive, _distrib_down_sample),
        Claim("distrib_up", _distrib_up_exhaustive, _distrib_up_sample),
    )),
    Law("prop1", (
        Claim("prop1_down", _prop1_down_exhaustive, _prop1_down_sample),
        Claim("prop1_up", _prop1_up_exhaustive, _prop1_up_sample),
    ), annotate=_annotate_prop1),
    Law("prop2", (
        Claim("restrict_monotone", _parallel_sub_exhaustive, _parallel_sub_sample),
        Claim("extend_monotone", _parallel_sup_exhaustive, _parallel_sup_sample),
        Claim("monoidal_unit", _subset_sub_exhaustive, _subset_sub_sample),
        Claim("comonoidal_counit", _subset_sup_exhaustive, _subset_sup_sample),
        Claim("monoidal_mult", _endo_pair_sub_exhaustive, _endo_pair_sub_sample),
        Claim("comonoidal_comult", _endo_pair_sup_exhaustive, _endo_pair_sup_sample),
    )),
    Law("appendix_a", (
        Claim("functor_def_down", _parallel_sub_exhaustive, _parallel_sub_sample),
        Claim("functor_comp_down", _chain3_sub_exhaustive, _chain3_sub_sample),
        Claim("functor_def_up", _parallel_sup_exhaustive, _parallel_sup_sample),
        Claim("functor_comp_up", _chain3_sup_exhaustive, _chain3_sup_sample),
        Claim("unit_witness", _subset_sub_exhaustive, _subset_sub_sample),
        Claim("mult_witness", _endo_pair_sub_exhaustive, _endo_pair_sub_sample),
        Claim("naturality", _naturality_exhaustive, _naturality_sample),
        Claim("associativity", _endo_triple_exhaustive, _endo_triple_sample),
        Claim("unit_laws", _endo_sub_exhaustive, _endo_sub_sample),
        Claim("counit_witness", _subset_sup_exhaustive, _subset_sup_sample),
        Claim("comult_witness", _endo_pair_sup_exhaustive, _endo_pair_sup_sample),
    )),
    Law("prop3", _prop3_claims("unit-counit"), annotate=_annotate_prop3),
    Law("prop3_literal", _prop3_claims("paper-literal"), asserted=False,
        annotate=_annotate_prop3),
    Law("corollaries", (
        Claim("map_stable_restrict", _prop3_restrict_exhaustive, _prop3_restrict_sample),
        Claim("map_stable_extend", _prop3_extend_exhaustive, _prop3_extend_sample),
        Claim("extend_reflects_maps", _prop3_extend_exhaustive, _prop3_extend_sample),
        Claim("id_up_is_map", _sub_pair_exhaustive, _sub_pair_sample),
        Claim("id_down_is_map", _sub_pair_exhaustive, _sub_pair_sample),
        Claim("projection_is_map", _sides_exhaustive, _sides_sample),
        Claim("injection_is_map", _sides_exhaustive, _sides_sample),
        Claim("hybrid_pre_map", _prop3_restrict_exhaustive, _prop3_restrict_sample),
        Claim("hybrid_post_map", _prop3_extend_exhaustive, _prop3_extend_sample),
    ), annotate=_annotate_corollaries),
    Law("involution", (
        Claim("involutive", _cells_exhaustive, _cells_sample),
        Claim("transpose_identity", _subsets_exhaustive, _subsets_sample),
        Claim("contravariant", _composable_exhaustive, _composable_sample),
        Claim("modular_law", _modular_exhaustive, _modular_sample),
        Claim("adjoint_is_transpose", _cells_exhaustive, _small_cell_sample),
    ), annotate=_annotate_involution),
    Law("flatt_lattice", (
        Claim("flatt_identities", _pairs_exhaustive, _pairs_sample),
        Claim("meet_is_glb", _triples_exhaustive, _triples_sample),
        Claim("join_is_lub", _triples_exhaustive, _triples_sample),
        Claim("idempotence", _cells_exhaustive, _cells_sample),
        Claim("lattice_bounds", _cells_exhaustive, _cells_sample),
        Claim("boolean_complement", _cells_exhaustive, _cells_sample),
        Claim("de_morgan", _pairs_exhaustive, _pairs_sample),
        Claim("distributive", _triples_exhaustive, _triples_sample),
        Claim("residuation", _triples_exhaustive, _triples_sample),
        Claim("frame_distributivity", _frame_exhaustive, _frame_sample),
    )),
    Law("theorems", _theorem_claims()),
    Law("hypothesis", (
        Claim("hyp_identity", _hyp_identity_exhaustive, _subset_sub_sample),
        Claim("hyp_composition", _hyp_composition_exhaustive, _hyp_composition_sample),
        Claim("hyp_two_cells", _hyp_two_cells_exhaustive, _hyp_two_cells_sample),
    ), asserted=False, annotate=_annotate_hypothesis),
)}


def run_law(name: str, cfg: LawSuiteConfig) -> LawReport:
    law = LAWS[name]
    report = LawReport(name, asserted=law.asserted)
    u = Universe(cfg.universe_size)
    start = time.perf_counter()
    if cfg.mode == "exhaustive":
        space = Space.of(u)
        for c in law.claims:
            if c.batched is not None:
                count, bad = c.batched(space)
                report.cases_checked += count - len(bad)
                for args in bad:
                    report.record(c.name, args, False)
                continue
            check = c.check
            for args in c.exhaustive(space):
                report.record(c.name, args, check(*args))
    else:
        rng = random.Random(f"{cfg.seed}/{name}")
        checks = [(c, c.check) for c in law.claims]
        for _ in range(cfg.samples):
            for c, check in checks:
                args = c.sample(rng, u)
                report.record(c.name, args, check(*args))
    if law.annotate is not None:
        law.annotate(report, cfg)
    report.elapsed = time.perf_counter() - start
    return report


def run_suite(cfg: LawSuiteConfig) -> list[LawReport]:
    names = cfg.laws if cfg.laws is not None else tuple(LAWS)
    return [run_law(n, cfg) for n in names]


# single-law entry points ---------------------------------------------------------------


def check_interchange(cfg: LawSuiteConfig) -> LawReport:
    return run_law("interchange", cfg)


def check_nabla_universality(cfg: LawSuiteConfig) -> LawReport:
    return run_law("nabla_universality", cfg)


def check_triangle_universality(cfg: LawSuiteConfig) -> LawReport:
    return run_law("triangle_universality", cfg)


def check_distrib(cfg: LawSuiteConfig) -> LawReport:
    return run_law("distrib", cfg)


def check_prop1(cfg: LawSuiteConfig) -> LawReport:
    return run_law("prop1", cfg)


def check_prop2(cfg: LawSuiteConfig) -> LawReport:
    return run_law("prop2", cfg)


def check_appendix_a(cfg: LawSuiteConfig) -> LawReport:
    return run_law("appendix_a", cfg)


def check_prop3(cfg: LawSuiteConfig, convention: str = "unit-counit") -> LawReport:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    return run_law("prop3" if convention == "unit-counit" else "prop3_literal", cfg)


def check_corollaries(cfg: LawSuiteConfig) -> LawReport:
    return run_law("corollaries", cfg)


def check_involution(cfg: LawSuiteConfig) -> LawReport:
    return run_law("involution", cfg)


def check_flatt_lattice(cfg: LawSuiteConfig) -> LawReport:
    return run_law("flatt_lattice", cfg)


def check_theorems(cfg: LawSuiteConfig) -> LawReport:
    return run_law("theorems", cfg)


def search_hypothesis(cfg: LawSuiteConfig) -> LawReport:
    return run_law("hypothesis", cfg)


def pullback_violations(u: Universe) -> tuple[int, list[tuple[Cell1, Cell1]]]:
    """Exhaustively check logical pullbacks of all codomain-sharing pairs.

    For each pair the result must agree with both domain-restrictions and
    dominate every common domain-restriction found by enumeration.
    """
    space = Space.of(u)
    cases = 0
    bad = []
    by_cod: dict[int, list[Cell1]] = {}
    for c in space.cells:
        by_cod.setdefault(c.cod.bits, []).append(c)
    for group in by_cod.values():
        for f in group:
            for g in group:
                cases += 1
                p = logical_pullback(f, g)
                ok = restrict_dom(f, p.dom) == p and restrict_dom(g, p.dom) == p
                if ok:
                    for d in (f.dom & g.dom).subsets():
                        cand = restrict_dom(f, d)
                        if cand == restrict_dom(g, d) and not leq(cand, p):
                            ok = False
                            break
                if not ok:
                    bad.append((f, g))
    return cases, bad


def map_characterisation_mismatches(cells: Iterable[Cell1]) -> list[Cell1]:
    """Cells on which the three readings of "map" disagree, or whose adjoint
    found by search differs from the transpose."""
    bad = []
    for f in cells:
        direct = is_total(f) and is_functional(f)
        found = search_right_adjoint(f)
        if not (is_map(f) == direct == (found is not None)):
            bad.append(f)
        elif found is not None and found.bits != transpose(f).bits:
            bad.append(f)
    return bad
