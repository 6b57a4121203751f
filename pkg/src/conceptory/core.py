"""The finite relational model: subsets of a small carrier set, relations
between them, and every operator the calculus is built from.

Relations are stored as integers: the pair ``(a, b)`` over a universe of
size ``n`` lives at bit ``a * n + b``.  Subsets are plain bitmasks over
``0 .. n-1``.  Everything here is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

MAX_UNIVERSE = 16


class CellError(ValueError):
    """Base class for ill-formed cells and undefined operator applications."""


class UniverseError(CellError):
    pass


class BoundaryMismatch(CellError):
    pass


class NotASubobject(CellError):
    pass


class NotASuperobject(CellError):
    pass


class NotATwoCell(CellError):
    pass


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@lru_cache(maxsize=None)
def _rect(n: int, dom: int, cod: int) -> int:
    out = 0
    for a in _iter_bits(dom):
        out |= cod << (a * n)
    return out


@lru_cache(maxsize=None)
def _diag(n: int, bits: int) -> int:
    out = 0
    for a in _iter_bits(bits):
        out |= 1 << (a * n + a)
    return out


@dataclass(frozen=True, slots=True)
class Universe:
    size: int

    def __post_init__(self) -> None:
        if not 1 <= self.size <= MAX_UNIVERSE:
            raise UniverseError(f"universe size must be in 1..{MAX_UNIVERSE}, got {self.size}")

    @property
    def full_bits(self) -> int:
        return (1 << self.size) - 1

    @property
    def full(self) -> Subset:
        return Subset(self, self.full_bits)

    @property
    def empty(self) -> Subset:
        return Subset(self, 0)

    def subset(self, elements: Iterable[int] = ()) -> Subset:
        bits = 0
        for x in elements:
            if not 0 <= x < self.size:
                raise UniverseError(f"element {x} outside universe of size {self.size}")
            bits |= 1 << x
        return Subset(self, bits)

    def subsets(self) -> list[Subset]:
        """All subsets, ascending by bit value."""
        return [Subset(self, b) for b in range(1 << self.size)]


@dataclass(frozen=True, slots=True)
class Subset:
    universe: Universe
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.universe.size:
            raise UniverseError(f"bits {self.bits:#x} exceed universe of size {self.universe.size}")

    def __iter__(self) -> Iterator[int]:
        return _iter_bits(self.bits)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.universe.size and bool(self.bits >> x & 1)

    def __le__(self, other: Subset) -> bool:
        return self.bits & ~other.bits == 0

    def __and__(self, other: Subset) -> Subset:
        return Subset(self.universe, self.bits & other.bits)

    def __or__(self, other: Subset) -> Subset:
        return Subset(self.universe, self.bits | other.bits)

    def complement(self) -> Subset:
        return Subset(self.universe, self.universe.full_bits & ~self.bits)

    def subsets(self) -> list[Subset]:
        """All subsets of this subset, ascending by bit value."""
        out = []
        sub = 0
        while True:
            out.append(Subset(self.universe, sub))
            if sub == self.bits:
                return out
            sub = (sub - self.bits) & self.bits

    def elements(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


@dataclass(frozen=True, slots=True)
class Cell1:
    """A relation ``bits`` between the boundaries ``dom`` and ``cod``."""

    dom: Subset
    cod: Subset
    bits: int

    def __post_init__(self) -> None:
        if self.dom.universe != self.cod.universe:
            raise UniverseError("dom and cod live in different universes")
        n = self.dom.universe.size
        if self.bits & ~_rect(n, self.dom.bits, self.cod.bits):
            raise CellError(f"pairs {sorted(_pairs(self.bits, n))} escape {self.dom} x {self.cod}")

    @classmethod
    def of(cls, dom: Subset, cod: Subset, pairs: Iterable[tuple[int, int]]) -> Cell1:
        n = dom.universe.size
        bits = 0
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise UniverseError(f"pair {(a, b)} outside universe of size {n}")
            bits |= 1 << (a * n + b)
        return cls(dom, cod, bits)

    @property
    def universe(self) -> Universe:
        return self.dom.universe

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(_pairs(self.bits, self.universe.size))

    def row(self, a: int) -> int:
        n = self.universe.size
        return (self.bits >> (a * n)) & ((1 << n) - 1)

    def image(self, a: int) -> Subset:
        return Subset(self.universe, self.row(a))

    def __repr__(self) -> str:
        pairs = ",".join(f"({a},{b})" for a, b in sorted(self.pairs))
        return f"<{{{pairs}}},{self.dom!r},{self.cod!r}>"


def _pairs(bits: int, n: int) -> Iterator[tuple[int, int]]:
    for i in _iter_bits(bits):
        yield divmod(i, n)


@dataclass(frozen=True, slots=True)
class TwoCell:
    """The unique 2-cell ``src -> dst``; exists only when ``leq(src, dst)``."""

    src: Cell1
    dst: Cell1

    def __post_init__(self) -> None:
        if not leq(self.src, self.dst):
            raise NotATwoCell(f"no 2-cell {self.src!r} -> {self.dst!r}")


def identity2(f: Cell1) -> TwoCell:
    return TwoCell(f, f)


def vcompose(beta: TwoCell, alpha: TwoCell) -> TwoCell:
    """Vertical composite: ``alpha`` then ``beta``."""
    if alpha.dst != beta.src:
        raise BoundaryMismatch(f"cannot stack 2-cells: {alpha.dst!r} != {beta.src!r}")
    return TwoCell(alpha.src, beta.dst)


def hcompose(beta: TwoCell, alpha: TwoCell) -> TwoCell:
    """Horizontal composite ``beta * alpha : f2 o f1 -> g2 o g1``."""
    return TwoCell(compose(beta.src, alpha.src), compose(beta.dst, alpha.dst))


def _same_universe(*cells: Cell1) -> Universe:
    u = cells[0].universe
    for c in cells[1:]:
        if c.universe != u:
            raise UniverseError("cells from different universes")
    return u


# -- 1-cells -----------------------------------------------------------------


def identity(a: Subset) -> Cell1:
    return Cell1(a, a, _diag(a.universe.size, a.bits))


def compose(f: Cell1, g: Cell1) -> Cell1:
    """``f o g``: apply ``g`` first, then ``f``."""
    if f.dom != g.cod:
        raise BoundaryMismatch(f"cannot compose: dom(f)={f.dom!r} but cod(g)={g.cod!r}")
    n = f.universe.size
    mask = (1 << n) - 1
    fb, gb = f.bits, g.bits
    out = 0
    for a in _iter_bits(g.dom.bits):
        row = (gb >> (a * n)) & mask
        img = 0
        for b in _iter_bits(row):
            img |= (fb >> (b * n)) & mask
        out |= img << (a * n)
    return Cell1(g.dom, f.cod, out)


def leq(f: Cell1, g: Cell1) -> bool:
    """Pair-set inclusion; boundaries are ignored, so this is a preorder."""
    if f.dom.universe != g.dom.universe:
        raise UniverseError("cells from different universes")
    return f.bits & ~g.bits == 0


def equivalent(f: Cell1, g: Cell1) -> bool:
    return leq(f, g) and leq(g, f)


def restrict(f: Cell1, dom: Subset, cod: Subset) -> Cell1:
    if not (dom <= f.dom and cod <= f.cod):
        raise NotASubobject(f"{dom!r} x {cod!r} is not inside {f.dom!r} x {f.cod!r}")
    n = f.universe.size
    return Cell1(dom, cod, f.bits & _rect(n, dom.bits, cod.bits))


def extend(f: Cell1, dom: Subset, cod: Subset) -> Cell1:
    if not (f.dom <= dom and f.cod <= cod):
        raise NotASuperobject(f"{dom!r} x {cod!r} does not contain {f.dom!r} x {f.cod!r}")
    return Cell1(dom, cod, f.bits)


def restrict_dom(f: Cell1, dom: Subset) -> Cell1:
    return restrict(f, dom, f.cod)


def restrict_cod(f: Cell1, cod: Subset) -> Cell1:
    return restrict(f, f.dom, cod)


def extend_dom(f: Cell1, dom: Subset) -> Cell1:
    return extend(f, dom, f.cod)


def extend_cod(f: Cell1, cod: Subset) -> Cell1:
    return extend(f, f.dom, cod)


def nabla(f: Cell1, dom: Subset, cod: Subset) -> TwoCell:
    return TwoCell(restrict(f, dom, cod), f)


def triangle(f: Cell1, dom: Subset, cod: Subset) -> TwoCell:
    return TwoCell(f, extend(f, dom, cod))


def hybrid_pre(f: Cell1, dom: Subset) -> Cell1:
    return restrict_dom(f, dom)


def hybrid_post(f: Cell1, cod: Subset) -> Cell1:
    return extend_cod(f, cod)


# -- lattice and Boolean structure ------------------------------------------


def meet(f: Cell1, g: Cell1) -> Cell1:
    _same_universe(f, g)
    return Cell1(f.dom & g.dom, f.cod & g.cod, f.bits & g.bits)


def join(f: Cell1, g: Cell1) -> Cell1:
    _same_universe(f, g)
    return Cell1(f.dom | g.dom, f.cod | g.cod, f.bits | g.bits)


def top(u: Universe) -> Cell1:
    n = u.size
    return Cell1(u.full, u.full, _rect(n, u.full_bits, u.full_bits))


def bottom(u: Universe) -> Cell1:
    return Cell1(u.empty, u.empty, 0)


def complement(f: Cell1) -> Cell1:
    t = top(f.universe)
    return Cell1(t.dom, t.cod, t.bits & ~f.bits)


def impl(f: Cell1, g: Cell1) -> Cell1:
    u = _same_universe(f, g)
    t = top(u)
    return Cell1(t.dom, t.cod, (t.bits & ~f.bits) | g.bits)


def big_meet(cells: Iterable[Cell1], universe: Optional[Universe] = None) -> Cell1:
    cells = list(cells)
    if not cells:
        if universe is None:
            raise UniverseError("big_meet of nothing needs a universe")
        return top(universe)
    out = cells[0]
    for c in cells[1:]:
        out = meet(out, c)
    return out


def big_join(cells: Iterable[Cell1], universe: Optional[Universe] = None) -> Cell1:
    cells = list(cells)
    if not cells:
        if universe is None:
            raise UniverseError("big_join of nothing needs a universe")
        return bottom(universe)
    out = cells[0]
    for c in cells[1:]:
        out = join(out, c)
    return out


# -- involution and maps -----------------------------------------------------


def transpose(f: Cell1) -> Cell1:
    n = f.universe.size
    out = 0
    for a, b in _pairs(f.bits, n):
        out |= 1 << (b * n + a)
    return Cell1(f.cod, f.dom, out)


def is_total(f: Cell1) -> bool:
    return all(f.row(a) for a in f.dom)


def is_functional(f: Cell1) -> bool:
    return all(r & (r - 1) == 0 for r in map(f.row, f.dom))


def is_map(f: Cell1) -> bool:
    return is_total(f) and is_functional(f)


def right_adjoint(f: Cell1) -> Optional[Cell1]:
    return transpose(f) if is_map(f) else None


def search_right_adjoint(f: Cell1, literal: bool = False) -> Optional[Cell1]:
    """Brute-force search for ``g: cod(f) -> dom(f)`` forming an adjunction.

    The default reading is unit ``id_A <= g o f`` and counit ``f o g <= id_B``.
    With ``literal=True`` the composites are swapped as the defining formula
    is printed: ``id_A <= f o g`` and ``g o f <= id_B``.  Candidates are tried
    in ascending bit order; the first hit is returned.
    """
    a, b = f.dom, f.cod
    id_a, id_b = identity(a), identity(b)
    rect = _rect(f.universe.size, b.bits, a.bits)
    for bits in _submasks_ascending(rect):
        g = Cell1(b, a, bits)
        if literal:
            ok = leq(id_a, compose(f, g)) and leq(compose(g, f), id_b)
        else:
            ok = leq(id_a, compose(g, f)) and leq(compose(f, g), id_b)
        if ok:
            return g
    return None


def _submasks_ascending(mask: int) -> Iterator[int]:
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


# -- constructions -------------------------------------------------------------


def logical_pullback(f: Cell1, g: Cell1) -> Cell1:
    """Largest common domain-restriction of two cells with a shared codomain."""
    if f.cod != g.cod:
        raise BoundaryMismatch(f"codomains differ: {f.cod!r} vs {g.cod!r}")
    u = f.universe
    d = 0
    for x in _iter_bits(f.dom.bits & g.dom.bits):
        if f.row(x) == g.row(x):
            d |= 1 << x
    return restrict_dom(f, Subset(u, d))


def projection(a: Subset, b: Subset, side: str = "left") -> Cell1:
    return restrict_dom(identity(_side(a, b, side)), a & b)


def injection(a: Subset, b: Subset, side: str = "left") -> Cell1:
    return extend_cod(identity(_side(a, b, side)), a | b)


def _side(a: Subset, b: Subset, side: str) -> Subset:
    if a.universe != b.universe:
        raise UniverseError("subsets from different universes")
    if side == "left":
        return a
    if side == "right":
        return b
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


# -- enumeration ---------------------------------------------------------------


def cells_between(dom: Subset, cod: Subset) -> list[Cell1]:
    rect = _rect(dom.universe.size, dom.bits, cod.bits)
    return [Cell1(dom, cod, bits) for bits in _submasks_ascending(rect)]


def all_cells(u: Universe) -> list[Cell1]:
    """Every 1-cell of the universe, ordered by (dom bits, cod bits, pair bits)."""
    out = []
    subs = u.subsets()
    for a in subs:
        for b in subs:
            out.extend(cells_between(a, b))
    return out


def subset_pairs(s: Subset) -> Iterator[tuple[Subset, Subset]]:
    """All pairs ``(x, y)`` of subsets of ``s`` with ``x <= y``."""
    for y in s.subsets():
        for x in y.subsets():
            yield x, y


__all__ = [
    "MAX_UNIVERSE", "CellError", "UniverseError", "BoundaryMismatch", "NotASubobject",
    "NotASuperobject", "NotATwoCell", "Universe", "Subset", "Cell1", "TwoCell",
    "identity2", "vcompose", "hcompose",
    "identity", "compose", "leq", "equivalent", "restrict", "extend", "restrict_dom",
    "restrict_cod", "extend_dom", "extend_cod", "nabla", "triangle", "hybrid_pre",
    "hybrid_post", "meet", "join", "top", "bottom", "complement", "impl", "big_meet",
    "big_join", "transpose", "is_total", "is_functional", "is_map", "right_adjoint",
    "search_right_adjoint", "logical_pullback", "projection", "injection",
    "cells_between", "all_cells", "subset_pairs",
]
