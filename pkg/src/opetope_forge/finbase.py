"""Finite sets, total maps, spans, chosen pullbacks and slice objects.

Atoms are arbitrary hashable Python values.  They are totally ordered by
:func:`atom_key`, which gives every finite set a canonical enumeration order
and makes the chosen pullback a pure function of its inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

Atom = Hashable


class FinBaseError(ValueError):
    """Raised on malformed finite-set data (mismatched codomains, partial maps...)."""


def atom_key(x: Any) -> tuple:
    """Sort key giving a total order on the atoms we use.

    Mixed types are ranked by kind first, so ints, strings and tuples never
    have to be compared directly.  Objects may supply their own key through a
    ``sort_key`` method.
    """
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (2, x)
    if isinstance(x, str):
        return (3, x)
    if isinstance(x, tuple):
        return (4, len(x), tuple(atom_key(y) for y in x))
    if isinstance(x, frozenset):
        return (5, tuple(sorted(atom_key(y) for y in x)))
    sk = getattr(x, "sort_key", None)
    if sk is not None:
        return (6, type(x).__name__, sk())
    return (7, type(x).__name__, repr(x))


def canonical(xs: Iterable[Atom]) -> tuple:
    return tuple(sorted(set(xs), key=atom_key))


@dataclass(frozen=True)
class FinSet:
    elements: tuple = ()

    def __post_init__(self):
        elems = tuple(self.elements)
        if len(set(elems)) != len(elems):
            raise FinBaseError("duplicate atoms in FinSet")
        object.__setattr__(self, "elements", tuple(sorted(elems, key=atom_key)))
        object.__setattr__(self, "_members", frozenset(elems))

    @classmethod
    def of(cls, xs: Iterable[Atom]) -> "FinSet":
        return cls(canonical(xs))

    @classmethod
    def range(cls, n: int) -> "FinSet":
        return cls(tuple(range(n)))

    def __contains__(self, x) -> bool:
        return x in self._members

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __hash__(self):
        return hash(self.elements)

    def __eq__(self, other):
        return isinstance(other, FinSet) and self.elements == other.elements

    def sort_key(self):
        return tuple(atom_key(x) for x in self.elements)

    def to_json(self) -> list:
        return [atom_to_str(x) for x in self.elements]

    @classmethod
    def from_json(cls, data: list) -> "FinSet":
        return cls.of(data)


def atom_to_str(x: Atom) -> str:
    if isinstance(x, str):
        return x
    return json.dumps(_jsonable(x), separators=(",", ":"))


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    if isinstance(x, (int, str)) or x is None:
        return x
    tj = getattr(x, "to_json", None)
    if tj is not None:
        return tj()
    return repr(x)


@dataclass(frozen=True)
class FinMap:
    dom: FinSet
    cod: FinSet
    graph: tuple = ()  # pairs (a, f(a)) in dom order

    def __post_init__(self):
        g = dict(self.graph.items() if isinstance(self.graph, Mapping) else self.graph)
        missing = [a for a in self.dom if a not in g]
        if missing:
            raise FinBaseError(f"map is not total: no image for {missing[0]!r}")
        extra = [a for a in g if a not in self.dom]
        if extra:
            raise FinBaseError(f"map defined outside its domain at {extra[0]!r}")
        for a, b in g.items():
            if b not in self.cod:
                raise FinBaseError(f"image {b!r} of {a!r} is not in the codomain")
        object.__setattr__(self, "graph", tuple((a, g[a]) for a in self.dom))
        object.__setattr__(self, "_table", g)

    @classmethod
    def from_function(cls, dom: FinSet, cod: FinSet, fn: Callable) -> "FinMap":
        return cls(dom, cod, tuple((a, fn(a)) for a in dom))

    @classmethod
    def identity(cls, A: FinSet) -> "FinMap":
        return cls(A, A, tuple((a, a) for a in A))

    def __call__(self, a):
        try:
            return self._table[a]
        except KeyError:
            raise FinBaseError(f"{a!r} is not in the domain") from None

    def __hash__(self):
        return hash((self.dom, self.cod, self.graph))

    def __eq__(self, other):
        return (isinstance(other, FinMap) and self.dom == other.dom
                and self.cod == other.cod and self.graph == other.graph)

    def then(self, g: "FinMap") -> "FinMap":
        """Diagrammatic composite: first self, then g."""
        if self.cod != g.dom:
            raise FinBaseError("cannot compose: codomain/domain mismatch")
        return FinMap(self.dom, g.cod, tuple((a, g(b)) for a, b in self.graph))

    def image(self) -> FinSet:
        return FinSet.of(b for _, b in self.graph)

    def is_injective(self) -> bool:
        return len(self.image()) == len(self.dom)

    def is_surjective(self) -> bool:
        return len(self.image()) == len(self.cod)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def fibre(self, b) -> tuple:
        return tuple(a for a, y in self.graph if y == b)

    def to_json(self) -> dict:
        return {"dom": self.dom.to_json(), "cod": self.cod.to_json(),
                "graph": {atom_to_str(a): atom_to_str(b) for a, b in self.graph}}

    @classmethod
    def from_json(cls, data: dict) -> "FinMap":
        return cls(FinSet.from_json(data["dom"]), FinSet.from_json(data["cod"]),
                   tuple(data["graph"].items()))


@dataclass(frozen=True)
class Span:
    apex: FinSet
    left: FinMap
    right: FinMap

    def __post_init__(self):
        if self.left.dom != self.apex or self.right.dom != self.apex:
            raise FinBaseError("span legs must start at the apex")


@dataclass(frozen=True)
class SliceObj:
    total: FinSet
    proj: FinMap
    base: FinSet = field(default=None)

    def __post_init__(self):
        if self.base is None:
            object.__setattr__(self, "base", self.proj.cod)
        if self.proj.dom != self.total or self.proj.cod != self.base:
            raise FinBaseError("slice projection must run total -> base")

    @classmethod
    def from_function(cls, total: FinSet, base: FinSet, fn: Callable) -> "SliceObj":
        return cls(total, FinMap.from_function(total, base, fn), base)

    def fibre(self, b) -> tuple:
        return self.proj.fibre(b)


def pullback(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap, FinMap]:
    """The chosen pullback: pairs (a, b) with f(a) = g(b), with projections."""
    if f.cod != g.cod:
        raise FinBaseError("pullback needs maps with a common codomain")
    by_value: dict = {}
    for b in g.dom:
        by_value.setdefault(g(b), []).append(b)
    pairs = [(a, b) for a in f.dom for b in by_value.get(f(a), [])]
    apex = FinSet(tuple(pairs))
    pA = FinMap(apex, f.dom, tuple((p, p[0]) for p in apex))
    pB = FinMap(apex, g.dom, tuple((p, p[1]) for p in apex))
    return apex, pA, pB


def commutes(p1: FinMap, p2: FinMap, f: FinMap, g: FinMap) -> bool:
    """Does f . p1 = g . p2 hold (with matching endpoints)?"""
    if p1.dom != p2.dom or p1.cod != f.dom or p2.cod != g.dom or f.cod != g.cod:
        return False
    return all(f(p1(x)) == g(p2(x)) for x in p1.dom)


def is_pullback(p1: FinMap, p2: FinMap, f: FinMap, g: FinMap) -> bool:
    """Is the commuting square  P -p1-> A -f-> C,  P -p2-> B -g-> C  a pullback?

    Raises on a square that does not commute.
    """
    if not commutes(p1, p2, f, g):
        raise FinBaseError("square does not commute")
    apex, _, _ = pullback(f, g)
    comparison = FinMap.from_function(p1.dom, apex, lambda x: (p1(x), p2(x)))
    return comparison.is_bijective()


def coproduct(A: FinSet, B: FinSet) -> tuple[FinSet, FinMap, FinMap]:
    total = FinSet(tuple((0, a) for a in A) + tuple((1, b) for b in B))
    inl = FinMap(A, total, tuple((a, (0, a)) for a in A))
    inr = FinMap(B, total, tuple((b, (1, b)) for b in B))
    return total, inl, inr


def all_maps(A: FinSet, B: FinSet) -> Iterator[FinMap]:
    """Every total map A -> B, in lexicographic order of images."""
    from itertools import product
    for images in product(B.elements, repeat=len(A)):
        yield FinMap(A, B, tuple(zip(A.elements, images)))
