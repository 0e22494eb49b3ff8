"""Slicing: multicategories of the form D_E, and the slice C+ of a multicategory.

``slice_plus(C, bound)`` lists the arrows of C+ whose shape has at most
``bound`` generator occurrences: an arrow is a free-multicategory term t over
the graph of C together with its value in C, so its inputs are the nodes of t
(arrows of C) and its output is the composite.  When C lives over the identity
monad (a category) the terms are chains, C+ is a plain multicategory, and
``as_multicat`` materialises it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..finbase import FinSet
from ..freealg import FGen, FId, FNode, FreeMulticat, extend_graph_map
from ..monadkit import FreeMonoid, Identity
from ..multicat import (MGraph, Multicat, MulticatError, MultiMap, arity_bounded_configurations,
                        is_discrete_opfibration)


def slice_by_algebra(D: Multicat, f: MultiMap) -> Multicat:
    """For a discrete opfibration f: E -> D, the multicategory D_E, which is E."""
    if f.cod is not D and (f.cod.C0 != D.C0 or f.cod.C1 != D.C1):
        raise MulticatError("the map does not land in D")
    if not is_discrete_opfibration(f):
        raise MulticatError("not a discrete opfibration")
    E = f.dom
    meta = dict(E.meta)
    meta["sliced_over"] = D
    return Multicat(E.graph, E.ids, E.comp, meta)


def _chain(t) -> tuple:
    """Node labels of a term over the identity monad, outermost first."""
    out = []
    while not isinstance(t, FId):
        out.append(t.gen)
        if isinstance(t, FGen):
            break
        t = t.inner
    return tuple(out)


@dataclass(frozen=True, eq=False)
class SliceFragment:
    base: Multicat
    bound: int
    arrows: tuple = field(init=False)

    def __post_init__(self):
        C = self.base
        F = FreeMulticat(C.graph)
        ident = lambda x: x  # noqa: E731
        found = []
        for t in F.arrows(self.bound):
            a = extend_graph_map(F, C, ident, ident, t)
            if a is not None:
                found.append((t, a))
        object.__setattr__(self, "arrows", tuple(found))
        object.__setattr__(self, "_free", F)

    @property
    def objects(self) -> FinSet:
        return self.base.C1

    def inputs(self, arrow) -> list:
        """Arrows of the base sitting at the nodes of the term, in order."""
        t, _ = arrow
        out = []

        def walk(u):
            if isinstance(u, FId):
                return
            out.append(u.gen)
            if isinstance(u, FNode):
                for x in self.base.monad.atoms(u.inner):
                    walk(x)

        walk(t)
        return out

    def hom(self, inputs, target) -> list:
        return [e for e in self.arrows if e[1] == target and self.inputs(e) == list(inputs)]

    @cached_property
    def _multicat(self) -> Multicat:
        C = self.base
        if not isinstance(C.monad, Identity):
            raise MulticatError("C+ is a plain multicategory only when C is a category")
        keyed = {(_chain(t), a) for t, a in self.arrows}
        C1 = FinSet.of(keyed)
        graph = MGraph(FreeMonoid(), C.C1, C1, {e: e[0] for e in C1}, {e: e[1] for e in C1})
        ids = {g: ((g,), g) for g in C.C1}

        def composer(outer, config):
            chain = tuple(g for e in config for g in e[0])
            r = (chain, outer[1])
            return r if r in C1 else None

        return Multicat.build(graph, ids, composer, meta={"kind": "slice-plus", "base": C},
                              configs=lambda a: arity_bounded_configurations(graph, a, self.bound))

    def as_multicat(self) -> Multicat:
        return self._multicat


def slice_plus(C: Multicat, bound: int) -> SliceFragment:
    return SliceFragment(C, bound)
