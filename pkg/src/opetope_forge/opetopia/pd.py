"""Pasting-diagram categories pd_n for n <= 2.

A morphism A -> B of pd_n labels every node of B with an (n+1)-opetope
whose boundary is that node; substituting the labels into B must give back A.
For n = 1 this is the simplex category (compositions of m into n parts), for
n = 2 the category of planar trees.  Composition substitutes the labels of
the first morphism into the labels of the second, guided by the provenance
that :func:`tower.subst` reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import ptree
from .tower import boundary, check, eta, nodes, opetopes, payload_from_json, payload_to_json, subst

SUPPORTED = (0, 1, 2)


class PdError(ValueError):
    pass


@dataclass(frozen=True)
class PdMorphism:
    n: int
    dom: object
    cod: object
    parts: tuple

    def __post_init__(self):
        d = self.n + 1
        ns = nodes(d, self.cod)
        if len(self.parts) != len(ns):
            raise PdError("one part per node of the codomain is required")
        if any(boundary(d, q) != v for q, v in zip(self.parts, ns)):
            raise PdError("a part's boundary differs from the node it decomposes")
        if subst(d, self.cod, tuple(self.parts))[0] != self.dom:
            raise PdError("the parts do not reassemble into the domain")

    def is_contraction(self) -> bool:
        """True when no part is node-free (no node is erased)."""
        return all(nodes(self.n + 1, q) for q in self.parts)

    def to_json(self) -> dict:
        d = self.n + 1
        return {"n": self.n, "dom": payload_to_json(d, self.dom), "cod": payload_to_json(d, self.cod),
                "parts": [payload_to_json(d, q) for q in self.parts]}

    @classmethod
    def from_json(cls, data: dict) -> "PdMorphism":
        n = data["n"]
        d = n + 1
        return cls(n, payload_from_json(d, data["dom"]), payload_from_json(d, data["cod"]),
                   tuple(payload_from_json(d, q) for q in data["parts"]))


def _require(n):
    if n not in SUPPORTED:
        raise PdError(f"pd_{n} hom enumeration is not supported (n must be 0, 1 or 2)")


def pd_objects(n: int, bound: int) -> list:
    _require(n)
    return [o.payload for o in opetopes(n + 1, bound)]


def pd_identity(n: int, A) -> PdMorphism:
    return PdMorphism(n, A, A, tuple(eta(n + 1, v) for v in nodes(n + 1, A)))


def pd_hom(n: int, dom, cod, contraction_only: bool = False) -> list[PdMorphism]:
    """Every morphism dom -> cod of pd_n, without repetition."""
    _require(n)
    check(n + 1, dom)
    check(n + 1, cod)
    if n == 0:
        found = [(dom,)]
    elif n == 1:
        found = list(_compositions(dom, cod))
    else:
        found = list(_tree_decompositions(dom, cod))
    out = [PdMorphism(n, dom, cod, tuple(p)) for p in found]
    if contraction_only:
        out = [f for f in out if f.is_contraction()]
    return out


def _compositions(total, k):
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def _tree_decompositions(T, S):
    """Labels for the nodes of S (preorder) whose substitution gives T."""
    if S == ptree.LEAF:
        if T == ptree.LEAF:
            yield ()
        return
    for top, rest in ptree.prefixes(T):
        if ptree.leaves(top) != len(S):
            continue
        for tails in product(*(list(_tree_decompositions(r, c)) for r, c in zip(rest, S))):
            yield (top,) + tuple(x for t in tails for x in t)


def pd_compose(n: int, g: PdMorphism, f: PdMorphism) -> PdMorphism:
    """g . f for f: A -> B and g: B -> C."""
    _require(n)
    if g.n != n or f.n != n:
        raise PdError("morphisms live in a different pd_n")
    if f.cod != g.dom:
        raise PdError("cannot compose: codomain of f is not the domain of g")
    d = n + 1
    _, prov = subst(d, g.cod, tuple(g.parts))
    groups: list[list] = [[] for _ in g.parts]
    for (v, j), part in sorted(zip(prov, f.parts), key=lambda z: z[0]):
        groups[v].append(part)
    parts = tuple(subst(d, gp, tuple(grp))[0] for gp, grp in zip(g.parts, groups))
    return PdMorphism(n, f.dom, g.cod, parts)
