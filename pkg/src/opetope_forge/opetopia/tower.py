"""The opetope tower.

Payloads by dimension:

* 0 and 1: the token ``"*"``;
* 2: an arity ``k``;
* 3: a planar tree (see :mod:`.ptree`);
* d >= 4: a pasting term, ``("u", s)`` with ``s`` a (d-2)-opetope, or
  ``("n", w, children)`` with ``w`` a (d-1)-opetope and one child per node of
  ``w``, each child's frame equal to that node.

Every d-opetope p has a list of nodes (its constituent (d-1)-opetopes), a
boundary (d-1)-opetope, and d >= 3 a frame, the boundary of its boundary.
``subst`` is the multiplication of the monad one level down: it replaces each
node by a d-opetope with that node as boundary, and reports where every node
of the result came from.  Dimension 3 trees are handled by the same term
code after a change of representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from ..finbase import FinSet, atom_key
from ..freealg import FGen, FId, FreeMulticat
from ..monadkit import FreeMonoid, Identity
from ..multicat import MGraph
from . import ptree

TOKEN = "*"


class OpetopeError(ValueError):
    pass


@dataclass(frozen=True)
class Opetope:
    dim: int
    payload: Any

    def sort_key(self):
        return (self.dim, size(self.dim, self.payload), atom_key(self.payload))

    @property
    def boundary(self) -> "Opetope":
        return Opetope(self.dim - 1, boundary(self.dim, self.payload))

    @property
    def size(self) -> int:
        return size(self.dim, self.payload)

    def to_json(self) -> dict:
        return {"dim": self.dim, "payload": payload_to_json(self.dim, self.payload)}

    @classmethod
    def from_json(cls, data: dict) -> "Opetope":
        d = data["dim"]
        p = payload_from_json(d, data["payload"])
        check(d, p)
        return cls(d, p)


# -- term view for dimension >= 3 ----------------------------------------------

def _to_term(d, p):
    if d != 3:
        return p
    if p == ptree.LEAF:
        return ("u", TOKEN)
    return ("n", len(p), tuple(_to_term(3, c) for c in p))


def _from_term(d, t):
    if d != 3:
        return t
    if t[0] == "u":
        return ptree.LEAF
    return tuple(_from_term(3, c) for c in t[2])


# -- structure ------------------------------------------------------------------

@lru_cache(maxsize=None)
def nodes(d: int, p) -> tuple:
    if d == 0:
        return ()
    if d == 1:
        return (TOKEN,)
    if d == 2:
        return (TOKEN,) * p
    if d == 3:
        return tuple(ptree.arities(p))
    out = []

    def walk(t):
        if t[0] == "n":
            out.append(t[1])
            for c in t[2]:
                walk(c)

    walk(p)
    return tuple(out)


@lru_cache(maxsize=None)
def boundary(d: int, p):
    if d < 1:
        raise OpetopeError("0-opetopes have no boundary")
    if d <= 2:
        return TOKEN
    if d == 3:
        return ptree.leaves(p)
    t = p
    if t[0] == "u":
        return eta(d - 1, t[1])
    return subst(d - 1, t[1], tuple(boundary(d, c) for c in t[2]))[0]


def frame(d: int, p):
    """Boundary of the boundary (d >= 3)."""
    t = _to_term(d, p)
    if t[0] == "u":
        return t[1]
    return boundary(d - 1, t[1])


@lru_cache(maxsize=None)
def eta(d: int, s):
    """The d-opetope with a single node s."""
    if d == 1:
        return TOKEN
    if d == 2:
        return 1
    t = ("n", s, tuple(("u", v) for v in nodes(d - 1, s)))
    return _from_term(d, t)


@lru_cache(maxsize=None)
def subst(d: int, p, parts: tuple):
    """Replace node i of p by parts[i]; returns (result, provenance) where
    provenance[r] = (i, j) says node r of the result is node j of parts[i]."""
    ns = nodes(d, p)
    if len(parts) != len(ns):
        raise OpetopeError(f"{len(ns)} parts needed, got {len(parts)}")
    for q, v in zip(parts, ns):
        if boundary(d, q) != v:
            raise OpetopeError("part boundary does not match the node it replaces")
    if d == 1:
        return parts[0], ((0, 0),)
    if d == 2:
        prov = tuple((i, j) for i, q in enumerate(parts) for j in range(q))
        return sum(parts), prov
    terms = [_to_term(d, q) for q in parts]
    counter = [0]

    def go(t):
        if t[0] == "u":
            return t, ()
        i = counter[0]
        counter[0] += 1
        subs = [go(c) for c in t[2]]
        return _graft(d, terms[i], i, subs, [0])

    res, prov = go(_to_term(d, p))
    return _from_term(d, res), prov


def _graft(d, P, tag, cfg, counter):
    """Plug cfg (one (term, provenance) per node of boundary(P)) into P."""
    if P[0] == "u":
        (only,) = cfg
        return only
    j = counter[0]
    counter[0] += 1
    w, chP = P[1], P[2]
    _, bprov = subst(d - 1, w, tuple(boundary(d, _from_term(d, c)) for c in chP))
    groups: list[list] = [[] for _ in chP]
    for item, (i, jj) in sorted(zip(cfg, bprov), key=lambda z: z[1]):
        groups[i].append(item)
    new_children, prov = [], [(tag, j)]
    for c, g in zip(chP, groups):
        t, pr = _graft(d, c, tag, g, counter)
        new_children.append(t)
        prov.extend(pr)
    return ("n", w, tuple(new_children)), tuple(prov)


def size(d: int, p) -> int:
    if d <= 1:
        return 0
    if d == 2:
        return p
    if d == 3:
        return ptree.size(p)
    if p[0] == "u":
        return 1 + size(d - 2, p[1])
    return 1 + size(d - 1, p[1]) + sum(size(d, c) for c in p[2])


def check(d: int, p) -> None:
    """Raise unless p is a well-formed d-opetope payload."""
    if d < 0:
        raise OpetopeError("negative dimension")
    if d <= 1:
        if p != TOKEN:
            raise OpetopeError("dimensions 0 and 1 have the single payload '*'")
        return
    if d == 2:
        if not isinstance(p, int) or isinstance(p, bool) or p < 0:
            raise OpetopeError("a 2-opetope is an arity k >= 0")
        return
    if d == 3:
        if not ptree.is_ptree(p):
            raise OpetopeError("a 3-opetope is a planar tree")
        return
    if not isinstance(p, tuple) or not p or p[0] not in ("u", "n"):
        raise OpetopeError("malformed pasting term")
    if p[0] == "u":
        check(d - 2, p[1])
        return
    _, w, ch = p
    check(d - 1, w)
    ns = nodes(d - 1, w)
    if len(ch) != len(ns):
        raise OpetopeError("one child per node of the root is required")
    for c, v in zip(ch, ns):
        check(d, c)
        if frame(d, c) != v:
            raise OpetopeError("child frame does not match its slot")


# -- enumeration ---------------------------------------------------------------

def _freearrow_tree(f):
    if isinstance(f, FId):
        return ptree.LEAF
    if isinstance(f, FGen):
        return (ptree.LEAF,) * f.gen
    return tuple(_freearrow_tree(x) for x in f.inner)


@lru_cache(maxsize=None)
def _opetopes(n: int, bound: int) -> tuple:
    if n <= 1:
        return (TOKEN,)
    if n == 2:
        G = MGraph(Identity(), FinSet((TOKEN,)), FinSet(("e",)), {"e": TOKEN}, {"e": TOKEN})
        F = FreeMulticat(G)
        return tuple(sorted(F.size(f) for f in F.arrows(bound)))
    if n == 3:
        if bound < 1:
            return ()
        M = FreeMonoid()
        arities = tuple(range(bound))
        G = MGraph(M, FinSet((TOKEN,)), FinSet(arities),
                   {k: (TOKEN,) * k for k in arities}, {k: TOKEN for k in arities})
        # weighting leaves and nodes alike makes the arrow size the tree size
        F = FreeMulticat(G, id_weight=1)
        return _canonical(3, (_freearrow_tree(f) for f in F.arrows(bound)))
    out = []
    for s in _opetopes(n - 2, bound):
        out.extend(_with_frame(n, s, bound))
    return _canonical(n, out)


def _canonical(d, items) -> tuple:
    return tuple(sorted(set(items), key=lambda p: (size(d, p), atom_key(p))))


@lru_cache(maxsize=None)
def _with_frame(d: int, s, budget: int) -> tuple:
    """d-opetopes (d >= 4) with frame s and size <= budget."""
    out = []
    if 1 + size(d - 2, s) <= budget:
        out.append(("u", s))
    for w in _opetopes(d - 1, budget - 1):
        if boundary(d - 1, w) != s:
            continue
        rest = budget - 1 - size(d - 1, w)
        if rest < 0:
            continue
        for ch in _children(d, nodes(d - 1, w), rest):
            out.append(("n", w, ch))
    return tuple(out)


def _children(d, slots, budget):
    if not slots:
        yield ()
        return
    for c in _with_frame(d, slots[0], budget):
        for tail in _children(d, slots[1:], budget - size(d, c)):
            yield (c,) + tail


def opetopes(n: int, bound: int) -> list[Opetope]:
    """The n-opetopes of size <= bound, in canonical order."""
    if n < 0:
        raise OpetopeError("dimension must be non-negative")
    return [Opetope(n, p) for p in _opetopes(n, bound)]


# -- JSON ---------------------------------------------------------------------

def payload_to_json(d: int, p):
    if d <= 2:
        return p
    if d == 3:
        return ptree.to_json(p)
    if p[0] == "u":
        return {"unit": payload_to_json(d - 2, p[1])}
    return {"node": payload_to_json(d - 1, p[1]),
            "children": [payload_to_json(d, c) for c in p[2]]}


def payload_from_json(d: int, data):
    if d <= 2:
        return data
    if d == 3:
        return ptree.from_json(data)
    if "unit" in data:
        return ("u", payload_from_json(d - 2, data["unit"]))
    return ("n", payload_from_json(d - 1, data["node"]),
            tuple(payload_from_json(d, c) for c in data["children"]))
